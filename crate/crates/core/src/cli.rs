//! The `seqlab` command line: argument parsing, report rendering and the
//! exit-code contract (0 all checks passed, 1 negative verdict, 2 usage or
//! contract error).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::congruence::{self, Claim, CongruenceResult, Grid};
use crate::error::{Error, Result};
use crate::oeis::{self, Corpus, CrossCheck};
use crate::realizability::{self, FailBound, FailEstimate, RealizabilityReport, Verdict};
use crate::realize::{self, Realization};
use crate::seq::{Sequence, SequenceSpec};
use crate::witness::{self, Expected, PrimeWitness, WitnessClaim};

/// Version of the JSON report layout in `schema/report.schema.json`.
pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "seqlab", version, about = "Realizability checks for integer sequences")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// b-file cache directory (overrides SEQLAB_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub allow_network: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Bfile,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print terms lo..hi (inclusive) of a sequence.
    Gen { spec: String, range: String },
    /// Sign and Dold conditions on a(1..N).
    Check(PrefixArgs),
    /// Lower bound for the smallest multiplier making the sequence realizable.
    Fail(PrefixArgs),
    /// Sweep a congruence claim over a grid of (n, p, m).
    Congruence(CongruenceArgs),
    /// Prime witnesses for a registered claim, or a residue scan for any spec.
    Witness(WitnessArgs),
    /// Build a finite map realizing a(1..N) and verify it by iteration.
    Realize(RealizeArgs),
    /// Compare a sequence with its OEIS b-file.
    OeisVerify(OeisArgs),
}

#[derive(Args, Debug)]
pub struct PrefixArgs {
    pub spec: String,
    #[arg(long = "N", default_value_t = 64)]
    pub n_max: u64,
}

#[derive(Args, Debug)]
pub struct CongruenceArgs {
    /// a-mod-pm, sporadic-mod-p2m, d-mod-pm, d-mod-p3m, helou-terjanian or scaled-binomial.
    pub claim: String,
    /// Sequences to sweep; defaults to the claim's parameter grid.
    #[arg(long = "spec")]
    pub specs: Vec<String>,
    /// Comma-separated primes replacing the default grid primes.
    #[arg(long)]
    pub primes: Option<String>,
    /// One cell per line: `<spec> <n> <p> <m>`.
    #[arg(long)]
    pub grid_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    /// Registered claim (catalan, motzkin, schroder, ...) or any sequence spec.
    pub target: String,
    /// Largest prime scanned.
    #[arg(long, default_value_t = 200)]
    pub primes: u64,
    /// `residue=<k>` or `nonzero`; for unregistered specs defaults to nonzero.
    #[arg(long)]
    pub predicate: Option<String>,
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    pub spec: String,
    #[arg(long = "N", default_value_t = 8)]
    pub n_max: u64,
    /// Write the function table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OeisArgs {
    pub spec: String,
    #[arg(long, default_value_t = 30)]
    pub terms: u64,
    /// Compare against this b-file instead of fetching.
    #[arg(long)]
    pub bfile: Option<PathBuf>,
}

/// What a run produced: stdout text, stderr text and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Identifies a run; embedded in every JSON report.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub specs: Vec<String>,
    pub n_max: Option<u64>,
    pub grid: Value,
    pub config_hash: String,
    pub tool_version: String,
}

impl RunManifest {
    fn new(command: &str, specs: Vec<String>, n_max: Option<u64>, grid: Value) -> Self {
        let tool_version = env!("CARGO_PKG_VERSION").to_string();
        let canonical = json!({
            "command": command, "specs": specs, "n_max": n_max, "grid": grid, "tool_version": tool_version,
        });
        let digest = Sha256::digest(canonical.to_string().as_bytes());
        let config_hash = digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        RunManifest { command: command.into(), specs, n_max, grid, config_hash, tool_version }
    }
}

struct Rendered {
    manifest: RunManifest,
    result: Value,
    table: String,
    bfile: Option<String>,
    code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_PASS, stdout: text, stderr: String::new() }
            };
        }
    };
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = cli.jobs {
            b = b.num_threads(j.max(1));
        }
        b.build()
    };
    let result = match pool {
        Ok(pool) => pool.install(|| dispatch(&cli)),
        Err(e) => Err(Error::contract(format!("thread pool: {e}"))),
    };
    match result {
        Ok(r) => render(cli.format, r),
        Err(e) => {
            let code = match e {
                Error::NotRealizable { .. } => EXIT_NEGATIVE,
                _ => EXIT_USAGE,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error[{}]: {e}\n", e.code()) }
        }
    }
}

/// Runs with the process arguments, printing the outcome; returns the exit code.
pub fn run() -> i32 {
    use std::io::Write;
    let out = execute(std::env::args_os());
    // a closed pipe (`seqlab gen ... | head`) is not an error worth a panic
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    out.code
}

fn render(format: Format, r: Rendered) -> Outcome {
    let stdout = match format {
        Format::Table => r.table,
        Format::Json => {
            let doc = json!({ "schema_version": SCHEMA_VERSION, "manifest": r.manifest, "result": r.result });
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
        Format::Bfile => match r.bfile {
            Some(b) => b,
            None => {
                return Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: format!("error[contract]: --format bfile applies to `gen` only, not `{}`\n", r.manifest.command),
                }
            }
        },
    };
    Outcome { code: r.code, stdout, stderr: String::new() }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn parse_range(text: &str) -> Result<(u64, u64)> {
    let bad = || Error::contract(format!("range `{text}` is not of the form lo..hi"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo = lo.trim().parse::<u64>().map_err(|_| bad())?;
    let hi = hi.trim().parse::<u64>().map_err(|_| bad())?;
    if hi < lo {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn dispatch(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Gen { spec, range } => cmd_gen(spec, range),
        Command::Check(a) => cmd_check(a),
        Command::Fail(a) => cmd_fail(a),
        Command::Congruence(a) => cmd_congruence(a),
        Command::Witness(a) => cmd_witness(a),
        Command::Realize(a) => cmd_realize(a),
        Command::OeisVerify(a) => cmd_oeis_verify(a, cli),
    }
}

fn cmd_gen(spec: &str, range: &str) -> Result<Rendered> {
    let seq = Sequence::parse(spec)?;
    let (lo, hi) = parse_range(range)?;
    let terms = seq.terms(lo, hi)?;
    let mut table = format!("# {} ({})\n", seq.spec().descriptor(), seq.spec().name());
    let mut bfile = String::new();
    for (n, v) in (lo..=hi).zip(&terms) {
        let _ = writeln!(table, "{n:>6}  {v}");
        let _ = writeln!(bfile, "{n} {v}");
    }
    let result = json!({
        "descriptor": seq.spec().descriptor(),
        "offset": seq.offset(),
        "terms": (lo..=hi).zip(&terms).map(|(n, v)| json!([n, v.to_string()])).collect::<Vec<_>>(),
    });
    Ok(Rendered {
        manifest: RunManifest::new("gen", vec![seq.spec().descriptor()], None, json!({ "lo": lo, "hi": hi })),
        result,
        table,
        bfile: Some(bfile),
        code: EXIT_PASS,
    })
}

fn check_table(r: &RealizabilityReport) -> String {
    let mut t = format!("{}  N = {}\nverdict: {:?}\n", r.descriptor, r.n_max, r.verdict);
    if !r.sign_failures.is_empty() {
        let _ = writeln!(t, "sign failures at n = {:?}", r.sign_failures);
    }
    if !r.dold_failures.is_empty() {
        let _ = writeln!(t, "dold failures (n, n/gcd(n, g(n))):");
        for f in &r.dold_failures {
            let _ = writeln!(t, "  {:>5}  {}", f.n, f.obstruction);
        }
    }
    let _ = writeln!(t, "fail lower bound: {}", r.fail_lower_bound);
    if let Some(a0) = &r.dropped_initial_term {
        let _ = writeln!(t, "note: a(0) = {a0} is not part of the n >= 1 sequence");
    }
    t
}

fn cmd_check(a: &PrefixArgs) -> Result<Rendered> {
    let seq = Sequence::parse(&a.spec)?;
    let report = realizability::check_realizable(&seq, a.n_max)?;
    let code = if report.verdict == Verdict::RealizableOnPrefix { EXIT_PASS } else { EXIT_NEGATIVE };
    Ok(Rendered {
        manifest: RunManifest::new("check", vec![report.descriptor.clone()], Some(a.n_max), Value::Null),
        table: check_table(&report),
        result: to_value(&report),
        bfile: None,
        code,
    })
}

fn fail_table(f: &FailEstimate) -> String {
    let mut t = format!("{}  N = {}\nlower bound: {}\n", f.descriptor, f.n_max, f.lower_bound);
    let _ = writeln!(t, "certified exact: {}", f.certified_exact);
    if !f.growth_points.is_empty() {
        let _ = writeln!(t, "lcm grows at (n, lcm): {:?}", f.growth_points);
    }
    if f.diverging {
        let _ = writeln!(t, "diverging: lcm picked up primes {:?}", f.witness_primes);
    }
    t
}

fn cmd_fail(a: &PrefixArgs) -> Result<Rendered> {
    let seq = Sequence::parse(&a.spec)?;
    let est = realizability::fail_estimate(&seq, a.n_max)?;
    let code = if est.lower_bound == FailBound::SignViolated { EXIT_NEGATIVE } else { EXIT_PASS };
    Ok(Rendered {
        manifest: RunManifest::new("fail", vec![est.descriptor.clone()], Some(a.n_max), Value::Null),
        table: fail_table(&est),
        result: to_value(&est),
        bfile: None,
        code,
    })
}

fn parse_primes(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<u64>().map_err(|_| Error::contract(format!("`{t}` is not a prime")))
        })
        .collect()
}

fn cmd_congruence(a: &CongruenceArgs) -> Result<Rendered> {
    let claim = Claim::parse(&a.claim)?;
    let (results, specs, grid_desc) = if let Some(path) = &a.grid_file {
        let entries = congruence::parse_grid_file(&std::fs::read_to_string(path)?)?;
        let specs = entries.iter().map(|e| e.spec.descriptor()).collect::<Vec<_>>();
        let cells = entries.iter().map(|e| e.cell).collect::<Vec<_>>();
        (congruence::sweep_entries(claim, &entries)?, specs, json!({ "cells": cells }))
    } else {
        let grid = match &a.primes {
            Some(list) => claim.grid_with_primes(&parse_primes(list)?)?,
            None => claim.default_grid(),
        };
        let specs: Vec<SequenceSpec> = if a.specs.is_empty() {
            claim.default_specs()
        } else {
            a.specs.iter().map(|s| SequenceSpec::parse(s)).collect::<Result<_>>()?
        };
        let results = if claim.is_sequence_claim() {
            let mut out = Vec::new();
            for s in &specs {
                out.extend(congruence::sweep(claim, s, &grid)?);
            }
            out
        } else {
            congruence::sweep_lemma(claim, &grid)?
        };
        (results, specs.iter().map(SequenceSpec::descriptor).collect(), grid_summary(&grid))
    };
    let failures: Vec<&CongruenceResult> = results.iter().filter(|r| !r.holds()).collect();
    let mut table = format!("claim {claim}: {} cells, {} failures\n", results.len(), failures.len());
    for r in failures.iter().take(20) {
        let _ = writeln!(
            table,
            "  FAIL {} n={} p={} m={} residue {} mod {}",
            r.spec.as_deref().unwrap_or("binomial"),
            r.n,
            r.p,
            r.m,
            r.witness.residue,
            r.witness.modulus
        );
    }
    let code = if failures.is_empty() { EXIT_PASS } else { EXIT_NEGATIVE };
    let result = json!({
        "claim": claim,
        "cells": results.len(),
        "failures": failures.len(),
        "results": results,
    });
    Ok(Rendered {
        manifest: RunManifest::new("congruence", specs, None, json!({ "claim": claim, "grid": grid_desc })),
        result,
        table,
        bfile: None,
        code,
    })
}

fn grid_summary(grid: &Grid) -> Value {
    let mut primes: Vec<u64> = grid.cells.iter().map(|c| c.p).collect();
    primes.sort_unstable();
    primes.dedup();
    json!({ "primes": primes, "cells": grid.cells.len() })
}

fn witness_table(target: &str, ws: &[PrimeWitness], extra: Option<String>) -> String {
    let mut t = format!("{target}: {} witnesses\n", ws.len());
    let _ = writeln!(t, "{:>6} {:>6} {:>8} {:>10} {:>6}", "p", "index", "residue", "expected", "audit");
    for w in ws {
        let audit = w.audit_residue.map_or("-".to_string(), |r| r.to_string());
        let _ = writeln!(t, "{:>6} {:>6} {:>8} {:>10} {:>6}", w.prime, w.convolution_index, w.residue, w.expected.to_string(), audit);
        if let Some(note) = &w.note {
            let _ = writeln!(t, "       note: {note}");
        }
    }
    if let Some(e) = extra {
        t.push_str(&e);
    }
    t
}

fn cmd_witness(a: &WitnessArgs) -> Result<Rendered> {
    let predicate = a.predicate.as_deref().map(Expected::parse).transpose()?;
    let (descriptor, ws, code, extra) = match (WitnessClaim::parse(&a.target), predicate) {
        (Ok(claim), None) => {
            let ws = witness::claim_scan(claim, a.primes)?;
            let ok = !ws.is_empty() && ws.iter().all(|w| w.matches_expected() && w.audit_agrees());
            let extra = (claim == WitnessClaim::Fibonacci)
                .then(|| witness::fibonacci_first_dold_failure(a.primes.max(2)))
                .transpose()?
                .flatten();
            (claim.spec().descriptor(), ws, if ok { EXIT_PASS } else { EXIT_NEGATIVE }, extra)
        }
        (_, pred) => {
            let spec = SequenceSpec::parse(&a.target)?;
            let ws = witness::witness_scan(&spec, pred.unwrap_or(Expected::NonZero), a.primes)?;
            (spec.descriptor(), ws, EXIT_PASS, None)
        }
    };
    let table = witness_table(&descriptor, &ws, extra.map(|n| format!("first n with n ∤ (μ∗a)(n): {n}\n")));
    let result = json!({ "target": a.target, "witnesses": ws, "first_dold_failure": extra });
    Ok(Rendered {
        manifest: RunManifest::new(
            "witness",
            vec![descriptor],
            None,
            json!({ "prime_bound": a.primes, "predicate": a.predicate }),
        ),
        result,
        table,
        bfile: None,
        code,
    })
}

fn cmd_realize(a: &RealizeArgs) -> Result<Rendered> {
    let seq = Sequence::parse(&a.spec)?;
    let r: Realization = realize::realize(&seq, a.n_max)?;
    if let Some(path) = &a.out {
        std::fs::write(path, r.map.to_text())?;
    }
    let mut table = format!("{}  N = {}\npoints: {}\n", r.descriptor, a.n_max, r.size);
    let _ = writeln!(table, "{:>4} {:>10} {:>12}", "n", "cycles", "fixed by T^n");
    for (i, (c, k)) in r.profile.counts.iter().zip(&r.periodic_counts).enumerate() {
        let _ = writeln!(table, "{:>4} {:>10} {:>12}", i + 1, c, k);
    }
    let _ = writeln!(table, "self-verify: {}", if r.verified { "pass" } else { "FAIL" });
    let mut result = to_value(&r);
    result["out"] = json!(a.out.as_ref().map(|p| p.display().to_string()));
    Ok(Rendered {
        manifest: RunManifest::new("realize", vec![r.descriptor.clone()], Some(a.n_max), Value::Null),
        result,
        table,
        bfile: None,
        code: if r.verified { EXIT_PASS } else { EXIT_NEGATIVE },
    })
}

fn cmd_oeis_verify(a: &OeisArgs, cli: &Cli) -> Result<Rendered> {
    let spec = SequenceSpec::parse(&a.spec)?;
    let link = spec.oeis().ok_or_else(|| Error::contract(format!("{} has no OEIS link", spec.descriptor())))?;
    let bfile = match &a.bfile {
        Some(path) => {
            let mut b = oeis::read_bfile(path)?;
            if b.a_number.is_empty() {
                b.a_number = link.a_number.to_string();
            }
            b
        }
        None => {
            let mut corpus = Corpus::from_env();
            if let Some(dir) = &cli.cache_dir {
                corpus.cache_dir = Some(dir.clone());
            }
            corpus.allow_network = cli.allow_network;
            corpus.fetch(link.a_number)?
        }
    };
    let c: CrossCheck = oeis::cross_check(&spec, &bfile, a.terms)?;
    let mut table = format!("{} vs {} ({:?}): {} terms compared, {:?}\n", c.descriptor, c.a_number, c.source, c.compared, c.verdict);
    if let Some(m) = &c.first_mismatch {
        let _ = writeln!(table, "first mismatch at n = {} (OEIS index {}): ours {} theirs {}", m.n, m.oeis_index, m.ours, m.theirs);
    }
    if let Some(s) = c.probable_shift {
        let _ = writeln!(table, "terms align after shifting the OEIS index by {s}");
    }
    let too_few = c.compared < a.terms;
    if too_few {
        let _ = writeln!(table, "only {} of {} requested terms available", c.compared, a.terms);
    }
    Ok(Rendered {
        manifest: RunManifest::new(
            "oeis-verify",
            vec![c.descriptor.clone()],
            None,
            json!({ "a_number": c.a_number, "terms": a.terms }),
        ),
        code: if c.passed() && !too_few { EXIT_PASS } else { EXIT_NEGATIVE },
        result: to_value(&c),
        table,
        bfile: None,
    })
}
