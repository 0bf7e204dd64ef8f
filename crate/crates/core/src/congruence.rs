//! Grid sweeps of the prime-power congruences satisfied by the binomial-sum
//! families, plus exhaustive runs of the two binomial lemmas.
//!
//! Every claim swept here is a theorem, so a failing cell means a generator
//! is wrong. Results keep full residues for auditing;
//! [`require_all_hold`] turns any failure into a [`Error::GeneratorDefect`].

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::padic::require_prime;
use crate::arith::{helou_terjanian_check, scaled_binomial_check, CongruenceWitness};
use crate::error::{Error, Result};
use crate::seq::{Family, Sequence, SequenceSpec, MAX_INDEX};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// A(np^m) ≡ A(np^{m-1}) mod p^m for the A-family.
    AModPm,
    /// The same congruence mod p^{2m} for the registered sporadic sequences, p >= 3.
    SporadicModP2m,
    /// D(np^m) ≡ D(np^{m-1}) mod p^m for the D-family.
    DModPm,
    /// The same mod p^{3m} for r >= 2, s, t >= 1, p >= 5.
    DModP3m,
    /// binom(np, mp) ≡ binom(n, m) modulo the Helou–Terjanian exponent.
    HelouTerjanian,
    /// binom(n, λp) ≡ binom(n/p, λ) mod p^{max(ν_p(n), ν_p(n-λp))}.
    ScaledBinomial,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::AModPm,
        Claim::SporadicModP2m,
        Claim::DModPm,
        Claim::DModP3m,
        Claim::HelouTerjanian,
        Claim::ScaledBinomial,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::AModPm => "a-mod-pm",
            Claim::SporadicModP2m => "sporadic-mod-p2m",
            Claim::DModPm => "d-mod-pm",
            Claim::DModP3m => "d-mod-p3m",
            Claim::HelouTerjanian => "helou-terjanian",
            Claim::ScaledBinomial => "scaled-binomial",
        }
    }

    pub fn parse(text: &str) -> Result<Claim> {
        let t = text.trim().to_ascii_lowercase();
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == t)
            .ok_or_else(|| Error::contract(format!("unknown claim `{text}`")))
    }

    /// k such that the claimed modulus is p^{k m}; `None` for the lemmas,
    /// whose exponent depends on the cell.
    pub fn exponent_factor(self) -> Option<u32> {
        match self {
            Claim::AModPm | Claim::DModPm => Some(1),
            Claim::SporadicModP2m => Some(2),
            Claim::DModP3m => Some(3),
            Claim::HelouTerjanian | Claim::ScaledBinomial => None,
        }
    }

    /// Smallest prime the claim covers.
    pub fn min_prime(self) -> u64 {
        match self {
            Claim::SporadicModP2m => 3,
            Claim::DModP3m => 5,
            _ => 2,
        }
    }

    pub fn is_sequence_claim(self) -> bool {
        self.exponent_factor().is_some()
    }

    /// Checks that `spec` belongs to the family the claim is about.
    pub fn admits(self, spec: &SequenceSpec) -> Result<()> {
        let ok = match (self, spec.family) {
            (Claim::AModPm, Family::AFamily { .. }) => true,
            (Claim::DModPm, Family::DFamily { .. }) => true,
            (Claim::SporadicModP2m, _) => sporadic_registry().contains(spec),
            (Claim::DModP3m, Family::DFamily { r, s, t }) => r >= 2 && s >= 1 && t >= 1,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::contract(format!("{} is not covered by claim {}", spec.descriptor(), self.id())))
        }
    }

    /// Parameter grid swept when no spec is given.
    pub fn default_specs(self) -> Vec<SequenceSpec> {
        let mk = |f| SequenceSpec::new(f).expect("valid default spec");
        match self {
            Claim::AModPm => (1..=3)
                .flat_map(|r| (0..=3).map(move |s| Family::AFamily { r, s }))
                .map(mk)
                .collect(),
            Claim::DModPm => (1..=2)
                .flat_map(|r| (0..=2).flat_map(move |s| (0..=2).map(move |t| Family::DFamily { r, s, t })))
                .map(mk)
                .collect(),
            Claim::SporadicModP2m => sporadic_registry().to_vec(),
            Claim::DModP3m => (2..=3).map(|r| mk(Family::DFamily { r, s: 1, t: 1 })).collect(),
            Claim::HelouTerjanian | Claim::ScaledBinomial => Vec::new(),
        }
    }

    /// Cell grid used when no grid is given.
    pub fn default_grid(self) -> Grid {
        let primes: &[u64] = match self {
            Claim::SporadicModP2m => &[3, 5, 7],
            Claim::DModP3m => &[5, 7],
            _ => &[2, 3, 5, 7, 11],
        };
        self.grid_with_primes(primes).expect("default primes satisfy the claim")
    }

    /// The default grid shape over other primes. Primes below the claim's
    /// minimum are a contract error rather than silently dropped.
    pub fn grid_with_primes(self, primes: &[u64]) -> Result<Grid> {
        for &p in primes {
            require_prime(p)?;
            if p < self.min_prime() {
                return Err(Error::contract(format!("{self} needs p >= {}, got {p}", self.min_prime())));
            }
        }
        Ok(match self {
            Claim::SporadicModP2m => Grid::product(1..=3, primes, 1..=2, 150),
            Claim::DModP3m => Grid::product(1..=3, primes, 1..=1, 200),
            Claim::HelouTerjanian => Grid::lemma(primes, false),
            Claim::ScaledBinomial => Grid::lemma(primes, true),
            _ => Grid::product(1..=5, primes, 1..=2, 200),
        })
    }
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// The seven sporadic sequences covered by the p^{2m} supercongruence:
/// Apéry, Apéry of the second kind, Zagier, Domb, Franel of orders 3 and 4,
/// and D(n,2,1,0).
pub fn sporadic_registry() -> [SequenceSpec; 7] {
    [
        Family::AFamily { r: 2, s: 2 },
        Family::AFamily { r: 2, s: 1 },
        Family::DFamily { r: 1, s: 1, t: 1 },
        Family::DFamily { r: 2, s: 1, t: 1 },
        Family::AFamily { r: 3, s: 0 },
        Family::AFamily { r: 4, s: 0 },
        Family::DFamily { r: 2, s: 1, t: 0 },
    ]
    .map(|f| SequenceSpec::new(f).expect("registered spec"))
}

/// One (n, p, m) trial. For the lemma claims `m` is the lower binomial
/// argument (m or λ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub n: u64,
    pub p: u64,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub cells: Vec<Cell>,
}

impl Default for Grid {
    /// p in {2,3,5,7,11}, m in {1,2}, n in 1..=5, capped at n p^m <= 200.
    fn default() -> Self {
        Grid::product(1..=5, &[2, 3, 5, 7, 11], 1..=2, 200)
    }
}

impl Grid {
    pub fn product(
        ns: impl IntoIterator<Item = u64> + Clone,
        primes: &[u64],
        ms: impl IntoIterator<Item = u64> + Clone,
        cap: u64,
    ) -> Grid {
        let mut cells = Vec::new();
        for &p in primes {
            for m in ms.clone() {
                for n in ns.clone() {
                    let top = u32::try_from(m).ok().and_then(|e| p.checked_pow(e)).and_then(|pm| pm.checked_mul(n));
                    if top.is_some_and(|t| t <= cap) {
                        cells.push(Cell { n, p, m });
                    }
                }
            }
        }
        cells.sort();
        Grid { cells }
    }

    /// Every (n, m, p) with n <= 60, p in {2,3,5,7,11} and m <= n. With
    /// `scaled`, n runs over multiples of p and m over λ with λp <= n.
    pub fn lemma_default(scaled: bool) -> Grid {
        Grid::lemma(&[2, 3, 5, 7, 11], scaled)
    }

    /// As [`Grid::lemma_default`] over the given primes.
    pub fn lemma(primes: &[u64], scaled: bool) -> Grid {
        let mut cells = Vec::new();
        for &p in primes {
            for n in 0..=60 {
                if scaled && n % p != 0 {
                    continue;
                }
                let top = if scaled { n / p } else { n };
                cells.extend((0..=top).map(|m| Cell { n, p, m }));
            }
        }
        Grid { cells }
    }

    /// Drops cells whose prime is below `min_p`.
    pub fn restricted_to(&self, min_p: u64) -> Grid {
        Grid { cells: self.cells.iter().copied().filter(|c| c.p >= min_p).collect() }
    }
}

/// A line of a grid file: `<spec> <n> <p> <m>`, separated by whitespace.
/// Blank lines and lines starting with `#` are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridEntry {
    pub spec: SequenceSpec,
    pub cell: Cell,
}

pub fn parse_grid_file(text: &str) -> Result<Vec<GridEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::contract(format!("grid file line {}: {reason}", i + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [spec, n, p, m] = fields[..] else {
            return Err(bad(format!("expected `<spec> <n> <p> <m>`, got `{line}`")));
        };
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad(format!("`{s}` is not a non-negative integer")));
        out.push(GridEntry {
            spec: SequenceSpec::parse(spec).map_err(|e| bad(e.to_string()))?,
            cell: Cell { n: num(n)?, p: num(p)?, m: num(m)? },
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceResult {
    pub claim: Claim,
    /// Descriptor of the swept sequence; absent for the binomial lemmas.
    pub spec: Option<String>,
    pub n: u64,
    pub p: u64,
    pub m: u64,
    /// Power of p used as modulus; absent when the modulus is p^∞.
    pub modulus_exponent: Option<u64>,
    pub witness: CongruenceWitness,
}

impl CongruenceResult {
    pub fn holds(&self) -> bool {
        self.witness.holds
    }
}

fn sequence_cell(claim: Claim, seq: &Sequence, cell: Cell) -> Result<CongruenceResult> {
    let Cell { n, p, m } = cell;
    if n == 0 || m == 0 {
        return Err(Error::contract(format!("{}: n and m must be positive (n = {n}, m = {m})", claim.id())));
    }
    require_prime(p)?;
    if p < claim.min_prime() {
        return Err(Error::contract(format!("{} needs p >= {}, got {p}", claim.id(), claim.min_prime())));
    }
    let hi = u32::try_from(m)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .and_then(|pm| pm.checked_mul(n))
        .filter(|&i| i <= MAX_INDEX)
        .ok_or_else(|| Error::OutOfRange { index: n, reason: format!("{n}·{p}^{m} is beyond the evaluable range") })?;
    let k = u64::from(claim.exponent_factor().expect("sequence claim"));
    let exp = k * m;
    let modulus = num_traits::pow(BigInt::from(p), exp as usize);
    Ok(CongruenceResult {
        claim,
        spec: Some(seq.spec().descriptor()),
        n,
        p,
        m,
        modulus_exponent: Some(exp),
        witness: CongruenceWitness::new(seq.eval(hi)?, seq.eval(hi / p)?, modulus),
    })
}

fn lemma_cell(claim: Claim, cell: Cell) -> Result<CongruenceResult> {
    let Cell { n, p, m } = cell;
    let witness = match claim {
        Claim::HelouTerjanian => helou_terjanian_check(n, m, p)?,
        Claim::ScaledBinomial => scaled_binomial_check(n, m, p)?,
        _ => unreachable!("sequence claim"),
    };
    let modulus_exponent = if witness.is_exact() {
        None
    } else {
        Some(crate::arith::valuation(&witness.modulus, p).finite().expect("finite modulus"))
    };
    Ok(CongruenceResult { claim, spec: None, n, p, m, modulus_exponent, witness })
}

/// Runs `claim` for `spec` on every cell of `grid`, in grid order.
pub fn sweep(claim: Claim, spec: &SequenceSpec, grid: &Grid) -> Result<Vec<CongruenceResult>> {
    claim.admits(spec)?;
    let seq = Sequence::shared(*spec);
    // fill the memo once so workers only read
    if let Some(top) = grid.cells.iter().filter_map(|c| u32::try_from(c.m).ok().and_then(|e| c.p.checked_pow(e)).and_then(|pm| pm.checked_mul(c.n))).max() {
        if top <= MAX_INDEX {
            seq.ensure(top)?;
        }
    }
    grid.cells.par_iter().map(|&c| sequence_cell(claim, &seq, c)).collect()
}

/// Runs one of the binomial lemmas on every cell of `grid`.
pub fn sweep_lemma(claim: Claim, grid: &Grid) -> Result<Vec<CongruenceResult>> {
    if claim.is_sequence_claim() {
        return Err(Error::contract(format!("{} is not a binomial lemma", claim.id())));
    }
    grid.cells.par_iter().map(|&c| lemma_cell(claim, c)).collect()
}

fn spec_of(family: Family) -> Result<SequenceSpec> {
    SequenceSpec::new(family)
}

pub fn sweep_a_mod_pm(r: u32, s: u32, grid: &Grid) -> Result<Vec<CongruenceResult>> {
    sweep(Claim::AModPm, &spec_of(Family::AFamily { r, s })?, grid)
}

/// Rejects specs outside the registry and any cell with p = 2.
pub fn sweep_sporadic(spec: &SequenceSpec, grid: &Grid) -> Result<Vec<CongruenceResult>> {
    sweep(Claim::SporadicModP2m, spec, grid)
}

pub fn sweep_d_mod_pm(r: u32, s: u32, t: u32, grid: &Grid) -> Result<Vec<CongruenceResult>> {
    sweep(Claim::DModPm, &spec_of(Family::DFamily { r, s, t })?, grid)
}

/// Rejects r < 2, s = 0, t = 0 and any cell with p < 5.
pub fn sweep_d_mod_p3m(r: u32, s: u32, t: u32, grid: &Grid) -> Result<Vec<CongruenceResult>> {
    sweep(Claim::DModP3m, &spec_of(Family::DFamily { r, s, t })?, grid)
}

/// Runs each grid-file entry under `claim`, in file order.
pub fn sweep_entries(claim: Claim, entries: &[GridEntry]) -> Result<Vec<CongruenceResult>> {
    entries
        .par_iter()
        .map(|e| {
            if claim.is_sequence_claim() {
                claim.admits(&e.spec)?;
                sequence_cell(claim, &Sequence::shared(e.spec), e.cell)
            } else {
                lemma_cell(claim, e.cell)
            }
        })
        .collect()
}

/// Every claim's default specs on its default grid.
pub fn sweep_defaults(claim: Claim) -> Result<Vec<CongruenceResult>> {
    let grid = claim.default_grid();
    if !claim.is_sequence_claim() {
        return sweep_lemma(claim, &grid);
    }
    let mut out = Vec::new();
    for spec in claim.default_specs() {
        out.extend(sweep(claim, &spec, &grid)?);
    }
    Ok(out)
}

/// Fails with a generator defect naming the first cell that does not hold.
pub fn require_all_hold(results: &[CongruenceResult]) -> Result<()> {
    match results.iter().find(|r| !r.holds()) {
        None => Ok(()),
        Some(r) => Err(Error::GeneratorDefect {
            family: r.spec.clone().unwrap_or_else(|| "binomial".into()),
            reason: format!(
                "{} fails at n = {}, p = {}, m = {}: residue {} mod {}",
                r.claim, r.n, r.p, r.m, r.witness.residue, r.witness.modulus
            ),
        }),
    }
}
