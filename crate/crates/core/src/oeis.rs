//! OEIS b-files: parsing, bundled fixtures, an on-disk cache and
//! cross-checks of the generators against published terms.
//!
//! Nothing here touches the network unless the crate is built with the
//! `network` feature and the caller opts in.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::{Family, Sequence, SequenceSpec};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "SEQLAB_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    BundledFixture,
    Cache,
    Network,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BFile {
    /// `A` followed by six digits; empty if the text did not name one.
    pub a_number: String,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: Vec<(i64, BigInt)>,
    pub source: Source,
}

fn serialize_entries<S: serde::Serializer>(e: &[(i64, BigInt)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(e.len()))?;
    for (i, v) in e {
        seq.serialize_element(&(i, v.to_string()))?;
    }
    seq.end()
}

impl BFile {
    pub fn get(&self, index: i64) -> Option<&BigInt> {
        self.entries.binary_search_by_key(&index, |(i, _)| *i).ok().map(|k| &self.entries[k].1)
    }

    pub fn first_index(&self) -> Option<i64> {
        self.entries.first().map(|(i, _)| *i)
    }

    /// b-file text with a one-line comment header.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.a_number.is_empty() {
            out.push_str(&format!("# {}\n", self.a_number));
        }
        for (i, v) in &self.entries {
            out.push_str(&format!("{i} {v}\n"));
        }
        out
    }
}

fn is_a_number(s: &str) -> bool {
    s.len() == 7 && s.starts_with('A') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

/// Normalizes `a5259`, `A005259` or `5259` to `A005259`.
pub fn normalize_a_number(text: &str) -> Result<String> {
    let t = text.trim();
    let digits = t.strip_prefix(['A', 'a']).unwrap_or(t);
    match digits.parse::<u32>() {
        Ok(n) if n < 1_000_000 && !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
            Ok(format!("A{n:06}"))
        }
        _ => Err(Error::contract(format!("`{text}` is not an OEIS A-number"))),
    }
}

/// Parses b-file text: `#` comment lines and `index value` data lines.
/// The A-number is taken from the first comment that starts with one.
pub fn parse_bfile(text: &str) -> Result<BFile> {
    let mut a_number = String::new();
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if a_number.is_empty() {
                if let Some(tok) = comment.split(|c: char| c.is_whitespace() || c == ':').find(|t| !t.is_empty()) {
                    if is_a_number(tok) {
                        a_number = tok.to_string();
                    }
                }
            }
            continue;
        }
        let bad = |reason: String| Error::BFileParse { line: line_no, reason };
        let mut toks = line.split_whitespace();
        let (Some(idx), Some(val), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(bad(format!("expected `index value`, got `{line}`")));
        };
        let idx: i64 = idx.parse().map_err(|_| bad(format!("index `{idx}` is not an integer")))?;
        let val: BigInt = val.parse().map_err(|_| bad(format!("value `{val}` is not an integer")))?;
        if let Some(&(prev, _)) = entries.last() {
            if idx == prev {
                return Err(bad(format!("duplicate index {idx}")));
            }
            if idx < prev {
                return Err(bad(format!("index {idx} follows {prev}")));
            }
        }
        entries.push((idx, val));
    }
    Ok(BFile { a_number, entries, source: Source::Text })
}

macro_rules! fixtures {
    ($($a:literal),* $(,)?) => {
        &[$(($a, include_str!(concat!("../fixtures/b", $a, ".txt")))),*]
    };
}

/// (A-number digits, b-file text) for every bundled fixture.
const FIXTURES: &[(&str, &str)] = fixtures!(
    "000032", "000041", "000045", "000079", "000108", "000110", "000166", "000172", "000203", "000225", "000244",
    "000254", "000364", "000984", "001003", "001006", "001067", "001157", "001158", "001850", "002426", "002445",
    "002893", "002895", "005258", "005259", "005260", "005725", "006318", "006953", "053175", "054783", "062510",
    "081085", "122045", "226158",
);

pub fn bundled_a_numbers() -> impl Iterator<Item = String> {
    FIXTURES.iter().map(|(d, _)| format!("A{d}"))
}

pub fn bundled(a_number: &str) -> Option<BFile> {
    let a = normalize_a_number(a_number).ok()?;
    FIXTURES.iter().find(|(d, _)| d == &&a[1..]).map(|(_, text)| {
        let mut b = parse_bfile(text).expect("bundled fixtures parse");
        b.a_number = a;
        b.source = Source::BundledFixture;
        b
    })
}

/// Where b-files come from: fixtures, then the cache, then (opt-in) oeis.org.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub cache_dir: Option<PathBuf>,
    pub allow_network: bool,
}

impl Corpus {
    /// Cache directory from `SEQLAB_CACHE_DIR`; network off.
    pub fn from_env() -> Self {
        Corpus { cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from), allow_network: false }
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        Corpus { cache_dir: Some(dir.into()), allow_network: false }
    }

    fn cache_path(&self, a: &str) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("b{}.txt", &a[1..])))
    }

    pub fn cached(&self, a_number: &str) -> Result<Option<BFile>> {
        let a = normalize_a_number(a_number)?;
        let Some(path) = self.cache_path(&a) else { return Ok(None) };
        match fs::read_to_string(&path) {
            Ok(text) => {
                let mut b = parse_bfile(&text)?;
                b.a_number = a;
                b.source = Source::Cache;
                Ok(Some(b))
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes `bfile` into the cache by renaming a fully written temp file.
    pub fn store(&self, bfile: &BFile) -> Result<PathBuf> {
        let a = normalize_a_number(&bfile.a_number)?;
        let path = self.cache_path(&a).ok_or_else(|| Error::contract("no cache directory configured"))?;
        let dir = path.parent().expect("cache file has a parent");
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".b{}.{}.tmp", &a[1..], std::process::id()));
        fs::write(&tmp, BFile { a_number: a, ..bfile.clone() }.to_text())?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Bundled fixture, else cache, else network when allowed.
    pub fn fetch(&self, a_number: &str) -> Result<BFile> {
        let a = normalize_a_number(a_number)?;
        if let Some(b) = bundled(&a) {
            return Ok(b);
        }
        if let Some(b) = self.cached(&a)? {
            return Ok(b);
        }
        if !self.allow_network {
            return Err(Error::NetworkDisabled(a));
        }
        let text = download(&a)?;
        let mut b = parse_bfile(&text)?;
        b.a_number = a;
        if self.cache_dir.is_some() {
            self.store(&b)?;
        }
        b.source = Source::Network;
        Ok(b)
    }
}

#[cfg(feature = "network")]
fn download(a: &str) -> Result<String> {
    let url = format!("https://oeis.org/{a}/b{}.txt", &a[1..]);
    match ureq::get(&url).call() {
        Ok(resp) => resp.into_string().map_err(|e| Error::Network(e.to_string())),
        Err(ureq::Error::Status(404, _)) => Err(Error::NotFound(a.to_string())),
        Err(e) => Err(Error::Network(e.to_string())),
    }
}

#[cfg(not(feature = "network"))]
fn download(a: &str) -> Result<String> {
    Err(Error::Network(format!("{a}: built without the `network` feature")))
}

/// Reads a b-file from disk.
pub fn read_bfile(path: &Path) -> Result<BFile> {
    parse_bfile(&fs::read_to_string(path)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: u64,
    pub oeis_index: i64,
    #[serde(with = "crate::json::bigint")]
    pub ours: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub theirs: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossVerdict {
    Match,
    ValueMismatch,
    /// Values agree after shifting the index: the mapping is wrong, not the generator.
    ProbableOffsetError,
    /// The b-file has no entry at any index we would compare.
    NoOverlap,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub descriptor: String,
    pub a_number: String,
    pub source: Source,
    pub compared: u64,
    pub verdict: CrossVerdict,
    pub first_mismatch: Option<Mismatch>,
    /// Index shift that aligns at least ten terms, when one exists.
    pub probable_shift: Option<i64>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.verdict == CrossVerdict::Match
    }
}

/// Fewest aligned terms that count as evidence of an offset error.
const SHIFT_EVIDENCE: usize = 10;

/// Compares up to `max_terms` terms from the family offset (and n >= 1) with
/// the b-file entries at the linked OEIS indices, stopping at the first
/// mismatch.
pub fn cross_check(spec: &SequenceSpec, bfile: &BFile, max_terms: u64) -> Result<CrossCheck> {
    let link = spec
        .oeis()
        .ok_or_else(|| Error::contract(format!("{} has no OEIS link", spec.descriptor())))?;
    if !bfile.a_number.is_empty() && bfile.a_number != link.a_number {
        return Err(Error::contract(format!(
            "{} is linked to {}, not {}",
            spec.descriptor(),
            link.a_number,
            bfile.a_number
        )));
    }
    let seq = Sequence::shared(*spec);
    let norm = |v: BigInt| if link.absolute { v.abs() } else { v };
    let start = spec.offset().max(1);
    // every linked index the b-file covers; gaps (including a missing
    // first index) are skipped, not treated as the end of the file
    let last = bfile.entries.last().map(|e| e.0);
    let indices: Vec<u64> = (start..)
        .take_while(|&n| last.is_some_and(|l| link.oeis_index(n) <= l))
        .filter(|&n| bfile.get(link.oeis_index(n)).is_some())
        .take(max_terms as usize)
        .collect();
    let ours: Vec<BigInt> = match indices.last() {
        Some(&hi) => seq.terms(start, hi)?,
        None => Vec::new(),
    };
    let ours_at = |n: u64| &ours[(n - start) as usize];
    let mut compared = 0;
    let mut first_mismatch = None;
    for &n in &indices {
        compared += 1;
        let theirs = norm(bfile.get(link.oeis_index(n)).expect("index present").clone());
        if *ours_at(n) != theirs {
            first_mismatch = Some(Mismatch { n, oeis_index: link.oeis_index(n), ours: ours_at(n).clone(), theirs });
            break;
        }
    }
    let probable_shift = first_mismatch.as_ref().and_then(|_| {
        (-3i64..=3).filter(|&s| s != 0).find(|&s| {
            let shifted = |n: u64| bfile.get(link.oeis_index(n) + s * link.scale as i64).map(|t| norm(t.clone()));
            let aligned = (start..=indices.last().copied().unwrap_or(0))
                .skip_while(|&n| shifted(n).is_none())
                .take_while(|&n| shifted(n).as_ref() == Some(ours_at(n)))
                .count();
            aligned >= SHIFT_EVIDENCE
        })
    });
    let verdict = match (&first_mismatch, probable_shift) {
        _ if compared == 0 => CrossVerdict::NoOverlap,
        (None, _) => CrossVerdict::Match,
        (Some(_), Some(_)) => CrossVerdict::ProbableOffsetError,
        (Some(_), None) => CrossVerdict::ValueMismatch,
    };
    Ok(CrossCheck {
        descriptor: spec.descriptor(),
        a_number: link.a_number.to_string(),
        source: bfile.source,
        compared,
        verdict,
        first_mismatch,
        probable_shift,
    })
}

/// Every spec with an OEIS link: the aliases plus representative
/// parameterized members.
pub fn registered_pairs() -> Vec<(SequenceSpec, &'static str)> {
    let extra = [
        Family::AFamily { r: 1, s: 0 },
        Family::AFamily { r: 3, s: 0 },
        Family::AFamily { r: 4, s: 0 },
        Family::TFamily { r: 1, s: 0, t: 1, u: 0 },
        Family::StirlingFirst { k: 2 },
        Family::StirlingSecond { k: 2 },
        Family::DivisorSigma { k: 1 },
        Family::DivisorSigma { k: 2 },
        Family::DivisorSigma { k: 3 },
        Family::Power { d: 2 },
        Family::Power { d: 3 },
    ];
    let mut specs: Vec<SequenceSpec> = crate::seq::spec::known_aliases()
        .map(|a| SequenceSpec::parse(a).expect("alias parses"))
        .chain(extra.into_iter().map(|f| SequenceSpec::new(f).expect("valid spec")))
        .collect();
    specs.sort();
    specs.dedup();
    specs.into_iter().filter_map(|s| s.oeis().map(|l| (s, l.a_number))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        let b = parse_bfile("1 5\n2 73\n").unwrap();
        assert_eq!(b.entries, vec![(1, BigInt::from(5)), (2, BigInt::from(73))]);
        let b = parse_bfile("# comment\n0 1\n").unwrap();
        assert_eq!(b.entries, vec![(0, BigInt::from(1))]);
        assert!(matches!(parse_bfile("1 5\n1 6\n"), Err(Error::BFileParse { line: 2, .. })));
        assert!(matches!(parse_bfile("2 5\n1 6\n"), Err(Error::BFileParse { line: 2, .. })));
        assert!(matches!(parse_bfile("1 5x\n"), Err(Error::BFileParse { line: 1, .. })));
        assert!(matches!(parse_bfile("# x\n\n1\n"), Err(Error::BFileParse { line: 3, .. })));
        assert_eq!(parse_bfile("# A005259: Apery\n0 1\n").unwrap().a_number, "A005259");
    }

    #[test]
    fn a_numbers() {
        assert_eq!(normalize_a_number("a5259").unwrap(), "A005259");
        assert!(normalize_a_number("B12").is_err());
        assert!(normalize_a_number("A1234567").is_err());
    }

    #[test]
    fn fetch_order() {
        let dir = std::env::temp_dir().join(format!("seqlab-oeis-unit-{}", std::process::id()));
        let corpus = Corpus::with_cache_dir(&dir);
        assert_eq!(corpus.fetch("A005259").unwrap().source, Source::BundledFixture);
        assert!(matches!(corpus.fetch("A999999"), Err(Error::NetworkDisabled(_))));
        let fake = BFile { a_number: "A999999".into(), entries: vec![(1, BigInt::from(7))], source: Source::Text };
        corpus.store(&fake).unwrap();
        let back = corpus.fetch("A999999").unwrap();
        assert_eq!((back.source, back.entries.clone()), (Source::Cache, fake.entries));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn cross_checks() {
        let apery = SequenceSpec::parse("apery").unwrap();
        let c = cross_check(&apery, &bundled("A005259").unwrap(), 30).unwrap();
        assert!(c.passed() && c.compared == 30);
        let lucas = SequenceSpec::parse("lucas").unwrap();
        assert!(cross_check(&lucas, &bundled("A000032").unwrap(), 50).unwrap().passed());

        // the same terms one index later look like an offset error
        let mut shifted = bundled("A005259").unwrap();
        for e in &mut shifted.entries {
            e.0 += 1;
        }
        let c = cross_check(&apery, &shifted, 30).unwrap();
        assert_eq!((c.verdict, c.probable_shift), (CrossVerdict::ProbableOffsetError, Some(1)));

        let mut broken = bundled("A005259").unwrap();
        broken.entries[5].1 += 1;
        let c = cross_check(&apery, &broken, 30).unwrap();
        assert_eq!(c.verdict, CrossVerdict::ValueMismatch);
        assert_eq!(c.first_mismatch.unwrap().n, 5);
    }
}
