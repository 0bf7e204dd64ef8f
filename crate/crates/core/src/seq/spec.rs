//! Sequence descriptors: family tags, parameters, offsets, names and OEIS
//! links, plus the string form accepted on the command line.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Every sequence family the toolkit can generate. Parameters are the
/// exponents of the defining binomial sums, or the family-specific constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Σ binom(n,k)^r binom(n+k,k)^s
    AFamily { r: u32, s: u32 },
    /// Σ binom(n,k)^r binom(2k,k)^s binom(2(n-k),n-k)^t
    DFamily { r: u32, s: u32, t: u32 },
    /// Σ binom(n,k)^r binom(n+k,k)^s binom(2k,k)^t binom(2(n-k),n-k)^u
    CFamily { r: u32, s: u32, t: u32, u: u32 },
    /// Σ binom(n,2k)^r binom(n+k,k)^s binom(2k,k)^t binom(2(n-k),n-k)^u
    TFamily { r: u32, s: u32, t: u32, u: u32 },
    /// Σ binom(n,k)^r1 binom(n,2k)^r2 binom(n+k,k)^s binom(2k,k)^t binom(2(n-k),n-k)^u, 0^0 = 1
    VFamily { r1: u32, r2: u32, s: u32, t: u32, u: u32 },
    CatalanLarcombeFrench,
    CentralTrinomial,
    Catalan,
    Motzkin,
    LargeSchroder,
    LittleSchroder,
    Bell,
    Derangements,
    /// n ↦ S1(n + k - 1, k), unsigned
    StirlingFirst { k: u32 },
    /// n ↦ S2(n + k - 1, k)
    StirlingSecond { k: u32 },
    /// U_1 = a, U_2 = b, U_{n+2} = U_{n+1} + U_n
    TwoTerm { a: u64, b: u64 },
    FibonacciSquares,
    /// (-1)^n E_{2n}
    Secant,
    /// denominator of B_{2n}
    BernoulliDenominator,
    /// numerator of |B_{2n} / 2n|
    BernoulliTau,
    /// denominator of |B_{2n} / 2n|
    BernoulliEta,
    /// e_n = (-1)^n G_{2n}
    Genocchi,
    DivisorSigma { k: u32 },
    /// 2^n - 1
    Mersenne,
    /// |(-2)^n - 1|
    NegTwo,
    Power { d: u64 },
    Constant { c: u64 },
    Identity,
    Partitions,
}

/// Maps a sequence index `n` to the OEIS index `scale * n + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OeisLink {
    pub a_number: &'static str,
    pub scale: u64,
    pub shift: i64,
    /// Compare absolute values (signed OEIS entries such as A001067).
    pub absolute: bool,
}

impl OeisLink {
    const fn plain(a_number: &'static str) -> Self {
        OeisLink { a_number, scale: 1, shift: 0, absolute: false }
    }

    pub fn oeis_index(&self, n: u64) -> i64 {
        (self.scale * n) as i64 + self.shift
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SequenceSpec {
    #[serde(flatten)]
    pub family: Family,
}

struct FamilyInfo {
    key: &'static str,
    params: &'static [&'static str],
}

const FAMILY_KEYS: &[FamilyInfo] = &[
    FamilyInfo { key: "a-family", params: &["r", "s"] },
    FamilyInfo { key: "d-family", params: &["r", "s", "t"] },
    FamilyInfo { key: "c-family", params: &["r", "s", "t", "u"] },
    FamilyInfo { key: "t-family", params: &["r", "s", "t", "u"] },
    FamilyInfo { key: "v-family", params: &["r1", "r2", "s", "t", "u"] },
    FamilyInfo { key: "stirling1", params: &["k"] },
    FamilyInfo { key: "stirling2", params: &["k"] },
    FamilyInfo { key: "two-term", params: &["a", "b"] },
    FamilyInfo { key: "sigma", params: &["k"] },
    FamilyInfo { key: "power", params: &["d"] },
    FamilyInfo { key: "const", params: &["c"] },
    FamilyInfo { key: "franel", params: &["r"] },
];

/// Parameterless names and aliases with their canonical family.
const ALIASES: &[(&str, Family)] = &[
    ("apery1", Family::AFamily { r: 2, s: 2 }),
    ("apery", Family::AFamily { r: 2, s: 2 }),
    ("apery2", Family::AFamily { r: 2, s: 1 }),
    ("delannoy", Family::AFamily { r: 1, s: 1 }),
    ("central-binomial", Family::AFamily { r: 2, s: 0 }),
    ("domb", Family::DFamily { r: 2, s: 1, t: 1 }),
    ("zagier", Family::DFamily { r: 1, s: 1, t: 1 }),
    ("d210", Family::DFamily { r: 2, s: 1, t: 0 }),
    ("quadrinomial", Family::VFamily { r1: 1, r2: 1, s: 0, t: 0, u: 0 }),
    ("clf", Family::CatalanLarcombeFrench),
    ("trinomial", Family::CentralTrinomial),
    ("catalan", Family::Catalan),
    ("motzkin", Family::Motzkin),
    ("schroder", Family::LargeSchroder),
    ("little-schroder", Family::LittleSchroder),
    ("bell", Family::Bell),
    ("derangements", Family::Derangements),
    ("fibonacci", Family::TwoTerm { a: 1, b: 1 }),
    ("lucas", Family::TwoTerm { a: 1, b: 3 }),
    ("fib-squares", Family::FibonacciSquares),
    ("euler", Family::Secant),
    ("secant", Family::Secant),
    ("bernoulli-denom", Family::BernoulliDenominator),
    ("bernoulli-tau", Family::BernoulliTau),
    ("bernoulli-eta", Family::BernoulliEta),
    ("genocchi", Family::Genocchi),
    ("mersenne", Family::Mersenne),
    ("neg2", Family::NegTwo),
    ("const1", Family::Constant { c: 1 }),
    ("identity", Family::Identity),
    ("partitions", Family::Partitions),
];

impl SequenceSpec {
    /// Validates parameters (r >= 1 where the sums require it).
    pub fn new(family: Family) -> Result<Self> {
        let bad = |reason: &str| {
            Err(Error::InvalidSpec { spec: SequenceSpec { family }.descriptor(), reason: reason.into() })
        };
        match family {
            Family::AFamily { r, .. }
            | Family::DFamily { r, .. }
            | Family::CFamily { r, .. }
            | Family::TFamily { r, .. }
                if r == 0 =>
            {
                bad("r must be at least 1")
            }
            Family::VFamily { r1, r2, .. } if r1 + r2 == 0 => bad("r1 + r2 must be at least 1"),
            Family::StirlingFirst { k } | Family::StirlingSecond { k } if k == 0 => bad("k must be at least 1"),
            Family::DivisorSigma { k: 0 } => bad("k must be at least 1"),
            Family::Power { d: 0 } => bad("d must be at least 1"),
            _ => Ok(SequenceSpec { family }),
        }
    }

    /// Parses `name` or `family:key=value,...`, case-insensitively.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let lower = trimmed.to_ascii_lowercase();
        let (name, args) = match lower.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a)),
            None => (lower.as_str(), None),
        };
        if args.is_none() {
            if let Some((_, fam)) = ALIASES.iter().find(|(alias, _)| *alias == name) {
                return SequenceSpec::new(*fam);
            }
        }
        let info = FAMILY_KEYS
            .iter()
            .find(|f| f.key == name)
            .ok_or_else(|| Error::UnknownFamily(trimmed.to_string()))?;
        let invalid = |reason: String| Error::InvalidSpec { spec: trimmed.to_string(), reason };
        let mut values: Vec<Option<u64>> = vec![None; info.params.len()];
        for pair in args.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| invalid(format!("expected key=value, got `{pair}`")))?;
            let slot = info
                .params
                .iter()
                .position(|p| *p == key.trim())
                .ok_or_else(|| invalid(format!("unknown parameter `{}`", key.trim())))?;
            let parsed: u64 = value
                .trim()
                .parse()
                .map_err(|_| invalid(format!("parameter `{key}` is not a non-negative integer")))?;
            values[slot] = Some(parsed);
        }
        if info.key == "franel" && values[0].is_none() {
            values[0] = Some(3);
        }
        let missing: Vec<&str> =
            info.params.iter().zip(&values).filter(|(_, v)| v.is_none()).map(|(p, _)| *p).collect();
        if !missing.is_empty() {
            return Err(invalid(format!("missing parameter(s) {}", missing.join(", "))));
        }
        let v: Vec<u64> = values.into_iter().map(Option::unwrap).collect();
        let small = |x: u64| u32::try_from(x).map_err(|_| invalid(format!("parameter {x} too large")));
        let family = match info.key {
            "a-family" => Family::AFamily { r: small(v[0])?, s: small(v[1])? },
            "d-family" => Family::DFamily { r: small(v[0])?, s: small(v[1])?, t: small(v[2])? },
            "c-family" => Family::CFamily { r: small(v[0])?, s: small(v[1])?, t: small(v[2])?, u: small(v[3])? },
            "t-family" => Family::TFamily { r: small(v[0])?, s: small(v[1])?, t: small(v[2])?, u: small(v[3])? },
            "v-family" => Family::VFamily {
                r1: small(v[0])?,
                r2: small(v[1])?,
                s: small(v[2])?,
                t: small(v[3])?,
                u: small(v[4])?,
            },
            "stirling1" => Family::StirlingFirst { k: small(v[0])? },
            "stirling2" => Family::StirlingSecond { k: small(v[0])? },
            "two-term" => Family::TwoTerm { a: v[0], b: v[1] },
            "sigma" => Family::DivisorSigma { k: small(v[0])? },
            "power" => Family::Power { d: v[0] },
            "const" => Family::Constant { c: v[0] },
            "franel" => Family::AFamily { r: small(v[0])?, s: 0 },
            _ => unreachable!("family table and match out of sync"),
        };
        SequenceSpec::new(family)
    }

    /// Canonical, parseable descriptor.
    pub fn descriptor(&self) -> String {
        use Family::*;
        match self.family {
            AFamily { r, s } => format!("a-family:r={r},s={s}"),
            DFamily { r, s, t } => format!("d-family:r={r},s={s},t={t}"),
            CFamily { r, s, t, u } => format!("c-family:r={r},s={s},t={t},u={u}"),
            TFamily { r, s, t, u } => format!("t-family:r={r},s={s},t={t},u={u}"),
            VFamily { r1, r2, s, t, u } => format!("v-family:r1={r1},r2={r2},s={s},t={t},u={u}"),
            StirlingFirst { k } => format!("stirling1:k={k}"),
            StirlingSecond { k } => format!("stirling2:k={k}"),
            TwoTerm { a, b } => format!("two-term:a={a},b={b}"),
            DivisorSigma { k } => format!("sigma:k={k}"),
            Power { d } => format!("power:d={d}"),
            Constant { c } => format!("const:c={c}"),
            fam => ALIASES
                .iter()
                .find(|(_, f)| *f == fam)
                .map(|(alias, _)| alias.to_string())
                .expect("every parameterless family has an alias"),
        }
    }

    /// Human-readable name.
    pub fn name(&self) -> String {
        use Family::*;
        match self.family {
            AFamily { r: 2, s: 2 } => "Apéry numbers".into(),
            AFamily { r: 2, s: 1 } => "Apéry numbers of the second kind".into(),
            AFamily { r: 1, s: 1 } => "central Delannoy numbers".into(),
            AFamily { r, s: 0 } => format!("Franel numbers of order {r}"),
            DFamily { r: 2, s: 1, t: 1 } => "Domb numbers".into(),
            DFamily { r: 1, s: 1, t: 1 } => "Zagier numbers".into(),
            VFamily { r1: 1, r2: 1, s: 0, t: 0, u: 0 } => "quadrinomial coefficients".into(),
            CatalanLarcombeFrench => "Catalan-Larcombe-French numbers".into(),
            CentralTrinomial => "central trinomial coefficients".into(),
            Catalan => "Catalan numbers".into(),
            Motzkin => "Motzkin numbers".into(),
            LargeSchroder => "large Schröder numbers".into(),
            LittleSchroder => "little Schröder numbers".into(),
            Bell => "Bell numbers".into(),
            Derangements => "derangement numbers".into(),
            StirlingFirst { k } => format!("S1(n+{}, {k})", k - 1),
            StirlingSecond { k } => format!("S2(n+{}, {k})", k - 1),
            TwoTerm { a: 1, b: 1 } => "Fibonacci numbers".into(),
            TwoTerm { a: 1, b: 3 } => "Lucas numbers".into(),
            TwoTerm { a, b } => format!("two-term recurrence U1={a}, U2={b}"),
            FibonacciSquares => "F(n^2)".into(),
            Secant => "(-1)^n E(2n)".into(),
            BernoulliDenominator => "denominator of B(2n)".into(),
            BernoulliTau => "numerator of |B(2n)/2n|".into(),
            BernoulliEta => "denominator of |B(2n)/2n|".into(),
            Genocchi => "(-1)^n G(2n)".into(),
            DivisorSigma { k } => format!("sigma_{k}"),
            Mersenne => "2^n - 1".into(),
            NegTwo => "|(-2)^n - 1|".into(),
            Power { d } => format!("{d}^n"),
            Constant { c } => format!("constant {c}"),
            Identity => "n".into(),
            Partitions => "partition numbers".into(),
            _ => self.descriptor(),
        }
    }

    /// First index at which the family is defined.
    pub fn offset(&self) -> u64 {
        use Family::*;
        match self.family {
            LittleSchroder | StirlingFirst { .. } | StirlingSecond { .. } | TwoTerm { .. } | FibonacciSquares
            | BernoulliDenominator | BernoulliTau | BernoulliEta | Genocchi | DivisorSigma { .. } => 1,
            _ => 0,
        }
    }

    /// Integer parameter tuple in declaration order.
    pub fn params(&self) -> Vec<u64> {
        use Family::*;
        match self.family {
            AFamily { r, s } => vec![r.into(), s.into()],
            DFamily { r, s, t } => vec![r.into(), s.into(), t.into()],
            CFamily { r, s, t, u } | TFamily { r, s, t, u } => vec![r.into(), s.into(), t.into(), u.into()],
            VFamily { r1, r2, s, t, u } => vec![r1.into(), r2.into(), s.into(), t.into(), u.into()],
            StirlingFirst { k } | StirlingSecond { k } | DivisorSigma { k } => vec![k.into()],
            TwoTerm { a, b } => vec![a, b],
            Power { d } => vec![d],
            Constant { c } => vec![c],
            _ => Vec::new(),
        }
    }

    pub fn oeis(&self) -> Option<OeisLink> {
        use Family::*;
        let link = match self.family {
            AFamily { r: 2, s: 2 } => OeisLink::plain("A005259"),
            AFamily { r: 2, s: 1 } => OeisLink::plain("A005258"),
            AFamily { r: 1, s: 1 } => OeisLink::plain("A001850"),
            AFamily { r: 1, s: 0 } => OeisLink::plain("A000079"),
            AFamily { r: 2, s: 0 } => OeisLink::plain("A000984"),
            AFamily { r: 3, s: 0 } => OeisLink::plain("A000172"),
            AFamily { r: 4, s: 0 } => OeisLink::plain("A005260"),
            DFamily { r: 2, s: 1, t: 1 } => OeisLink::plain("A002895"),
            DFamily { r: 1, s: 1, t: 1 } => OeisLink::plain("A081085"),
            DFamily { r: 2, s: 1, t: 0 } => OeisLink::plain("A002893"),
            TFamily { r: 1, s: 0, t: 1, u: 0 } | CentralTrinomial => OeisLink::plain("A002426"),
            VFamily { r1: 1, r2: 1, s: 0, t: 0, u: 0 } => OeisLink::plain("A005725"),
            CatalanLarcombeFrench => OeisLink::plain("A053175"),
            Catalan => OeisLink::plain("A000108"),
            Motzkin => OeisLink::plain("A001006"),
            LargeSchroder => OeisLink::plain("A006318"),
            LittleSchroder => OeisLink::plain("A001003"),
            Bell => OeisLink::plain("A000110"),
            Derangements => OeisLink::plain("A000166"),
            StirlingFirst { k: 2 } => OeisLink::plain("A000254"),
            StirlingSecond { k: 2 } => OeisLink::plain("A000225"),
            // U_1 = 1, U_2 = 1 and U_1 = 1, U_2 = 3 coincide with the OEIS
            // numbering, whose offset-0 terms (0 and 2) are never compared.
            TwoTerm { a: 1, b: 1 } => OeisLink::plain("A000045"),
            TwoTerm { a: 1, b: 3 } => OeisLink::plain("A000032"),
            FibonacciSquares => OeisLink::plain("A054783"),
            Secant => OeisLink::plain("A000364"),
            BernoulliDenominator => OeisLink::plain("A002445"),
            BernoulliTau => OeisLink { absolute: true, ..OeisLink::plain("A001067") },
            BernoulliEta => OeisLink::plain("A006953"),
            Genocchi => OeisLink { a_number: "A226158", scale: 2, shift: 0, absolute: true },
            DivisorSigma { k: 1 } => OeisLink::plain("A000203"),
            DivisorSigma { k: 2 } => OeisLink::plain("A001157"),
            DivisorSigma { k: 3 } => OeisLink::plain("A001158"),
            Mersenne => OeisLink::plain("A000225"),
            NegTwo => OeisLink::plain("A062510"),
            Power { d: 2 } => OeisLink::plain("A000079"),
            Power { d: 3 } => OeisLink::plain("A000244"),
            Partitions => OeisLink::plain("A000041"),
            _ => return None,
        };
        Some(link)
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl FromStr for SequenceSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SequenceSpec::parse(s)
    }
}

/// Every alias the parser accepts, for listings.
pub fn known_aliases() -> impl Iterator<Item = &'static str> {
    ALIASES.iter().map(|(a, _)| *a)
}

/// Parameterized family keys with their parameter names.
pub fn parameterized_families() -> impl Iterator<Item = (&'static str, &'static [&'static str])> {
    FAMILY_KEYS.iter().map(|f| (f.key, f.params))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_aliases_and_parameters() {
        assert_eq!(SequenceSpec::parse("apery1").unwrap().family, Family::AFamily { r: 2, s: 2 });
        assert_eq!(SequenceSpec::parse("A-family:r=2,s=2").unwrap().family, Family::AFamily { r: 2, s: 2 });
        assert_eq!(SequenceSpec::parse("franel").unwrap().family, Family::AFamily { r: 3, s: 0 });
        assert_eq!(
            SequenceSpec::parse("v-family:r1=1, r2=2, s=0, t=1, u=0").unwrap().family,
            Family::VFamily { r1: 1, r2: 2, s: 0, t: 1, u: 0 }
        );
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(SequenceSpec::parse("nope"), Err(Error::UnknownFamily(_))));
        assert!(matches!(SequenceSpec::parse("a-family:r=0,s=1"), Err(Error::InvalidSpec { .. })));
        assert!(matches!(SequenceSpec::parse("a-family:r=1"), Err(Error::InvalidSpec { .. })));
        assert!(matches!(SequenceSpec::parse("a-family:r=1,s=1,q=2"), Err(Error::InvalidSpec { .. })));
        assert!(matches!(SequenceSpec::parse("v-family:r1=0,r2=0,s=0,t=0,u=0"), Err(Error::InvalidSpec { .. })));
        assert!(SequenceSpec::parse("v-family:r1=0,r2=1,s=0,t=0,u=0").is_ok());
    }

    #[test]
    fn descriptors_round_trip() {
        let mut names: Vec<String> = known_aliases().map(str::to_string).collect();
        names.extend(["stirling2:k=4", "sigma:k=2", "two-term:a=2,b=6", "t-family:r=2,s=1,t=0,u=1"].map(String::from));
        for name in names {
            let spec = SequenceSpec::parse(&name).unwrap();
            assert_eq!(SequenceSpec::parse(&spec.descriptor()).unwrap(), spec, "{name}");
        }
    }
}
