//! Sign and Dold conditions on prefixes, `Fail(a)` lower bounds, and the
//! growth-based sign certificates.
//!
//! Everything here consumes the `n >= 1` view of a sequence. For families
//! defined from `n = 0` the term `a(0)` is never used; reports carry it in
//! `dropped_initial_term` so nothing is silently discarded.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, mobius_transform_at, CongruenceWitness};
use crate::error::{Error, Result};
use crate::seq::{Family, Sequence, SequenceSpec};

/// Values of g = μ∗a on 1..=n_max.
#[derive(Clone, Debug, Serialize)]
pub struct MobiusProfile {
    pub spec: SequenceSpec,
    pub n_max: u64,
    /// `values[i] = a(i + 1)`
    #[serde(with = "crate::json::bigint_vec")]
    pub values: Vec<BigInt>,
    /// `g[i] = (μ∗a)(i + 1)`
    #[serde(with = "crate::json::bigint_vec")]
    pub g: Vec<BigInt>,
}

impl MobiusProfile {
    pub fn g_at(&self, n: u64) -> &BigInt {
        &self.g[n as usize - 1]
    }

    /// Σ_{d|n} g(d) = a(n) for every n in the prefix.
    pub fn inversion_holds(&self) -> bool {
        crate::arith::divisor_sum(&self.g) == self.values
    }
}

pub fn profile(seq: &Sequence, n_max: u64) -> Result<MobiusProfile> {
    if n_max == 0 {
        return Err(Error::contract("prefix length must be at least 1"));
    }
    let values = seq.prefix(n_max)?;
    let g = (1..=n_max)
        .into_par_iter()
        .map(|n| mobius_transform_at(n, |d| Ok(values[d as usize - 1].clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(MobiusProfile { spec: *seq.spec(), n_max, values, g })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    RealizableOnPrefix,
    SignViolated,
    DoldViolatedOnly,
}

/// Index where `n ∤ g(n)`, with the cofactor `n / gcd(n, g(n))` that any
/// multiplier repairing this index must absorb.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoldFailure {
    pub n: u64,
    pub obstruction: u64,
}

/// Lower bound for `Fail(a)`, or the marker that no multiple can work.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum FailBound {
    Finite(#[serde(with = "crate::json::bigint")] BigInt),
    SignViolated,
}

impl FailBound {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            FailBound::Finite(b) => Some(b),
            FailBound::SignViolated => None,
        }
    }
}

impl std::fmt::Display for FailBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FailBound::Finite(b) => write!(f, "{b}"),
            FailBound::SignViolated => f.write_str("sign-violated"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizabilityReport {
    pub spec: SequenceSpec,
    pub descriptor: String,
    pub n_max: u64,
    pub sign_failures: Vec<u64>,
    pub dold_failures: Vec<DoldFailure>,
    pub verdict: Verdict,
    pub fail_lower_bound: FailBound,
    /// a(0) for families starting at n = 0; not part of the realizability view.
    #[serde(with = "crate::json::bigint_opt")]
    pub dropped_initial_term: Option<BigInt>,
}

fn obstruction(n: u64, g: &BigInt) -> u64 {
    let r = (g % BigInt::from(n)).abs();
    let r = u64::try_from(&r).expect("remainder below n");
    n / crate::arith::factor::gcd_u64(n, r)
}

fn report_from_profile(seq: &Sequence, p: &MobiusProfile) -> Result<RealizabilityReport> {
    let sign_failures: Vec<u64> = (1..=p.n_max).filter(|&n| p.g_at(n).is_negative()).collect();
    let dold_failures: Vec<DoldFailure> = (1..=p.n_max)
        .filter_map(|n| {
            let o = obstruction(n, p.g_at(n));
            (o != 1).then_some(DoldFailure { n, obstruction: o })
        })
        .collect();
    let verdict = match (sign_failures.is_empty(), dold_failures.is_empty()) {
        (true, true) => Verdict::RealizableOnPrefix,
        (false, _) => Verdict::SignViolated,
        (true, false) => Verdict::DoldViolatedOnly,
    };
    let fail_lower_bound = if sign_failures.is_empty() {
        FailBound::Finite(dold_failures.iter().fold(BigInt::one(), |acc, f| acc.lcm(&BigInt::from(f.obstruction))))
    } else {
        FailBound::SignViolated
    };
    let dropped_initial_term = if seq.offset() == 0 { Some(seq.eval(0)?) } else { None };
    Ok(RealizabilityReport {
        spec: *seq.spec(),
        descriptor: seq.spec().descriptor(),
        n_max: p.n_max,
        sign_failures,
        dold_failures,
        verdict,
        fail_lower_bound,
        dropped_initial_term,
    })
}

pub fn check_realizable(seq: &Sequence, n_max: u64) -> Result<RealizabilityReport> {
    let p = profile(seq, n_max)?;
    report_from_profile(seq, &p)
}

fn checked_index(n: u64, p: u64, m: u32) -> Option<u64> {
    p.checked_pow(m).and_then(|pm| n.checked_mul(pm)).filter(|&i| i <= crate::seq::MAX_INDEX)
}

/// a(n p^m) ≡ a(n p^{m-1}) (mod p^m).
pub fn dold_prime_power_form(seq: &Sequence, n: u64, p: u64, m: u32) -> Result<CongruenceWitness> {
    if n == 0 || m == 0 {
        return Err(Error::contract("n and m must be positive"));
    }
    crate::arith::padic::require_prime(p)?;
    let hi = checked_index(n, p, m).ok_or_else(|| Error::OutOfRange {
        index: n,
        reason: format!("{n}·{p}^{m} is beyond the evaluable range"),
    })?;
    let lo = hi / p;
    let modulus = num_traits::pow(BigInt::from(p), m as usize);
    Ok(CongruenceWitness::new(seq.eval(hi)?, seq.eval(lo)?, modulus))
}

/// Both forms of the Dold condition evaluated on a prefix.
#[derive(Clone, Debug, Serialize)]
pub struct DoldAudit {
    pub n_max: u64,
    pub divisor_form_holds: bool,
    pub prime_power_form_holds: bool,
    pub first_divisor_failure: Option<u64>,
    /// Smallest `n p^m` whose congruence fails.
    pub first_prime_power_failure: Option<u64>,
}

impl DoldAudit {
    pub fn agrees(&self) -> bool {
        self.divisor_form_holds == self.prime_power_form_holds
            && self.first_divisor_failure == self.first_prime_power_failure
    }
}

pub fn lemdold_audit(seq: &Sequence, n_max: u64) -> Result<DoldAudit> {
    let p = profile(seq, n_max)?;
    let first_divisor_failure = (1..=n_max).find(|&n| obstruction(n, p.g_at(n)) != 1);
    let a = |i: u64| &p.values[i as usize - 1];
    let mut first_pp: Option<u64> = None;
    for idx in 2..=n_max {
        let f = factorize(idx)?;
        for &(q, e) in &f.factors {
            let modulus = BigInt::from(q.pow(e));
            if !((a(idx) - a(idx / q)) % &modulus).is_zero() {
                first_pp.get_or_insert(idx);
            }
        }
        if first_pp.is_some() {
            break;
        }
    }
    Ok(DoldAudit {
        n_max,
        divisor_form_holds: first_divisor_failure.is_none(),
        prime_power_form_holds: first_pp.is_none(),
        first_divisor_failure,
        first_prime_power_failure: first_pp,
    })
}

/// True when both Dold forms reach the same verdict at the same first index.
pub fn lemdold_equivalence_audit(seq: &Sequence, n_max: u64) -> Result<bool> {
    Ok(lemdold_audit(seq, n_max)?.agrees())
}

/// Externally established values of `Fail(a)` for registered specs.
pub fn known_fail(spec: &SequenceSpec) -> Option<BigInt> {
    use Family::*;
    match spec.family {
        FibonacciSquares => Some(BigInt::from(5)),
        // with t = u = 0 the sum only sees binom(n, 2k) and the Dold
        // condition fails at n = 2 (T(n,1,0,0,0) = 2^(n-1))
        TFamily { t: 0, u: 0, .. } | VFamily { r1: 0, t: 0, u: 0, .. } => None,
        AFamily { .. } | DFamily { .. } | CFamily { .. } | TFamily { .. } | VFamily { .. }
        | CatalanLarcombeFrench | CentralTrinomial | Secant | BernoulliDenominator | BernoulliTau
        | BernoulliEta | DivisorSigma { .. } | Mersenne | NegTwo | Power { .. } | Constant { .. } => {
            Some(BigInt::one())
        }
        TwoTerm { a, b } if b == 3 * a => Some(BigInt::one()),
        StirlingSecond { k: 1 | 2 } => Some(BigInt::one()),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FailEstimate {
    pub descriptor: String,
    pub n_max: u64,
    pub lower_bound: FailBound,
    /// True only when a registered value for `Fail(a)` equals the bound.
    pub certified_exact: bool,
    /// Indices where the running lcm grew, with the new lcm.
    pub growth_points: Vec<(u64, u64)>,
    /// Distinct primes dividing the bound.
    pub witness_primes: Vec<u64>,
    /// Set when the bound has picked up at least three distinct primes.
    pub diverging: bool,
}

/// Smallest multiplier compatible with the Dold condition on the prefix.
/// Short-circuits when the sign condition fails, since scaling by m > 0
/// cannot repair it.
pub fn fail_estimate(seq: &Sequence, n_max: u64) -> Result<FailEstimate> {
    let p = profile(seq, n_max)?;
    let descriptor = seq.spec().descriptor();
    if p.g.iter().any(|g| g.is_negative()) {
        return Ok(FailEstimate {
            descriptor,
            n_max,
            lower_bound: FailBound::SignViolated,
            certified_exact: false,
            growth_points: Vec::new(),
            witness_primes: Vec::new(),
            diverging: false,
        });
    }
    let mut lcm = BigInt::one();
    let mut growth_points = Vec::new();
    for n in 1..=n_max {
        let o = obstruction(n, p.g_at(n));
        let next = lcm.lcm(&BigInt::from(o));
        if next != lcm {
            growth_points.push((n, u64::try_from(&next).unwrap_or(u64::MAX)));
            lcm = next;
        }
    }
    let mut primes = BTreeSet::new();
    for (n, _) in &growth_points {
        for q in factorize(obstruction(*n, p.g_at(*n)))?.primes() {
            primes.insert(q);
        }
    }
    let certified_exact = known_fail(seq.spec()).is_some_and(|k| k == lcm);
    Ok(FailEstimate {
        descriptor,
        n_max,
        diverging: primes.len() >= 3,
        witness_primes: primes.into_iter().collect(),
        lower_bound: FailBound::Finite(lcm),
        certified_exact,
        growth_points,
    })
}

/// Smallest growth constant accepted by [`growth_certificate`].
pub fn growth_threshold() -> BigRational {
    BigRational::new(BigInt::from(1221), BigInt::from(1000))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum Certificate {
    /// The condition holds on the whole prefix, so (μ∗a)(n) >= 0 there.
    Certified { n_max: u64 },
    Refused { first_violation: u64, reason: String },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified { .. })
    }
}

/// Checks a(n+1) >= C a(n) for 1 <= n < n_max with exact rational C >= 1.221.
pub fn growth_certificate(seq: &Sequence, n_max: u64, c: &BigRational) -> Result<Certificate> {
    if *c < growth_threshold() {
        return Err(Error::contract(format!("growth constant {c} is below 1.221")));
    }
    if n_max == 0 {
        return Err(Error::contract("prefix length must be at least 1"));
    }
    let values = seq.prefix(n_max)?;
    for n in 1..n_max {
        let (cur, next) = (&values[n as usize - 1], &values[n as usize]);
        if next * c.denom() < cur * c.numer() {
            return Ok(Certificate::Refused {
                first_violation: n,
                reason: format!("a({}) < {c}·a({n})", n + 1),
            });
        }
    }
    Ok(Certificate::Certified { n_max })
}

/// Non-decreasing on 1..=n_max and a(2n) >= n·a(n) whenever 2n <= n_max.
pub fn puri_certificate(seq: &Sequence, n_max: u64) -> Result<Certificate> {
    if n_max < 2 {
        return Err(Error::contract("prefix length must be at least 2"));
    }
    let values = seq.prefix(n_max)?;
    let a = |n: u64| &values[n as usize - 1];
    for n in 1..n_max {
        if a(n + 1) < a(n) {
            return Ok(Certificate::Refused { first_violation: n, reason: format!("a({}) < a({n})", n + 1) });
        }
    }
    for n in 1..=n_max / 2 {
        if *a(2 * n) < a(n) * n {
            return Ok(Certificate::Refused { first_violation: n, reason: format!("a({}) < {n}·a({n})", 2 * n) });
        }
    }
    Ok(Certificate::Certified { n_max })
}

/// Bracket `[lo, hi]` around the positive root of x^4 = x + 1, by exact
/// bisection until `hi - lo <= 2^-bits`.
pub fn quartic_root_bracket(bits: u32) -> (BigRational, BigRational) {
    let f = |x: &BigRational| {
        let x2 = x * x;
        &x2 * &x2 - x - BigRational::one()
    };
    let mut lo = BigRational::one();
    let mut hi = BigRational::from_integer(BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..bits {
        let mid = (&lo + &hi) / &two;
        if f(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Root of x^4 = x + 1 truncated to `digits` decimals.
pub fn quartic_root_decimal(digits: usize) -> String {
    // 4 bits per decimal digit, plus slack, keeps the truncation exact
    let (lo, hi) = quartic_root_bracket(4 * digits as u32 + 16);
    let scale = num_traits::pow(BigInt::from(10), digits);
    let lo_t = (lo * BigRational::from_integer(scale.clone())).floor().to_integer();
    let hi_t = (hi * BigRational::from_integer(scale)).floor().to_integer();
    debug_assert_eq!(lo_t, hi_t, "bracket straddles a decimal boundary");
    let s = lo_t.to_string();
    format!("{}.{}", &s[..s.len() - digits], &s[s.len() - digits..])
}

/// Finite checks on the partition numbers p(n).
#[derive(Clone, Debug, Serialize)]
pub struct PartitionProbe {
    /// p(2n) >= n p(n) was tested for 1 <= n <= this bound.
    pub doubling_checked_to: u64,
    pub first_doubling_failure: Option<u64>,
    /// (μ∗p)(n) >= 0 was tested for 1 <= n <= this bound.
    pub convolution_checked_to: u64,
    pub sign_failures: Vec<u64>,
    /// Smallest n with n ∤ (μ∗p)(n).
    pub first_dold_failure: Option<u64>,
    pub dold_failure_count: usize,
}

pub fn partition_probe(doubling_to: u64, convolution_to: u64) -> Result<PartitionProbe> {
    let seq = Sequence::shared(SequenceSpec::new(Family::Partitions)?);
    let values = seq.prefix((2 * doubling_to).max(convolution_to).max(1))?;
    let a = |n: u64| &values[n as usize - 1];
    let first_doubling_failure = (1..=doubling_to).find(|&n| *a(2 * n) < a(n) * n);
    let report = check_realizable(&seq, convolution_to)?;
    Ok(PartitionProbe {
        doubling_checked_to: doubling_to,
        first_doubling_failure,
        convolution_checked_to: convolution_to,
        sign_failures: report.sign_failures,
        first_dold_failure: report.dold_failures.first().map(|f| f.n),
        dold_failure_count: report.dold_failures.len(),
    })
}
