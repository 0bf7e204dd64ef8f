//! Prime witnesses against realizability: primes p for which
//! (μ∗a)(kp) is not divisible by p, so any multiplier repairing the Dold
//! condition must be divisible by p.
//!
//! Residues are computed from exact big-integer convolutions. Registered
//! claims are audited by a second path that evaluates every term modulo p
//! with its own recurrences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::padic::require_prime;
use crate::arith::{factorize, mobius, mobius_transform_at, primes_up_to};
use crate::error::{Error, Result};
use crate::seq::{Sequence, SequenceSpec};

/// Negative results with a known residue pattern at prime-indexed terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessClaim {
    Catalan,
    Motzkin,
    LargeSchroder,
    LittleSchroder,
    Bell,
    Derangements,
    Genocchi,
    Fibonacci,
}

impl WitnessClaim {
    pub const ALL: [WitnessClaim; 8] = [
        WitnessClaim::Catalan,
        WitnessClaim::Motzkin,
        WitnessClaim::LargeSchroder,
        WitnessClaim::LittleSchroder,
        WitnessClaim::Bell,
        WitnessClaim::Derangements,
        WitnessClaim::Genocchi,
        WitnessClaim::Fibonacci,
    ];

    pub fn id(self) -> &'static str {
        match self {
            WitnessClaim::Catalan => "catalan",
            WitnessClaim::Motzkin => "motzkin",
            WitnessClaim::LargeSchroder => "schroder",
            WitnessClaim::LittleSchroder => "little-schroder",
            WitnessClaim::Bell => "bell",
            WitnessClaim::Derangements => "derangements",
            WitnessClaim::Genocchi => "genocchi",
            WitnessClaim::Fibonacci => "fibonacci",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_lowercase();
        WitnessClaim::ALL
            .into_iter()
            .find(|c| c.id() == t)
            .ok_or_else(|| Error::contract(format!("no witness claim registered for `{text}`")))
    }

    pub fn for_spec(spec: &SequenceSpec) -> Option<Self> {
        WitnessClaim::ALL.into_iter().find(|c| c.spec() == *spec)
    }

    pub fn spec(self) -> SequenceSpec {
        SequenceSpec::parse(self.id()).expect("claim ids are sequence aliases")
    }

    pub fn min_prime(self) -> u64 {
        match self {
            WitnessClaim::Motzkin | WitnessClaim::LargeSchroder | WitnessClaim::LittleSchroder => 3,
            WitnessClaim::Genocchi => 5,
            _ => 2,
        }
    }

    /// Index at which (μ∗a) is reduced modulo p.
    pub fn convolution_index(self, p: u64) -> u64 {
        match self {
            WitnessClaim::Motzkin => 2 * p,
            _ => p,
        }
    }

    pub fn expected(self, p: u64) -> Expected {
        match self {
            WitnessClaim::Catalan | WitnessClaim::Motzkin | WitnessClaim::LittleSchroder | WitnessClaim::Bell => {
                Expected::Residue(1)
            }
            WitnessClaim::LargeSchroder => Expected::Residue(2),
            WitnessClaim::Derangements => Expected::Residue(if p.is_multiple_of(2) { 1 } else { -1 }),
            WitnessClaim::Genocchi => Expected::Residue(-1),
            WitnessClaim::Fibonacci => Expected::NonZero,
        }
    }
}

/// What the residue at a prime should be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Expected {
    /// Congruent to this integer modulo p.
    Residue(i64),
    NonZero,
}

impl Expected {
    pub fn matches(self, residue: u64, p: u64) -> bool {
        match self {
            Expected::Residue(r) => residue == r.rem_euclid(p as i64) as u64,
            Expected::NonZero => residue != 0,
        }
    }

    /// Parses `residue=<int>`, `nonzero` or `any-nonzero`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_lowercase();
        if t == "nonzero" || t == "any-nonzero" {
            return Ok(Expected::NonZero);
        }
        t.strip_prefix("residue=")
            .and_then(|r| r.parse::<i64>().ok())
            .map(Expected::Residue)
            .ok_or_else(|| Error::contract(format!("bad residue predicate `{text}`")))
    }
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expected::Residue(r) => write!(f, "residue={r}"),
            Expected::NonZero => f.write_str("nonzero"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeWitness {
    pub spec: String,
    pub prime: u64,
    pub convolution_index: u64,
    /// (μ∗a)(convolution_index) mod p, in [0, p).
    pub residue: u64,
    pub expected: Expected,
    /// Residue from the term-by-term modular path, when one exists.
    pub audit_residue: Option<u64>,
    /// n / gcd(n, g(n)) at the convolution index; p divides it whenever the
    /// witness is valid.
    pub obstruction: u64,
    pub note: Option<String>,
}

impl PrimeWitness {
    /// A witness is valid iff the residue is non-zero.
    pub fn is_valid(&self) -> bool {
        self.residue != 0
    }

    pub fn matches_expected(&self) -> bool {
        self.expected.matches(self.residue, self.prime)
    }

    pub fn audit_agrees(&self) -> bool {
        self.audit_residue.is_none_or(|r| r == self.residue)
    }

    /// Consequence of validity: p divides every multiplier repairing this index.
    pub fn forces_prime_in_fail(&self) -> bool {
        self.obstruction.is_multiple_of(self.prime)
    }
}

fn big_residue(seq: &Sequence, idx: u64, p: u64) -> Result<(u64, u64)> {
    let g = mobius_transform_at(idx, |d| seq.eval(d))?;
    let residue = g.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p");
    let r_idx = g.mod_floor(&BigInt::from(idx)).to_u64().expect("residue below n");
    let obstruction = idx / crate::arith::factor::gcd_u64(idx, r_idx);
    Ok((residue, obstruction))
}

fn check_claim_prime(claim: WitnessClaim, p: u64) -> Result<()> {
    require_prime(p)?;
    if p < claim.min_prime() {
        return Err(Error::contract(format!("{} witness needs p >= {}, got {p}", claim.id(), claim.min_prime())));
    }
    Ok(())
}

fn claim_witness(claim: WitnessClaim, p: u64) -> Result<PrimeWitness> {
    check_claim_prime(claim, p)?;
    let spec = claim.spec();
    let seq = Sequence::shared(spec);
    let idx = claim.convolution_index(p);
    let (residue, obstruction) = big_residue(&seq, idx, p)?;
    let note = (claim == WitnessClaim::Derangements && p == 2)
        .then(|| "(-1)^2 = 1 coincides with d(2) - d(1) = 1; holds trivially".to_string());
    Ok(PrimeWitness {
        spec: spec.descriptor(),
        prime: p,
        convolution_index: idx,
        residue,
        expected: claim.expected(p),
        audit_residue: Some(modular::convolution_residue(claim, idx, p)),
        obstruction,
        note,
    })
}

/// (μ∗C)(p) = C(p) - 1 ≡ 1 (mod p) for every prime p.
pub fn catalan_witness(p: u64) -> Result<PrimeWitness> {
    claim_witness(WitnessClaim::Catalan, p)
}

/// (μ∗M)(2p) = M(2p) - M(p) - M(2) + M(1) ≡ 1 (mod p), p odd.
pub fn motzkin_witness(p: u64) -> Result<PrimeWitness> {
    claim_witness(WitnessClaim::Motzkin, p)
}

/// (μ∗S)(p) = S(p) - S(1) ≡ 2 (mod p), p odd.
pub fn schroder_witness(p: u64) -> Result<PrimeWitness> {
    claim_witness(WitnessClaim::LargeSchroder, p)
}

/// (μ∗s)(p) = s(p) - s(1) ≡ 1 (mod p), p odd, since S(n) = 2 s(n) for n >= 1.
pub fn little_schroder_witness(p: u64) -> Result<PrimeWitness> {
    claim_witness(WitnessClaim::LittleSchroder, p)
}

/// Checks 2 (μ∗s)(p) ≡ (μ∗S)(p) (mod p) from the two witnesses.
pub fn little_schroder_doubling_audit(p: u64) -> Result<bool> {
    let small = little_schroder_witness(p)?;
    let large = schroder_witness(p)?;
    Ok((2 * small.residue) % p == large.residue)
}

/// Bell(p) - Bell(1) ≡ 1 (mod p) by Touchard's congruence.
pub fn bell_witness(p: u64) -> Result<PrimeWitness> {
    claim_witness(WitnessClaim::Bell, p)
}

/// d(p) - d(1) ≡ (-1)^p (mod p). At p = 2 the witness carries a note.
pub fn derangement_witness(p: u64) -> Result<PrimeWitness> {
    claim_witness(WitnessClaim::Derangements, p)
}

/// e_p - e_1 ≡ -1 (mod p) for p >= 5.
pub fn genocchi_witness(p: u64) -> Result<PrimeWitness> {
    claim_witness(WitnessClaim::Genocchi, p)
}

/// (μ∗F)(p) = F(p) - 1 modulo p; non-zero unless p ≡ ±1 (mod 5).
pub fn fibonacci_witness(p: u64) -> Result<PrimeWitness> {
    claim_witness(WitnessClaim::Fibonacci, p)
}

/// Smallest n <= n_max with n ∤ (μ∗F)(n).
pub fn fibonacci_first_dold_failure(n_max: u64) -> Result<Option<u64>> {
    let seq = Sequence::shared(WitnessClaim::Fibonacci.spec());
    let report = crate::realizability::check_realizable(&seq, n_max)?;
    Ok(report.dold_failures.first().map(|f| f.n))
}

/// Witnesses at every prime <= `prime_bound` whose residue satisfies
/// `predicate`. Registered claims use their own index map, minimum prime
/// and audit path; other specs are reduced at index p.
pub fn witness_scan(spec: &SequenceSpec, predicate: Expected, prime_bound: u64) -> Result<Vec<PrimeWitness>> {
    let claim = WitnessClaim::for_spec(spec);
    let min_p = claim.map_or(2, WitnessClaim::min_prime);
    let primes: Vec<u64> = primes_up_to(prime_bound).into_iter().filter(|&p| p >= min_p).collect();
    let seq = Sequence::shared(*spec);
    if let Some(&top) = primes.last() {
        let idx = claim.map_or(top, |c| c.convolution_index(top));
        seq.ensure(idx)?;
    }
    let all: Vec<PrimeWitness> = primes
        .par_iter()
        .map(|&p| match claim {
            Some(c) => claim_witness(c, p),
            None => {
                let (residue, obstruction) = big_residue(&seq, p, p)?;
                Ok(PrimeWitness {
                    spec: spec.descriptor(),
                    prime: p,
                    convolution_index: p,
                    residue,
                    expected: predicate,
                    audit_residue: None,
                    obstruction,
                    note: None,
                })
            }
        })
        .collect::<Result<_>>()?;
    Ok(all
        .into_iter()
        .filter(|w| w.is_valid() && predicate.matches(w.residue, w.prime))
        .map(|w| PrimeWitness { expected: predicate, ..w })
        .collect())
}

/// Witnesses for a registered claim at every qualifying prime <= `prime_bound`.
/// Residue claims keep every prime so mismatches stay visible; the
/// non-zero claim keeps only the primes where it fires.
pub fn claim_scan(claim: WitnessClaim, prime_bound: u64) -> Result<Vec<PrimeWitness>> {
    let primes: Vec<u64> = primes_up_to(prime_bound).into_iter().filter(|&p| p >= claim.min_prime()).collect();
    if let Some(&top) = primes.last() {
        Sequence::shared(claim.spec()).ensure(claim.convolution_index(top))?;
    }
    let all: Vec<PrimeWitness> = primes.par_iter().map(|&p| claim_witness(claim, p)).collect::<Result<_>>()?;
    Ok(match claim.expected(2) {
        Expected::NonZero => all.into_iter().filter(PrimeWitness::is_valid).collect(),
        Expected::Residue(_) => all,
    })
}

/// Term-by-term evaluation modulo a prime, independent of the big-integer
/// generators.
pub mod modular {
    use super::*;

    fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b, p);
            }
            b = mul(b, b, p);
            e >>= 1;
        }
        acc
    }

    fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn inv(a: u64, p: u64) -> u64 {
        assert!(!a.is_multiple_of(p), "{a} is not invertible mod {p}");
        pow_mod(a, p - 2, p)
    }

    /// binom(n, k) mod p by Lucas' theorem.
    pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut acc = 1u64;
        while k > 0 || n > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            let mut num = 1u64;
            let mut den = 1u64;
            for i in 0..kd {
                num = mul(num, nd - i, p);
                den = mul(den, i + 1, p);
            }
            acc = mul(acc, mul(num, inv(den, p), p), p);
            n /= p;
            k /= p;
        }
        acc
    }

    /// C(n) = binom(2n, n) - binom(2n, n+1).
    pub fn catalan_mod(n: u64, p: u64) -> u64 {
        (binomial_mod(2 * n, n, p) + p - binomial_mod(2 * n, n + 1, p)) % p
    }

    /// M(n) = Σ binom(n, 2k) C(k).
    pub fn motzkin_mod(n: u64, p: u64) -> u64 {
        (0..=n / 2).fold(0, |acc, k| (acc + mul(binomial_mod(n, 2 * k, p), catalan_mod(k, p), p)) % p)
    }

    /// S(n) = Σ binom(n+k, 2k) C(k).
    pub fn large_schroder_mod(n: u64, p: u64) -> u64 {
        (0..=n).fold(0, |acc, k| (acc + mul(binomial_mod(n + k, 2 * k, p), catalan_mod(k, p), p)) % p)
    }

    /// Bell numbers B(0..=n) mod p from the Bell triangle.
    pub fn bell_table_mod(n: u64, p: u64) -> Vec<u64> {
        let mut out = vec![1 % p];
        let mut row = vec![1 % p];
        for _ in 0..n {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(*row.last().expect("non-empty row"));
            for x in &row {
                let v = (next.last().expect("non-empty") + x) % p;
                next.push(v);
            }
            out.push(next[0]);
            row = next;
        }
        out
    }

    /// d(0..=n) mod p from d(n) = n d(n-1) + (-1)^n.
    pub fn derangement_table_mod(n: u64, p: u64) -> Vec<u64> {
        let mut out = vec![1 % p];
        for k in 1..=n {
            let sign = if k % 2 == 0 { 1 } else { p - 1 };
            let v = (mul(k % p, out[k as usize - 1], p) + sign) % p;
            out.push(v);
        }
        out
    }

    /// Zigzag numbers A(0..=m) mod p from the Entringer triangle.
    pub fn zigzag_table_mod(m: u64, p: u64) -> Vec<u64> {
        let mut out = vec![1 % p];
        let mut last = vec![1 % p];
        for len in 1..=m as usize {
            let mut row = vec![0u64];
            for k in 1..=len {
                let v = (row[k - 1] + last[len - k]) % p;
                row.push(v);
            }
            out.push(row[len]);
            last = row;
        }
        out
    }

    /// e_n = n T_n / 4^(n-1) mod an odd prime, with T_n the tangent numbers.
    pub fn genocchi_mod(n: u64, p: u64) -> u64 {
        assert!(p > 2 && n >= 1);
        let t = zigzag_table_mod(2 * n - 1, p)[(2 * n - 1) as usize];
        mul(mul(n % p, t, p), inv(pow_mod(4, n - 1, p), p), p)
    }

    pub fn fibonacci_table_mod(n: u64, p: u64) -> Vec<u64> {
        let mut out = vec![0, 1 % p];
        for k in 2..=n as usize {
            let v = (out[k - 1] + out[k - 2]) % p;
            out.push(v);
        }
        out
    }

    /// a(n) mod p for the sequence behind `claim`.
    pub fn term_mod(claim: WitnessClaim, n: u64, p: u64) -> u64 {
        match claim {
            WitnessClaim::Catalan => catalan_mod(n, p),
            WitnessClaim::Motzkin => motzkin_mod(n, p),
            WitnessClaim::LargeSchroder => large_schroder_mod(n, p),
            WitnessClaim::LittleSchroder => mul(large_schroder_mod(n, p), inv(2, p), p),
            WitnessClaim::Bell => bell_table_mod(n, p)[n as usize],
            WitnessClaim::Derangements => derangement_table_mod(n, p)[n as usize],
            WitnessClaim::Genocchi => genocchi_mod(n, p),
            WitnessClaim::Fibonacci => fibonacci_table_mod(n, p)[n as usize],
        }
    }

    /// (μ∗a)(idx) mod p computed from residues only.
    pub fn convolution_residue(claim: WitnessClaim, idx: u64, p: u64) -> u64 {
        let divisors = factorize(idx).expect("positive index").divisors();
        divisors.into_iter().fold(0, |acc, d| match mobius(idx / d).expect("positive index") {
            0 => acc,
            1 => (acc + term_mod(claim, d, p)) % p,
            _ => (acc + p - term_mod(claim, d, p)) % p,
        })
    }
}

/// True when every witness has its expected residue.
pub fn residues_constant(witnesses: &[PrimeWitness]) -> bool {
    witnesses.iter().all(PrimeWitness::matches_expected)
}
