//! Bernoulli numbers as exact rationals, and the zigzag (Euler up/down)
//! numbers that contain the secant and tangent numbers.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::binomial;
use crate::error::{Error, Result};

/// Largest n for which B_{2n} is served.
pub const MAX_BERNOULLI_INDEX: u64 = 400;

/// Even-index Bernoulli numbers B_0, B_2, B_4, ... grown on demand.
fn even_bernoulli() -> &'static RwLock<Vec<BigRational>> {
    static TABLE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// B_{2n} from Σ_{k=0}^{m} binom(m+1, k) B_k = 0 with m = 2n, using B_1 = -1/2
/// and B_k = 0 for odd k ≥ 3.
pub fn bernoulli_even(n: u64) -> Result<BigRational> {
    if n > MAX_BERNOULLI_INDEX {
        return Err(Error::OutOfRange { index: n, reason: format!("B(2n) served for n <= {MAX_BERNOULLI_INDEX}") });
    }
    let idx = n as usize;
    {
        let table = even_bernoulli().read().expect("bernoulli cache poisoned");
        if let Some(b) = table.get(idx) {
            return Ok(b.clone());
        }
    }
    let mut table = even_bernoulli().write().expect("bernoulli cache poisoned");
    while table.len() <= idx {
        let m = 2 * table.len() as u64;
        // B_1 term: binom(m+1, 1) * (-1/2)
        let mut sum = BigRational::new(-BigInt::from(m + 1), BigInt::from(2));
        for (j, b) in table.iter().enumerate() {
            sum += b * BigRational::from_integer(binomial(m + 1, 2 * j as u64));
        }
        table.push(-sum / BigRational::from_integer(BigInt::from(m + 1)));
    }
    Ok(table[idx].clone())
}

/// Everything derived from B_{2n}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernoulliSuite {
    pub n: u64,
    /// B_{2n} as `numerator/denominator`.
    pub b2n: String,
    /// denominator of B_{2n}
    #[serde(with = "crate::json::bigint")]
    pub denominator: BigInt,
    /// |B_{2n}/(2n)| = tau / eta in lowest terms
    #[serde(with = "crate::json::bigint")]
    pub tau: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub eta: BigInt,
    /// e_n = (-1)^n G_{2n} = (-1)^n 2 (1 - 4^n) B_{2n}
    #[serde(with = "crate::json::bigint")]
    pub genocchi: BigInt,
}

pub fn bernoulli_suite(n: u64) -> Result<BernoulliSuite> {
    if n == 0 {
        return Err(Error::Domain("bernoulli_suite needs n >= 1".into()));
    }
    let b = bernoulli_even(n)?;
    let ratio = (&b / BigRational::from_integer(BigInt::from(2 * n))).abs();
    let four_n = num_traits::pow(BigInt::from(4), n as usize);
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let g = BigRational::from_integer(sign * BigInt::from(2) * (BigInt::one() - four_n)) * &b;
    if !g.is_integer() || !g.numer().is_positive() || (g.numer() % 2u32).is_zero() {
        return Err(Error::GeneratorDefect {
            family: "genocchi".into(),
            reason: format!("e_{n} = {g} is not a positive odd integer"),
        });
    }
    Ok(BernoulliSuite {
        n,
        b2n: b.to_string(),
        denominator: b.denom().clone(),
        tau: ratio.numer().clone(),
        eta: ratio.denom().clone(),
        genocchi: g.to_integer(),
    })
}

struct Zigzag {
    values: Vec<BigInt>,
    last_row: Vec<BigInt>,
}

fn zigzag_table() -> &'static RwLock<Zigzag> {
    static TABLE: OnceLock<RwLock<Zigzag>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Zigzag { values: vec![BigInt::one()], last_row: vec![BigInt::one()] }))
}

/// Zigzag numbers A(m) (1, 1, 1, 2, 5, 16, 61, ...) via the Entringer
/// triangle E(m, k) = E(m, k-1) + E(m-1, m-k). Even m gives secant numbers,
/// odd m tangent numbers.
pub fn zigzag(m: u64) -> BigInt {
    let idx = m as usize;
    {
        let t = zigzag_table().read().expect("zigzag cache poisoned");
        if let Some(v) = t.values.get(idx) {
            return v.clone();
        }
    }
    let mut t = zigzag_table().write().expect("zigzag cache poisoned");
    while t.values.len() <= idx {
        let row_len = t.values.len();
        let mut row = Vec::with_capacity(row_len + 1);
        row.push(BigInt::zero());
        for k in 1..=row_len {
            let next = &row[k - 1] + &t.last_row[row_len - k];
            row.push(next);
        }
        t.values.push(row[row_len].clone());
        t.last_row = row;
    }
    t.values[idx].clone()
}

/// Secant number (-1)^n E_{2n}.
pub fn secant(n: u64) -> BigInt {
    zigzag(2 * n)
}

/// Tangent number T_n with tan x = Σ T_n x^{2n-1}/(2n-1)!.
pub fn tangent(n: u64) -> BigInt {
    assert!(n >= 1, "tangent numbers start at n = 1");
    zigzag(2 * n - 1)
}

/// Product of primes p with (p - 1) | 2n: the denominator of B_{2n} by von
/// Staudt–Clausen.
pub fn von_staudt_denominator(n: u64) -> BigInt {
    crate::arith::primes_up_to(2 * n + 1)
        .into_iter()
        .filter(|p| (2 * n).is_multiple_of(p - 1))
        .fold(BigInt::one(), |acc, p| acc * p)
}
