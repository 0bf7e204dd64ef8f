//! p-adic valuations, with an explicit infinity for the valuation of zero.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::factor::is_prime;

/// Valuation value; `Infinite` is the valuation of 0. Orders after every
/// finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl Add<u64> for Valuation {
    type Output = Valuation;
    fn add(self, rhs: u64) -> Valuation {
        self + Valuation::Finite(rhs)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PadicValuation {
    pub prime: u64,
    pub value: Valuation,
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not prime")))
    }
}

/// ν_p of a machine integer.
pub fn valuation_u64(n: u64, p: u64) -> Valuation {
    if n == 0 {
        return Valuation::Infinite;
    }
    let mut n = n;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    Valuation::Finite(v)
}

/// ν_p of an arbitrary-precision integer (sign ignored).
pub fn valuation(x: &BigInt, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p_big = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p_big);
        if !r.is_zero() {
            break;
        }
        x = q;
        v += 1;
    }
    Valuation::Finite(v)
}

/// ν_p(binom(n, m)) as the number of carries when adding `m` and `n - m` in
/// base `p`.
pub fn kummer_valuation(n: u64, m: u64, p: u64) -> Result<PadicValuation> {
    require_prime(p)?;
    if m > n {
        return Err(Error::Domain(format!("binomial({n}, {m}) has m > n")));
    }
    let (mut a, mut b) = (m, n - m);
    let mut carry = 0u64;
    let mut carries = 0u64;
    while a > 0 || b > 0 || carry > 0 {
        let digit = a % p + b % p + carry;
        carry = u64::from(digit >= p);
        carries += carry;
        a /= p;
        b /= p;
    }
    Ok(PadicValuation { prime: p, value: Valuation::Finite(carries) })
}

/// ν_p(n!) by Legendre's formula.
pub fn legendre_factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

/// ν_p(binom(n, m)) through factorial valuations; independent of the carry
/// count.
pub fn legendre_binomial_valuation(n: u64, m: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    if m > n {
        return Err(Error::Domain(format!("binomial({n}, {m}) has m > n")));
    }
    Ok(legendre_factorial_valuation(n, p)
        - legendre_factorial_valuation(m, p)
        - legendre_factorial_valuation(n - m, p))
}

/// `p^e` as a big integer, or `None` for an infinite exponent.
pub fn prime_power(p: u64, e: Valuation) -> Option<BigInt> {
    e.finite().map(|e| num_traits::pow(BigInt::from(p), e.to_usize().expect("exponent fits usize")))
}
