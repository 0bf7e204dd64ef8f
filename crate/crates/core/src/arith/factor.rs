//! Trial-division factorization of 64-bit indices, divisors and the Möbius
//! function.

use serde::Serialize;

use crate::error::{Error, Result};

/// A non-negative integer together with its prime factorization.
///
/// `1` has an empty factor list. `0` carries the `zero` flag and no factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredInteger {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
    pub zero: bool,
}

impl FactoredInteger {
    pub fn zero() -> Self {
        FactoredInteger { value: 0, factors: Vec::new(), zero: true }
    }

    pub fn is_squarefree(&self) -> bool {
        !self.zero && self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` in the factorization (0 when `p` does not divide).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    /// All positive divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Recomputes the product of `prime^exponent`.
    pub fn product(&self) -> u64 {
        if self.zero {
            return 0;
        }
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Wheel increments over residues coprime to 30, starting from 7.
const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

pub fn factorize(n: u64) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    let mut d = 7u64;
    let mut w = 0;
    while d <= rest / d {
        let mut e = 0;
        while rest.is_multiple_of(d) {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredInteger { value: n, factors, zero: false })
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

pub fn mobius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.factors == [(n, 1)]).unwrap_or(false)
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
