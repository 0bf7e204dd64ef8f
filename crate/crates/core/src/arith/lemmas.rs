//! Binomial-coefficient congruences under scaling of both arguments by a prime.

use crate::error::{Error, Result};

use super::binomial::binomial;
use super::congruence::CongruenceWitness;
use super::padic::{kummer_valuation, prime_power, require_prime, valuation_u64, Valuation};

/// Exponent `e` such that binom(np, mp) ≡ binom(n, m) (mod p^e) by the
/// Helou–Terjanian bound.
pub fn helou_terjanian_exponent(n: u64, m: u64, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    if m > n {
        return Err(Error::Domain(format!("binomial({n}, {m}) has m > n")));
    }
    let base = match p {
        2 => 1,
        3 => 2,
        _ => 3,
    };
    let spread = valuation_u64(m, p).max(valuation_u64(n - m, p));
    let binom_val = kummer_valuation(n, m, p)?.value;
    Ok(spread + binom_val + base)
}

pub fn helou_terjanian_check(n: u64, m: u64, p: u64) -> Result<CongruenceWitness> {
    let exponent = helou_terjanian_exponent(n, m, p)?;
    let lhs = binomial(n * p, m * p);
    let rhs = binomial(n, m);
    Ok(match prime_power(p, exponent) {
        Some(modulus) => CongruenceWitness::new(lhs, rhs, modulus),
        None => CongruenceWitness::exact(lhs, rhs),
    })
}

fn valuation_i128(x: i128, p: u64) -> Valuation {
    valuation_u64(x.unsigned_abs() as u64, p)
}

/// Exponent `max(ν_p(n), ν_p(n - λp))` for the congruence
/// binom(n, λp) ≡ binom(n/p, λ).
pub fn scaled_binomial_exponent(n: u64, lambda: u64, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    if !n.is_multiple_of(p) {
        return Err(Error::Domain(format!("{p} does not divide {n}")));
    }
    let shifted = i128::from(n) - i128::from(lambda) * i128::from(p);
    Ok(valuation_u64(n, p).max(valuation_i128(shifted, p)))
}

/// binom(n, λp) ≡ binom(n/p, λ) (mod p^{max(ν_p(n), ν_p(n-λp))}) for p | n.
pub fn scaled_binomial_check(n: u64, lambda: u64, p: u64) -> Result<CongruenceWitness> {
    let exponent = scaled_binomial_exponent(n, lambda, p)?;
    let lhs = binomial(n, lambda * p);
    let rhs = binomial(n / p, lambda);
    Ok(match prime_power(p, exponent) {
        Some(modulus) => CongruenceWitness::new(lhs, rhs, modulus),
        None => CongruenceWitness::exact(lhs, rhs),
    })
}
