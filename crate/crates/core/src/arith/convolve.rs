//! Möbius (Dirichlet) transforms of arithmetic functions given by value.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;

use super::factor::factorize;

/// (μ∗a)(n) = Σ_{d|n} μ(n/d)·a(d), where `a` is evaluated on divisors of `n`.
///
/// Only squarefree cofactors contribute, so the sum runs over the subsets of
/// the distinct primes of `n`.
pub fn mobius_transform_at<F>(n: u64, mut a: F) -> Result<BigInt>
where
    F: FnMut(u64) -> Result<BigInt>,
{
    let primes: Vec<u64> = factorize(n)?.primes().collect();
    let mut total = BigInt::zero();
    for mask in 0u32..(1 << primes.len()) {
        let mut cofactor = 1u64;
        for (i, p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                cofactor *= p;
            }
        }
        let term = a(n / cofactor)?;
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Möbius transform of a prefix `values[i] = a(i + 1)`.
pub fn mobius_transform(values: &[BigInt]) -> Result<Vec<BigInt>> {
    (1..=values.len() as u64)
        .map(|n| mobius_transform_at(n, |d| Ok(values[d as usize - 1].clone())))
        .collect()
}

/// Σ_{d|n} g(d) for every n in the prefix; inverts [`mobius_transform`].
pub fn divisor_sum(g: &[BigInt]) -> Vec<BigInt> {
    let len = g.len();
    let mut out = vec![BigInt::zero(); len];
    for d in 1..=len {
        let mut k = d;
        while k <= len {
            out[k - 1] += &g[d - 1];
            k += d;
        }
    }
    out
}

/// True when summing the transform over divisors recovers every term.
pub fn inverse_convolve_check(values: &[BigInt]) -> Result<bool> {
    Ok(divisor_sum(&mobius_transform(values)?) == values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor::{divisors, mobius};

    fn brute(values: &[BigInt], n: u64) -> BigInt {
        divisors(n)
            .unwrap()
            .into_iter()
            .map(|d| BigInt::from(mobius(n / d).unwrap()) * &values[d as usize - 1])
            .sum()
    }

    fn ints(v: impl IntoIterator<Item = i64>) -> Vec<BigInt> {
        v.into_iter().map(BigInt::from).collect()
    }

    #[test]
    fn identity_gives_totient() {
        let a = ints(1..=12);
        assert_eq!(mobius_transform_at(6, |d| Ok(BigInt::from(d))).unwrap(), BigInt::from(2));
        let g = mobius_transform(&a).unwrap();
        assert_eq!(g, ints([1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]));
    }

    #[test]
    fn first_index_is_the_term_itself() {
        assert_eq!(mobius_transform_at(1, |_| Ok(BigInt::from(17))).unwrap(), BigInt::from(17));
    }

    #[test]
    fn lucas_at_four() {
        // L_1..L_4 = 1, 3, 4, 7
        let a = ints([1, 3, 4, 7]);
        assert_eq!(mobius_transform(&a).unwrap()[3], BigInt::from(4));
    }

    #[test]
    fn matches_brute_force_and_inverts() {
        let a: Vec<BigInt> = (1..=96).map(|n: u32| (BigInt::from(2) << n) / 2 - 1).collect();
        let g = mobius_transform(&a).unwrap();
        for n in 1..=96u64 {
            assert_eq!(g[n as usize - 1], brute(&a, n));
        }
        assert!(inverse_convolve_check(&a).unwrap());
        assert!(inverse_convolve_check(&ints(std::iter::repeat_n(1, 50))).unwrap());
    }
}
