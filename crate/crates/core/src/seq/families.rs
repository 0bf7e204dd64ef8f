//! Term evaluation for each family: independent per-index formulas, or
//! recurrences that extend a known prefix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::binomial::{binomial, central_binomial, factorial, pascal_row};
use crate::arith::divisors;
use crate::error::{Error, Result};

use super::bernoulli::{bernoulli_suite, secant};
use super::spec::Family;

pub(crate) enum Strategy {
    /// Each index computed on its own; safe to parallelize.
    Indexed,
    /// Term n needs all earlier terms.
    Recurrence,
}

pub(crate) fn strategy(family: Family) -> Strategy {
    use Family::*;
    match family {
        CentralTrinomial | Catalan | Bell | Derangements | TwoTerm { .. } | Partitions => Strategy::Recurrence,
        _ => Strategy::Indexed,
    }
}

fn pw(x: &BigInt, e: u32) -> BigInt {
    match e {
        0 => BigInt::one(),
        1 => x.clone(),
        _ => num_traits::pow(x.clone(), e as usize),
    }
}

fn exact_div(num: BigInt, den: &BigInt, family: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::GeneratorDefect { family: family.into(), reason: format!("{num} / {den} is not exact") });
    }
    Ok(q)
}

pub fn a_sum(n: u64, r: u32, s: u32) -> BigInt {
    let row = pascal_row(n);
    (0..=n)
        .map(|k| pw(&row[k as usize], r) * pw(&binomial(n + k, k), s))
        .sum()
}

pub fn d_sum(n: u64, r: u32, s: u32, t: u32) -> BigInt {
    let row = pascal_row(n);
    (0..=n)
        .map(|k| pw(&row[k as usize], r) * pw(&central_binomial(k), s) * pw(&central_binomial(n - k), t))
        .sum()
}

pub fn c_sum(n: u64, r: u32, s: u32, t: u32, u: u32) -> BigInt {
    let row = pascal_row(n);
    (0..=n)
        .map(|k| {
            pw(&row[k as usize], r)
                * pw(&binomial(n + k, k), s)
                * pw(&central_binomial(k), t)
                * pw(&central_binomial(n - k), u)
        })
        .sum()
}

/// Terms with 2k > n vanish because binom(n, 2k) = 0 and r >= 1.
pub fn t_sum(n: u64, r: u32, s: u32, t: u32, u: u32) -> BigInt {
    let row = pascal_row(n);
    (0..=n / 2)
        .map(|k| {
            pw(&row[2 * k as usize], r)
                * pw(&binomial(n + k, k), s)
                * pw(&central_binomial(k), t)
                * pw(&central_binomial(n - k), u)
        })
        .sum()
}

/// Full range k = 0..=n with the 0^0 = 1 convention on every factor.
pub fn v_sum(n: u64, r1: u32, r2: u32, s: u32, t: u32, u: u32) -> BigInt {
    (0..=n)
        .map(|k| {
            pw(&binomial(n, k), r1)
                * pw(&binomial(n, 2 * k), r2)
                * pw(&binomial(n + k, k), s)
                * pw(&central_binomial(k), t)
                * pw(&central_binomial(n - k), u)
        })
        .sum()
}

pub fn clf(n: u64) -> BigInt {
    let four = BigInt::from(4);
    let inner: BigInt = (0..=n / 2)
        .map(|k| binomial(n, 2 * k) * pw(&central_binomial(k), 2) * num_traits::pow(four.clone(), (n - 2 * k) as usize))
        .sum();
    inner << n as usize
}

/// binom(2n, n) / (n + 1), with the division checked.
pub fn catalan_closed(n: u64) -> Result<BigInt> {
    exact_div(central_binomial(n), &BigInt::from(n + 1), "catalan")
}

pub fn motzkin(n: u64) -> Result<BigInt> {
    (0..=n / 2).map(|k| Ok(binomial(n, 2 * k) * catalan_closed(k)?)).sum()
}

pub fn large_schroder(n: u64) -> Result<BigInt> {
    (0..=n).map(|k| Ok(binomial(n + k, 2 * k) * catalan_closed(k)?)).sum()
}

/// N(n, k) = binom(n, k) binom(n, k-1) / n.
pub fn narayana(n: u64, k: u64) -> Result<BigInt> {
    if n == 0 || k == 0 || k > n {
        return Ok(BigInt::zero());
    }
    exact_div(binomial(n, k) * binomial(n, k - 1), &BigInt::from(n), "narayana")
}

pub fn little_schroder(n: u64) -> Result<BigInt> {
    (1..=n).map(|k| Ok(narayana(n, k)? << (k - 1) as usize)).sum()
}

/// S2(m, k) = (1/k!) Σ_j (-1)^j binom(k, j) (k - j)^m.
pub fn stirling_second(m: u64, k: u64) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(k, j) * num_traits::pow(BigInt::from(k - j), m as usize);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    exact_div(acc, &factorial(k), "stirling2")
}

/// Unsigned S1(m, k) from c(i+1, j) = i c(i, j) + c(i, j-1).
pub fn stirling_first(m: u64, k: u64) -> BigInt {
    let k = k as usize;
    let mut col = vec![BigInt::zero(); k + 1];
    col[0] = BigInt::one();
    for i in 0..m {
        for j in (1..=k).rev() {
            col[j] = &col[j] * i + &col[j - 1];
        }
        col[0] = &col[0] * i;
    }
    col[k].clone()
}

/// (F(n), F(n+1)) by fast doubling.
pub fn fibonacci_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fibonacci_pair(n / 2);
    let c = &a * ((&b << 1) - &a);
    let d = &a * &a + &b * &b;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

pub fn divisor_sigma(n: u64, k: u32) -> Result<BigInt> {
    Ok(divisors(n)?.into_iter().map(|d| pw(&BigInt::from(d), k)).sum())
}

/// Value at an index for families with [`Strategy::Indexed`].
pub(crate) fn indexed_term(family: Family, n: u64) -> Result<BigInt> {
    use Family::*;
    Ok(match family {
        AFamily { r, s } => a_sum(n, r, s),
        DFamily { r, s, t } => d_sum(n, r, s, t),
        CFamily { r, s, t, u } => c_sum(n, r, s, t, u),
        TFamily { r, s, t, u } => t_sum(n, r, s, t, u),
        VFamily { r1, r2, s, t, u } => v_sum(n, r1, r2, s, t, u),
        CatalanLarcombeFrench => clf(n),
        Motzkin => motzkin(n)?,
        LargeSchroder => large_schroder(n)?,
        LittleSchroder => little_schroder(n)?,
        StirlingFirst { k } => stirling_first(n + u64::from(k) - 1, k.into()),
        StirlingSecond { k } => stirling_second(n + u64::from(k) - 1, k.into())?,
        FibonacciSquares => {
            let sq = n.checked_mul(n).ok_or_else(|| Error::OutOfRange { index: n, reason: "n^2 overflows".into() })?;
            fibonacci_pair(sq).0
        }
        Secant => secant(n),
        BernoulliDenominator => bernoulli_suite(n)?.denominator,
        BernoulliTau => bernoulli_suite(n)?.tau,
        BernoulliEta => bernoulli_suite(n)?.eta,
        Genocchi => bernoulli_suite(n)?.genocchi,
        DivisorSigma { k } => divisor_sigma(n, k)?,
        Mersenne => (BigInt::one() << n as usize) - 1,
        NegTwo => {
            let two_n = BigInt::one() << n as usize;
            if n.is_multiple_of(2) {
                two_n - 1
            } else {
                two_n + 1
            }
        }
        Power { d } => num_traits::pow(BigInt::from(d), n as usize),
        Constant { c } => BigInt::from(c),
        Identity => BigInt::from(n),
        CentralTrinomial | Catalan | Bell | Derangements | TwoTerm { .. } | Partitions => {
            unreachable!("recurrence family evaluated per index")
        }
    })
}

/// Next term for families with [`Strategy::Recurrence`]; `known[i]` holds the
/// term at index `offset + i` and `n = offset + known.len()`.
pub(crate) fn recurrence_term(family: Family, known: &[BigInt], n: u64) -> Result<BigInt> {
    use Family::*;
    let at = |i: u64| &known[i as usize];
    Ok(match family {
        // n T(n) = (2n - 1) T(n-1) + 3 (n - 1) T(n-2)
        CentralTrinomial => match n {
            0 | 1 => BigInt::one(),
            _ => exact_div(at(n - 1) * (2 * n - 1) + at(n - 2) * (3 * (n - 1)), &BigInt::from(n), "trinomial")?,
        },
        // (n + 1) C(n) = 2 (2n - 1) C(n-1)
        Catalan => match n {
            0 => BigInt::one(),
            _ => exact_div(at(n - 1) * (2 * (2 * n - 1)), &BigInt::from(n + 1), "catalan")?,
        },
        // Bell(n) = Σ_k binom(n-1, k) Bell(k)
        Bell => match n {
            0 => BigInt::one(),
            _ => {
                let row = pascal_row(n - 1);
                known.iter().zip(row.iter()).map(|(b, c)| b * c).sum()
            }
        },
        // d_n = n d_{n-1} + (-1)^n
        Derangements => match n {
            0 => BigInt::one(),
            _ => {
                let base = at(n - 1) * n;
                if n.is_multiple_of(2) {
                    base + 1
                } else {
                    base - 1
                }
            }
        },
        // known[0] = U_1
        TwoTerm { a, b } => match n {
            1 => BigInt::from(a),
            2 => BigInt::from(b),
            _ => &known[(n - 2) as usize] + &known[(n - 3) as usize],
        },
        Partitions => {
            if n == 0 {
                return Ok(BigInt::one());
            }
            let mut total = BigInt::zero();
            for k in 1u64.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let g2 = k * (3 * k + 1) / 2;
                let mut part = at(n - g1).clone();
                if g2 <= n {
                    part += at(n - g2);
                }
                if k % 2 == 1 {
                    total += part;
                } else {
                    total -= part;
                }
            }
            total
        }
        _ => unreachable!("indexed family extended by recurrence"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn binomial_sum_anchors() {
        assert_eq!(a_sum(1, 2, 2), BigInt::from(5));
        assert_eq!(a_sum(2, 2, 2), BigInt::from(73));
        assert_eq!(a_sum(3, 2, 2), BigInt::from(1445));
        assert_eq!(a_sum(3, 1, 1), BigInt::from(63));
        for (r, s) in [(1, 0), (2, 3), (3, 1)] {
            assert_eq!(a_sum(1, r, s), BigInt::from(1 + (1 << s)));
        }
        for (r, s, t) in [(1, 0, 2), (2, 1, 1), (3, 2, 0)] {
            assert_eq!(d_sum(1, r, s, t), BigInt::from((1 << t) + (1 << s)));
        }
        assert_eq!(d_sum(5, 2, 1, 1), BigInt::from(31504));
        assert_eq!(d_sum(3, 2, 1, 1), BigInt::from(256));
        for (r, s, t, u) in [(1, 0, 1, 0), (2, 1, 0, 1), (1, 2, 1, 2)] {
            let want = num_traits::pow(BigInt::from(6), u as usize)
                + num_traits::pow(BigInt::from(3), s as usize) * (BigInt::one() << (t + u) as usize);
            assert_eq!(t_sum(2, r, s, t, u), want, "{r} {s} {t} {u}");
        }
    }

    #[test]
    fn classical_anchors() {
        assert_eq!(catalan_closed(5).unwrap(), BigInt::from(42));
        assert_eq!(motzkin(4).unwrap(), BigInt::from(9));
        assert_eq!(motzkin(6).unwrap(), BigInt::from(51));
        assert_eq!(large_schroder(3).unwrap(), BigInt::from(22));
        assert_eq!(large_schroder(5).unwrap(), BigInt::from(394));
        assert_eq!(little_schroder(3).unwrap(), BigInt::from(11));
        assert_eq!(little_schroder(5).unwrap(), BigInt::from(197));
        assert_eq!(clf(1), BigInt::from(8));
        assert_eq!(clf(2), BigInt::from(80));
        assert_eq!(d_sum(1, 1, 1, 1), BigInt::from(4));
        assert_eq!(d_sum(2, 1, 1, 1), BigInt::from(20));
    }

    #[test]
    fn narayana_row_sums_to_catalan() {
        for n in 1..=30 {
            let row: BigInt = (1..=n).map(|k| narayana(n, k).unwrap()).sum();
            assert_eq!(row, catalan_closed(n).unwrap());
        }
    }

    #[test]
    fn stirling_tables() {
        let s2: Vec<BigInt> = (1..=6).map(|n| stirling_second(n + 2, 3).unwrap()).collect();
        assert_eq!(s2, ints(&[1, 6, 25, 90, 301, 966]));
        let s1: Vec<BigInt> = (1..=6).map(|n| stirling_first(n + 1, 2)).collect();
        assert_eq!(s1, ints(&[1, 3, 11, 50, 274, 1764]));
        assert_eq!(stirling_first(0, 0), BigInt::one());
    }

    #[test]
    fn fast_doubling() {
        let fib: Vec<BigInt> = (0..12).map(|n| fibonacci_pair(n).0).collect();
        assert_eq!(fib, ints(&[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]));
        assert_eq!(fibonacci_pair(25).0, BigInt::from(75025));
    }
}
