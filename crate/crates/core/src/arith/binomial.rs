//! Binomial coefficients backed by a process-wide Pascal-row cache.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rows above this size are computed multiplicatively instead of cached.
const PASCAL_CACHE_ROWS: u64 = 1024;

type Row = Arc<[BigInt]>;

fn rows() -> &'static RwLock<Vec<Row>> {
    static ROWS: OnceLock<RwLock<Vec<Row>>> = OnceLock::new();
    ROWS.get_or_init(|| RwLock::new(vec![Arc::from(vec![BigInt::one()])]))
}

/// Row `n` of Pascal's triangle. Concurrent callers may both extend the
/// cache; only the longer table is kept.
pub fn pascal_row(n: u64) -> Row {
    assert!(n <= PASCAL_CACHE_ROWS, "pascal_row({n}) beyond cache limit");
    let n = n as usize;
    {
        let cached = rows().read().expect("pascal cache poisoned");
        if let Some(row) = cached.get(n) {
            return row.clone();
        }
    }
    let mut cached = rows().write().expect("pascal cache poisoned");
    while cached.len() <= n {
        let prev = cached.last().expect("row 0 present").clone();
        let mut next = Vec::with_capacity(prev.len() + 1);
        next.push(BigInt::one());
        for w in prev.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        cached.push(Arc::from(next));
    }
    cached[n].clone()
}

/// binom(n, k), zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    if n <= PASCAL_CACHE_ROWS {
        return pascal_row(n)[k as usize].clone();
    }
    binomial_product(n, k)
}

/// binom(n, k) via the running product; exact at every step.
pub fn binomial_product(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n, n)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}
