//! Exact generators for every supported sequence behind one memoized
//! evaluation interface.

pub mod bernoulli;
pub mod families;
pub mod spec;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use bernoulli::{bernoulli_even, bernoulli_suite, BernoulliSuite};
pub use spec::{Family, OeisLink, SequenceSpec};

use families::Strategy;

/// Indices beyond this are refused; the memo cache is dense.
pub const MAX_INDEX: u64 = 1 << 20;

/// A sequence with a dense memo of its terms from `offset` upward.
///
/// Readers never see a partially written prefix; concurrent fills may both
/// compute the same terms, and the longer prefix wins.
pub struct Sequence {
    spec: SequenceSpec,
    cache: RwLock<Vec<BigInt>>,
}

impl std::fmt::Debug for Sequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Sequence").field("spec", &self.spec.descriptor()).finish()
    }
}

impl Sequence {
    pub fn new(spec: SequenceSpec) -> Self {
        Sequence { spec, cache: RwLock::new(Vec::new()) }
    }

    /// Process-wide instance for `spec`, so memoized terms are shared.
    pub fn shared(spec: SequenceSpec) -> Arc<Sequence> {
        static REGISTRY: OnceLock<Mutex<HashMap<SequenceSpec, Arc<Sequence>>>> = OnceLock::new();
        let mut map = REGISTRY.get_or_init(Default::default).lock().expect("sequence registry poisoned");
        map.entry(spec).or_insert_with(|| Arc::new(Sequence::new(spec))).clone()
    }

    pub fn parse(text: &str) -> Result<Arc<Sequence>> {
        Ok(Sequence::shared(SequenceSpec::parse(text)?))
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn offset(&self) -> u64 {
        self.spec.offset()
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n < self.offset() {
            return Err(Error::OutOfRange {
                index: n,
                reason: format!("{} starts at n = {}", self.spec.descriptor(), self.offset()),
            });
        }
        if n > MAX_INDEX {
            return Err(Error::OutOfRange { index: n, reason: format!("indices are limited to {MAX_INDEX}") });
        }
        Ok(())
    }

    /// Makes sure every term up to `hi` is cached.
    pub fn ensure(&self, hi: u64) -> Result<()> {
        self.check_index(hi)?;
        let offset = self.offset();
        let have = self.cache.read().expect("sequence cache poisoned").len() as u64;
        if offset + have > hi {
            return Ok(());
        }
        let fresh: Vec<BigInt> = match families::strategy(self.spec.family) {
            Strategy::Indexed => (offset + have..=hi)
                .into_par_iter()
                .map(|n| families::indexed_term(self.spec.family, n))
                .collect::<Result<_>>()?,
            Strategy::Recurrence => {
                let mut known = self.cache.read().expect("sequence cache poisoned").clone();
                let start = known.len();
                for n in offset + have..=hi {
                    let v = families::recurrence_term(self.spec.family, &known, n)?;
                    known.push(v);
                }
                known.split_off(start)
            }
        };
        if let Some(bad) = fresh.iter().position(|v| v.is_negative()) {
            return Err(Error::GeneratorDefect {
                family: self.spec.descriptor(),
                reason: format!("negative term at n = {}", offset + have + bad as u64),
            });
        }
        let mut cache = self.cache.write().expect("sequence cache poisoned");
        if (cache.len() as u64) == have {
            cache.extend(fresh);
        } else if (cache.len() as u64) < have + fresh.len() as u64 {
            let skip = cache.len() - have as usize;
            cache.extend(fresh.into_iter().skip(skip));
        }
        Ok(())
    }

    pub fn eval(&self, n: u64) -> Result<BigInt> {
        self.check_index(n)?;
        {
            let cache = self.cache.read().expect("sequence cache poisoned");
            if let Some(v) = cache.get((n - self.offset()) as usize) {
                return Ok(v.clone());
            }
        }
        self.ensure(n)?;
        Ok(self.cache.read().expect("sequence cache poisoned")[(n - self.offset()) as usize].clone())
    }

    /// Terms for `lo..=hi`.
    pub fn terms(&self, lo: u64, hi: u64) -> Result<Vec<BigInt>> {
        self.check_index(lo)?;
        if hi < lo {
            return Ok(Vec::new());
        }
        self.ensure(hi)?;
        let cache = self.cache.read().expect("sequence cache poisoned");
        let base = self.offset();
        Ok(cache[(lo - base) as usize..=(hi - base) as usize].to_vec())
    }

    /// a(1), ..., a(n_max): the view consumed by realizability checks.
    pub fn prefix(&self, n_max: u64) -> Result<Vec<BigInt>> {
        if n_max == 0 {
            return Ok(Vec::new());
        }
        self.terms(1, n_max)
    }
}

/// Coefficient of x^n in (x^2 + x + 1)^n, by expanding the power.
pub fn eval_trinomial_by_expansion(n: u64) -> BigInt {
    let mut poly = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); poly.len() + 2];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
            next[i + 2] += c;
        }
        poly = next;
    }
    poly.swap_remove(n as usize)
}
