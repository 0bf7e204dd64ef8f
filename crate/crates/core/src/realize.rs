//! Explicit finite self-maps realizing a realizable prefix.
//!
//! A prefix with exact-period orbit counts c(n) = (μ∗a)(n)/n is realized by
//! the disjoint union of c(n) cycles of length n. Counts are then recovered
//! by iterating the function table point by point.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::realizability::profile;
use crate::seq::Sequence;

/// Largest map `build_map` and `product_map` will materialize.
pub const MAX_MAP_SIZE: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitProfile {
    pub n_max: u64,
    /// `counts[i]` cycles of exact length `i + 1`.
    #[serde(with = "crate::json::bigint_vec")]
    pub counts: Vec<BigInt>,
}

impl OrbitProfile {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        OrbitProfile { n_max: counts.len() as u64, counts: counts.into_iter().map(BigInt::from).collect() }
    }

    pub fn count(&self, n: u64) -> &BigInt {
        &self.counts[n as usize - 1]
    }

    /// Σ n c(n): number of points in the realizing map.
    pub fn size(&self) -> BigInt {
        self.counts.iter().enumerate().map(|(i, c)| c * (i + 1)).sum()
    }

    /// Σ_{d|n} d c(d), the periodic-point count without building anything.
    pub fn periodic_points(&self, n: u64) -> BigInt {
        divisors(n)
            .expect("n >= 1")
            .into_iter()
            .filter(|&d| d <= self.n_max)
            .map(|d| self.count(d) * d)
            .sum()
    }
}

/// Exact orbit counts, or `NotRealizable` naming the first failing index.
pub fn orbit_profile(seq: &Sequence, n_max: u64) -> Result<OrbitProfile> {
    let p = profile(seq, n_max)?;
    let mut counts = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let g = p.g_at(n);
        if g < &BigInt::zero() {
            return Err(Error::NotRealizable { index: n, reason: format!("(μ∗a)({n}) = {g} is negative") });
        }
        let (q, r) = g.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::NotRealizable { index: n, reason: format!("{n} does not divide (μ∗a)({n}) = {g}") });
        }
        counts.push(q);
    }
    Ok(OrbitProfile { n_max, counts })
}

/// Position of a point: the `position`-th element of cycle `orbit` (numbered
/// within its period).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitLabel {
    pub period: u32,
    pub orbit: u32,
    pub position: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteMap {
    /// Prefix length the map was built for, if any.
    pub n_max: Option<u64>,
    pub next: Vec<u32>,
    pub labels: Vec<OrbitLabel>,
}

fn guard(size: &BigInt) -> Result<u64> {
    match size.to_u64() {
        Some(s) if s <= MAX_MAP_SIZE => Ok(s),
        _ => Err(Error::MapTooLarge { size: size.to_string(), limit: MAX_MAP_SIZE }),
    }
}

/// Disjoint union of c(n) cycles of length n, laid out by increasing period.
pub fn build_map(profile: &OrbitProfile) -> Result<FiniteMap> {
    let size = guard(&profile.size())? as usize;
    let mut next = Vec::with_capacity(size);
    let mut labels = Vec::with_capacity(size);
    for (i, c) in profile.counts.iter().enumerate() {
        let period = (i + 1) as u32;
        let c = c.to_u32().expect("bounded by the size guard");
        for orbit in 0..c {
            let start = next.len() as u32;
            for position in 0..period {
                next.push(start + (position + 1) % period);
                labels.push(OrbitLabel { period, orbit, position });
            }
        }
    }
    Ok(FiniteMap { n_max: Some(profile.n_max), next, labels })
}

impl FiniteMap {
    pub fn size(&self) -> usize {
        self.next.len()
    }

    /// Builds a map from a raw function table, labelling its cycles.
    /// Every point must lie on a cycle.
    pub fn from_table(next: Vec<u32>, n_max: Option<u64>) -> Result<FiniteMap> {
        let size = next.len();
        if let Some(bad) = next.iter().position(|&j| j as usize >= size) {
            return Err(Error::contract(format!("next({bad}) = {} is outside the point set", next[bad])));
        }
        let mut labels: Vec<Option<OrbitLabel>> = vec![None; size];
        let mut per_period: BTreeMap<u32, u32> = BTreeMap::new();
        for start in 0..size {
            if labels[start].is_some() {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = next[start] as usize;
            while x != start {
                if cycle.len() > size || labels[x].is_some() {
                    return Err(Error::contract(format!("point {start} is not on a cycle")));
                }
                cycle.push(x);
                x = next[x] as usize;
            }
            let period = cycle.len() as u32;
            let orbit = per_period.entry(period).or_default();
            for (position, &pt) in cycle.iter().enumerate() {
                labels[pt] = Some(OrbitLabel { period, orbit: *orbit, position: position as u32 });
            }
            *orbit += 1;
        }
        Ok(FiniteMap { n_max, next, labels: labels.into_iter().map(|l| l.expect("labelled")).collect() })
    }

    /// Number of cycles of each length.
    pub fn cycle_type(&self) -> CycleType {
        let mut counts = BTreeMap::new();
        for l in self.labels.iter().filter(|l| l.position == 0) {
            *counts.entry(u64::from(l.period)).or_insert_with(BigInt::zero) += 1;
        }
        CycleType { counts }
    }

    /// Text export: a header line, then next(i) for each point i.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.size() * 8 + 32);
        match self.n_max {
            Some(n) => writeln!(out, "# finite-map size={} N={n}", self.size()),
            None => writeln!(out, "# finite-map size={}", self.size()),
        }
        .expect("writing to a string");
        for j in &self.next {
            writeln!(out, "{j}").expect("writing to a string");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<FiniteMap> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::contract("empty map file"))?;
        let fields: BTreeMap<&str, &str> = header
            .strip_prefix("# finite-map")
            .ok_or_else(|| Error::contract("missing `# finite-map` header"))?
            .split_whitespace()
            .filter_map(|kv| kv.split_once('='))
            .collect();
        let num = |k: &str| -> Result<Option<u64>> {
            fields
                .get(k)
                .map(|v| v.parse::<u64>().map_err(|_| Error::contract(format!("bad header value {k}={v}"))))
                .transpose()
        };
        let size = num("size")?.ok_or_else(|| Error::contract("header lacks size"))?;
        let next = lines
            .enumerate()
            .map(|(i, l)| l.trim().parse::<u32>().map_err(|_| Error::contract(format!("line {}: bad entry `{l}`", i + 2))))
            .collect::<Result<Vec<_>>>()?;
        if next.len() as u64 != size {
            return Err(Error::contract(format!("header says {size} points, found {}", next.len())));
        }
        FiniteMap::from_table(next, num("N")?)
    }
}

/// #{x : T^n(x) = x} by applying the table n times to every point.
pub fn periodic_points(map: &FiniteMap, n: u64) -> u64 {
    assert!(n >= 1, "n must be positive");
    let next = &map.next;
    (0..next.len() as u32)
        .into_par_iter()
        .with_min_len(4096)
        .filter(|&x| {
            let mut y = x;
            for _ in 0..n {
                y = next[y as usize];
            }
            y == x
        })
        .count() as u64
}

/// The same count from the cycle labels: Σ over cycles whose length divides n.
pub fn periodic_points_by_cycles(map: &FiniteMap, n: u64) -> u64 {
    map.labels.iter().filter(|l| n.is_multiple_of(u64::from(l.period))).count() as u64
}

/// T × F on the Cartesian product, point (i, j) stored at i·|Y| + j.
pub fn product_map(m1: &FiniteMap, m2: &FiniteMap) -> Result<FiniteMap> {
    let size = guard(&(BigInt::from(m1.size()) * m2.size()))?;
    let s2 = m2.size() as u32;
    let mut next = Vec::with_capacity(size as usize);
    for &a in &m1.next {
        for &b in &m2.next {
            next.push(a * s2 + b);
        }
    }
    let n_max = match (m1.n_max, m2.n_max) {
        (Some(a), Some(b)) => Some(a.min(b)),
        _ => None,
    };
    FiniteMap::from_table(next, n_max)
}

/// Permutation up to relabelling: cycle length ↦ number of cycles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CycleType {
    #[serde(serialize_with = "serialize_counts")]
    pub counts: BTreeMap<u64, BigInt>,
}

fn serialize_counts<S: serde::Serializer>(m: &BTreeMap<u64, BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), &v.to_string())?;
    }
    map.end()
}

impl CycleType {
    pub fn from_profile(profile: &OrbitProfile) -> Self {
        let counts = profile
            .counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64 + 1, c.clone()))
            .collect();
        CycleType { counts }
    }

    pub fn size(&self) -> BigInt {
        self.counts.iter().map(|(len, c)| c * len).sum()
    }

    /// An a-cycle times a b-cycle is gcd(a, b) cycles of length lcm(a, b).
    pub fn product(&self, other: &CycleType) -> CycleType {
        let mut counts: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (&a, ca) in &self.counts {
            for (&b, cb) in &other.counts {
                *counts.entry(a.lcm(&b)).or_insert_with(BigInt::zero) += ca * cb * a.gcd(&b);
            }
        }
        CycleType { counts }
    }

    pub fn periodic_points(&self, n: u64) -> BigInt {
        self.counts.iter().filter(|(len, _)| n.is_multiple_of(**len)).map(|(len, c)| c * len).sum()
    }
}

/// n ≤ N where raw iteration of `map` disagrees with a(n), as (n, count, a(n)).
pub fn verify_round_trip(seq: &Sequence, map: &FiniteMap, n_max: u64) -> Result<Vec<(u64, u64, BigInt)>> {
    let values = seq.prefix(n_max)?;
    Ok((1..=n_max)
        .filter_map(|n| {
            let got = periodic_points(map, n);
            let want = &values[n as usize - 1];
            (BigInt::from(got) != *want).then(|| (n, got, want.clone()))
        })
        .collect())
}

/// Orbit profile, map and round-trip check in one call.
#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub descriptor: String,
    pub profile: OrbitProfile,
    pub size: u64,
    /// Raw-iteration counts T^n-fixed points for n = 1..=N.
    pub periodic_counts: Vec<u64>,
    pub verified: bool,
    #[serde(skip)]
    pub map: FiniteMap,
}

pub fn realize(seq: &Sequence, n_max: u64) -> Result<Realization> {
    let profile = orbit_profile(seq, n_max)?;
    let map = build_map(&profile)?;
    let values = seq.prefix(n_max)?;
    let periodic_counts: Vec<u64> = (1..=n_max).map(|n| periodic_points(&map, n)).collect();
    let verified = periodic_counts.iter().zip(&values).all(|(c, v)| BigInt::from(*c) == *v);
    Ok(Realization {
        descriptor: seq.spec().descriptor(),
        size: map.size() as u64,
        profile,
        periodic_counts,
        verified,
        map,
    })
}

/// Single fixed point: the unit of the product.
pub fn point_map() -> FiniteMap {
    build_map(&OrbitProfile::from_counts(vec![1])).expect("one point")
}
