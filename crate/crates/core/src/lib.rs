//! Exact-arithmetic toolkit for the realizability of integer sequences as
//! periodic-point counts.
//!
//! A sequence `a(1), a(2), ...` is realizable when every `(μ∗a)(n)` is a
//! non-negative multiple of `n`. The crate generates the binomial-sum
//! families (Apéry, Delannoy, Domb, Franel, central trinomial, ...) and the
//! classical negatives (Catalan, Motzkin, Schröder, Bell, ...), decides the
//! sign and Dold conditions on prefixes, bounds `Fail(a)`, sweeps the
//! prime-power congruences, finds prime witnesses of non-realizability and
//! builds explicit finite maps for realizable prefixes.

pub mod arith;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod json;
pub mod oeis;
pub mod realize;
pub mod realizability;
pub mod seq;
pub mod witness;

pub use error::{Error, Result};
pub use seq::{Family, Sequence, SequenceSpec};
