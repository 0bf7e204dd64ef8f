use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

/// Evidence for one congruence `lhs ≡ rhs (mod modulus)`.
///
/// A modulus of zero stands for `p^∞`: the congruence then holds only when
/// both sides are equal, and the residue is the raw difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceWitness {
    #[serde(with = "crate::json::bigint")]
    pub lhs: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub rhs: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub modulus: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub residue: BigInt,
    pub holds: bool,
}

impl CongruenceWitness {
    pub fn new(lhs: BigInt, rhs: BigInt, modulus: BigInt) -> Self {
        assert!(modulus >= BigInt::zero(), "negative modulus");
        let diff = &lhs - &rhs;
        let residue = if modulus.is_zero() { diff } else { diff.mod_floor(&modulus) };
        let holds = residue.is_zero();
        CongruenceWitness { lhs, rhs, modulus, residue, holds }
    }

    /// Equality test recorded as a congruence modulo `p^∞`.
    pub fn exact(lhs: BigInt, rhs: BigInt) -> Self {
        Self::new(lhs, rhs, BigInt::zero())
    }

    pub fn is_exact(&self) -> bool {
        self.modulus.is_zero()
    }
}
