//! Exact integer utilities: factorization, Möbius transforms, p-adic
//! valuations and binomial congruences.

pub mod binomial;
pub mod congruence;
pub mod convolve;
pub mod factor;
pub mod lemmas;
pub mod padic;

pub use binomial::{binomial, central_binomial};
pub use congruence::CongruenceWitness;
pub use convolve::{divisor_sum, inverse_convolve_check, mobius_transform, mobius_transform_at};
pub use factor::{divisors, factorize, is_prime, mobius, primes_up_to, FactoredInteger};
pub use lemmas::{helou_terjanian_check, helou_terjanian_exponent, scaled_binomial_check, scaled_binomial_exponent};
pub use padic::{kummer_valuation, legendre_binomial_valuation, valuation, PadicValuation, Valuation};
