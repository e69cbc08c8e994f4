//! Exact coefficient domains.
//!
//! Every polynomial in the crate is generic over a [`Coeff`] element type and
//! carries the matching [`CoeffDomain`] descriptor. Domains that need runtime
//! data (the prime of 𝔽ₚ, the precision of ℤ/pᴺ) keep it in the descriptor and
//! in each element, so elements stay self-contained values.

use std::fmt::{Debug, Display};

use num_rational::BigRational;

mod cyclo;
mod fp;
mod integer;
mod padic;
mod rational;

pub use cyclo::{CycloField, CycloNum};
pub use fp::{check_prime, is_prime, FpElem, PrimeField};
pub use integer::{Integer, IntegerRing};
pub use padic::{Padic, PadicRing};
pub use rational::{rat, Rational, RationalField};

/// Arithmetic on a coefficient value.
pub trait Coeff: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    type Domain: CoeffDomain<Elem = Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for non-units.
    fn inv(&self) -> Option<Self>;

    /// Whether the printed form needs parentheses when used as a factor.
    fn is_compound(&self) -> bool {
        false
    }
}

/// Descriptor of a coefficient domain: constructs constants and reports
/// structural facts.
pub trait CoeffDomain: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Elem: Coeff<Domain = Self>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number, `None` if the denominator is not invertible.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    /// Named constants of the domain (`t` for ζ₉ in the cyclotomic field).
    fn symbol(&self, _name: &str) -> Option<Self::Elem> {
        None
    }
    fn is_field(&self) -> bool;
    /// Short canonical name, e.g. `QQ(zeta9)` or `GF(7)`.
    fn descriptor(&self) -> String;
}
