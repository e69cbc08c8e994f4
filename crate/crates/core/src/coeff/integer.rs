use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Coeff, CoeffDomain};

/// Arbitrary-precision integer coefficient; units are ±1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Integer(pub BigInt);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerRing;

impl Coeff for Integer {
    type Domain = IntegerRing;

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Integer(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Integer(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Integer(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Integer(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        (self.0.abs().is_one()).then(|| self.clone())
    }
}

impl CoeffDomain for IntegerRing {
    type Elem = Integer;

    fn zero(&self) -> Integer {
        Integer(BigInt::zero())
    }
    fn one(&self) -> Integer {
        Integer(BigInt::one())
    }
    fn from_i64(&self, n: i64) -> Integer {
        Integer(n.into())
    }
    fn from_rational(&self, q: &BigRational) -> Option<Integer> {
        q.is_integer().then(|| Integer(q.to_integer()))
    }
    fn is_field(&self) -> bool {
        false
    }
    fn descriptor(&self) -> String {
        "ZZ".into()
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
