use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use crate::coeff::{Coeff, Rational};
use crate::poly::{Poly, RingPresentation};
use crate::error::Result;

/// A value of the grading valuation: an exact rational or ∞ (for zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Rational),
    Infinity,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(q) => Some(q),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Valuation {
    type Output = Valuation;
    fn add(self, other: &Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl From<Rational> for Valuation {
    fn from(q: Rational) -> Self {
        Valuation::Finite(q)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(q) => write!(f, "{q}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Minimal weighted degree of the normal form of `f` modulo the relations.
pub fn valuation<C: Coeff>(f: &Poly<C>, ring: &RingPresentation<C>) -> Result<Valuation> {
    let nf = ring.reduce(f)?;
    Ok(nf
        .min_weighted_degree()
        .map_or(Valuation::Infinity, Valuation::Finite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn ordering_and_sum() {
        let a = Valuation::Finite(rat(1, 3));
        let b = Valuation::Finite(rat(2, 3));
        assert!(a < b && b < Valuation::Infinity);
        assert_eq!(&a + &b, Valuation::Finite(rat(1, 1)));
        assert_eq!(&a + &Valuation::Infinity, Valuation::Infinity);
        assert_eq!(a.to_string(), "1/3");
        assert_eq!(Valuation::Infinity.to_string(), "inf");
    }
}
