use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::fp::check_prime;
use super::{Coeff, CoeffDomain};
use crate::error::{Error, Result};

/// The truncated p-adic ring ℤ/pᴺ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicRing {
    p: u64,
    precision: u32,
    modulus: u64,
}

impl PadicRing {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        check_prime(p)?;
        if precision == 0 {
            return Err(Error::InvalidPrecision(precision));
        }
        let modulus = p
            .checked_pow(precision)
            .filter(|m| *m < 1 << 62)
            .ok_or(Error::InvalidPrecision(precision))?;
        Ok(PadicRing {
            p,
            precision,
            modulus,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elem(&self, n: i64) -> Padic {
        Padic {
            residue: (n as i128).rem_euclid(self.modulus as i128) as u64,
            ring: *self,
        }
    }

    pub fn from_residue(&self, r: u64) -> Padic {
        Padic {
            residue: r % self.modulus,
            ring: *self,
        }
    }

    /// pᵏ as a ring element (zero once k ≥ N).
    pub fn p_pow(&self, k: u32) -> Padic {
        if k >= self.precision {
            return self.elem(0);
        }
        self.from_residue(self.p.pow(k))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Padic {
    residue: u64,
    ring: PadicRing,
}

impl std::hash::Hash for PadicRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
    }
}

impl Padic {
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn ring(&self) -> PadicRing {
        self.ring
    }

    /// p-adic valuation of the residue; `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        if self.residue == 0 {
            return None;
        }
        let mut v = 0;
        let mut r = self.residue;
        while r % self.ring.p == 0 {
            r /= self.ring.p;
            v += 1;
        }
        Some(v)
    }

    /// Whether pᵏ divides the element.
    pub fn divisible_by_p_pow(&self, k: u32) -> bool {
        self.valuation().is_none_or(|v| v >= k)
    }

    /// Image under ℤ/pᴺ → ℤ/pᴹ, M ≤ N.
    pub fn reduce_to(&self, target: &PadicRing) -> Padic {
        debug_assert!(target.p == self.ring.p && target.precision <= self.ring.precision);
        target.from_residue(self.residue)
    }

    /// Exact division by pᵏ of the integer representative in [0, pᴺ).
    pub fn div_p_pow(&self, k: u32) -> Padic {
        debug_assert!(self.divisible_by_p_pow(k));
        self.ring.from_residue(self.residue / self.ring.p.pow(k))
    }
}

impl Coeff for Padic {
    type Domain = PadicRing;

    fn is_zero(&self) -> bool {
        self.residue == 0
    }
    fn is_one(&self) -> bool {
        self.residue == 1
    }
    fn add(&self, other: &Self) -> Self {
        let m = self.ring.modulus;
        let s = self.residue + other.residue;
        Padic {
            residue: if s >= m { s - m } else { s },
            ring: self.ring,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Coeff::add(self, &Coeff::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        Padic {
            residue: ((self.residue as u128 * other.residue as u128) % self.ring.modulus as u128)
                as u64,
            ring: self.ring,
        }
    }
    fn neg(&self) -> Self {
        Padic {
            residue: if self.residue == 0 {
                0
            } else {
                self.ring.modulus - self.residue
            },
            ring: self.ring,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.residue % self.ring.p == 0 {
            return None;
        }
        // extended Euclid on (residue, modulus)
        let (mut r0, mut r1) = (self.ring.modulus as i128, self.residue as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(Padic {
            residue: s0.rem_euclid(self.ring.modulus as i128) as u64,
            ring: self.ring,
        })
    }
}

impl CoeffDomain for PadicRing {
    type Elem = Padic;

    fn zero(&self) -> Padic {
        self.elem(0)
    }
    fn one(&self) -> Padic {
        self.elem(1)
    }
    fn from_i64(&self, n: i64) -> Padic {
        self.elem(n)
    }
    fn from_rational(&self, q: &BigRational) -> Option<Padic> {
        let m = BigInt::from(self.modulus);
        let red = |n: &BigInt| {
            let r = ((n % &m) + &m) % &m;
            self.from_residue(r.to_u64().expect("residue fits"))
        };
        red(q.denom()).inv().map(|d| Coeff::mul(&red(q.numer()), &d))
    }
    fn is_field(&self) -> bool {
        false
    }
    fn descriptor(&self) -> String {
        format!("Z/{}^{}", self.p, self.precision)
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl fmt::Debug for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.ring.p, self.ring.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_limits() {
        assert!(PadicRing::new(3, 2).is_err());
        assert!(PadicRing::new(5, 0).is_err());
        assert!(PadicRing::new(2, 70).is_err());
        assert_eq!(PadicRing::new(5, 3).unwrap().modulus(), 125);
    }

    #[test]
    fn valuation_and_units() {
        let r = PadicRing::new(5, 4).unwrap();
        assert_eq!(r.elem(50).valuation(), Some(2));
        assert_eq!(r.elem(0).valuation(), None);
        assert_eq!(r.elem(625).valuation(), None);
        assert!(r.elem(10).inv().is_none());
        let u = r.elem(-7);
        assert!(Coeff::mul(&u, &u.inv().unwrap()).is_one());
        assert_eq!(r.elem(75).div_p_pow(2).residue(), 3);
    }
}
