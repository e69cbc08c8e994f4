use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Coeff, CoeffDomain};
use crate::error::{Error, Result};

/// Trial-division primality test; the primes used here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_any_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p >= 1 << 31 {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

/// Primes usable with the Fermat cubic: 3 is excluded since
/// x³ + y³ + z³ = (x + y + z)³ in characteristic 3.
pub fn check_prime(p: u64) -> Result<()> {
    if p == 3 {
        return Err(Error::InvalidPrime(p));
    }
    check_any_prime(p)
}

/// The prime field 𝔽ₚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Any prime below 2³¹.
    pub fn new(p: u64) -> Result<Self> {
        check_any_prime(p)?;
        Ok(PrimeField { p })
    }

    /// Field for the Fermat cubic ring; rejects p = 3.
    pub fn fermat(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> FpElem {
        FpElem {
            residue: n.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    /// Reduction of an arbitrary integer.
    pub fn reduce_big(&self, n: &BigInt) -> FpElem {
        let r = n % BigInt::from(self.p);
        let r = r.to_i64().expect("residue fits");
        self.elem(r)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    residue: u64,
    p: u64,
}

impl FpElem {
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = 1u64;
        let mut b = self.residue;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b, self.p);
            }
            b = mulmod(b, b, self.p);
            e >>= 1;
        }
        FpElem {
            residue: acc,
            p: self.p,
        }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Coeff for FpElem {
    type Domain = PrimeField;

    fn is_zero(&self) -> bool {
        self.residue == 0
    }
    fn is_one(&self) -> bool {
        self.residue == 1
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let s = self.residue + other.residue;
        FpElem {
            residue: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Coeff::add(self, &Coeff::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        FpElem {
            residue: mulmod(self.residue, other.residue, self.p),
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        FpElem {
            residue: if self.residue == 0 { 0 } else { self.p - self.residue },
            p: self.p,
        }
    }
    fn inv(&self) -> Option<Self> {
        (self.residue != 0).then(|| self.pow(self.p - 2))
    }
}

impl CoeffDomain for PrimeField {
    type Elem = FpElem;

    fn zero(&self) -> FpElem {
        self.elem(0)
    }
    fn one(&self) -> FpElem {
        self.elem(1)
    }
    fn from_i64(&self, n: i64) -> FpElem {
        self.elem(n)
    }
    fn from_rational(&self, q: &BigRational) -> Option<FpElem> {
        let d = self.reduce_big(q.denom());
        let n = self.reduce_big(q.numer());
        d.inv().map(|d| Coeff::mul(&n, &d))
    }
    fn is_field(&self) -> bool {
        true
    }
    fn descriptor(&self) -> String {
        format!("GF({})", self.p)
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.p)
    }
}
