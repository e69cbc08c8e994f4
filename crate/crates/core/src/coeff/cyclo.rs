//! The cyclotomic field ℚ(ζ₉) in the power basis 1, ζ, …, ζ⁵.
//!
//! Elements are stored as six integer numerators over one positive common
//! denominator, kept in lowest terms so that equal field elements have equal
//! representations. Reduction uses Φ₉(t) = t⁶ + t³ + 1, i.e. tᵏ = −tᵏ⁻³ − tᵏ⁻⁶.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Coeff, CoeffDomain};

pub const DEGREE: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    num: [BigInt; DEGREE],
    den: BigInt,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CycloField;

impl CycloNum {
    pub fn zero() -> Self {
        CycloNum {
            num: Default::default(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut c = Self::zero();
        c.num[0] = BigInt::from(n);
        c
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let mut num: [BigInt; DEGREE] = Default::default();
        num[0] = q.numer().clone();
        CycloNum {
            num,
            den: q.denom().clone(),
        }
    }

    /// Element with the given power-basis coordinates.
    pub fn from_coords(coords: &[BigRational; DEGREE]) -> Self {
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = std::array::from_fn(|i| coords[i].numer() * (&den / coords[i].denom()));
        Self::normalized(num, den)
    }

    /// Power-basis coordinates as rationals.
    pub fn coords(&self) -> [BigRational; DEGREE] {
        std::array::from_fn(|i| BigRational::new(self.num[i].clone(), self.den.clone()))
    }

    /// ζ₉ᵏ for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(9) as usize;
        let mut num: [BigInt; DEGREE] = Default::default();
        match k {
            0..=5 => num[k] = BigInt::one(),
            // t^6 = -t^3 - 1, t^7 = -t^4 - t, t^8 = -t^5 - t^2
            _ => {
                num[k - 3] = -BigInt::one();
                num[k - 6] = -BigInt::one();
            }
        }
        CycloNum {
            num,
            den: BigInt::one(),
        }
    }

    /// θ = ζ₉³, a primitive cube root of unity.
    pub fn theta() -> Self {
        Self::zeta_pow(3)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn normalized(mut num: [BigInt; DEGREE], mut den: BigInt) -> Self {
        if num.iter().all(Zero::is_zero) {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for n in &mut num {
                *n = -&*n;
            }
        }
        let g = num.iter().fold(den.clone(), |acc, n| acc.gcd(n));
        if !g.is_one() {
            for n in &mut num {
                *n = &*n / &g;
            }
            den /= &g;
        }
        CycloNum { num, den }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = Coeff::mul(&acc, &base);
            }
            base = Coeff::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in ℚ[t]
    /// modulo Φ₉.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let a: Vec<BigRational> = self.coords().to_vec();
        let phi: Vec<BigRational> = [1, 0, 0, 1, 0, 0, 1]
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        // invariant: s_i * a ≡ r_i (mod phi)
        let (mut r0, mut r1) = (phi, trim(a));
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = trim(sub(&s0, &mul(&q, &s1)));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ₉ is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let mut coords: [BigRational; DEGREE] = Default::default();
        for (i, s) in s0.iter().enumerate() {
            coords[i] = s * &c;
        }
        Some(Self::from_coords(&coords))
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect()
}

fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
        r = trim(r);
    }
    (trim(q), r)
}

impl Coeff for CycloNum {
    type Domain = CycloField;

    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }

    fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            let num = std::array::from_fn(|i| &self.num[i] + &other.num[i]);
            return Self::normalized(num, self.den.clone());
        }
        let num = std::array::from_fn(|i| &self.num[i] * &other.den + &other.num[i] * &self.den);
        Self::normalized(num, &self.den * &other.den)
    }

    fn sub(&self, other: &Self) -> Self {
        Coeff::add(self, &Coeff::neg(other))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut wide: [BigInt; 2 * DEGREE - 1] = Default::default();
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        for k in (DEGREE..2 * DEGREE - 1).rev() {
            let c = std::mem::take(&mut wide[k]);
            if !c.is_zero() {
                wide[k - 3] -= &c;
                wide[k - 6] -= &c;
            }
        }
        let num = std::array::from_fn(|i| std::mem::take(&mut wide[i]));
        Self::normalized(num, &self.den * &other.den)
    }

    fn neg(&self) -> Self {
        CycloNum {
            num: std::array::from_fn(|i| -&self.num[i]),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        self.checked_inv()
    }

    fn is_compound(&self) -> bool {
        self.num.iter().filter(|n| !n.is_zero()).count() > 1
    }
}

impl CoeffDomain for CycloField {
    type Elem = CycloNum;

    fn zero(&self) -> CycloNum {
        CycloNum::zero()
    }
    fn one(&self) -> CycloNum {
        CycloNum::one()
    }
    fn from_i64(&self, n: i64) -> CycloNum {
        CycloNum::from_int(n)
    }
    fn from_rational(&self, q: &BigRational) -> Option<CycloNum> {
        Some(CycloNum::from_rational(q))
    }
    fn symbol(&self, name: &str) -> Option<CycloNum> {
        (name == "t").then(|| CycloNum::zeta_pow(1))
    }
    fn is_field(&self) -> bool {
        true
    }
    fn descriptor(&self) -> String {
        "QQ(zeta9)".into()
    }
}

impl fmt::Display for CycloNum {
    /// Descending powers of `t`, e.g. `1/2*t^4 - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coords().iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            match (One::is_one(&abs), power.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => f.write_str(&power)?,
                (false, false) => write!(f, "{abs}*{power}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self})")
    }
}
