//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::coeff::{Coeff, CoeffDomain, Rational};
use crate::error::{Error, Result};

pub type Term<C> = (Monomial, C);

/// A polynomial: terms with nonzero coefficients, monomials strictly
/// decreasing in the ring's order. Zero is the empty term list.
#[derive(Clone)]
pub struct Poly<C: Coeff> {
    ring: Arc<PolyRing<C>>,
    terms: Vec<Term<C>>,
}

impl<C: Coeff> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Coeff> Eq for Poly<C> {}

impl<C: Coeff> Poly<C> {
    pub fn zero(ring: &Arc<PolyRing<C>>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing<C>>, terms: Vec<Term<C>>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term<C>> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts the caller that `terms` is already sorted and zero-free.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<C>>, terms: Vec<Term<C>>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<C>> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<C>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.domain().zero())
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            PolyRing::same(&self.ring, &other.ring),
            "polynomials from different rings"
        );
    }

    pub fn try_same_ring(&self, other: &Self) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        self.check_ring(other);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| {
            let c = if negate { c.neg() } else { c.clone() };
            (m.clone(), c)
        }));
        Poly::from_sorted(&self.ring, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Poly::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, d)| (m.clone(), d.mul(c)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        Poly::from_sorted(&self.ring, terms)
    }

    /// Multiplication by the term `c·m`; monomial orders are multiplicative,
    /// so no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(n, d)| (n.mul(m), d.mul(c)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        Poly::from_sorted(&self.ring, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<Term<C>> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Poly::from_sorted(&self.ring, terms)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so the leading coefficient is one (no-op on zero).
    pub fn monic(&self) -> Result<Self> {
        match self.leading_coeff() {
            None => Ok(self.clone()),
            Some(c) if c.is_one() => Ok(self.clone()),
            Some(c) => {
                let inv = c.inv().ok_or(Error::DivisionByZero)?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Substitutes `images[i]` for variable `i`; images may live in another
    /// ring with the same coefficient type.
    pub fn compose(&self, images: &[Poly<C>]) -> Poly<C> {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .expect("at least one variable");
        let mut power_cache: Vec<Vec<Poly<C>>> =
            images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&images[i]);
                    cache.push(next);
                }
                t = t.mul(&cache[e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Re-expresses the polynomial in another ring, mapping coefficients with
    /// `f` and variable `i` to target variable `var_map[i]`.
    pub fn map_into<D: Coeff>(
        &self,
        target: &Arc<PolyRing<D>>,
        var_map: &[usize],
        f: impl Fn(&C) -> D,
    ) -> Poly<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.nvars()];
                for (i, &k) in m.exponents().iter().enumerate() {
                    e[var_map[i]] += k;
                }
                (Monomial::from_exponents(&e), f(c))
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Same polynomial viewed in a ring with identical variables but a
    /// different order or presentation.
    pub fn reinterpret(&self, target: &Arc<PolyRing<C>>) -> Poly<C> {
        assert_eq!(target.nvars(), self.ring.nvars());
        if PolyRing::same(target, &self.ring) {
            return self.clone();
        }
        Poly::from_terms(target, self.terms.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Poly<C> {
        Poly::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        )
    }

    /// Smallest weighted degree among the terms, exact.
    pub fn min_weighted_degree(&self) -> Option<Rational> {
        self.terms
            .iter()
            .map(|(m, _)| self.ring.int_degree(m))
            .min()
            .map(|d| self.ring.rational_degree(d))
    }

    pub fn max_weighted_degree(&self) -> Option<Rational> {
        self.terms
            .iter()
            .map(|(m, _)| self.ring.int_degree(m))
            .max()
            .map(|d| self.ring.rational_degree(d))
    }

    /// Whether every term has the same weighted degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.int_degree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Homogeneous component of the given integer-weighted degree.
    pub fn component(&self, int_degree: u64) -> Poly<C> {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.ring.int_degree(m) == int_degree)
            .cloned()
            .collect();
        Poly::from_sorted(&self.ring, terms)
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (o, &e) in out.iter_mut().zip(m.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    /// Whether the variable occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    /// Canonical text form, e.g. `(t^3 + 1)*x1^2*y1 - 3*z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = format_monomial(m, self.ring.names());
            let (neg, body) = format_term(c, &mono);
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    parts.join("*")
}

/// Returns (leading minus sign, rest of the term text).
fn format_term<C: Coeff>(c: &C, mono: &str) -> (bool, String) {
    let text = c.to_string();
    if c.is_compound() {
        let body = if mono.is_empty() {
            format!("({text})")
        } else {
            format!("({text})*{mono}")
        };
        return (false, body);
    }
    let (neg, abs) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    let body = match (abs.as_str(), mono.is_empty()) {
        (_, true) => abs,
        ("1", false) => mono.to_string(),
        (_, false) => format!("{abs}*{mono}"),
    };
    (neg, body)
}

/// Convenience: the sum of a list of polynomials in one ring.
pub fn sum<C: Coeff>(ring: &Arc<PolyRing<C>>, polys: impl IntoIterator<Item = Poly<C>>) -> Poly<C> {
    polys.into_iter().fold(Poly::zero(ring), |acc, p| acc.add(&p))
}

impl<C: Coeff> Poly<C> {
    /// Constant term coefficient.
    pub fn constant_coeff(&self) -> C {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub fn domain(&self) -> &C::Domain {
        self.ring.domain()
    }
}
