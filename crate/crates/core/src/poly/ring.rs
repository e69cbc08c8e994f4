use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive};

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Poly;
use crate::coeff::{Coeff, CoeffDomain, Rational};
use crate::error::{Error, Result};

/// An ambient polynomial ring: coefficient domain, named variables with
/// positive rational weights, and a monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<C: Coeff> {
    domain: C::Domain,
    names: Vec<String>,
    weights: Vec<Rational>,
    int_weights: Vec<u64>,
    weight_scale: u64,
    order: MonomialOrder,
}

impl<C: Coeff> PolyRing<C> {
    pub fn new(
        domain: C::Domain,
        names: &[&str],
        weights: Vec<Rational>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        Self::from_owned(domain, names.iter().map(|s| s.to_string()).collect(), weights, order)
    }

    pub fn from_owned(
        domain: C::Domain,
        names: Vec<String>,
        weights: Vec<Rational>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        if names.len() != weights.len() {
            return Err(Error::Config {
                field: "weights".into(),
                msg: format!("{} variables but {} weights", names.len(), weights.len()),
            });
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::Config {
                field: "weights".into(),
                msg: format!("weight {w} is not positive"),
            });
        }
        if let MonomialOrder::Elimination { block } = order {
            if block > names.len() {
                return Err(Error::Config {
                    field: "order".into(),
                    msg: "elimination block larger than variable count".into(),
                });
            }
        }
        let scale = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let int_weights = weights
            .iter()
            .map(|w| (w * Rational::from_integer(scale.clone())).to_integer().to_u64())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Config {
                field: "weights".into(),
                msg: "weights too large".into(),
            })?;
        Ok(Arc::new(PolyRing {
            domain,
            names,
            weights,
            int_weights,
            weight_scale: scale.to_u64().expect("weight denominators fit in u64"),
            order,
        }))
    }

    /// Ring with all weights equal to one.
    pub fn standard(domain: C::Domain, names: &[&str]) -> Arc<Self> {
        let w = vec![Rational::one(); names.len()];
        Self::new(domain, names, w, MonomialOrder::WeightedGrevlex).expect("valid standard ring")
    }

    pub fn domain(&self) -> &C::Domain {
        &self.domain
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn int_weights(&self) -> &[u64] {
        &self.int_weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, &self.int_weights)
    }

    /// Weighted degree of a monomial as an exact rational.
    pub fn weighted_degree(&self, m: &Monomial) -> Rational {
        Rational::new(
            BigInt::from(m.weighted_degree(&self.int_weights)),
            BigInt::from(self.weight_scale),
        )
    }

    /// Converts an integer-weighted degree back to the rational grading.
    pub fn rational_degree(&self, int_degree: u64) -> Rational {
        Rational::new(BigInt::from(int_degree), BigInt::from(self.weight_scale))
    }

    pub fn int_degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.int_weights)
    }

    pub fn zero(self: &Arc<Self>) -> Poly<C> {
        Poly::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Poly<C> {
        self.constant(self.domain.one())
    }

    pub fn constant(self: &Arc<Self>, c: C) -> Poly<C> {
        Poly::from_terms(self, vec![(Monomial::one(self.nvars()), c)])
    }

    pub fn int(self: &Arc<Self>, n: i64) -> Poly<C> {
        self.constant(self.domain.from_i64(n))
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Poly<C> {
        Poly::from_terms(self, vec![(Monomial::var(i, self.nvars()), self.domain.one())])
    }

    pub fn var_named(self: &Arc<Self>, name: &str) -> Option<Poly<C>> {
        self.var_index(name).map(|i| self.var(i))
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Poly<C>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn monomial(self: &Arc<Self>, exps: &[u32]) -> Poly<C> {
        Poly::from_terms(
            self,
            vec![(Monomial::from_exponents(exps), self.domain.one())],
        )
    }

    /// Same variables and weights with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::from_owned(self.domain.clone(), self.names.clone(), self.weights.clone(), order)
    }

    /// Ring with extra leading variables, eliminated by a block order.
    pub fn with_elimination_vars(&self, extra: &[&str]) -> Result<Arc<Self>> {
        let mut names: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        names.extend(self.names.iter().cloned());
        let mut weights = vec![Rational::one(); extra.len()];
        weights.extend(self.weights.iter().cloned());
        Self::from_owned(
            self.domain.clone(),
            names,
            weights,
            MonomialOrder::Elimination { block: extra.len() },
        )
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Unit-weight grevlex ring over `domain`; infers the element type.
pub fn standard_ring<D: CoeffDomain>(domain: D, names: &[&str]) -> Arc<PolyRing<D::Elem>> {
    PolyRing::standard(domain, names)
}
