//! Quotient rings `ambient / (relations)` and their text configuration.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::groebner::GroebnerBasis;
use super::monomial::MonomialOrder;
use super::parse::parse_poly;
use super::polynomial::Poly;
use super::ring::PolyRing;
use crate::coeff::{
    Coeff, CoeffDomain, CycloField, CycloNum, FpElem, Padic, PadicRing, PrimeField, Rational,
    RationalField,
};
use crate::error::{Error, Result};

/// A graded quotient ring: ambient polynomial ring plus homogeneous
/// relations. All ideal operations append the relations internally.
#[derive(Debug)]
pub struct RingPresentation<C: Coeff> {
    ambient: Arc<PolyRing<C>>,
    relations: Vec<Poly<C>>,
    relation_basis: OnceLock<Result<GroebnerBasis<C>>>,
}

impl<C: Coeff> RingPresentation<C> {
    pub fn new(ambient: &Arc<PolyRing<C>>, relations: Vec<Poly<C>>) -> Result<Arc<Self>> {
        for r in &relations {
            r.try_same_ring(&ambient.zero())?;
            if !r.is_homogeneous() {
                return Err(Error::Config {
                    field: "relations".into(),
                    msg: format!("relation `{r}` is not weighted-homogeneous"),
                });
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Arc::new(RingPresentation {
            ambient: ambient.clone(),
            relations,
            relation_basis: OnceLock::new(),
        }))
    }

    /// Polynomial ring with no relations.
    pub fn free(ambient: &Arc<PolyRing<C>>) -> Arc<Self> {
        Self::new(ambient, Vec::new()).expect("no relations to check")
    }

    pub fn ring(&self) -> &Arc<PolyRing<C>> {
        &self.ambient
    }

    pub fn relations(&self) -> &[Poly<C>] {
        &self.relations
    }

    pub fn domain(&self) -> &C::Domain {
        self.ambient.domain()
    }

    pub fn parse(&self, text: &str) -> Result<Poly<C>> {
        parse_poly(&self.ambient, text)
    }

    /// Tracked Gröbner basis of the relation ideal. Over non-fields a single
    /// relation with unit leading coefficient is accepted as its own basis.
    pub fn relation_basis(&self) -> Result<&GroebnerBasis<C>> {
        self.relation_basis
            .get_or_init(|| {
                if self.domain().is_field() {
                    return GroebnerBasis::compute_tracked(&self.ambient, &self.relations);
                }
                match self.relations.as_slice() {
                    [] => GroebnerBasis::from_basis(&self.ambient, Vec::new()),
                    [r] if r.leading_coeff().is_some_and(|c| c.is_one()) => {
                        GroebnerBasis::from_basis(&self.ambient, vec![r.clone()])
                    }
                    _ => Err(Error::UnsupportedDomain {
                        op: "relation basis",
                        domain: self.domain().descriptor(),
                    }),
                }
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Canonical representative modulo the relations.
    pub fn reduce(&self, f: &Poly<C>) -> Result<Poly<C>> {
        Ok(self.relation_basis()?.normal_form(f))
    }

    pub fn is_zero(&self, f: &Poly<C>) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Gröbner basis of `(gens) + (relations)` in the ambient ring.
    pub fn groebner(&self, gens: &[Poly<C>]) -> Result<GroebnerBasis<C>> {
        GroebnerBasis::compute(&self.ambient, &self.with_relations(gens)?)
    }

    pub(crate) fn with_relations(&self, gens: &[Poly<C>]) -> Result<Vec<Poly<C>>> {
        for g in gens {
            g.try_same_ring(&self.ambient.zero())?;
        }
        let mut all = gens.to_vec();
        all.extend(self.relations.iter().cloned());
        Ok(all)
    }
}

/// Text form of a ring presentation, loadable from TOML or JSON.
///
/// ```toml
/// domain = "QQ(zeta9)"
/// variables = ["x", "y", "z"]
/// weights = ["1", "1", "1"]
/// relations = ["t^3*x^3 + t^6*y^3 + z^3"]
/// order = "weighted-grevlex"
/// ```
///
/// Domains: `QQ`, `QQ(zeta9)`, `GF(p)`, `Z/p^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub domain: String,
    pub variables: Vec<String>,
    #[serde(default)]
    pub weights: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub order: MonomialOrder,
}

/// A ring presentation whose coefficient domain is chosen at run time.
#[derive(Clone, Debug)]
pub enum AnyPresentation {
    Rational(Arc<RingPresentation<Rational>>),
    Cyclotomic(Arc<RingPresentation<CycloNum>>),
    PrimeField(Arc<RingPresentation<FpElem>>),
    Truncated(Arc<RingPresentation<Padic>>),
}

fn config_err(field: &str, msg: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        msg: msg.into(),
    }
}

fn parse_u64(field: &str, s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| config_err(field, format!("`{s}` is not a non-negative integer")))
}

fn parse_weight(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || config_err("weights", format!("`{s}` is not a fraction"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d == num_bigint::BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl RingConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| config_err("ring", e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| config_err("ring", e.to_string()))
    }

    fn build<D: CoeffDomain>(&self, domain: D) -> Result<Arc<RingPresentation<D::Elem>>> {
        if self.variables.is_empty() {
            return Err(config_err("variables", "at least one variable is required"));
        }
        let weights = if self.weights.is_empty() {
            vec![Rational::from_integer(1.into()); self.variables.len()]
        } else {
            self.weights
                .iter()
                .map(|w| parse_weight(w))
                .collect::<Result<Vec<_>>>()?
        };
        let ring = PolyRing::from_owned(domain, self.variables.clone(), weights, self.order)?;
        let rels = self
            .relations
            .iter()
            .enumerate()
            .map(|(k, r)| {
                parse_poly(&ring, r).map_err(|e| config_err(&format!("relations[{k}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        RingPresentation::new(&ring, rels)
    }

    pub fn load(&self) -> Result<AnyPresentation> {
        let d = self.domain.trim();
        if d == "QQ" {
            return Ok(AnyPresentation::Rational(self.build(RationalField)?));
        }
        if d == "QQ(zeta9)" {
            return Ok(AnyPresentation::Cyclotomic(self.build(CycloField)?));
        }
        if let Some(p) = d.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
            let p = parse_u64("domain", p)?;
            let f = PrimeField::new(p).map_err(|e| config_err("domain", e.to_string()))?;
            return Ok(AnyPresentation::PrimeField(self.build(f)?));
        }
        if let Some((p, n)) = d.strip_prefix("Z/").and_then(|s| s.split_once('^')) {
            let p = parse_u64("domain", p)?;
            let n = parse_u64("domain", n)?;
            let r = PadicRing::new(p, n as u32).map_err(|e| config_err("domain", e.to_string()))?;
            return Ok(AnyPresentation::Truncated(self.build(r)?));
        }
        Err(config_err(
            "domain",
            format!("unknown domain `{d}` (expected QQ, QQ(zeta9), GF(p) or Z/p^N)"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_cyclotomic_fermat_ring() {
        let cfg = RingConfig::from_toml(
            r#"
domain = "QQ(zeta9)"
variables = ["x1", "y1", "z1"]
weights = ["1/3", "1/3", "1/3"]
relations = ["t^3*x1^3 + t^6*y1^3 + z1^3"]
"#,
        )
        .unwrap();
        let AnyPresentation::Cyclotomic(p) = cfg.load().unwrap() else {
            panic!("wrong domain")
        };
        assert_eq!(p.relations().len(), 1);
        let x3 = p.parse("x1^3").unwrap();
        let r = p.reduce(&x3).unwrap();
        assert_eq!(r.to_string(), "-t^3*y1^3 + (t^3 + 1)*z1^3");
    }

    #[test]
    fn rejects_bad_fields() {
        let base = RingConfig {
            domain: "GF(9)".into(),
            variables: vec!["x".into()],
            weights: vec![],
            relations: vec![],
            order: MonomialOrder::WeightedGrevlex,
        };
        assert!(matches!(base.load(), Err(Error::Config { field, .. }) if field == "domain"));
        let inhom = RingConfig {
            domain: "QQ".into(),
            variables: vec!["x".into(), "y".into()],
            relations: vec!["x^2 + y".into()],
            ..base.clone()
        };
        assert!(matches!(inhom.load(), Err(Error::Config { field, .. }) if field == "relations"));
        let w = RingConfig {
            domain: "QQ".into(),
            weights: vec!["1/0".into()],
            ..base
        };
        assert!(w.load().is_err());
    }

    #[test]
    fn truncated_ring_reduces_by_monic_relation() {
        let cfg = RingConfig {
            domain: "Z/5^3".into(),
            variables: vec!["x".into(), "y".into(), "z".into()],
            weights: vec![],
            relations: vec!["x^3 + y^3 + z^3".into()],
            order: MonomialOrder::WeightedGrevlex,
        };
        let AnyPresentation::Truncated(p) = cfg.load().unwrap() else {
            panic!()
        };
        let f = p.parse("x^4").unwrap();
        assert_eq!(p.reduce(&f).unwrap().to_string(), "124*x*y^3 + 124*x*z^3");
    }
}
