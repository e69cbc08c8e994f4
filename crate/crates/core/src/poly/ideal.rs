//! Ideal operations in quotient rings: membership with certificates and
//! colon ideals.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use super::groebner::{divide, GroebnerBasis};
use super::linalg::kernel;
use super::monomial::Monomial;
use super::polynomial::Poly;
use super::presentation::RingPresentation;
use super::ring::PolyRing;
use crate::coeff::{Coeff, CoeffDomain};
use crate::error::{Error, Result};

/// Proof that `target` lies in `(generators) + (relations)`:
/// `target = Σ cofactors[i]·generators[i] + Σ relation_cofactors[j]·relations[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipCertificate<C: Coeff> {
    pub target: Poly<C>,
    pub generators: Vec<Poly<C>>,
    pub cofactors: Vec<Poly<C>>,
    pub relations: Vec<Poly<C>>,
    pub relation_cofactors: Vec<Poly<C>>,
}

impl<C: Coeff> MembershipCertificate<C> {
    /// Expands the combination and compares with the target term by term.
    pub fn verify(&self) -> bool {
        if self.generators.len() != self.cofactors.len()
            || self.relations.len() != self.relation_cofactors.len()
        {
            return false;
        }
        self.expand() == self.target
    }

    pub fn expand(&self) -> Poly<C> {
        let mut acc = Poly::zero(self.target.ring());
        for (c, g) in self.cofactors.iter().zip(&self.generators) {
            acc = acc.add(&c.mul(g));
        }
        for (c, r) in self.relation_cofactors.iter().zip(&self.relations) {
            acc = acc.add(&c.mul(r));
        }
        acc
    }

    /// Polynomial text of every component, for reports.
    pub fn to_text(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("target".into(), self.target.to_string());
        for (k, (g, c)) in self.generators.iter().zip(&self.cofactors).enumerate() {
            m.insert(format!("generator[{k}]"), g.to_string());
            m.insert(format!("cofactor[{k}]"), c.to_string());
        }
        for (k, (r, c)) in self.relations.iter().zip(&self.relation_cofactors).enumerate() {
            m.insert(format!("relation[{k}]"), r.to_string());
            m.insert(format!("relation_cofactor[{k}]"), c.to_string());
        }
        m
    }
}

/// Reduced Gröbner basis of `(gens) + (relations)`.
pub fn groebner<C: Coeff>(gens: &[Poly<C>], ring: &RingPresentation<C>) -> Result<GroebnerBasis<C>> {
    ring.groebner(gens)
}

/// Remainder of full division by the basis.
pub fn normal_form<C: Coeff>(f: &Poly<C>, g: &GroebnerBasis<C>) -> Poly<C> {
    g.normal_form(f)
}

/// Decides `f ∈ (gens)` in the quotient ring; on success returns a
/// certificate whose generator cofactors are reduced modulo the relations.
pub fn ideal_member<C: Coeff>(
    f: &Poly<C>,
    gens: &[Poly<C>],
    ring: &RingPresentation<C>,
) -> Result<(bool, Option<MembershipCertificate<C>>)> {
    f.try_same_ring(&ring.ring().zero())?;
    let all = ring.with_relations(gens)?;
    let gb = GroebnerBasis::compute_tracked(ring.ring(), &all)?;
    let Some(raw) = gb.express(f) else {
        return Ok((false, None));
    };
    let cert = certificate_from_raw(f, gens, ring, &raw)?;
    if !cert.verify() {
        return Err(Error::VerificationFailure(format!(
            "membership certificate for `{f}` does not expand"
        )));
    }
    Ok((true, Some(cert)))
}

/// Builds a certificate from cofactors over `gens ++ relations`, reducing the
/// generator cofactors modulo the relations and re-deriving the rest.
pub(crate) fn certificate_from_raw<C: Coeff>(
    f: &Poly<C>,
    gens: &[Poly<C>],
    ring: &RingPresentation<C>,
    raw: &[Poly<C>],
) -> Result<MembershipCertificate<C>> {
    let rb = ring.relation_basis()?;
    let cofactors: Vec<Poly<C>> = raw[..gens.len()].iter().map(|c| rb.normal_form(c)).collect();
    let mut residual = f.clone();
    for (c, g) in cofactors.iter().zip(gens) {
        residual = residual.sub(&c.mul(g));
    }
    let relation_cofactors = if ring.relations().is_empty() {
        Vec::new()
    } else {
        rb.express(&residual).ok_or_else(|| {
            Error::VerificationFailure("residual does not lie in the relation ideal".into())
        })?
    };
    Ok(MembershipCertificate {
        target: f.clone(),
        generators: gens.to_vec(),
        cofactors,
        relations: ring.relations().to_vec(),
        relation_cofactors,
    })
}

/// Generators of `((gens) + relations) : f` in the quotient ring, as a
/// reduced Gröbner basis with elements vanishing in the quotient removed.
pub fn colon<C: Coeff>(
    gens: &[Poly<C>],
    f: &Poly<C>,
    ring: &RingPresentation<C>,
) -> Result<Vec<Poly<C>>> {
    f.try_same_ring(&ring.ring().zero())?;
    if ring.is_zero(f)? {
        return Err(Error::ZeroDivisor);
    }
    let j = ring.groebner(gens)?;
    colon_with_basis(&j, f, ring)
}

/// [`colon`] with a precomputed basis `j` of `(gens) + relations`.
pub fn colon_with_basis<C: Coeff>(
    j: &GroebnerBasis<C>,
    f: &Poly<C>,
    ring: &RingPresentation<C>,
) -> Result<Vec<Poly<C>>> {
    if ring.is_zero(f)? {
        return Err(Error::ZeroDivisor);
    }
    let fr = j.normal_form(f);
    let colon_basis = if fr.is_zero() {
        GroebnerBasis::compute(ring.ring(), &[ring.ring().one()])?
    } else if is_zero_dimensional(j)
        && fr.is_homogeneous()
        && j.generators().iter().all(|g| g.is_homogeneous())
    {
        colon_artinian(j, &fr)?
    } else {
        colon_elimination(j, &fr)?
    };
    strip_relations(colon_basis, ring)
}

/// Colon via elimination: `J ∩ (f)` from `t·J + (1−t)·f`, then divide by `f`.
pub fn colon_elimination<C: Coeff>(j: &GroebnerBasis<C>, f: &Poly<C>) -> Result<GroebnerBasis<C>> {
    let base = j.ring();
    let ext = base.with_elimination_vars(&["_t"])?;
    let n = base.nvars();
    let shift: Vec<usize> = (1..=n).collect();
    let lift = |p: &Poly<C>| p.map_into(&ext, &shift, |c| c.clone());
    let t = ext.var(0);
    let one_minus_t = ext.one().sub(&t);
    let mut inputs: Vec<Poly<C>> = j.generators().iter().map(|g| t.mul(&lift(g))).collect();
    inputs.push(one_minus_t.mul(&lift(f)));
    let gb = GroebnerBasis::compute(&ext, &inputs)?;
    let drop_t: Vec<usize> = std::iter::once(0).chain(0..n).collect();
    let mut quotients = Vec::new();
    for h in gb.generators().iter().filter(|h| !h.involves(0)) {
        let h = h.map_into(base, &drop_t, |c| c.clone());
        let d = divide(&h, &[f], true);
        if !d.remainder.is_zero() {
            return Err(Error::VerificationFailure(
                "intersection element not divisible by f".into(),
            ));
        }
        quotients.push(d.quotients.into_iter().next().unwrap());
    }
    GroebnerBasis::compute(base, &quotients)
}

/// Whether the ideal has finite codimension: each variable has a pure power
/// among the leading monomials.
pub fn is_zero_dimensional<C: Coeff>(g: &GroebnerBasis<C>) -> bool {
    pure_powers(g).iter().all(Option::is_some)
}

fn pure_powers<C: Coeff>(g: &GroebnerBasis<C>) -> Vec<Option<u32>> {
    let n = g.ring().nvars();
    let mut out = vec![None; n];
    for p in g.generators() {
        let m = p.leading_monomial().unwrap();
        let support: Vec<usize> = (0..n).filter(|&i| m.exp(i) > 0).collect();
        if let [i] = support[..] {
            let e = m.exp(i);
            out[i] = Some(out[i].map_or(e, |old: u32| old.min(e)));
        }
    }
    out
}

/// Standard monomials of a zero-dimensional basis, sorted descending.
pub fn standard_monomials<C: Coeff>(g: &GroebnerBasis<C>) -> Vec<Monomial> {
    let ring = g.ring();
    let n = ring.nvars();
    if g.is_unit() {
        return Vec::new();
    }
    let bounds: Vec<u32> = pure_powers(g).into_iter().map(|b| b.expect("zero-dimensional")).collect();
    let lms: Vec<&Monomial> = g.generators().iter().map(|p| p.leading_monomial().unwrap()).collect();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        let m = Monomial::from_exponents(&e);
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| ring.cmp(b, a));
                return out;
            }
            e[k] += 1;
            if e[k] < bounds[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Colon by linear algebra in a finite-dimensional graded quotient: the
/// kernel of multiplication by `f`, degree by degree.
fn colon_artinian<C: Coeff>(j: &GroebnerBasis<C>, f: &Poly<C>) -> Result<GroebnerBasis<C>> {
    let ring = j.ring();
    let dom = ring.domain();
    let std = standard_monomials(j);
    let df = ring.int_degree(f.leading_monomial().unwrap());
    let mut by_degree: BTreeMap<u64, Vec<Monomial>> = BTreeMap::new();
    for m in &std {
        by_degree.entry(ring.int_degree(m)).or_default().push(m.clone());
    }
    let mut gens: Vec<Poly<C>> = j.generators().to_vec();
    for (d, source) in &by_degree {
        let target = by_degree.get(&(d + df)).cloned().unwrap_or_default();
        let index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(k, m)| (m, k)).collect();
        // rows = target coordinates, columns = source monomials
        let mut rows = vec![vec![dom.zero(); source.len()]; target.len()];
        for (col, m) in source.iter().enumerate() {
            let img = j.normal_form(&f.mul_term(m, &dom.one()));
            for (tm, c) in img.terms() {
                let r = *index.get(tm).ok_or_else(|| {
                    Error::VerificationFailure("normal form left the standard basis".into())
                })?;
                rows[r][col] = c.clone();
            }
        }
        for v in kernel(&rows, source.len(), &dom.zero(), &dom.one()) {
            let terms = source.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect();
            gens.push(Poly::from_terms(ring, terms));
        }
    }
    GroebnerBasis::compute(ring, &gens)
}

fn strip_relations<C: Coeff>(g: GroebnerBasis<C>, ring: &RingPresentation<C>) -> Result<Vec<Poly<C>>> {
    let mut out = Vec::new();
    for p in g.generators() {
        if !ring.is_zero(p)? {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Brute-force colon oracle for monomial ideals: the monomials `m` of total
/// degree ≤ `max_degree` with `m·f ∈ (gens)`, decided by monomial division.
pub fn monomial_colon_oracle(gens: &[Monomial], f: &Monomial, max_degree: u64) -> HashSet<Monomial> {
    let n = f.nvars();
    let mut out = HashSet::new();
    for m in monomials_up_to(n, max_degree) {
        let mf = m.mul(f);
        if gens.iter().any(|g| g.divides(&mf)) {
            out.insert(m);
        }
    }
    out
}

/// All monomials in `n` variables of total degree ≤ `d`.
pub fn monomials_up_to(n: usize, d: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(k: usize, left: u64, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == e.len() {
            out.push(Monomial::from_exponents(e));
            return;
        }
        for a in 0..=left {
            e[k] = a as u32;
            rec(k + 1, left - a, e, out);
        }
        e[k] = 0;
    }
    rec(0, d, &mut e, &mut out);
    out
}

/// Monomials of exactly weighted degree `d`, sorted in graded-lex order
/// (larger exponent of earlier variables first).
pub fn monomials_of_degree<C: Coeff>(ring: &Arc<PolyRing<C>>, d: u64) -> Vec<Monomial> {
    let w = ring.int_weights();
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(k: usize, left: u64, w: &[u64], e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == e.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(e));
            }
            return;
        }
        let max = left / w[k];
        for a in (0..=max).rev() {
            e[k] = a as u32;
            rec(k + 1, left - a * w[k], w, e, out);
        }
        e[k] = 0;
    }
    rec(0, d, w, &mut e, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, RationalField};
    use crate::poly::parse::parse_poly;

    #[test]
    fn colon_of_monomial_ideal() {
        let r = crate::poly::standard_ring(RationalField, &["x", "y"]);
        let pres = RingPresentation::free(&r);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let c = colon(&[p("x^2"), p("x*y")], &p("x"), &pres).unwrap();
        assert_eq!(c, vec![p("y"), p("x")]);
        let c = colon(&[p("x"), p("y")], &p("1"), &pres).unwrap();
        assert_eq!(c, vec![p("y"), p("x")]);
    }

    #[test]
    fn membership_certificate_in_quotient() {
        let f = PrimeField::new(2).unwrap();
        let r = crate::poly::standard_ring(f, &["x", "y", "z"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let pres = RingPresentation::new(&r, vec![p("x^3 + y^3 + z^3")]).unwrap();
        let (ok, cert) = ideal_member(&p("z^4"), &[p("x^2"), p("y^2")], &pres).unwrap();
        assert!(ok);
        let cert = cert.unwrap();
        assert!(cert.verify());
        assert_eq!(cert.cofactors, vec![p("x*z"), p("y*z")]);
        let (ok, cert) = ideal_member(&p("z^2"), &[p("x"), p("y")], &pres).unwrap();
        assert!(!ok && cert.is_none());
    }

    #[test]
    fn zero_divisor_rejected() {
        let r = crate::poly::standard_ring(RationalField, &["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let pres = RingPresentation::new(&r, vec![p("x*y")]).unwrap();
        assert_eq!(colon(&[p("x")], &p("x*y"), &pres), Err(Error::ZeroDivisor));
    }

    #[test]
    fn artinian_and_elimination_paths_agree() {
        let r = crate::poly::standard_ring(RationalField, &["x", "y", "z"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let pres = RingPresentation::new(&r, vec![p("x^3 + y^3 + z^3")]).unwrap();
        let j = pres.groebner(&[p("x"), p("y")]).unwrap();
        assert!(is_zero_dimensional(&j));
        let f = p("z^2");
        let a = colon_artinian(&j, &f).unwrap();
        let b = colon_elimination(&j, &f).unwrap();
        assert_eq!(a.generators(), b.generators());
        assert_eq!(strip_relations(a, &pres).unwrap(), vec![p("z"), p("y"), p("x")]);
    }

    #[test]
    fn degree_enumeration_is_graded_lex() {
        let r = crate::poly::standard_ring(RationalField, &["x", "y"]);
        let ms = monomials_of_degree(&r, 2);
        let e: Vec<_> = ms.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(e, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }
}
