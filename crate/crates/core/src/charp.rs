//! Frobenius powers, Frobenius closure and tight-closure multipliers in
//! 𝔽ₚ[x, y, z]/(x³ + y³ + z³).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::{Coeff, CoeffDomain, FpElem, PrimeField};
use crate::error::{Error, Result};
use crate::poly::ideal::{certificate_from_raw, monomials_of_degree};
use crate::poly::linalg::kernel;
use crate::poly::{
    GroebnerBasis, MembershipCertificate, Monomial, Poly, PolyRing, RingPresentation,
};

/// 𝔽ₚ[x, y, z]/(x³ + y³ + z³); rejects p = 3.
pub fn fermat_ring(p: u64) -> Result<Arc<RingPresentation<FpElem>>> {
    let field = PrimeField::fermat(p)?;
    let ring = PolyRing::standard(field, &["x", "y", "z"]);
    let rel = ring.var(0).pow(3).add(&ring.var(1).pow(3)).add(&ring.var(2).pow(3));
    RingPresentation::new(&ring, vec![rel])
}

fn char_of(ring: &RingPresentation<FpElem>) -> u64 {
    ring.domain().p()
}

fn q_of(p: u64, e: u32) -> Result<u32> {
    p.checked_pow(e)
        .and_then(|q| u32::try_from(q).ok())
        .ok_or_else(|| Error::Config {
            field: "e".into(),
            msg: format!("{p}^{e} is too large"),
        })
}

/// The bracket power I^[pᵉ]: each generator raised to the pᵉ-th power.
pub fn frobenius_power(gens: &[Poly<FpElem>], e: u32) -> Result<Vec<Poly<FpElem>>> {
    let Some(g0) = gens.first() else {
        return Ok(Vec::new());
    };
    let q = q_of(g0.domain().p(), e)?;
    Ok(gens.iter().map(|g| g.pow(q)).collect())
}

/// Whether f^q ∈ I^[q] in the quotient, q = pᵉ.
pub fn frobenius_closure_test(
    f: &Poly<FpElem>,
    gens: &[Poly<FpElem>],
    e: u32,
    ring: &RingPresentation<FpElem>,
) -> Result<bool> {
    let q = q_of(char_of(ring), e)?;
    let g = ring.groebner(&frobenius_power(gens, e)?)?;
    Ok(g.contains(&f.pow(q)))
}

/// Certificate for f^q ∈ I^[q], when it holds.
pub fn frobenius_certificate(
    f: &Poly<FpElem>,
    gens: &[Poly<FpElem>],
    e: u32,
    ring: &RingPresentation<FpElem>,
) -> Result<Option<MembershipCertificate<FpElem>>> {
    let q = q_of(char_of(ring), e)?;
    let fg = frobenius_power(gens, e)?;
    let (ok, cert) = crate::poly::ideal_member(&f.pow(q), &fg, ring)?;
    Ok(if ok { cert } else { None })
}

/// For e = 1..=e_max, whether c·f^(pᵉ) ∈ I^[pᵉ] in the quotient.
pub fn tight_closure_witness(
    f: &Poly<FpElem>,
    gens: &[Poly<FpElem>],
    c: &Poly<FpElem>,
    e_max: u32,
    ring: &RingPresentation<FpElem>,
) -> Result<Vec<bool>> {
    if ring.is_zero(c)? {
        return Err(Error::ZeroMultiplier);
    }
    let p = char_of(ring);
    (1..=e_max)
        .map(|e| {
            let q = q_of(p, e)?;
            let g = ring.groebner(&frobenius_power(gens, e)?)?;
            let fq = g.normal_form(&f.pow(q));
            Ok(g.contains(&c.mul(&fq)))
        })
        .collect()
}

/// A multiplier found by [`find_multiplier`].
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier {
    pub c: Poly<FpElem>,
    pub degree: u64,
    /// Whether `c` is a single monomial.
    pub monomial: bool,
}

/// Searches for a nonzero homogeneous c of degree ≤ `deg_bound` with
/// c·f^q ∈ I^[q] for q = p, …, p^e_max. Degrees are tried in increasing order;
/// within a degree single monomials come first (graded-lex), then the first
/// echelon vector of the solution space. Candidates range over monomials not
/// divisible by x³, a basis of the quotient in each degree.
pub fn find_multiplier(
    f: &Poly<FpElem>,
    gens: &[Poly<FpElem>],
    deg_bound: u64,
    e_max: u32,
    ring: &RingPresentation<FpElem>,
) -> Result<Option<Multiplier>> {
    if e_max == 0 {
        return Err(Error::Config {
            field: "e_max".into(),
            msg: "must be at least 1".into(),
        });
    }
    let p = char_of(ring);
    let mut reduced_powers = Vec::new();
    for e in 1..=e_max {
        let q = q_of(p, e)?;
        let g = ring.groebner(&frobenius_power(gens, e)?)?;
        let fq = g.normal_form(&f.pow(q));
        reduced_powers.push((g, fq));
    }
    let rb = ring.relation_basis()?;
    let dom = ring.domain().clone();
    for d in 0..=deg_bound {
        let cands: Vec<Monomial> = monomials_of_degree(ring.ring(), d)
            .into_iter()
            .filter(|m| rb.normal_form(&ring.ring().monomial(m.exponents())).leading_monomial() == Some(m))
            .collect();
        if cands.is_empty() {
            continue;
        }
        // images[k][e] = NF(m_k · f^q) for each candidate and each e
        let images: Vec<Vec<Poly<FpElem>>> = cands
            .iter()
            .map(|m| {
                reduced_powers
                    .iter()
                    .map(|(g, fq)| g.normal_form(&fq.mul_term(m, &dom.one())))
                    .collect()
            })
            .collect();
        if let Some(k) = images.iter().position(|im| im.iter().all(Poly::is_zero)) {
            return Ok(Some(Multiplier {
                c: ring.ring().monomial(cands[k].exponents()),
                degree: d,
                monomial: true,
            }));
        }
        // linear conditions: one row per (e, monomial) coordinate
        let mut coords: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
        for im in &images {
            for (e, poly) in im.iter().enumerate() {
                for (m, _) in poly.terms() {
                    let next = coords.len();
                    coords.entry((e, m.exponents().to_vec())).or_insert(next);
                }
            }
        }
        let mut rows = vec![vec![dom.zero(); cands.len()]; coords.len()];
        for (col, im) in images.iter().enumerate() {
            for (e, poly) in im.iter().enumerate() {
                for (m, c) in poly.terms() {
                    rows[coords[&(e, m.exponents().to_vec())]][col] = *c;
                }
            }
        }
        if let Some(v) = kernel(&rows, cands.len(), &dom.zero(), &dom.one()).into_iter().next() {
            let terms = cands.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect();
            return Ok(Some(Multiplier {
                c: Poly::from_terms(ring.ring(), terms),
                degree: d,
                monomial: false,
            }));
        }
    }
    Ok(None)
}

/// Certificate for c·f^q ∈ I^[q].
pub fn multiplier_certificate(
    f: &Poly<FpElem>,
    gens: &[Poly<FpElem>],
    c: &Poly<FpElem>,
    e: u32,
    ring: &RingPresentation<FpElem>,
) -> Result<Option<MembershipCertificate<FpElem>>> {
    let q = q_of(char_of(ring), e)?;
    let fg = frobenius_power(gens, e)?;
    let (ok, cert) = crate::poly::ideal_member(&c.mul(&f.pow(q)), &fg, ring)?;
    Ok(if ok { cert } else { None })
}

/// The explicit identity z⁴ = x²·(xz) + y²·(yz) modulo x³ + y³ + z³ over 𝔽₂,
/// packaged as a certificate for z⁴ ∈ (x², y²).
pub fn char2_identity() -> Result<MembershipCertificate<FpElem>> {
    let ring = fermat_ring(2)?;
    let p = |s: &str| ring.parse(s);
    let target = p("z^4")?;
    let gens = [p("x^2")?, p("y^2")?];
    let cert = certificate_from_raw(&target, &gens, &ring, &[p("x*z")?, p("y*z")?])?;
    if !cert.verify() {
        return Err(Error::VerificationFailure("z^4 = x^2*(x*z) + y^2*(y*z)".into()));
    }
    Ok(cert)
}

/// Reduced basis of I^[q] + relation, exposed for reports.
pub fn bracket_basis(
    gens: &[Poly<FpElem>],
    e: u32,
    ring: &RingPresentation<FpElem>,
) -> Result<GroebnerBasis<FpElem>> {
    ring.groebner(&frobenius_power(gens, e)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u64) -> (Arc<RingPresentation<FpElem>>, Vec<Poly<FpElem>>) {
        let r = fermat_ring(p).unwrap();
        let xy = vec![r.parse("x").unwrap(), r.parse("y").unwrap()];
        (r, xy)
    }

    #[test]
    fn bracket_powers() {
        let (r, xy) = setup(2);
        let f1 = frobenius_power(&xy, 1).unwrap();
        assert_eq!(f1, vec![r.parse("x^2").unwrap(), r.parse("y^2").unwrap()]);
        let f2 = frobenius_power(&xy, 2).unwrap();
        assert_eq!(f2[1], r.parse("y^4").unwrap());
        let f3 = crate::poly::standard_ring(PrimeField::new(3).unwrap(), &["x", "y"]);
        let s = crate::poly::parse_poly(&f3, "x + y").unwrap();
        assert_eq!(
            frobenius_power(&[s], 1).unwrap()[0],
            crate::poly::parse_poly(&f3, "x^3 + y^3").unwrap()
        );
    }

    #[test]
    fn closure_contrast() {
        let (r2, xy2) = setup(2);
        let z2 = r2.parse("z^2").unwrap();
        assert!(frobenius_closure_test(&z2, &xy2, 1, &r2).unwrap());
        assert!(char2_identity().unwrap().verify());
        let (r7, xy7) = setup(7);
        let z2 = r7.parse("z^2").unwrap();
        assert!(!frobenius_closure_test(&z2, &xy7, 1, &r7).unwrap());
        let m = find_multiplier(&z2, &xy7, 3, 2, &r7).unwrap().unwrap();
        assert_eq!(m.c, r7.parse("x").unwrap());
        assert_eq!(
            tight_closure_witness(&z2, &xy7, &m.c, 2, &r7).unwrap(),
            vec![true, true]
        );
    }

    #[test]
    fn zero_multiplier_rejected() {
        let (r, xy) = setup(5);
        let c = r.parse("x^3 + y^3 + z^3").unwrap();
        assert_eq!(
            tight_closure_witness(&xy[0], &xy, &c, 1, &r),
            Err(Error::ZeroMultiplier)
        );
    }
}
