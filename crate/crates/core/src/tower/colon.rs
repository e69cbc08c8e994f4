//! Colon elements of low valuation: xₙ·z² ∈ (x, y) at level n, and the
//! properness check z² ∉ (x, y).

use std::sync::Arc;

use super::level::{level_weight, zeta, Tower};
use super::valuation::{valuation, Valuation};
use crate::coeff::{CycloField, CycloNum, Rational};
use crate::error::{Error, Result};
use crate::poly::ideal::{certificate_from_raw, colon_with_basis};
use crate::poly::{GroebnerBasis, MembershipCertificate, Monomial, MonomialOrder, Poly, PolyRing};

#[derive(Clone, Debug)]
pub struct ColonProbe {
    pub n: u32,
    /// Certifies xₙ·z² ∈ (x, y) in level n (all base elements embedded).
    pub witness: MembershipCertificate<CycloNum>,
    /// v(xₙ) = 3⁻ⁿ.
    pub witness_valuation: Rational,
    /// Reduced generators of (x, y) : z² at level n, when computed.
    pub colon_generators: Option<Vec<Poly<CycloNum>>>,
    pub colon_min_valuation: Option<Rational>,
    /// Smallest valuation established: the true minimum when the colon was
    /// computed, otherwise the witness bound.
    pub min_valuation: Rational,
}

/// Ring holding every level's x, y at once (and zₙ), used to run the
/// rewriting xₖ³ → ζxₖ₋₁ + ζ²yₖ₋₁, yₖ³ → ζxₖ₋₁ + ζ⁵yₖ₋₁ level by level.
struct MixedRing {
    ring: Arc<PolyRing<CycloNum>>,
    n: u32,
}

impl MixedRing {
    fn new(n: u32) -> Self {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for k in 0..=n {
            let [x, y, _] = super::level::level_names(k);
            names.push(x);
            names.push(y);
            weights.extend([level_weight(k), level_weight(k)]);
        }
        names.push(format!("z{n}"));
        weights.push(level_weight(n));
        let ring = PolyRing::from_owned(CycloField, names, weights, MonomialOrder::WeightedGrevlex)
            .expect("valid mixed ring");
        MixedRing { ring, n }
    }

    fn x(&self, k: u32) -> usize {
        2 * k as usize
    }

    fn y(&self, k: u32) -> usize {
        2 * k as usize + 1
    }

    fn z_top(&self) -> usize {
        2 * self.n as usize + 2
    }

    /// Replaces xₖ³ and yₖ³ by their level-(k−1) linear forms.
    fn rewrite_level(&self, f: &Poly<CycloNum>, k: u32) -> Poly<CycloNum> {
        let r = &self.ring;
        let (xp, yp) = (r.var(self.x(k - 1)), r.var(self.y(k - 1)));
        let fx = xp.scale(&zeta(1)).add(&yp.scale(&zeta(2)));
        let fy = xp.scale(&zeta(1)).add(&yp.scale(&zeta(5)));
        let (ix, iy) = (self.x(k), self.y(k));
        let mut out = r.zero();
        for (m, c) in f.terms() {
            let mut e = m.exponents().to_vec();
            let (qx, qy) = (e[ix] / 3, e[iy] / 3);
            e[ix] %= 3;
            e[iy] %= 3;
            let t = Poly::from_terms(r, vec![(Monomial::from_exponents(&e), c.clone())]);
            out = out.add(&t.mul(&fx.pow(qx)).mul(&fy.pow(qy)));
        }
        out
    }
}

/// Cofactors (c_x, c_y) in level n with xₙ·z² = c_x·x + c_y·y modulo the
/// relation, found by rewriting xₙ·(x₁y₁⋯xₙyₙzₙ)² downwards through the levels.
pub fn witness_cofactors(tower: &Tower, n: u32) -> Result<[Poly<CycloNum>; 2]> {
    let mixed = MixedRing::new(n);
    let r = &mixed.ring;
    let mut e = vec![0u32; r.nvars()];
    for k in 1..=n {
        e[mixed.x(k)] = 2;
        e[mixed.y(k)] = 2;
    }
    e[mixed.x(n)] += 1;
    e[mixed.z_top()] = 2;
    let mut f = r.monomial(&e);
    for k in (1..=n).rev() {
        f = mixed.rewrite_level(&f, k);
    }
    let (ix, iy) = (mixed.x(0), mixed.y(0));
    let (mut cx, mut cy) = (Vec::new(), Vec::new());
    for (m, c) in f.terms() {
        let mut ex = m.exponents().to_vec();
        if ex[ix] > 0 {
            ex[ix] -= 1;
            cx.push((Monomial::from_exponents(&ex), c.clone()));
        } else if ex[iy] > 0 {
            ex[iy] -= 1;
            cy.push((Monomial::from_exponents(&ex), c.clone()));
        } else {
            return Err(Error::VerificationFailure(format!(
                "rewriting left a term outside (x, y) at level {n}"
            )));
        }
    }
    // images of the mixed variables in level n
    let mut images = Vec::with_capacity(r.nvars());
    for k in 0..=n {
        let [ix, iy, _] = tower.images(k, n)?;
        images.push(ix);
        images.push(iy);
    }
    images.push(tower.level(n).vars()[2].clone());
    let lvl = tower.level(n);
    let cx = Poly::from_terms(r, cx).compose(&images);
    let cy = Poly::from_terms(r, cy).compose(&images);
    Ok([lvl.reduce(&cx), lvl.reduce(&cy)])
}

/// Embedded generators x, y and the element z² at level n.
pub fn embedded_xy_z2(tower: &Tower, n: u32) -> Result<[Poly<CycloNum>; 3]> {
    let [x, y, z] = tower.images(0, n)?;
    Ok([x, y, z.pow(2)])
}

/// Gröbner basis of (x, y) + relation at level n.
pub fn xy_basis(tower: &Tower, n: u32) -> Result<GroebnerBasis<CycloNum>> {
    let [x, y, _] = embedded_xy_z2(tower, n)?;
    tower.level(n).presentation().groebner(&[x, y])
}

pub fn colon_probe(tower: &Tower, n: u32, full_colon: bool) -> Result<ColonProbe> {
    if n == 0 {
        return Err(Error::Config {
            field: "level".into(),
            msg: "colon probe needs n >= 1".into(),
        });
    }
    let lvl = tower.level(n);
    let pres = lvl.presentation();
    let [x, y, z2] = embedded_xy_z2(tower, n)?;
    let xn = lvl.vars()[0].clone();
    let target = xn.mul(&z2);
    let [cx, cy] = witness_cofactors(tower, n)?;
    let witness = certificate_from_raw(&target, &[x.clone(), y.clone()], pres, &[cx, cy])?;
    if !witness.verify() {
        return Err(Error::VerificationFailure(format!(
            "colon witness at level {n} does not expand"
        )));
    }
    let witness_valuation = match valuation(&xn, pres)? {
        Valuation::Finite(q) => q,
        Valuation::Infinity => unreachable!("xn is nonzero"),
    };
    let (colon_generators, colon_min_valuation) = if full_colon {
        let j = xy_basis(tower, n)?;
        let gens = colon_with_basis(&j, &z2, pres)?;
        let mut min: Option<Rational> = None;
        for g in &gens {
            if let Valuation::Finite(q) = valuation(g, pres)? {
                min = Some(min.map_or(q.clone(), |m: Rational| m.min(q)));
            }
        }
        (Some(gens), min)
    } else {
        (None, None)
    };
    let min_valuation = colon_min_valuation
        .clone()
        .unwrap_or_else(|| witness_valuation.clone());
    Ok(ColonProbe {
        n,
        witness,
        witness_valuation,
        colon_generators,
        colon_min_valuation,
        min_valuation,
    })
}

/// True iff z² ∉ (x, y) at level n, by Gröbner normal form.
pub fn z2_not_in_xy(tower: &Tower, n: u32) -> Result<bool> {
    let [_, _, z2] = embedded_xy_z2(tower, n)?;
    Ok(!xy_basis(tower, n)?.contains(&z2))
}

/// Whether x₁z² = (ζx + ζ²y)·x₁²y₁² holds at level 1 (it does not; the
/// working cofactor is y₁²z₁²).
pub fn cofactor_x1sq_y1sq_holds(tower: &Tower) -> Result<bool> {
    let l1 = tower.level(1);
    let [x, y, z2] = embedded_xy_z2(tower, 1)?;
    let lhs = l1.vars()[0].mul(&z2);
    let form = x.scale(&zeta(1)).add(&y.scale(&zeta(2)));
    let rhs = form.mul(&l1.parse("x1^2*y1^2")?);
    Ok(l1.reduce(&lhs.sub(&rhs)).is_zero())
}
