//! The averaging retraction A₁ → A over the group (ℤ/3)² acting by
//! x₁ ↦ θᵃx₁, y₁ ↦ θᵇy₁, z₁ ↦ θ^(−a−b)z₁.

use super::level::{cube_forms, Tower};
use crate::coeff::{rat, CycloNum};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};

fn theta_pow(k: i64) -> CycloNum {
    CycloNum::zeta_pow(3 * k.rem_euclid(3))
}

/// Image of `s` (a level-1 polynomial) under the group element (a, b).
pub fn act(s: &Poly<CycloNum>, a: i64, b: i64) -> Poly<CycloNum> {
    let r = s.ring();
    let imgs = [
        r.var(0).scale(&theta_pow(a)),
        r.var(1).scale(&theta_pow(b)),
        r.var(2).scale(&theta_pow(-a - b)),
    ];
    s.compose(&imgs)
}

fn average(tower: &Tower, s: &Poly<CycloNum>) -> Poly<CycloNum> {
    let l1 = tower.level(1);
    let mut acc = l1.ring().zero();
    for a in 0..3 {
        for b in 0..3 {
            acc = acc.add(&act(s, a, b));
        }
    }
    let ninth = CycloNum::from_rational(&rat(1, 9));
    l1.reduce(&acc.scale(&ninth))
}

/// Rewrites an invariant level-1 element as a polynomial in x, y, z using
/// x₁y₁z₁ = −z and x₁³, y₁³, z₁³ = the three cube forms.
fn rewrite_invariant(tower: &Tower, p: &Poly<CycloNum>) -> Result<Poly<CycloNum>> {
    let l0 = tower.level(0);
    let [x, y, z] = l0.vars();
    let forms = cube_forms(&x, &y);
    let mut out = l0.ring().zero();
    for (m, c) in p.terms() {
        let e = m.exponents();
        let r = e[0] % 3;
        if e[1] % 3 != r || e[2] % 3 != r {
            return Err(Error::NotInImage(format!(
                "term {} is not invariant",
                Poly::from_terms(p.ring(), vec![(m.clone(), c.clone())])
            )));
        }
        let mut t = l0.ring().constant(c.clone()).mul(&z.neg().pow(r));
        for (k, f) in forms.iter().enumerate() {
            t = t.mul(&f.pow((e[k] - r) / 3));
        }
        out = out.add(&t);
    }
    Ok(l0.reduce(&out))
}

/// π(s) = (1/9)·Σ g(s), returned as an element of A (level 0).
pub fn retract_to_base(tower: &Tower, s: &Poly<CycloNum>) -> Result<Poly<CycloNum>> {
    let l1 = tower.level(1);
    s.try_same_ring(&l1.ring().zero())?;
    let avg = average(tower, s);
    let base = rewrite_invariant(tower, &avg)?;
    let back = l1.reduce(&tower.embed(&base, 0, 1)?);
    if back != avg {
        return Err(Error::NotInImage(format!("rewritten average {base} does not embed back")));
    }
    Ok(base)
}

/// π(s) as an element of A₁ (normal form), checked to lie in the embedded A.
pub fn trace_retraction(tower: &Tower, s: &Poly<CycloNum>) -> Result<Poly<CycloNum>> {
    let base = retract_to_base(tower, s)?;
    Ok(tower.level(1).reduce(&tower.embed(&base, 0, 1)?))
}

/// (π∘π = π at s, π(a·s) = a·π(s)) for a ∈ A and s ∈ A₁.
pub fn retraction_properties(
    tower: &Tower,
    a: &Poly<CycloNum>,
    s: &Poly<CycloNum>,
) -> Result<(bool, bool)> {
    let l1 = tower.level(1);
    let ps = trace_retraction(tower, s)?;
    let idempotent = trace_retraction(tower, &ps)? == ps;
    let ea = tower.embed(a, 0, 1)?;
    let linear = trace_retraction(tower, &ea.mul(s))? == l1.reduce(&ea.mul(&ps));
    Ok((idempotent, linear))
}

/// Whether a level-1 monomial survives averaging (all exponents congruent mod 3).
pub fn is_invariant_monomial(m: &Monomial) -> bool {
    let e = m.exponents();
    e[0] % 3 == e[1] % 3 && e[1] % 3 == e[2] % 3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_values() {
        let t = Tower::new(1);
        let l1 = t.level(1);
        let one = l1.ring().one();
        assert_eq!(trace_retraction(&t, &one).unwrap(), one);
        assert!(trace_retraction(&t, &l1.parse("x1").unwrap()).unwrap().is_zero());
        let z2 = t.embed(&t.level(0).parse("z^2").unwrap(), 0, 1).unwrap();
        assert_eq!(trace_retraction(&t, &z2).unwrap(), l1.reduce(&z2));
        assert_eq!(
            retract_to_base(&t, &z2).unwrap(),
            t.level(0).parse("z^2").unwrap()
        );
    }

    #[test]
    fn cube_of_x1_retracts_to_its_form() {
        let t = Tower::new(1);
        let r = retract_to_base(&t, &t.level(1).parse("x1^3 + 2*y1").unwrap()).unwrap();
        assert_eq!(r, t.level(0).parse("t*x + t^2*y").unwrap());
    }
}
