//! Graded endomorphisms of ℤ[x, y, z]/(x³ + y³ + z³) lifting isogenies of the
//! curve, with a chord-tangent point oracle and membership of m(z²) in
//! (pⁿ, m(x), m(y)).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

use crate::coeff::{FpElem, Integer, IntegerRing, PrimeField};
use crate::error::{Error, Result};
use crate::poly::{divide, Poly, PolyRing, RingPresentation};

/// ℤ[x, y, z]/(x³ + y³ + z³).
pub fn integer_fermat_ring() -> Arc<RingPresentation<Integer>> {
    let ring = PolyRing::standard(IntegerRing, &["x", "y", "z"]);
    let rel = ring.var(0).pow(3).add(&ring.var(1).pow(3)).add(&ring.var(2).pow(3));
    RingPresentation::new(&ring, vec![rel]).expect("homogeneous relation")
}

/// A graded ring endomorphism given by the images of x, y, z.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedEndo {
    pub images: [Poly<Integer>; 3],
    pub degree: u64,
}

impl GradedEndo {
    /// Checks homogeneity of common degree.
    pub fn new(images: [Poly<Integer>; 3]) -> Result<Self> {
        let mut degree = None;
        for (i, im) in images.iter().enumerate() {
            if im.is_zero() {
                continue;
            }
            let d = im.max_weighted_degree().and_then(|q| q.to_integer().to_u64());
            if !im.is_homogeneous() || d.is_none() || (degree.is_some() && degree != d) {
                return Err(Error::Config {
                    field: format!("images[{i}]"),
                    msg: "images must be homogeneous of one common degree".into(),
                });
            }
            degree = d;
        }
        let degree = degree.ok_or_else(|| Error::Config {
            field: "images".into(),
            msg: "all images are zero".into(),
        })?;
        Ok(GradedEndo { images, degree })
    }

    pub fn identity(ring: &RingPresentation<Integer>) -> Self {
        let r = ring.ring();
        GradedEndo {
            images: [r.var(0), r.var(1), r.var(2)],
            degree: 1,
        }
    }

    pub fn apply(&self, f: &Poly<Integer>) -> Poly<Integer> {
        f.compose(&self.images)
    }

    /// Images as `x -> ..., y -> ..., z -> ...`.
    pub fn formula_text(&self) -> String {
        let names = self.images[0].ring().names().to_vec();
        names
            .iter()
            .zip(&self.images)
            .map(|(n, im)| format!("{n} -> {im}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// True iff e(x)³ + e(y)³ + e(z)³ is an exact multiple of x³ + y³ + z³.
pub fn verify_endo(e: &GradedEndo, ring: &RingPresentation<Integer>) -> bool {
    let rel = &ring.relations()[0];
    let img = ring.relations()[0].compose(&e.images);
    let div = divide(&img, &[rel], true);
    if !div.remainder.is_zero() {
        return false;
    }
    // exactness: the quotient reproduces the image
    div.quotients[0].mul(rel) == img
}

/// Ring-map composition: e1 ∘ e2 sends v to e1(e2(v)).
pub fn compose_endo(e1: &GradedEndo, e2: &GradedEndo) -> GradedEndo {
    let images = e2.images.clone().map(|im| im.compose(&e1.images));
    GradedEndo {
        images,
        degree: e1.degree * e2.degree,
    }
}

/// Doubling candidates on x³ + y³ + z³ = 0 (neutral point (1 : −1 : 0)):
/// the Hessian formula and its sign and coordinate-swap variants.
fn doubling_candidates(ring: &RingPresentation<Integer>) -> Vec<GradedEndo> {
    let [x, y, z] = [0, 1, 2].map(|i| ring.ring().var(i));
    let c = |a: &Poly<Integer>| a.pow(3);
    let base = [
        y.mul(&c(&x).sub(&c(&z))),
        x.mul(&c(&z).sub(&c(&y))),
        z.mul(&c(&y).sub(&c(&x))),
    ];
    let neg = base.clone().map(|p| p.neg());
    let swapped = [base[1].clone(), base[0].clone(), base[2].clone()];
    [base, neg, swapped]
        .into_iter()
        .map(|images| GradedEndo { images, degree: 4 })
        .collect()
}

/// The degree-4 lift of multiplication by 2, pinned to
/// x ↦ y(x³ − z³), y ↦ x(z³ − y³), z ↦ z(y³ − x³).
pub fn hesse_double(ring: &RingPresentation<Integer>) -> Result<GradedEndo> {
    for cand in doubling_candidates(ring) {
        let trivial = cand
            .images
            .iter()
            .all(|im| ring.is_zero(im).unwrap_or(true));
        if trivial || !verify_endo(&cand, ring) {
            continue;
        }
        let checks = point_checks(&cand, &[5, 11, 17], 3)?;
        if checks.iter().all(|c| c.agrees) {
            return Ok(cand);
        }
    }
    Err(Error::CandidateRejected(
        "no doubling variant preserves the relation and matches chord-tangent doubling".into(),
    ))
}

// ---- point oracle over 𝔽ₚ --------------------------------------------------

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

/// Scales so the first nonzero coordinate is 1; `None` for (0, 0, 0).
fn normalize(v: [u64; 3], p: u64) -> Option<[u64; 3]> {
    let lead = *v.iter().find(|&&c| c % p != 0)?;
    let inv = powm(lead % p, p - 2, p);
    Some(v.map(|c| mulm(c % p, inv, p)))
}

/// Projective points of x³ + y³ + z³ = 0 over 𝔽ₚ, normalized.
pub fn curve_points(p: u64) -> Vec<[u64; 3]> {
    let cube = |a: u64| powm(a, 3, p);
    let mut out = Vec::new();
    let mut push = |v: [u64; 3]| {
        if (cube(v[0]) + cube(v[1]) + cube(v[2])) % p == 0 {
            out.push(v);
        }
    };
    for y in 0..p {
        for z in 0..p {
            push([1, y, z]);
        }
    }
    for z in 0..p {
        push([0, 1, z]);
    }
    push([0, 0, 1]);
    out
}

fn cross(a: [u64; 3], b: [u64; 3], p: u64) -> [u64; 3] {
    let s = |u: u64, v: u64| (u + p - v) % p;
    [
        s(mulm(a[1], b[2], p), mulm(a[2], b[1], p)),
        s(mulm(a[2], b[0], p), mulm(a[0], b[2], p)),
        s(mulm(a[0], b[1], p), mulm(a[1], b[0], p)),
    ]
}

/// 2P by the chord-tangent construction with neutral point (1 : −1 : 0):
/// the tangent at P meets the curve again at −2P, and −(a : b : c) = (b : a : c).
pub fn chord_tangent_double(pt: [u64; 3], p: u64) -> [u64; 3] {
    let line = pt.map(|c| mulm(c, c, p));
    let dir = (0..3)
        .map(|k| {
            let mut e = [0; 3];
            e[k] = 1;
            cross(line, e, p)
        })
        .find(|d| normalize(*d, p).is_some_and(|d| Some(d) != normalize(pt, p)))
        .expect("tangent line has a second point");
    let d3 = dir.iter().fold(0, |acc, &d| (acc + powm(d, 3, p)) % p);
    let pd2 = (0..3).fold(0, |acc, i| (acc + mulm(pt[i], mulm(dir[i], dir[i], p), p)) % p);
    let k = mulm(3, pd2, p);
    let r: [u64; 3] = std::array::from_fn(|i| (mulm(d3, pt[i], p) + p - mulm(k, dir[i], p)) % p);
    normalize([r[1], r[0], r[2]], p).expect("third intersection is a point")
}

fn eval_mod(f: &Poly<Integer>, pt: [u64; 3], p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut acc = 0u64;
    for (m, c) in f.terms() {
        let c = c.0.mod_floor(&pb).to_u64().expect("reduced below p");
        let mut t = c;
        for (i, &e) in m.exponents().iter().enumerate() {
            t = mulm(t, powm(pt[i], e as u64, p), p);
        }
        acc = (acc + t) % p;
    }
    acc
}

/// Projectivized action of `e` on a point; `None` if all images vanish there.
pub fn endo_on_point(e: &GradedEndo, pt: [u64; 3], p: u64) -> Option<[u64; 3]> {
    normalize(e.images.clone().map(|im| eval_mod(&im, pt, p)), p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCheck {
    pub p: u64,
    pub point: [u64; 3],
    pub oracle: [u64; 3],
    pub endo: Option<[u64; 3]>,
    pub agrees: bool,
}

/// Compares `e` with chord-tangent doubling at every affine-chart point with
/// xyz ≠ 0 over the given primes. Fails if fewer than `min_points` exist.
pub fn point_checks(e: &GradedEndo, primes: &[u64], min_points: usize) -> Result<Vec<PointCheck>> {
    let mut out = Vec::new();
    for &p in primes {
        crate::coeff::check_prime(p)?;
        for pt in curve_points(p) {
            if pt.iter().any(|&c| c == 0) {
                continue;
            }
            let oracle = chord_tangent_double(pt, p);
            let endo = endo_on_point(e, pt, p);
            out.push(PointCheck {
                p,
                point: pt,
                oracle,
                endo,
                agrees: endo == Some(oracle),
            });
        }
    }
    if out.len() < min_points {
        return Err(Error::Config {
            field: "primes".into(),
            msg: format!("only {} curve points with xyz != 0", out.len()),
        });
    }
    Ok(out)
}

// ---- membership of m(z²) ---------------------------------------------------

/// Outcome of the digit-by-digit membership e(z²) ∈ (pⁿ, e(x), e(y)).
#[derive(Clone, Debug, PartialEq)]
pub struct LiftOutcome {
    pub member: bool,
    /// Digits successfully solved.
    pub digits: u32,
    /// Index of the first digit whose equation over 𝔽ₚ had no solution.
    pub obstruction: Option<u32>,
    /// (A, B) over ℤ with e(z²) ≡ A·e(x) + B·e(y) mod (pⁿ, relation).
    pub cofactors: Option<[Poly<Integer>; 2]>,
}

fn to_fp(f: &Poly<Integer>, target: &Arc<PolyRing<FpElem>>) -> Poly<FpElem> {
    let field = *target.domain();
    f.map_into(target, &[0, 1, 2], |c| field.reduce_big(&c.0))
}

fn from_fp(f: &Poly<FpElem>, target: &Arc<PolyRing<Integer>>) -> Poly<Integer> {
    f.map_into(target, &[0, 1, 2], |c| Integer(c.residue().into()))
}

/// Digit lifting: solve the residual's leading p-adic digit over 𝔽ₚ, subtract,
/// and repeat n times.
pub fn lift_membership(
    e: &GradedEndo,
    p: u64,
    n: u32,
    ring: &RingPresentation<Integer>,
) -> Result<LiftOutcome> {
    if e.degree != p.pow(2 * n) {
        return Err(Error::ConventionViolation(format!(
            "endomorphism of degree {} does not model multiplication by {p}^{n}",
            e.degree
        )));
    }
    let zr = ring.ring();
    if n == 0 {
        return Ok(LiftOutcome {
            member: true,
            digits: 0,
            obstruction: None,
            cofactors: Some([zr.zero(), zr.zero()]),
        });
    }
    let fp_ring = crate::charp::fermat_ring(p)?;
    let fr = fp_ring.ring();
    let [ex, ey, ez] = e.images.clone().map(|im| ring.reduce(&im)).map(|im| im.expect("monic relation"));
    let target = ring.reduce(&ez.pow(2))?;
    let gens_p = [to_fp(&ex, fr), to_fp(&ey, fr)];
    let pb = BigInt::from(p);
    let mut residual = target.clone();
    let (mut a_sum, mut b_sum) = (zr.zero(), zr.zero());
    for k in 0..n {
        let pk = pb.pow(k);
        let digit = residual.map_coeffs(|c| {
            debug_assert!((&c.0 % &pk).is_zero());
            Integer(&c.0 / &pk)
        });
        let (ok, cert) = crate::poly::ideal_member(&to_fp(&digit, fr), &gens_p, &fp_ring)?;
        let Some(cert) = cert.filter(|_| ok) else {
            return Ok(LiftOutcome {
                member: false,
                digits: k,
                obstruction: Some(k),
                cofactors: None,
            });
        };
        let scale = Integer(pk.clone());
        let a = from_fp(&cert.cofactors[0], zr).scale(&scale);
        let b = from_fp(&cert.cofactors[1], zr).scale(&scale);
        residual = ring.reduce(&residual.sub(&a.mul(&ex)).sub(&b.mul(&ey)))?;
        a_sum = a_sum.add(&a);
        b_sum = b_sum.add(&b);
    }
    let pn = pb.pow(n);
    let check = ring.reduce(&target.sub(&a_sum.mul(&ex)).sub(&b_sum.mul(&ey)))?;
    if !check.terms().iter().all(|(_, c)| (&c.0 % &pn).is_zero()) {
        return Err(Error::VerificationFailure(format!(
            "lifted cofactors miss e(z^2) modulo {p}^{n}"
        )));
    }
    Ok(LiftOutcome {
        member: true,
        digits: n,
        obstruction: None,
        cofactors: Some([a_sum, b_sum]),
    })
}

/// e(z²) ∈ (pⁿ, e(x), e(y)) in ℤ[x, y, z]/(x³ + y³ + z³).
pub fn membership_mod_pn(
    e: &GradedEndo,
    p: u64,
    n: u32,
    ring: &RingPresentation<Integer>,
) -> Result<bool> {
    Ok(lift_membership(e, p, n, ring)?.member)
}

/// Field used for the n = 1 membership, exposed for reports.
pub fn residue_field(p: u64) -> Result<PrimeField> {
    PrimeField::fermat(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_is_pinned_and_verified() {
        let r = integer_fermat_ring();
        let d = hesse_double(&r).unwrap();
        assert_eq!(d.degree, 4);
        assert_eq!(
            d.formula_text(),
            "x -> x^3*y - y*z^3, y -> -x*y^3 + x*z^3, z -> -x^3*z + y^3*z"
        );
        assert!(verify_endo(&d, &r));
        let flex = endo_on_point(&d, [1, 4, 0], 5).unwrap();
        assert_eq!(flex, [1, 4, 0]);
    }

    #[test]
    fn squares_do_not_preserve_relation() {
        let r = integer_fermat_ring();
        let sq = GradedEndo::new([0, 1, 2].map(|i| r.ring().var(i).pow(2))).unwrap();
        assert!(!verify_endo(&sq, &r));
        assert!(verify_endo(&GradedEndo::identity(&r), &r));
    }

    #[test]
    fn chord_tangent_matches_known_torsion() {
        // flexes are 3-torsion, so 2P = -P
        for p in [5, 7, 11] {
            assert_eq!(chord_tangent_double([0, 1, p - 1], p), [1, 0, p - 1]);
            assert_eq!(chord_tangent_double([1, p - 1, 0], p), [1, p - 1, 0]);
        }
        assert_eq!(curve_points(5).len(), 6);
        assert_eq!(curve_points(11).len(), 12);
    }

    #[test]
    fn membership_first_level() {
        let r = integer_fermat_ring();
        let d = hesse_double(&r).unwrap();
        assert!(membership_mod_pn(&d, 2, 1, &r).unwrap());
        assert!(membership_mod_pn(&GradedEndo::identity(&r), 2, 0, &r).unwrap());
        assert!(matches!(
            membership_mod_pn(&d, 2, 2, &r),
            Err(Error::ConventionViolation(_))
        ));
    }
}
