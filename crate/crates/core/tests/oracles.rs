//! Library answers against independent computations: degree-slice linear
//! algebra, term filtering, point arithmetic.

mod common;

use common::slice_member;
use rplus_core::charp;
use rplus_core::coeff::CycloNum;
use rplus_core::isogeny::{self, GradedEndo};
use rplus_core::poly::Poly;
use rplus_core::sample;
use rplus_core::tower::{self, trace::is_invariant_monomial, Tower};

#[test]
fn properness_matches_slice_algebra() {
    let t = Tower::new(2);
    for n in 0..=2 {
        let [x, y, z2] = tower::colon::embedded_xy_z2(&t, n).unwrap();
        let rel = t.level(n).relation().clone();
        assert!(tower::z2_not_in_xy(&t, n).unwrap());
        assert!(!slice_member(&z2, &[x.clone(), y.clone(), rel.clone()]), "level {n}");
        // sanity: the oracle does see genuine members
        let m = x.mul(&z2).add(&x.mul(&y).mul(&y));
        assert!(slice_member(&m, &[x, y, rel]));
    }
}

#[test]
fn frobenius_closure_matches_slice_algebra() {
    for (p, e_max) in [(2, 2), (5, 2), (7, 1), (11, 1), (13, 1)] {
        let r = charp::fermat_ring(p).unwrap();
        let xy = [r.parse("x").unwrap(), r.parse("y").unwrap()];
        let rel = r.relations()[0].clone();
        for e in 1..=e_max {
            let q = (p as u32).pow(e);
            let z2 = r.parse("z^2").unwrap();
            let got = charp::frobenius_closure_test(&z2, &xy, e, &r).unwrap();
            let mut gens = charp::frobenius_power(&xy, e).unwrap();
            gens.push(rel.clone());
            assert_eq!(got, slice_member(&z2.pow(q), &gens), "p={p} e={e}");
            assert_eq!(got, p % 3 == 2, "p={p} e={e}");
        }
    }
}

#[test]
fn multiplier_matches_slice_algebra() {
    for p in [7, 13] {
        let r = charp::fermat_ring(p).unwrap();
        let xy = [r.parse("x").unwrap(), r.parse("y").unwrap()];
        let z2 = r.parse("z^2").unwrap();
        let m = charp::find_multiplier(&z2, &xy, 3, 1, &r).unwrap().unwrap();
        let mut gens = charp::frobenius_power(&xy, 1).unwrap();
        gens.push(r.relations()[0].clone());
        assert!(slice_member(&m.c.mul(&z2.pow(p as u32)), &gens), "p={p}");
        // nothing of lower degree works
        for d in 0..m.degree {
            for mono in rplus_core::poly::ideal::monomials_up_to(3, d) {
                if mono.total_degree() != d {
                    continue;
                }
                let c = r.ring().monomial(mono.exponents());
                if r.reduce(&c).unwrap().is_zero() {
                    continue;
                }
                assert!(!slice_member(&c.mul(&z2.pow(p as u32)), &gens), "p={p}: {c} also works");
            }
        }
    }
}

#[test]
fn retraction_keeps_invariant_terms() {
    let t = Tower::new(1);
    let l1 = t.level(1);
    let mut rng = sample::rng(77);
    let zeta = CycloNum::zeta_pow(2);
    for _ in 0..25 {
        let s = sample::random_poly(l1.ring(), 5, 5, 7, &mut rng)
            .add(&sample::random_poly(l1.ring(), 4, 3, 7, &mut rng).scale(&zeta));
        let nf = l1.reduce(&s);
        let kept = Poly::from_terms(
            l1.ring(),
            nf.terms().iter().filter(|(m, _)| is_invariant_monomial(m)).cloned().collect(),
        );
        assert_eq!(tower::trace_retraction(&t, &s).unwrap(), l1.reduce(&kept), "s = {s}");
    }
}

#[test]
fn doubling_preserves_curve_points_mod_p() {
    let ring = isogeny::integer_fermat_ring();
    let d = isogeny::hesse_double(&ring).unwrap();
    for p in [5, 7, 11, 13, 17] {
        for pt in isogeny::curve_points(p) {
            let Some(img) = isogeny::endo_on_point(&d, pt, p) else {
                continue;
            };
            let s = img.iter().map(|&c| c.pow(3) % p).sum::<u64>() % p;
            assert_eq!(s, 0, "p={p}: {pt:?} -> {img:?}");
            if p % 3 == 2 {
                assert_eq!(img, isogeny::chord_tangent_double(pt, p), "p={p}: {pt:?}");
            }
        }
    }
}

#[test]
fn composed_doubling_is_quadrupling_on_points() {
    let ring = isogeny::integer_fermat_ring();
    let d = isogeny::hesse_double(&ring).unwrap();
    let dd: GradedEndo = isogeny::compose_endo(&d, &d);
    assert_eq!(dd.degree, 16);
    assert!(isogeny::verify_endo(&dd, &ring));
    for p in [5, 11] {
        for pt in isogeny::curve_points(p) {
            let want = isogeny::chord_tangent_double(isogeny::chord_tangent_double(pt, p), p);
            if let Some(img) = isogeny::endo_on_point(&dd, pt, p) {
                assert_eq!(img, want, "p={p}: {pt:?}");
            }
        }
    }
}
