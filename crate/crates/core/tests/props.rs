//! Algebraic invariants under random inputs.

use proptest::prelude::*;
use rplus_core::charp;
use rplus_core::coeff::{rat, CycloNum};
use rplus_core::isogeny::{self, GradedEndo};
use rplus_core::padic_approx::{self as padic, DigitOracle, SeededOracle, TruncatedModel};
use rplus_core::report::{run_experiment, ExperimentConfig, ExperimentReport};
use rplus_core::sample;
use rplus_core::tower::{self, valuation, Tower, Valuation};

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn frobenius_is_additive(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 5, 7])) {
        let r = charp::fermat_ring(p).unwrap();
        let mut rng = sample::rng(seed);
        let f = sample::random_poly(r.ring(), 3, 4, p as i64, &mut rng);
        let g = sample::random_poly(r.ring(), 3, 4, p as i64, &mut rng);
        let q = p as u32;
        prop_assert_eq!(f.add(&g).pow(q), f.pow(q).add(&g.pow(q)));
        prop_assert_eq!(f.mul(&g).pow(q), f.pow(q).mul(&g.pow(q)));
    }

    #[test]
    fn valuation_axioms(seed in any::<u64>(), n in 0u32..=1) {
        let t = Tower::new(1);
        let l = t.level(n);
        let pres = l.presentation();
        let mut rng = sample::rng(seed);
        let f = sample::random_poly(l.ring(), 4, 3, 5, &mut rng);
        let g = sample::random_poly(l.ring(), 4, 3, 5, &mut rng);
        let (vf, vg) = (valuation(&f, pres).unwrap(), valuation(&g, pres).unwrap());
        let sum = valuation(&f.add(&g), pres).unwrap();
        prop_assert!(sum >= vf.clone().min(vg.clone()));
        prop_assert_eq!(valuation(&f.mul(&g), pres).unwrap(), &vf + &vg);
        let unit = CycloNum::zeta_pow(1);
        prop_assert_eq!(valuation(&f.scale(&unit), pres).unwrap(), vf);
    }

    #[test]
    fn embedding_is_a_ring_map(seed in any::<u64>()) {
        let t = Tower::new(2);
        let mut rng = sample::rng(seed);
        let l0 = t.level(0);
        let f = sample::random_poly(l0.ring(), 3, 3, 4, &mut rng);
        let g = sample::random_poly(l0.ring(), 3, 3, 4, &mut rng);
        let e = |h: &_| t.level(2).reduce(&t.embed(h, 0, 2).unwrap());
        prop_assert_eq!(e(&f.add(&g)), t.level(2).reduce(&e(&f).add(&e(&g))));
        prop_assert_eq!(e(&f.mul(&g)), t.level(2).reduce(&e(&f).mul(&e(&g))));
        // through level 1 or directly
        let via = t.embed(&t.embed(&f, 0, 1).unwrap(), 1, 2).unwrap();
        prop_assert_eq!(t.level(2).reduce(&via), e(&f));
        // the valuation is preserved
        let vf = valuation(&f, l0.presentation()).unwrap();
        if let Valuation::Finite(q) = vf {
            prop_assert_eq!(
                valuation(&e(&f), t.level(2).presentation()).unwrap(),
                Valuation::Finite(q)
            );
        }
    }

    #[test]
    fn retraction_is_idempotent_and_linear(seed in any::<u64>()) {
        let t = Tower::new(1);
        let mut rng = sample::rng(seed);
        let s = sample::random_poly(t.level(1).ring(), 5, 4, 6, &mut rng);
        let a = sample::random_poly(t.level(0).ring(), 2, 2, 6, &mut rng);
        let (idem, lin) = tower::retraction_properties(&t, &a, &s).unwrap();
        prop_assert!(idem && lin);
    }

    #[test]
    fn contradiction_bound_is_minimal(d in 1i64..50, dd in 1i64..100, v in 1i64..200, vd in 1i64..30) {
        let delta = rat(d, dd);
        let vz = rat(v, vd);
        let n = tower::contradiction_bound(&delta, &vz).unwrap();
        let beats = |k: u64| rat(2 * k as i64 + 1, 1) * &delta > vz;
        prop_assert!(beats(n));
        prop_assert!(n == 1 || !beats(n - 1));
        prop_assert!(tower::contradiction_bound(&delta, &(&vz + rat(1, 1))).unwrap() >= n);
    }
}

fn linear_endo(m: [[i64; 3]; 3]) -> GradedEndo {
    let r = isogeny::integer_fermat_ring();
    let v = r.ring().vars();
    let images = m.map(|row| {
        row.iter()
            .zip(&v)
            .fold(r.ring().zero(), |acc, (&c, x)| acc.add(&x.mul(&r.ring().int(c))))
    });
    GradedEndo::new(images).unwrap()
}

proptest! {
    #![proptest_config(cfg(16))]

    #[test]
    fn endo_composition_is_associative(
        a in prop::array::uniform3(prop::array::uniform3(-2i64..=2)),
        b in prop::array::uniform3(prop::array::uniform3(-2i64..=2)),
        with_double in any::<bool>(),
    ) {
        let r = isogeny::integer_fermat_ring();
        let (ea, eb) = (linear_endo(a), linear_endo(b));
        prop_assume!(ea.images.iter().chain(&eb.images).all(|f| !f.is_zero()));
        let ec = if with_double { isogeny::hesse_double(&r).unwrap() } else { GradedEndo::identity(&r) };
        let left = isogeny::compose_endo(&isogeny::compose_endo(&ea, &eb), &ec);
        let right = isogeny::compose_endo(&ea, &isogeny::compose_endo(&eb, &ec));
        prop_assert_eq!(left.images, right.images);
        prop_assert_eq!(left.degree, right.degree);
    }

    #[test]
    fn frobenius_closure_is_monotone(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 5])) {
        let r = charp::fermat_ring(p).unwrap();
        let xy = [r.parse("x").unwrap(), r.parse("y").unwrap()];
        let mut rng = sample::rng(seed);
        let f = sample::random_form(r.ring(), 2, 3, p as i64, &mut rng);
        if charp::frobenius_closure_test(&f, &xy, 1, &r).unwrap() {
            prop_assert!(charp::frobenius_closure_test(&f, &xy, 2, &r).unwrap());
        }
        // members of the ideal are always in the closure
        let g = r.parse("x*z + y^2").unwrap();
        prop_assert!(charp::frobenius_closure_test(&g, &xy, 1, &r).unwrap());
    }

    #[test]
    fn multiplier_degree_never_exceeds_bound(p in prop::sample::select(vec![7u64, 13]), bound in 0u64..=3) {
        let r = charp::fermat_ring(p).unwrap();
        let xy = [r.parse("x").unwrap(), r.parse("y").unwrap()];
        let z2 = r.parse("z^2").unwrap();
        match charp::find_multiplier(&z2, &xy, bound, 1, &r).unwrap() {
            Some(m) => {
                prop_assert!(m.degree <= bound);
                prop_assert_eq!(m.degree, 1);
            }
            None => prop_assert_eq!(bound, 0),
        }
    }

    #[test]
    fn approximation_ladder(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 5]), n in 2u32..=5) {
        let model = TruncatedModel::new(p, n).unwrap();
        let mut rng = sample::rng(seed);
        let (alpha, a0, b0) = padic::random_member(&model, 2, 3, &mut rng);
        let adv = padic::successive_approx(&model, &alpha, &mut SeededOracle::adversarial(a0.clone(), b0.clone(), seed)).unwrap();
        let honest = padic::successive_approx(&model, &alpha, &mut SeededOracle::honest(a0, b0)).unwrap();
        let digit = padic::successive_approx(&model, &alpha, &mut DigitOracle).unwrap();
        for tr in [&adv, &honest, &digit] {
            prop_assert!(padic::verify_trace(&model, tr, &alpha));
            prop_assert_eq!(tr.steps.len(), n as usize);
            let recon = model.reduce(&tr.a_sum.mul(&model.x()).add(&tr.b_sum.mul(&model.y())));
            prop_assert_eq!(recon, model.reduce(&alpha));
        }
        prop_assert_eq!(&adv.a_canonical, &digit.a_canonical);
        prop_assert_eq!(&adv.b_canonical, &digit.b_canonical);
        prop_assert_eq!(&honest.a_canonical, &digit.a_canonical);
    }
}

proptest! {
    #![proptest_config(cfg(6))]

    #[test]
    fn reports_are_deterministic_and_round_trip(seed in 0u64..1000, trials in 1u32..5) {
        let c = ExperimentConfig { seed, trials, ..Default::default() };
        for name in ["tower-trace", "padic"] {
            let a = run_experiment(name, &c).unwrap();
            let b = run_experiment(name, &c).unwrap();
            prop_assert_eq!(a.to_json(), b.to_json());
            let back = ExperimentReport::from_json(&a.to_json()).unwrap();
            prop_assert_eq!(back.to_json(), a.to_json());
            prop_assert!(back.fingerprint_is_current());
        }
    }
}
