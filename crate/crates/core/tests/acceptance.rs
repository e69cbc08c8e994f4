//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//! All tolerances are exact (zero polynomials, equal rationals); the only
//! numeric limits are wall-clock budgets.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use rplus_core::charp;
use rplus_core::coeff::{rat, CycloNum, Rational, RationalField};
use rplus_core::isogeny;
use rplus_core::padic_approx::{self as padic, SeededOracle, TruncatedModel};
use rplus_core::poly::ideal::{monomial_colon_oracle, monomials_up_to};
use rplus_core::poly::{colon, ideal_member, standard_ring, Monomial, Poly, RingPresentation};
use rplus_core::report::golden::{check_golden, fixture_dir, GoldenOutcome};
use rplus_core::report::{run_experiment, ExperimentConfig, EXPERIMENTS};
use rplus_core::sample;
use rplus_core::tower::{self, Tower, Valuation};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, format!("took {t:?}, budget {budget:?}"))
}

/// Level identities at n = 1, 2, 3.
fn tower_identities() -> Outcome {
    let start = Instant::now();
    let t = Tower::new(3);
    for n in 1..=3 {
        let rep = tower::verify_level(&t, n).map_err(e2s)?;
        ensure(rep.checks.len() == 3, "three checks per level")?;
        // (xₙyₙzₙ)³ + zₙ₋₁³ and the relation image, recomputed directly
        let hi = t.level(n);
        let [xn, yn, zn] = hi.vars();
        let imgs = t.images(n - 1, n).map_err(e2s)?;
        let cube = hi.reduce(&xn.mul(&yn).mul(&zn).pow(3).add(&imgs[2].pow(3)));
        ensure(cube.is_zero(), format!("level {n}: (xyz)^3 + z_prev^3 = {cube}"))?;
        let rel = hi.reduce(&t.level(n - 1).relation().compose(&imgs));
        ensure(rel.is_zero(), format!("level {n}: relation image {rel}"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("9 identities exact in {:?}", start.elapsed()))
}

/// Colon witnesses of valuation ≤ 3⁻ⁿ and the decay recurrence.
fn valuation_decay() -> Outcome {
    let start = Instant::now();
    let t = Tower::new(3);
    let mut mins = Vec::new();
    for n in 1..=3 {
        let p = tower::colon_probe(&t, n, n <= 2).map_err(e2s)?;
        ensure(p.witness.verify(), format!("level {n}: certificate does not expand"))?;
        let bound = rat(1, 3i64.pow(n));
        ensure(p.min_valuation <= bound, format!("level {n}: min {} > {bound}", p.min_valuation))?;
        let (l, r) = tower::decay_recurrence(&t, n).map_err(e2s)?;
        ensure(l == r && l != Valuation::Infinity, format!("level {n}: {l} != {r}"))?;
        mins.push(p.min_valuation.to_string());
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("min valuations {} in {:?}", mins.join(", "), start.elapsed()))
}

/// z² ∉ (x, y) at levels 0, 1, 2, cross-checked by degree-slice linear algebra.
fn colon_properness() -> Outcome {
    let start = Instant::now();
    let t = Tower::new(2);
    for n in 0..=2 {
        ensure(tower::z2_not_in_xy(&t, n).map_err(e2s)?, format!("level {n}: z^2 in (x, y)"))?;
        let [x, y, z2] = tower::colon::embedded_xy_z2(&t, n).map_err(e2s)?;
        let rel = t.level(n).relation().clone();
        ensure(
            !common::slice_member(&z2, &[x, y, rel]),
            format!("level {n}: linear algebra finds z^2 in (x, y)"),
        )?;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("levels 0..2 proper in {:?}", start.elapsed()))
}

/// The averaging retraction.
fn splinter_retraction() -> Outcome {
    let t = Tower::new(1);
    let (l0, l1) = (t.level(0), t.level(1));
    let one = l1.ring().one();
    ensure(tower::trace_retraction(&t, &one).map_err(e2s)? == one, "pi(1) != 1")?;
    let x1 = l1.parse("x1").map_err(e2s)?;
    ensure(tower::trace_retraction(&t, &x1).map_err(e2s)?.is_zero(), "pi(x1) != 0")?;
    let mut rng = sample::rng(2024);
    let zeta = CycloNum::zeta_pow(1);
    for k in 0..100 {
        let s = sample::random_poly(l1.ring(), 4, 4, 5, &mut rng)
            .add(&sample::random_poly(l1.ring(), 3, 2, 5, &mut rng).scale(&zeta));
        let a = sample::random_poly(l0.ring(), 2, 3, 5, &mut rng);
        let (idem, lin) = tower::retraction_properties(&t, &a, &s).map_err(e2s)?;
        ensure(idem && lin, format!("pair {k}: idempotent {idem}, A-linear {lin}"))?;
        let ea = t.embed(&a, 0, 1).map_err(e2s)?;
        let fixed = tower::trace_retraction(&t, &ea).map_err(e2s)?;
        ensure(fixed == l1.reduce(&ea), format!("pair {k}: pi(embed(f)) != embed(f)"))?;
    }
    Ok("pi(1)=1, pi(x1)=0; 100 random pairs idempotent, A-linear, fixing A".into())
}

/// contradiction_bound against a direct unrolling of the recurrence.
fn contradiction_bound() -> Outcome {
    let mut rng = sample::rng(5);
    for k in 0..1000 {
        let delta = rat(rng.gen_range(1..=40), rng.gen_range(1..=200));
        let vz = rat(rng.gen_range(1..=60), rng.gen_range(1..=20));
        let n = tower::contradiction_bound(&delta, &vz).map_err(e2s)?;
        // v(z) ≥ v(z_N) + 2δ·N ≥ (2N + 1)δ: unroll until the bound exceeds v(z)
        let mut levels = 1u64;
        let mut lower: Rational = &delta * rat(3, 1);
        while lower <= vz {
            lower += &delta * rat(2, 1);
            levels += 1;
        }
        ensure(n == levels, format!("case {k}: delta {delta}, v(z) {vz}: {n} vs {levels}"))?;
        let prev = (rat(2, 1) * rat(n as i64 - 1, 1) + rat(1, 1)) * &delta;
        ensure(n == 1 || prev <= vz, format!("case {k}: N - 1 = {} also works", n - 1))?;
    }
    Ok("1000 random (delta, v(z)) pairs agree; N - 1 fails for each".into())
}

/// Colon and membership on random monomial ideals against divisibility oracles.
fn groebner_soundness() -> Outcome {
    let mut rng = sample::rng(11);
    let mut certs = 0;
    for k in 0..60 {
        let nv = rng.gen_range(1..=3usize);
        let names = ["a", "b", "c"];
        let ring = standard_ring(RationalField, &names[..nv]);
        let pres = RingPresentation::free(&ring);
        let monos: Vec<Monomial> = monomials_up_to(nv, 4).into_iter().filter(|m| !m.is_one()).collect();
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Monomial> = (0..ngens).map(|_| monos[rng.gen_range(0..monos.len())].clone()).collect();
        let f = monos[rng.gen_range(0..monos.len())].clone();
        let as_poly = |m: &Monomial| ring.monomial(m.exponents());
        let gen_polys: Vec<Poly<_>> = gens.iter().map(as_poly).collect();

        let col = colon(&gen_polys, &as_poly(&f), &pres).map_err(e2s)?;
        let cg = pres.groebner(&col).map_err(e2s)?;
        let oracle = monomial_colon_oracle(&gens, &f, 6);
        for m in monomials_up_to(nv, 6) {
            let ours = cg.contains(&as_poly(&m));
            ensure(
                ours == oracle.contains(&m),
                format!("instance {k}: colon disagrees at {}", as_poly(&m)),
            )?;
        }
        for m in monomials_up_to(nv, 5) {
            let (member, cert) = ideal_member(&as_poly(&m), &gen_polys, &pres).map_err(e2s)?;
            let truth = gens.iter().any(|g| g.divides(&m));
            ensure(member == truth, format!("instance {k}: membership of {}", as_poly(&m)))?;
            if let Some(c) = cert {
                ensure(c.verify() && c.expand() == c.target, format!("instance {k}: certificate"))?;
                certs += 1;
            }
        }
        // a random combination is a member with an exact certificate
        let combo = gen_polys.iter().fold(ring.zero(), |acc, g| {
            let c = sample::random_poly(&ring, 2, 2, 4, &mut rng);
            acc.add(&c.mul(g))
        });
        let (member, cert) = ideal_member(&combo, &gen_polys, &pres).map_err(e2s)?;
        ensure(member, format!("instance {k}: combination not a member"))?;
        let c = cert.ok_or("missing certificate")?;
        ensure(c.expand() == combo, format!("instance {k}: combination certificate"))?;
        certs += 1;
    }
    Ok(format!("60 monomial instances agree; {certs} certificates re-expand"))
}

/// Characteristic-p contrast, with the p = 7 multiplier frozen as a fixture.
fn charp_contrast() -> Outcome {
    let start = Instant::now();
    let r2 = charp::fermat_ring(2).map_err(e2s)?;
    let xy2 = [r2.parse("x").map_err(e2s)?, r2.parse("y").map_err(e2s)?];
    let z2 = r2.parse("z^2").map_err(e2s)?;
    ensure(charp::frobenius_closure_test(&z2, &xy2, 1, &r2).map_err(e2s)?, "p=2: z^4 not in (x^2, y^2)")?;
    let id = charp::char2_identity().map_err(e2s)?;
    let cofs: Vec<String> = id.cofactors.iter().chain(&id.relation_cofactors).map(|c| c.to_string()).collect();
    ensure(id.verify() && cofs == ["x*z", "y*z", "z"], format!("p=2 identity: cofactors {cofs:?}"))?;

    let r7 = charp::fermat_ring(7).map_err(e2s)?;
    let xy7 = [r7.parse("x").map_err(e2s)?, r7.parse("y").map_err(e2s)?];
    let z2 = r7.parse("z^2").map_err(e2s)?;
    let rel = r7.relations()[0].clone();
    ensure(!r7.groebner(&xy7).map_err(e2s)?.contains(&z2), "p=7: z^2 in (x, y)")?;
    ensure(!charp::frobenius_closure_test(&z2, &xy7, 1, &r7).map_err(e2s)?, "p=7: z^2 in F-closure")?;
    let x7 = [r7.parse("x^7").map_err(e2s)?, r7.parse("y^7").map_err(e2s)?, rel];
    ensure(!common::slice_member(&z2.pow(7), &x7), "p=7: linear algebra finds z^14 in (x^7, y^7)")?;
    let m = charp::find_multiplier(&z2, &xy7, 3, 2, &r7).map_err(e2s)?.ok_or("p=7: no multiplier")?;
    let w = charp::tight_closure_witness(&z2, &xy7, &m.c, 2, &r7).map_err(e2s)?;
    ensure(w == [true, true], format!("p=7: witness {w:?}"))?;

    let cfg = ExperimentConfig {
        primes: vec![7],
        ..Default::default()
    };
    let report = run_experiment("charp", &cfg).map_err(e2s)?;
    let recorded = report.check("p=7/multiplier").and_then(|c| c.values.get("c")).cloned();
    ensure(recorded.as_deref() == Some(m.c.to_string().as_str()), "report multiplier differs")?;
    let dir = fixture_dir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"));
    let golden = match check_golden(&report, &dir, "charp-p7").map_err(e2s)? {
        GoldenOutcome::Frozen(p) => format!("froze {}", p.display()),
        GoldenOutcome::Matched(_) => "matches fixture".to_string(),
        GoldenOutcome::Drifted(p, d) => return Err(format!("drift against {}: {d:?}", p.display())),
    };
    within(start, Duration::from_secs(60))?;
    Ok(format!("p=7 multiplier c = {} (degree {}), {golden}", m.c, m.degree))
}

/// The doubling endomorphism.
fn isogeny_instance() -> Outcome {
    let start = Instant::now();
    let ring = isogeny::integer_fermat_ring();
    let d = isogeny::hesse_double(&ring).map_err(e2s)?;
    ensure(d.degree == 4 && isogeny::verify_endo(&d, &ring), "doubling fails the relation check")?;
    let checks = isogeny::point_checks(&d, &[5, 11, 17], 3).map_err(e2s)?;
    let agree = checks.iter().filter(|c| c.agrees).count();
    ensure(agree == checks.len() && agree >= 3, format!("{agree}/{} points agree", checks.len()))?;
    ensure(isogeny::membership_mod_pn(&d, 2, 1, &ring).map_err(e2s)?, "m(z^2) not in (m(x), m(y)) mod 2")?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("relation preserved, {agree} points agree, membership mod 2 holds"))
}

/// Successive approximation with adversarial oracles.
fn successive_approximation() -> Outcome {
    let start = Instant::now();
    let mut corrections = 0;
    for (p, n) in [(2u64, 6u32), (5, 5)] {
        let model = TruncatedModel::new(p, n).map_err(e2s)?;
        ensure(padic::regular_sequence_check(p, n).map_err(e2s)?, format!("p={p}: not regular"))?;
        let mut rng = sample::rng(100 + p);
        for k in 0..20 {
            let (alpha, a0, b0) = padic::random_member(&model, 2, 3, &mut rng);
            let mut oracle = SeededOracle::adversarial(a0, b0, 1000 * p + k);
            let tr = padic::successive_approx(&model, &alpha, &mut oracle).map_err(e2s)?;
            ensure(padic::verify_trace(&model, &tr, &alpha), format!("p={p} #{k}: trace rejected"))?;
            let (mut a_k, mut b_k) = (model.ring.ring().zero(), model.ring.ring().zero());
            for (i, s) in tr.steps.iter().enumerate() {
                let i = i as u32 + 1;
                if i >= 2 {
                    ensure(
                        padic::divisible(&s.a, i - 1) && padic::divisible(&s.b, i - 1),
                        format!("p={p} #{k}: step {i} not divisible by p^{}", i - 1),
                    )?;
                }
                a_k = a_k.add(&s.a);
                b_k = b_k.add(&s.b);
                let res = model.reduce(
                    &alpha
                        .sub(&a_k.mul(&model.x()))
                        .sub(&b_k.mul(&model.y()))
                        .sub(&model.times_p_pow(&s.c, i)),
                );
                ensure(res.is_zero(), format!("p={p} #{k}: telescoping fails at step {i}"))?;
                corrections += (!s.syzygy.is_zero()) as u32;
            }
        }
    }
    ensure(corrections > 0, "adversarial oracles never needed a correction")?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("40 traces verified, {corrections} Koszul corrections, {:?}", start.elapsed()))
}

/// Byte-identical reports on rerun.
fn determinism() -> Outcome {
    let cfg = ExperimentConfig::default();
    for name in EXPERIMENTS {
        let a = run_experiment(name, &cfg).map_err(e2s)?;
        let b = run_experiment(name, &cfg).map_err(e2s)?;
        ensure(a.to_json() == b.to_json(), format!("{name}: report bodies differ"))?;
        ensure(a.fingerprint == b.fingerprint && a.fingerprint_is_current(), format!("{name}: fingerprint"))?;
    }
    Ok(format!("{} experiments rerun byte-identically", EXPERIMENTS.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("tower identities", tower_identities),
        ("valuation decay", valuation_decay),
        ("colon properness", colon_properness),
        ("splinter retraction", splinter_retraction),
        ("contradiction bound", contradiction_bound),
        ("groebner soundness", groebner_soundness),
        ("char-p contrast", charp_contrast),
        ("isogeny instance", isogeny_instance),
        ("successive approximation", successive_approximation),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{:.2?}]", k + 1, start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{:.2?}]", k + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
