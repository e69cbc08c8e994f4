use std::collections::BTreeMap;

use super::{CheckRecord, ExperimentConfig, ExperimentReport};
use crate::charp;
use crate::coeff::{rat, CycloNum, Rational};
use crate::error::{Error, Result};
use crate::isogeny::{self, GradedEndo};
use crate::padic_approx::{self as padic, DigitOracle, SeededOracle, TruncatedModel};
use crate::sample;
use crate::tower::{self, Tower, Valuation};

pub const EXPERIMENTS: [&str; 7] = [
    "tower-verify",
    "tower-colon",
    "tower-trace",
    "charp",
    "isogeny",
    "padic",
    "all",
];

/// Runs the named experiment. Failing checks are recorded in the report;
/// only unknown names and invalid configurations are errors.
pub fn run_experiment(name: &str, config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let checks = match name {
        "tower-verify" => tower_verify(config),
        "tower-colon" => tower_colon(config),
        "tower-trace" => tower_trace(config),
        "charp" => charp_matrix(config),
        "isogeny" => isogeny_checks(config),
        "padic" => padic_checks(config),
        "all" => {
            let mut all = Vec::new();
            for sub in &EXPERIMENTS[..EXPERIMENTS.len() - 1] {
                for mut c in run_experiment(sub, config)?.checks {
                    c.name = format!("{sub}/{}", c.name);
                    all.push(c);
                }
            }
            all
        }
        other => return Err(Error::UnknownExperiment(other.into())),
    };
    Ok(ExperimentReport::new(name, config.echo(), checks))
}

fn inv_pow3(n: u32) -> Rational {
    rat(1, 3i64.pow(n))
}

fn list<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

// ---- tower -----------------------------------------------------------------

fn tower_verify(cfg: &ExperimentConfig) -> Vec<CheckRecord> {
    let t = Tower::new(cfg.max_level);
    let mut out = Vec::new();
    for n in 1..=cfg.max_level {
        match tower::level_checks(&t, n) {
            Ok(rep) => out.extend(rep.checks.into_iter().map(|c| {
                CheckRecord::new(format!("level-{n}/{}", c.name), c.passed)
                    .value("statement", c.statement)
                    .value("residual", c.residual)
            })),
            Err(e) => out.push(CheckRecord::catch(format!("level-{n}"), |_| Err(e))),
        }
    }
    out
}

fn tower_colon(cfg: &ExperimentConfig) -> Vec<CheckRecord> {
    let t = Tower::new(cfg.max_level);
    let mut out = Vec::new();
    for n in 1..=cfg.max_level {
        out.push(CheckRecord::catch(format!("colon-probe/level-{n}"), |name| {
            let full = n <= cfg.full_colon_max;
            let p = tower::colon_probe(&t, n, full)?;
            let bound = inv_pow3(n);
            let ok = p.witness.verify() && p.min_valuation <= bound;
            let mut rec = CheckRecord::new(name, ok)
                .value("level", n)
                .value("bound", &bound)
                .value("witness_valuation", &p.witness_valuation)
                .value("min_valuation", &p.min_valuation)
                .value("full_colon", if full { "computed" } else { "skipped" });
            if let (Some(g), Some(v)) = (&p.colon_generators, &p.colon_min_valuation) {
                rec = rec.value("colon_generators", list(g)).value("colon_min_valuation", v);
            }
            Ok(rec.with_certificate(p.witness.to_text()))
        }));
        out.push(CheckRecord::catch(format!("recurrence/level-{n}"), |name| {
            let (l, r) = tower::decay_recurrence(&t, n)?;
            Ok(CheckRecord::new(name, l == r && l != Valuation::Infinity)
                .value("v(z_prev)", &l)
                .value("v(x)+v(y)+v(z)", &r))
        }));
    }
    for n in 0..=cfg.properness_max.min(cfg.max_level) {
        out.push(CheckRecord::catch(format!("z2-not-in-xy/level-{n}"), |name| {
            let r = tower::z2_not_in_xy(&t, n)?;
            Ok(CheckRecord::new(name, r).value("z2_not_in_xy", r))
        }));
    }
    out.push(CheckRecord::catch("level-1-cofactors", |name| {
        let [cx, cy] = tower::witness_cofactors(&t, 1)?;
        let printed = tower::cofactor_x1sq_y1sq_holds(&t)?;
        let p = tower::colon_probe(&t, 1, false)?;
        Ok(CheckRecord::new(name, p.witness.verify())
            .value("cofactor_x", cx)
            .value("cofactor_y", cy)
            .value("x1^2*y1^2 cofactor holds", printed))
    }));
    out.push(CheckRecord::catch("contradiction-bound", |name| {
        let delta = inv_pow3(cfg.max_level);
        let vz = rat(1, 1);
        let r = tower::replay_bound(&delta, &vz)?;
        let two = rat(2, 1);
        let prev_fails = r.n == 1 || (&two * rat(r.n as i64 - 1, 1) + rat(1, 1)) * &delta <= vz;
        Ok(CheckRecord::new(name, r.exceeds && prev_fails)
            .value("delta", &delta)
            .value("v(z)", &vz)
            .value("N", r.n)
            .value("bounds", list(&r.bounds)))
    }));
    out
}

fn tower_trace(cfg: &ExperimentConfig) -> Vec<CheckRecord> {
    let t = Tower::new(1);
    let (l0, l1) = (t.level(0), t.level(1));
    let mut out = Vec::new();
    let named: [(&str, &str, &str); 3] = [("pi(1)", "1", "1"), ("pi(x1)", "x1", "0"), ("pi(z^2)", "", "")];
    for (name, input, expect) in named {
        out.push(CheckRecord::catch(name, |name| {
            let (s, want) = if input.is_empty() {
                let z2 = t.embed(&l0.parse("z^2")?, 0, 1)?;
                (z2.clone(), l1.reduce(&z2))
            } else {
                (l1.parse(input)?, l1.parse(expect)?)
            };
            let got = tower::trace_retraction(&t, &s)?;
            Ok(CheckRecord::new(name, got == want).value("input", s).value("result", got))
        }));
    }
    out.push(CheckRecord::catch("random-pairs", |name| {
        let mut rng = sample::rng(cfg.seed);
        let zeta = CycloNum::zeta_pow(1);
        let (mut idem, mut lin) = (0u32, 0u32);
        for _ in 0..cfg.trials {
            let s = sample::random_poly(l1.ring(), 4, 4, 3, &mut rng)
                .add(&sample::random_poly(l1.ring(), 3, 2, 3, &mut rng).scale(&zeta));
            let a = sample::random_poly(l0.ring(), 2, 3, 3, &mut rng);
            let (i, l) = tower::retraction_properties(&t, &a, &s)?;
            idem += i as u32;
            lin += l as u32;
        }
        Ok(CheckRecord::new(name, idem == cfg.trials && lin == cfg.trials)
            .value("pairs", cfg.trials)
            .value("idempotent", idem)
            .value("a_linear", lin))
    }));
    out
}

// ---- characteristic p --------------------------------------------------------

fn charp_matrix(cfg: &ExperimentConfig) -> Vec<CheckRecord> {
    let mut out = vec![CheckRecord::catch("char-2-identity", |name| {
        let cert = charp::char2_identity()?;
        Ok(CheckRecord::new(name, cert.verify())
            .value("identity", "z^4 = x^2*(x*z) + y^2*(y*z)")
            .with_certificate(cert.to_text()))
    })];
    for &p in &cfg.primes {
        let ring = match charp::fermat_ring(p) {
            Ok(r) => r,
            Err(e) => {
                out.push(CheckRecord::catch(format!("p={p}"), |_| Err(e)));
                continue;
            }
        };
        let parse = |s: &str| ring.parse(s);
        let setup = || -> Result<_> { Ok(([parse("x")?, parse("y")?], parse("z^2")?)) };
        out.push(CheckRecord::catch(format!("p={p}/z2-not-in-xy"), |name| {
            let (xy, z2) = setup()?;
            let inside = ring.groebner(&xy)?.contains(&z2);
            Ok(CheckRecord::new(name, !inside).value("member", inside))
        }));
        // supersingular (p = 2 mod 3) puts z^2 in the Frobenius closure, ordinary does not
        let expected = p % 3 == 2;
        for e in 1..=cfg.e_max {
            out.push(CheckRecord::catch(format!("p={p}/frobenius-closure/e={e}"), |name| {
                let (xy, z2) = setup()?;
                let got = charp::frobenius_closure_test(&z2, &xy, e, &ring)?;
                let mut rec = CheckRecord::new(name, got == expected)
                    .value("q", p.pow(e))
                    .value("member", got)
                    .value("expected", expected);
                if got && e == 1 {
                    if let Some(c) = charp::frobenius_certificate(&z2, &xy, e, &ring)? {
                        rec = rec.with_certificate(c.to_text());
                    }
                }
                Ok(rec)
            }));
        }
        let mut found = None;
        out.push(CheckRecord::catch(format!("p={p}/multiplier"), |name| {
            let (xy, z2) = setup()?;
            let m = charp::find_multiplier(&z2, &xy, cfg.deg_bound, cfg.e_max, &ring)?;
            let Some(m) = m else {
                return Ok(CheckRecord::new(name, false).value("c", "none"));
            };
            let witness = charp::tight_closure_witness(&z2, &xy, &m.c, cfg.e_max, &ring)?;
            let ok = witness.iter().all(|&b| b);
            let mut rec = CheckRecord::new(name, ok)
                .value("c", &m.c)
                .value("degree", m.degree)
                .value("monomial", m.monomial)
                .value("verified", format!("e <= {}", cfg.e_max));
            if let Some(cert) = charp::multiplier_certificate(&z2, &xy, &m.c, 1, &ring)? {
                rec = rec.with_certificate(cert.to_text());
            }
            found = Some(m);
            Ok(rec)
        }));
        if p % 3 == 1 {
            out.push(CheckRecord::catch(format!("p={p}/contrast"), |name| {
                let (xy, z2) = setup()?;
                let fc = charp::frobenius_closure_test(&z2, &xy, 1, &ring)?;
                Ok(CheckRecord::new(name, !fc && found.is_some())
                    .value("frobenius_closure_e1", fc)
                    .value("multiplier_found", found.is_some()))
            }));
        }
        // c·1 ∈ (x^p, y^p) has a nonzero solution of degree ≤ d exactly when p ≤ d
        out.push(CheckRecord::catch(format!("p={p}/unit-multiplier"), |name| {
            let (xy, _) = setup()?;
            let one = ring.ring().one();
            let m = charp::find_multiplier(&one, &xy, cfg.deg_bound, 1, &ring)?;
            let expect_none = p > cfg.deg_bound;
            Ok(CheckRecord::new(name, m.is_none() == expect_none)
                .value("expected", if expect_none { "none" } else { "a c in (x^p, y^p)" })
                .value("multiplier", m.map_or("none".to_string(), |m| m.c.to_string())))
        }));
    }
    out
}

// ---- isogeny ---------------------------------------------------------------

fn isogeny_checks(cfg: &ExperimentConfig) -> Vec<CheckRecord> {
    let ring = isogeny::integer_fermat_ring();
    let double = match isogeny::hesse_double(&ring) {
        Ok(d) => d,
        Err(e) => return vec![CheckRecord::catch("doubling", |_| Err(e))],
    };
    let mut out = Vec::new();
    out.push(CheckRecord::catch("doubling/relation", |name| {
        let nontrivial = double.images.iter().any(|im| !ring.is_zero(im).unwrap_or(true));
        Ok(CheckRecord::new(name, isogeny::verify_endo(&double, &ring) && nontrivial)
            .value("formula", double.formula_text())
            .value("degree", double.degree))
    }));
    out.push(CheckRecord::catch("doubling/points", |name| {
        let checks = isogeny::point_checks(&double, &[5, 11, 17], 3)?;
        let agree = checks.iter().filter(|c| c.agrees).count();
        let mut cert = BTreeMap::new();
        for c in &checks {
            let fmt = |v: &[u64; 3]| format!("({}:{}:{})", v[0], v[1], v[2]);
            cert.insert(
                format!("p={} {}", c.p, fmt(&c.point)),
                format!(
                    "chord-tangent {} endo {}",
                    fmt(&c.oracle),
                    c.endo.as_ref().map_or("undefined".into(), fmt)
                ),
            );
        }
        Ok(CheckRecord::new(name, agree == checks.len())
            .value("points", checks.len())
            .value("agree", agree)
            .with_certificate(cert))
    }));
    let mut endo = GradedEndo::identity(&ring);
    for n in 0..=cfg.isogeny_n {
        if n > 0 {
            endo = isogeny::compose_endo(&endo, &double);
        }
        let e = endo.clone();
        out.push(CheckRecord::catch(format!("membership/n={n}"), |name| {
            let preserved = isogeny::verify_endo(&e, &ring);
            let o = isogeny::lift_membership(&e, 2, n, &ring)?;
            let mut rec = CheckRecord::new(name, preserved && o.member)
                .value("degree", e.degree)
                .value("relation_preserved", preserved)
                .value("member", o.member)
                .value("digits", o.digits)
                .value(
                    "obstruction",
                    o.obstruction.map_or("none".to_string(), |d| d.to_string()),
                )
                .value(
                    "scope",
                    "checked for this n; all n follow from p-adic separatedness of R+/(x, y)",
                );
            if let Some([a, b]) = &o.cofactors {
                if n <= 1 {
                    rec = rec.with_certificate(BTreeMap::from([
                        ("A".to_string(), a.to_string()),
                        ("B".to_string(), b.to_string()),
                    ]));
                }
            }
            Ok(rec)
        }));
    }
    out
}

// ---- p-adic approximation ---------------------------------------------------

fn trace_certificate(tr: &padic::ApproxTrace) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    for (i, s) in tr.steps.iter().enumerate() {
        let k = i + 1;
        m.insert(format!("step-{k:02}/a"), s.a.to_string());
        m.insert(format!("step-{k:02}/b"), s.b.to_string());
        m.insert(format!("step-{k:02}/c"), s.c.to_string());
        m.insert(format!("step-{k:02}/divisible-by"), format!("p^{}", k.saturating_sub(1)));
        if !s.syzygy.is_zero() {
            m.insert(format!("step-{k:02}/syzygy"), s.syzygy.to_string());
        }
    }
    m.insert("A".into(), tr.a_canonical.to_string());
    m.insert("B".into(), tr.b_canonical.to_string());
    m
}

fn padic_checks(cfg: &ExperimentConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for &p in &cfg.padic_primes {
        let n = cfg.precision;
        let model = match TruncatedModel::new(p, n) {
            Ok(m) => m,
            Err(e) => {
                out.push(CheckRecord::catch(format!("p={p}"), |_| Err(e)));
                continue;
            }
        };
        out.push(CheckRecord::catch(format!("p={p}/regular-sequence"), |name| {
            let r = padic::regular_sequence_check(p, n)?;
            Ok(CheckRecord::new(name, r).value("regular", r))
        }));
        let fixed: [(&str, &str, &str); 2] = [("x", "1", "0"), ("z^3", "-x^2", "-y^2")];
        for (alpha, ea, eb) in fixed {
            out.push(CheckRecord::catch(format!("p={p}/alpha={alpha}"), |name| {
                let a = model.parse(alpha)?;
                let tr = padic::successive_approx(&model, &a, &mut DigitOracle)?;
                let ok = padic::verify_trace(&model, &tr, &a)
                    && tr.a_canonical == model.parse(ea)?
                    && tr.b_canonical == model.parse(eb)?;
                Ok(CheckRecord::new(name, ok)
                    .value("A", &tr.a_canonical)
                    .value("B", &tr.b_canonical)
                    .with_certificate(trace_certificate(&tr)))
            }));
        }
        out.push(CheckRecord::catch(format!("p={p}/adversarial"), |name| {
            let p2 = format!("{}", p * p);
            let alpha = model.parse(&format!("x + {p2}*y"))?;
            let mut oracle = SeededOracle::adversarial(model.parse("1")?, model.parse(&p2)?, cfg.seed);
            oracle.spurious = vec![model.parse(&format!("{p}*y"))?];
            let tr = padic::successive_approx(&model, &alpha, &mut oracle)?;
            let ok = padic::verify_trace(&model, &tr, &alpha)
                && tr.a_canonical == model.parse("1")?
                && tr.b_canonical == model.parse(&p2)?;
            Ok(CheckRecord::new(name, ok)
                .value("alpha", &tr.alpha)
                .value("A", &tr.a_canonical)
                .value("B", &tr.b_canonical)
                .with_certificate(trace_certificate(&tr)))
        }));
        out.push(CheckRecord::catch(format!("p={p}/random"), |name| {
            let mut rng = sample::rng(cfg.seed ^ p);
            let (mut verified, mut independent) = (0u32, 0u32);
            for k in 0..cfg.trials {
                let (alpha, a0, b0) = padic::random_member(&model, 2, 3, &mut rng);
                let mut oracle = SeededOracle::adversarial(a0, b0, cfg.seed.wrapping_add(k as u64));
                let tr = padic::successive_approx(&model, &alpha, &mut oracle)?;
                verified += padic::verify_trace(&model, &tr, &alpha) as u32;
                let other = padic::successive_approx(&model, &alpha, &mut DigitOracle)?;
                independent += (other.a_canonical == tr.a_canonical
                    && other.b_canonical == tr.b_canonical) as u32;
            }
            Ok(CheckRecord::new(name, verified == cfg.trials && independent == cfg.trials)
                .value("trials", cfg.trials)
                .value("verified", verified)
                .value("oracle_independent", independent))
        }));
        if let Some(text) = &cfg.alpha {
            out.push(CheckRecord::catch(format!("p={p}/input"), |name| {
                let a = model.parse(text)?;
                let tr = padic::successive_approx(&model, &a, &mut DigitOracle)?;
                Ok(CheckRecord::new(name, padic::verify_trace(&model, &tr, &a))
                    .value("alpha", &tr.alpha)
                    .value("A", &tr.a_canonical)
                    .value("B", &tr.b_canonical)
                    .with_certificate(trace_certificate(&tr)))
            }));
        }
    }
    out
}
