//! Successive approximation on T_N = (ℤ/pᴺ)[x, y, z]/(x³ + y³ + z³):
//! turns step-wise representations α ≡ a·x + b·y mod pⁱ into a single
//! α = A·x + B·y in T_N whose i-th increments are divisible by pⁱ⁻¹.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{FpElem, Padic, PadicRing};
use crate::error::{Error, Result};
use crate::poly::{ideal_member, Monomial, Poly, PolyRing, RingPresentation};

/// T_N together with its residue ring 𝔽ₚ[x, y, z]/(x³ + y³ + z³).
#[derive(Clone, Debug)]
pub struct TruncatedModel {
    pub p: u64,
    pub precision: u32,
    pub ring: Arc<RingPresentation<Padic>>,
    pub residue: Arc<RingPresentation<FpElem>>,
}

impl TruncatedModel {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        let coeffs = PadicRing::new(p, precision)?;
        let amb = PolyRing::standard(coeffs, &["x", "y", "z"]);
        let rel = amb.var(0).pow(3).add(&amb.var(1).pow(3)).add(&amb.var(2).pow(3));
        Ok(TruncatedModel {
            p,
            precision,
            ring: RingPresentation::new(&amb, vec![rel])?,
            residue: crate::charp::fermat_ring(p)?,
        })
    }

    pub fn coeffs(&self) -> PadicRing {
        *self.ring.domain()
    }

    pub fn parse(&self, s: &str) -> Result<Poly<Padic>> {
        self.ring.parse(s)
    }

    pub fn reduce(&self, f: &Poly<Padic>) -> Poly<Padic> {
        self.ring.reduce(f).expect("monic relation over Z/p^N")
    }

    pub fn x(&self) -> Poly<Padic> {
        self.ring.ring().var(0)
    }

    pub fn y(&self) -> Poly<Padic> {
        self.ring.ring().var(1)
    }

    /// pᵏ·f.
    pub fn times_p_pow(&self, f: &Poly<Padic>, k: u32) -> Poly<Padic> {
        f.scale(&self.coeffs().p_pow(k))
    }

    /// The j-th base-p digit of every coefficient, as a polynomial over 𝔽ₚ.
    pub fn digit(&self, f: &Poly<Padic>, j: u32) -> Poly<FpElem> {
        let field = *self.residue.domain();
        let pj = self.p.pow(j);
        f.map_into(self.residue.ring(), &[0, 1, 2], |c| {
            field.elem(((c.residue() / pj) % self.p) as i64)
        })
    }

    /// Lift with coefficients in [0, p).
    pub fn lift(&self, f: &Poly<FpElem>) -> Poly<Padic> {
        let coeffs = self.coeffs();
        f.map_into(self.ring.ring(), &[0, 1, 2], |c| coeffs.from_residue(c.residue()))
    }

    /// f / pᵏ for f with every coefficient divisible by pᵏ.
    pub fn div_p_pow(&self, f: &Poly<Padic>, k: u32) -> Option<Poly<Padic>> {
        if !divisible(f, k) {
            return None;
        }
        Some(f.map_coeffs(|c| c.div_p_pow(k)))
    }
}

/// Whether pᵏ divides every coefficient.
pub fn divisible(f: &Poly<Padic>, k: u32) -> bool {
    f.terms().iter().all(|(_, c)| c.divisible_by_p_pow(k))
}

/// Whether (p, x, y) is regular on T_N: x is a nonzerodivisor on T_N/(p) and y
/// on T_N/(p, x). T_N is free over ℤ/pᴺ, so both are decided over 𝔽ₚ.
pub fn regular_sequence_check(p: u64, precision: u32) -> Result<bool> {
    let model = TruncatedModel::new(p, precision)?;
    let fr = &model.residue;
    let [x, y] = [fr.ring().var(0), fr.ring().var(1)];
    let ann_x = crate::poly::colon(&[], &x, fr)?;
    if ann_x.iter().any(|g| !fr.is_zero(g).unwrap_or(false)) {
        return Ok(false);
    }
    let colon_y = crate::poly::colon(std::slice::from_ref(&x), &y, fr)?;
    let gx = fr.groebner(std::slice::from_ref(&x))?;
    Ok(colon_y.iter().all(|g| gx.contains(g)))
}

/// Supplies, for the residual ρ = cᵢ₋₁·pⁱ⁻¹ at step i, some (a, b, c) with
/// ρ = a·x + b·y + c·pⁱ in T_N.
pub trait StepOracle {
    fn represent(
        &mut self,
        model: &TruncatedModel,
        step: u32,
        residual: &Poly<Padic>,
    ) -> Result<[Poly<Padic>; 3]>;
}

fn finish_step(
    model: &TruncatedModel,
    step: u32,
    residual: &Poly<Padic>,
    a: Poly<Padic>,
    b: Poly<Padic>,
) -> [Poly<Padic>; 3] {
    let rest = model.reduce(&residual.sub(&a.mul(&model.x())).sub(&b.mul(&model.y())));
    // a non-divisible rest is left for the expansion check to reject
    let c = model.div_p_pow(&rest, step).unwrap_or(rest);
    [a, b, c]
}

/// Solves each step's leading digit over 𝔽ₚ with a Gröbner certificate.
#[derive(Clone, Debug, Default)]
pub struct DigitOracle;

impl StepOracle for DigitOracle {
    fn represent(
        &mut self,
        model: &TruncatedModel,
        step: u32,
        residual: &Poly<Padic>,
    ) -> Result<[Poly<Padic>; 3]> {
        let k = step - 1;
        let d = model.digit(residual, k);
        let fr = &model.residue;
        let gens = [fr.ring().var(0), fr.ring().var(1)];
        let (ok, cert) = ideal_member(&d, &gens, fr)?;
        let Some(cert) = cert.filter(|_| ok) else {
            return Err(Error::LiftingObstruction { step, digit: k });
        };
        let a = model.times_p_pow(&model.lift(&cert.cofactors[0]), k);
        let b = model.times_p_pow(&model.lift(&cert.cofactors[1]), k);
        Ok(finish_step(model, step, residual, a, b))
    }
}

/// Replays a known α = A₀·x + B₀·y digit by digit. Optionally adds a random
/// syzygy t·(y, −x) to every step, so the raw (aᵢ, bᵢ) lose their
/// pⁱ⁻¹-divisibility while still representing the residual.
#[derive(Clone, Debug)]
pub struct SeededOracle {
    pub a0: Poly<Padic>,
    pub b0: Poly<Padic>,
    pub noise: Option<ChaCha8Rng>,
    /// Fixed syzygy multipliers per step (1-based index − 1), used before `noise`.
    pub spurious: Vec<Poly<Padic>>,
}

impl SeededOracle {
    pub fn honest(a0: Poly<Padic>, b0: Poly<Padic>) -> Self {
        SeededOracle {
            a0,
            b0,
            noise: None,
            spurious: Vec::new(),
        }
    }

    pub fn adversarial(a0: Poly<Padic>, b0: Poly<Padic>, seed: u64) -> Self {
        SeededOracle {
            a0,
            b0,
            noise: Some(crate::sample::rng(seed)),
            spurious: Vec::new(),
        }
    }

    fn syzygy_multiplier(&mut self, model: &TruncatedModel, step: u32) -> Poly<Padic> {
        if let Some(t) = self.spurious.get(step as usize - 1) {
            return t.clone();
        }
        let Some(rng) = self.noise.as_mut() else {
            return model.ring.ring().zero();
        };
        let bound = model.coeffs().modulus().min(1 << 20) as i64;
        let mut t = crate::sample::random_poly(model.ring.ring(), 2, 3, bound, rng);
        // keep at least one unit coefficient so the perturbation is visible mod p
        let unit = model.coeffs().elem(rng.gen_range(1..model.p as i64));
        t = t.add(&model.ring.ring().constant(unit));
        t
    }
}

fn digit_part(model: &TruncatedModel, f: &Poly<Padic>, k: u32) -> Poly<Padic> {
    model.times_p_pow(&model.lift(&model.digit(f, k)), k)
}

impl StepOracle for SeededOracle {
    fn represent(
        &mut self,
        model: &TruncatedModel,
        step: u32,
        residual: &Poly<Padic>,
    ) -> Result<[Poly<Padic>; 3]> {
        let k = step - 1;
        let t = self.syzygy_multiplier(model, step);
        let a = digit_part(model, &self.a0, k).add(&t.mul(&model.y()));
        let b = digit_part(model, &self.b0, k).sub(&t.mul(&model.x()));
        Ok(finish_step(model, step, residual, a, b))
    }
}

/// One step: the corrected increments, the raw oracle output and the syzygy
/// multiplier t removed from it.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxStep {
    pub a: Poly<Padic>,
    pub b: Poly<Padic>,
    pub c: Poly<Padic>,
    pub raw_a: Poly<Padic>,
    pub raw_b: Poly<Padic>,
    pub syzygy: Poly<Padic>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxTrace {
    pub p: u64,
    pub precision: u32,
    pub alpha: Poly<Padic>,
    pub steps: Vec<ApproxStep>,
    pub a_sum: Poly<Padic>,
    pub b_sum: Poly<Padic>,
    /// (A, B) normalized modulo the Koszul syzygy: A has no term divisible by y.
    pub a_canonical: Poly<Padic>,
    pub b_canonical: Poly<Padic>,
}

/// Rewrites (A, B) as (A − t·y, B + t·x) with no term of A divisible by y.
pub fn canonical_pair(
    model: &TruncatedModel,
    a: &Poly<Padic>,
    b: &Poly<Padic>,
) -> (Poly<Padic>, Poly<Padic>) {
    let a = model.reduce(a);
    let r = model.ring.ring();
    let (mut keep, mut t) = (Vec::new(), Vec::new());
    for (m, c) in a.terms() {
        if m.exp(1) > 0 {
            let mut e = m.exponents().to_vec();
            e[1] -= 1;
            t.push((Monomial::from_exponents(&e), *c));
        } else {
            keep.push((m.clone(), *c));
        }
    }
    let t = Poly::from_terms(r, t);
    let b = model.reduce(&b.add(&t.mul(&model.x())));
    (Poly::from_terms(r, keep), b)
}

/// Removes t·(y, −x) from (a, b) digit by digit until both are divisible by
/// pᵏ, given a·x + b·y ≡ 0 mod pᵏ. Returns the corrected pair and t.
fn koszul_correct(
    model: &TruncatedModel,
    step: u32,
    mut a: Poly<Padic>,
    mut b: Poly<Padic>,
    k: u32,
) -> Result<[Poly<Padic>; 3]> {
    let fr = &model.residue;
    let (xf, yf) = (fr.ring().var(0), fr.ring().var(1));
    let mut t_total = model.ring.ring().zero();
    for j in 0..k {
        let (da, db) = (model.digit(&a, j), model.digit(&b, j));
        if fr.is_zero(&da)? && fr.is_zero(&db)? {
            continue;
        }
        let (ok, cert) = ideal_member(&da, std::slice::from_ref(&yf), fr)?;
        let Some(cert) = cert.filter(|_| ok) else {
            return Err(Error::LiftingObstruction { step, digit: j });
        };
        let t = cert.cofactors[0].clone();
        // the solved t must also account for b's digit
        if !fr.is_zero(&db.add(&t.mul(&xf)))? {
            return Err(Error::LiftingObstruction { step, digit: j });
        }
        let tl = model.times_p_pow(&model.lift(&t), j);
        a = model.reduce(&a.sub(&tl.mul(&model.y())));
        b = model.reduce(&b.add(&tl.mul(&model.x())));
        t_total = t_total.add(&tl);
        if !divisible(&a, j + 1) || !divisible(&b, j + 1) {
            return Err(Error::LiftingObstruction { step, digit: j });
        }
    }
    Ok([a, b, t_total])
}

pub fn successive_approx(
    model: &TruncatedModel,
    alpha: &Poly<Padic>,
    oracle: &mut dyn StepOracle,
) -> Result<ApproxTrace> {
    let alpha = model.reduce(alpha);
    let r = model.ring.ring();
    let mut residual = alpha.clone();
    let (mut a_sum, mut b_sum) = (r.zero(), r.zero());
    let mut steps = Vec::new();
    for i in 1..=model.precision {
        let [raw_a, raw_b, c] = oracle.represent(model, i, &residual)?;
        let expanded = model.reduce(
            &raw_a
                .mul(&model.x())
                .add(&raw_b.mul(&model.y()))
                .add(&model.times_p_pow(&c, i)),
        );
        if expanded != residual {
            return Err(Error::OracleInconsistency { step: i });
        }
        let [a, b, syzygy] = koszul_correct(model, i, raw_a.clone(), raw_b.clone(), i - 1)?;
        a_sum = model.reduce(&a_sum.add(&a));
        b_sum = model.reduce(&b_sum.add(&b));
        residual = model.reduce(&model.times_p_pow(&c, i));
        steps.push(ApproxStep {
            a,
            b,
            c,
            raw_a,
            raw_b,
            syzygy,
        });
    }
    if !residual.is_zero() {
        return Err(Error::VerificationFailure("residual survives p^N".into()));
    }
    let (a_canonical, b_canonical) = canonical_pair(model, &a_sum, &b_sum);
    Ok(ApproxTrace {
        p: model.p,
        precision: model.precision,
        alpha,
        steps,
        a_sum,
        b_sum,
        a_canonical,
        b_canonical,
    })
}

/// Which invariant of a trace fails, if any.
pub fn trace_violation(model: &TruncatedModel, trace: &ApproxTrace, alpha: &Poly<Padic>) -> Option<String> {
    if trace.p != model.p || trace.precision != model.precision {
        return Some("trace belongs to another model".into());
    }
    let alpha = model.reduce(alpha);
    if trace.alpha != alpha {
        return Some("alpha differs".into());
    }
    if trace.steps.len() != model.precision as usize {
        return Some(format!("{} steps, expected {}", trace.steps.len(), model.precision));
    }
    let r = model.ring.ring();
    let (mut a_k, mut b_k) = (r.zero(), r.zero());
    for (idx, s) in trace.steps.iter().enumerate() {
        let i = idx as u32 + 1;
        if i >= 2 && !(divisible(&s.a, i - 1) && divisible(&s.b, i - 1)) {
            return Some(format!("step {i}: increments not divisible by p^{}", i - 1));
        }
        a_k = a_k.add(&s.a);
        b_k = b_k.add(&s.b);
        let tel = model.reduce(
            &alpha
                .sub(&a_k.mul(&model.x()))
                .sub(&b_k.mul(&model.y()))
                .sub(&model.times_p_pow(&s.c, i)),
        );
        if !tel.is_zero() {
            return Some(format!("step {i}: telescoping residual {tel}"));
        }
    }
    if model.reduce(&a_k) != model.reduce(&trace.a_sum) || model.reduce(&b_k) != model.reduce(&trace.b_sum) {
        return Some("partial sums differ from A, B".into());
    }
    let canon = model.reduce(
        &alpha
            .sub(&trace.a_canonical.mul(&model.x()))
            .sub(&trace.b_canonical.mul(&model.y())),
    );
    if !canon.is_zero() {
        return Some(format!("canonical pair misses alpha by {canon}"));
    }
    None
}

/// Re-checks the divisibility ladder and every telescoping identity.
pub fn verify_trace(model: &TruncatedModel, trace: &ApproxTrace, alpha: &Poly<Padic>) -> bool {
    trace_violation(model, trace, alpha).is_none()
}

/// A·x + B·y for a random pair (A, B), with that pair.
pub fn random_member(
    model: &TruncatedModel,
    max_deg: u64,
    nterms: usize,
    rng: &mut ChaCha8Rng,
) -> (Poly<Padic>, Poly<Padic>, Poly<Padic>) {
    let r = model.ring.ring();
    let bound = model.coeffs().modulus().min(1 << 20) as i64;
    let a0 = crate::sample::random_poly(r, max_deg, nterms, bound, rng);
    let b0 = crate::sample::random_poly(r, max_deg, nterms, bound, rng);
    let alpha = model.reduce(&a0.mul(&model.x()).add(&b0.mul(&model.y())));
    (alpha, a0, b0)
}
