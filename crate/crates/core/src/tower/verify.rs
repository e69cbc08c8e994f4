use super::level::{cube_forms, fermat_form, Tower};
use super::valuation::{valuation, Valuation};
use crate::coeff::{Coeff, CycloNum, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    /// The identity, and the residual left after expansion.
    pub statement: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub n: u32,
    pub checks: Vec<IdentityCheck>,
}

impl LevelReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Names of the three per-level identities, in report order.
pub const LEVEL_CHECKS: [&str; 3] = ["linear-combination", "cube-product", "relation-image"];

/// Checks the identities behind the embedding of level n−1 into level n:
/// the three cube forms are killed by (θ, θ², 1); their product is
/// θx³ + θ²y³ and equals (xₙyₙzₙ)³ at level n; the previous relation maps to 0.
pub fn level_checks(tower: &Tower, n: u32) -> Result<LevelReport> {
    if n == 0 {
        return Err(Error::Config {
            field: "level".into(),
            msg: "identities relate level n-1 to level n; need n >= 1".into(),
        });
    }
    let lo = tower.level(n - 1);
    let hi = tower.level(n);
    let [x, y, z] = lo.vars();
    let th = CycloNum::theta();
    let th2 = th.mul(&th);
    let [l1, l2, l3] = cube_forms(&x, &y);

    let lin = l1.scale(&th).add(&l2.scale(&th2)).add(&l3);

    let prod = l1.mul(&l2).mul(&l3);
    let target = x.pow(3).scale(&th).add(&y.pow(3).scale(&th2));
    let prod_res = prod.sub(&target);
    let imgs = tower.images(n - 1, n)?;
    let [xn, yn, zn] = hi.vars();
    let xyz3 = xn.mul(&yn).mul(&zn).pow(3);
    let lifted = target.compose(&imgs);
    let cube_res = hi.reduce(&xyz3.sub(&lifted));
    let z_res = hi.reduce(&xyz3.add(&imgs[2].pow(3)));

    let rel_img = hi.reduce(&fermat_form(&x, &y, &z).compose(&imgs));

    let cube_residual = if prod_res.is_zero() && cube_res.is_zero() && z_res.is_zero() {
        "0".to_string()
    } else {
        format!("{prod_res}; {cube_res}; {z_res}")
    };
    let checks = vec![
        IdentityCheck {
            name: LEVEL_CHECKS[0],
            passed: lin.is_zero(),
            statement: "t^3*(t*x + t^2*y) + t^6*(t*x + t^5*y) + (t*x + t^8*y) = 0".into(),
            residual: lin.to_string(),
        },
        IdentityCheck {
            name: LEVEL_CHECKS[1],
            passed: cube_residual == "0",
            statement: format!(
                "(t*x + t^2*y)(t*x + t^5*y)(t*x + t^8*y) = t^3*x^3 + t^6*y^3 = ({}*{}*{})^3 = -z^3",
                hi.ring().names()[0],
                hi.ring().names()[1],
                hi.ring().names()[2]
            ),
            residual: cube_residual,
        },
        IdentityCheck {
            name: LEVEL_CHECKS[2],
            passed: rel_img.is_zero(),
            statement: "image of the previous relation reduces to 0".into(),
            residual: rel_img.to_string(),
        },
    ];
    Ok(LevelReport { n, checks })
}

/// Like [`level_checks`] but fails with the name of the first broken identity.
pub fn verify_level(tower: &Tower, n: u32) -> Result<LevelReport> {
    let rep = level_checks(tower, n)?;
    if let Some(c) = rep.checks.iter().find(|c| !c.passed) {
        return Err(Error::VerificationFailure(format!(
            "level {n}: {} (residual {})",
            c.name, c.residual
        )));
    }
    Ok(rep)
}

/// `(v(zₙ₋₁) at level n, v(xₙ) + v(yₙ) + v(zₙ))`.
pub fn decay_recurrence(tower: &Tower, n: u32) -> Result<(Valuation, Valuation)> {
    let hi = tower.level(n);
    let z_prev = tower.images(n - 1, n)?[2].clone();
    let lhs = valuation(&z_prev, hi.presentation())?;
    let mut rhs = Valuation::Finite(Rational::from_integer(0.into()));
    for v in hi.vars() {
        rhs = &rhs + &valuation(&v, hi.presentation())?;
    }
    Ok((lhs, rhs))
}
