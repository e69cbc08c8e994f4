//! Levels of the cube-root tower over the twisted Fermat cubic
//! θx³ + θ²y³ + z³ = 0 and the embeddings between them.

use std::sync::Arc;

use crate::coeff::{Coeff, CycloField, CycloNum, Rational};
use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, Poly, PolyRing, RingPresentation};

/// Level `n` of the tower: variables xₙ, yₙ, zₙ of weight 3⁻ⁿ with relation
/// θxₙ³ + θ²yₙ³ + zₙ³, plus the images of the previous level's variables.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    n: u32,
    pres: Arc<RingPresentation<CycloNum>>,
    embed_prev: Option<[Poly<CycloNum>; 3]>,
}

/// Names of the level-`n` variables: `x, y, z` at level 0, `xn, yn, zn` above.
pub fn level_names(n: u32) -> [String; 3] {
    if n == 0 {
        ["x".into(), "y".into(), "z".into()]
    } else {
        [format!("x{n}"), format!("y{n}"), format!("z{n}")]
    }
}

/// 3⁻ⁿ.
pub fn level_weight(n: u32) -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(3u32).pow(n))
}

pub(crate) fn zeta(k: i64) -> CycloNum {
    CycloNum::zeta_pow(k)
}

/// The three linear forms ζx + ζ²y, ζx + ζ⁵y, ζx + ζ⁸y whose cube roots are
/// the next level's variables (in the ring of `x`, `y`).
pub fn cube_forms(x: &Poly<CycloNum>, y: &Poly<CycloNum>) -> [Poly<CycloNum>; 3] {
    [2, 5, 8].map(|k| x.scale(&zeta(1)).add(&y.scale(&zeta(k))))
}

/// θx³ + θ²y³ + z³ in the given variables.
pub fn fermat_form(x: &Poly<CycloNum>, y: &Poly<CycloNum>, z: &Poly<CycloNum>) -> Poly<CycloNum> {
    let th = CycloNum::theta();
    x.pow(3)
        .scale(&th)
        .add(&y.pow(3).scale(&th.mul(&th)))
        .add(&z.pow(3))
}

pub fn build_level(n: u32) -> TowerLevel {
    let names = level_names(n);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = PolyRing::new(
        CycloField,
        &names,
        vec![level_weight(n); 3],
        MonomialOrder::WeightedGrevlex,
    )
    .expect("valid tower ring");
    let [x, y, z] = [ring.var(0), ring.var(1), ring.var(2)];
    let relation = fermat_form(&x, &y, &z);
    let pres = RingPresentation::new(&ring, vec![relation]).expect("homogeneous relation");
    let embed_prev = (n > 0).then(|| {
        // x³ = ζx' + ζ²y', y³ = ζx' + ζ⁵y' solved for the previous x', y'
        let (x3, y3) = (x.pow(3), y.pow(3));
        let d = zeta(2).sub(&zeta(5)).inv().expect("ζ² ≠ ζ⁵");
        let yp = x3.sub(&y3).scale(&d);
        let xp = x3.sub(&yp.scale(&zeta(2))).scale(&zeta(1).inv().unwrap());
        let zp = x.mul(&y).mul(&z).neg();
        [xp, yp, zp]
    });
    TowerLevel { n, pres, embed_prev }
}

impl TowerLevel {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn presentation(&self) -> &Arc<RingPresentation<CycloNum>> {
        &self.pres
    }

    pub fn ring(&self) -> &Arc<PolyRing<CycloNum>> {
        self.pres.ring()
    }

    pub fn relation(&self) -> &Poly<CycloNum> {
        &self.pres.relations()[0]
    }

    pub fn vars(&self) -> [Poly<CycloNum>; 3] {
        let r = self.ring();
        [r.var(0), r.var(1), r.var(2)]
    }

    /// Images of xₙ₋₁, yₙ₋₁, zₙ₋₁ in this level; `None` at level 0.
    pub fn embed_prev(&self) -> Option<&[Poly<CycloNum>; 3]> {
        self.embed_prev.as_ref()
    }

    pub fn parse(&self, text: &str) -> Result<Poly<CycloNum>> {
        self.pres.parse(text)
    }

    /// Normal form modulo the relation.
    pub fn reduce(&self, f: &Poly<CycloNum>) -> Poly<CycloNum> {
        self.pres.reduce(f).expect("field coefficients")
    }
}

/// Levels 0..=max with on-demand composite embeddings.
#[derive(Clone, Debug)]
pub struct Tower {
    levels: Vec<TowerLevel>,
}

impl Tower {
    pub fn new(max_level: u32) -> Self {
        Tower {
            levels: (0..=max_level).map(build_level).collect(),
        }
    }

    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn level(&self, n: u32) -> &TowerLevel {
        &self.levels[n as usize]
    }

    fn check(&self, n: u32) -> Result<()> {
        if n > self.max_level() {
            return Err(Error::Config {
                field: "max_level".into(),
                msg: format!("level {n} exceeds the built tower (max {})", self.max_level()),
            });
        }
        Ok(())
    }

    /// Images of the level-`from` variables in level `to` (`from ≤ to`).
    pub fn images(&self, from: u32, to: u32) -> Result<[Poly<CycloNum>; 3]> {
        self.check(to)?;
        if from > to {
            return Err(Error::Config {
                field: "level".into(),
                msg: format!("cannot embed level {from} into lower level {to}"),
            });
        }
        let mut imgs = self.level(to).vars();
        for k in ((from + 1)..=to).rev() {
            // imgs holds the images of level-k variables; step down to k-1
            let prev = self.level(k).embed_prev().expect("k ≥ 1");
            imgs = [0, 1, 2].map(|i| prev[i].compose(&imgs));
        }
        Ok(imgs)
    }

    /// Embeds a level-`from` polynomial into level `to`.
    pub fn embed(&self, f: &Poly<CycloNum>, from: u32, to: u32) -> Result<Poly<CycloNum>> {
        if from == to {
            return Ok(f.clone());
        }
        let imgs = self.images(from, to)?;
        Ok(f.compose(&imgs))
    }
}
