//! Buchberger's algorithm with the Gebauer–Möller criteria.
//!
//! Pairs are selected by smallest weighted degree of their lcm, ties broken by
//! sugar and then by index, so runs are fully deterministic. When cofactor
//! tracking is requested every basis element carries its representation in
//! terms of the input generators, which is what membership certificates are
//! assembled from.

use std::sync::Arc;

use super::monomial::Monomial;
use super::polynomial::{Poly, Term};
use super::ring::PolyRing;
use crate::coeff::{Coeff, CoeffDomain};
use crate::error::{Error, Result};

/// A Gröbner basis of the ideal generated by `inputs`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C: Coeff> {
    ring: Arc<PolyRing<C>>,
    generators: Vec<Poly<C>>,
    reduced: bool,
    inputs: Vec<Poly<C>>,
    /// `generators[k] = Σᵢ cofactors[k][i] · inputs[i]` when tracked.
    cofactors: Option<Vec<Vec<Poly<C>>>>,
    stats: GroebnerStats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_considered: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
}

/// Result of multivariate division of `f` by a list of divisors.
#[derive(Clone, Debug)]
pub struct Division<C: Coeff> {
    pub quotients: Vec<Poly<C>>,
    pub remainder: Poly<C>,
}

/// Divides `f` by `divisors`, reducing every term (full reduction). The first
/// divisor whose leading monomial divides the current term is used.
/// Divisors must have invertible leading coefficients.
pub fn divide<C: Coeff>(f: &Poly<C>, divisors: &[&Poly<C>], want_quotients: bool) -> Division<C> {
    let ring = f.ring().clone();
    let lead_inv: Vec<Option<C>> = divisors
        .iter()
        .map(|g| g.leading_coeff().and_then(|c| c.inv()))
        .collect();
    let mut quot: Vec<Vec<Term<C>>> = vec![Vec::new(); divisors.len()];
    let mut rem: Vec<Term<C>> = Vec::new();
    let mut p: Vec<Term<C>> = f.terms().to_vec();
    let mut pos = 0;
    while pos < p.len() {
        let (lm, lc) = &p[pos];
        let hit = divisors.iter().enumerate().find_map(|(k, g)| {
            let glm = g.leading_monomial()?;
            let inv = lead_inv[k].as_ref()?;
            glm.div(lm).map(|mult| (k, mult, lc.mul(inv)))
        });
        match hit {
            None => {
                rem.push(p[pos].clone());
                pos += 1;
            }
            Some((k, mult, coef)) => {
                let g = divisors[k];
                let tail = &g.terms()[1..];
                p = merge_sub(&ring, &p[pos + 1..], tail, &mult, &coef);
                pos = 0;
                if want_quotients {
                    quot[k].push((mult, coef));
                }
            }
        }
    }
    Division {
        quotients: quot
            .into_iter()
            .map(|t| Poly::from_terms(&ring, t))
            .collect(),
        remainder: Poly::from_sorted(&ring, rem),
    }
}

/// `a - coef·mult·b`, with `a`, `b` sorted descending.
fn merge_sub<C: Coeff>(
    ring: &PolyRing<C>,
    a: &[Term<C>],
    b: &[Term<C>],
    mult: &Monomial,
    coef: &C,
) -> Vec<Term<C>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<(Monomial, C)> = b.first().map(|(m, c)| (m.mul(mult), c.mul(coef)));
    while i < a.len() {
        let Some((bm, bc)) = &bj else { break };
        match ring.cmp(&a[i].0, bm) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((bm.clone(), bc.neg()));
                j += 1;
                bj = b.get(j).map(|(m, c)| (m.mul(mult), c.mul(coef)));
            }
            std::cmp::Ordering::Equal => {
                let c = a[i].1.sub(bc);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|(m, c)| (m.mul(mult), c.mul(coef)));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some((bm, bc)) = bj {
        out.push((bm, bc.neg()));
        for (m, c) in &b[j + 1..] {
            out.push((m.mul(mult), c.mul(coef).neg()));
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u64,
    sugar: u64,
}

struct Entry<C: Coeff> {
    poly: Poly<C>,
    sugar: u64,
    active: bool,
    rep: Option<Vec<Poly<C>>>,
}

struct Builder<'a, C: Coeff> {
    ring: Arc<PolyRing<C>>,
    n_inputs: usize,
    entries: Vec<Entry<C>>,
    pairs: Vec<Pair>,
    track: bool,
    stats: GroebnerStats,
    inputs: &'a [Poly<C>],
}

impl<C: Coeff> Builder<'_, C> {
    fn active_refs(&self) -> (Vec<usize>, Vec<&Poly<C>>) {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(k, e)| (k, &e.poly))
            .unzip()
    }

    fn scale_rep(&self, rep: &[Poly<C>], m: &Monomial, c: &C) -> Vec<Poly<C>> {
        rep.iter().map(|r| r.mul_term(m, c)).collect()
    }

    /// Reduces `p` (with representation `rep`) by the active entries.
    fn reduce(&self, p: &Poly<C>, rep: Option<Vec<Poly<C>>>) -> (Poly<C>, Option<Vec<Poly<C>>>) {
        let (idx, refs) = self.active_refs();
        let div = divide(p, &refs, self.track);
        let rep = rep.map(|mut rep| {
            for (q, &k) in div.quotients.iter().zip(&idx) {
                if q.is_zero() {
                    continue;
                }
                let grep = self.entries[k].rep.as_ref().expect("tracked");
                for (r, g) in rep.iter_mut().zip(grep) {
                    *r = r.sub(&q.mul(g));
                }
            }
            rep
        });
        (div.remainder, rep)
    }

    fn make_monic(&self, p: Poly<C>, rep: Option<Vec<Poly<C>>>) -> (Poly<C>, Option<Vec<Poly<C>>>) {
        let lc = p.leading_coeff().expect("nonzero").clone();
        if lc.is_one() {
            return (p, rep);
        }
        let inv = lc.inv().expect("field coefficients");
        let rep = rep.map(|r| r.iter().map(|x| x.scale(&inv)).collect());
        (p.scale(&inv), rep)
    }

    /// Inserts a new basis element and updates the pair set (Gebauer–Möller).
    fn insert(&mut self, poly: Poly<C>, sugar: u64, rep: Option<Vec<Poly<C>>>) {
        let h = self.entries.len();
        let lh = poly.leading_monomial().expect("nonzero").clone();
        let ring = self.ring.clone();

        // candidate new pairs (g, h)
        let mut cands: Vec<Pair> = Vec::new();
        for (g, e) in self.entries.iter().enumerate() {
            if !e.active {
                continue;
            }
            let lg = e.poly.leading_monomial().unwrap();
            let lcm = lg.lcm(&lh);
            let sugar_ij = (e.sugar + ring.int_degree(&lg.div(&lcm).unwrap()))
                .max(sugar + ring.int_degree(&lh.div(&lcm).unwrap()));
            cands.push(Pair {
                i: g,
                j: h,
                degree: ring.int_degree(&lcm),
                lcm,
                sugar: sugar_ij,
            });
        }
        self.stats.pairs_considered += cands.len();

        // chain criterion among the new pairs
        let coprime: Vec<bool> = cands
            .iter()
            .map(|p| {
                let lg = self.entries[p.i].poly.leading_monomial().unwrap();
                lg.is_coprime(&lh)
            })
            .collect();
        // sequential chain criterion: a candidate survives unless a later
        // candidate or an accepted one has an lcm dividing its lcm
        let mut keep = vec![false; cands.len()];
        for a in 0..cands.len() {
            keep[a] = coprime[a]
                || (!(a + 1..cands.len()).any(|b| cands[b].lcm.divides(&cands[a].lcm))
                    && !(0..a).any(|d| keep[d] && cands[d].lcm.divides(&cands[a].lcm)));
        }
        // product criterion: coprime leading monomials need no S-pair
        let new_pairs: Vec<Pair> = cands
            .into_iter()
            .zip(keep.iter().zip(&coprime))
            .filter(|(_, (&k, &c))| k && !c)
            .map(|(p, _)| p)
            .collect();

        // prune old pairs whose lcm is divisible by LT(h) strictly
        let entries = &self.entries;
        self.pairs.retain(|p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let li = entries[p.i].poly.leading_monomial().unwrap().lcm(&lh);
            let lj = entries[p.j].poly.leading_monomial().unwrap().lcm(&lh);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);

        // deactivate elements whose leading monomial is divisible by LT(h)
        for e in self.entries.iter_mut() {
            if e.active && lh.divides(e.poly.leading_monomial().unwrap()) {
                e.active = false;
            }
        }
        self.entries.push(Entry {
            poly,
            sugar,
            active: true,
            rep,
        });
    }

    fn select(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (a.degree, a.sugar, a.j, a.i).cmp(&(b.degree, b.sugar, b.j, b.i))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pair: &Pair) -> (Poly<C>, Option<Vec<Poly<C>>>) {
        let f = &self.entries[pair.i];
        let g = &self.entries[pair.j];
        let mf = f.poly.leading_monomial().unwrap().div(&pair.lcm).unwrap();
        let mg = g.poly.leading_monomial().unwrap().div(&pair.lcm).unwrap();
        let one = self.ring.domain().one();
        let minus = one.neg();
        // entries are monic
        let s = f.poly.mul_term(&mf, &one).sub(&g.poly.mul_term(&mg, &one));
        let rep = if self.track {
            let a = self.scale_rep(f.rep.as_ref().unwrap(), &mf, &one);
            let b = self.scale_rep(g.rep.as_ref().unwrap(), &mg, &minus);
            Some(a.iter().zip(&b).map(|(x, y)| x.add(y)).collect())
        } else {
            None
        };
        (s, rep)
    }

    fn unit_rep(&self, i: usize) -> Vec<Poly<C>> {
        (0..self.n_inputs)
            .map(|k| {
                if k == i {
                    self.ring.one()
                } else {
                    self.ring.zero()
                }
            })
            .collect()
    }

    fn run(mut self) -> GroebnerBasis<C> {
        // feed inputs by increasing leading monomial
        let mut order: Vec<usize> = (0..self.inputs.len())
            .filter(|&i| !self.inputs[i].is_zero())
            .collect();
        order.sort_by(|&a, &b| {
            let (la, lb) = (
                self.inputs[a].leading_monomial().unwrap(),
                self.inputs[b].leading_monomial().unwrap(),
            );
            self.ring.cmp(la, lb).then(a.cmp(&b))
        });
        for i in order {
            let f = self.inputs[i].clone();
            let rep = self.track.then(|| self.unit_rep(i));
            let sugar = max_int_degree(&f);
            let (h, rep) = self.reduce(&f, rep);
            if !h.is_zero() {
                let (h, rep) = self.make_monic(h, rep);
                self.insert(h, sugar, rep);
            }
        }
        while let Some(pair) = self.select() {
            self.stats.pairs_reduced += 1;
            let (s, rep) = self.spoly(&pair);
            let (h, rep) = self.reduce(&s, rep);
            if h.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let (h, rep) = self.make_monic(h, rep);
            self.insert(h, pair.sugar, rep);
        }
        self.finish()
    }

    /// Minimal basis, then interreduction to the unique reduced basis.
    fn finish(self) -> GroebnerBasis<C> {
        let mut live: Vec<Entry<C>> = self.entries.into_iter().filter(|e| e.active).collect();
        live.sort_by(|a, b| {
            self.ring.cmp(
                a.poly.leading_monomial().unwrap(),
                b.poly.leading_monomial().unwrap(),
            )
        });
        let track = self.track;
        let mut gens: Vec<Poly<C>> = Vec::with_capacity(live.len());
        let mut reps: Vec<Vec<Poly<C>>> = Vec::new();
        for k in 0..live.len() {
            let others: Vec<&Poly<C>> = live
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, e)| &e.poly)
                .collect();
            let p = &live[k].poly;
            let (lm, lc) = p.leading_term().unwrap().clone();
            let tail = Poly::from_sorted(&self.ring, p.terms()[1..].to_vec());
            let div = divide(&tail, &others, track);
            let reduced = Poly::from_sorted(&self.ring, vec![(lm, lc)]).add(&div.remainder);
            if track {
                let mut rep = live[k].rep.clone().unwrap();
                let other_idx: Vec<usize> = (0..live.len()).filter(|j| *j != k).collect();
                for (q, &j) in div.quotients.iter().zip(&other_idx) {
                    if q.is_zero() {
                        continue;
                    }
                    for (r, g) in rep.iter_mut().zip(live[j].rep.as_ref().unwrap()) {
                        *r = r.sub(&q.mul(g));
                    }
                }
                reps.push(rep);
            }
            gens.push(reduced);
        }
        GroebnerBasis {
            ring: self.ring,
            generators: gens,
            reduced: true,
            inputs: self.inputs.to_vec(),
            cofactors: track.then_some(reps),
            stats: self.stats,
        }
    }
}

fn max_int_degree<C: Coeff>(p: &Poly<C>) -> u64 {
    p.terms()
        .iter()
        .map(|(m, _)| p.ring().int_degree(m))
        .max()
        .unwrap_or(0)
}

impl<C: Coeff> GroebnerBasis<C> {
    /// Reduced Gröbner basis of the ideal generated by `inputs`.
    pub fn compute(ring: &Arc<PolyRing<C>>, inputs: &[Poly<C>]) -> Result<Self> {
        Self::build(ring, inputs, false)
    }

    /// Same, additionally recording each basis element as a combination of
    /// the inputs.
    pub fn compute_tracked(ring: &Arc<PolyRing<C>>, inputs: &[Poly<C>]) -> Result<Self> {
        Self::build(ring, inputs, true)
    }

    fn build(ring: &Arc<PolyRing<C>>, inputs: &[Poly<C>], track: bool) -> Result<Self> {
        if !ring.domain().is_field() {
            return Err(Error::UnsupportedDomain {
                op: "groebner",
                domain: ring.domain().descriptor(),
            });
        }
        for p in inputs {
            if !PolyRing::same(p.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let b = Builder {
            ring: ring.clone(),
            n_inputs: inputs.len(),
            entries: Vec::new(),
            pairs: Vec::new(),
            track,
            stats: GroebnerStats::default(),
            inputs,
        };
        Ok(b.run())
    }

    /// Wraps polynomials the caller knows to form a reduced Gröbner basis
    /// with unit leading coefficients; each is its own cofactor record.
    pub fn from_basis(ring: &Arc<PolyRing<C>>, basis: Vec<Poly<C>>) -> Result<Self> {
        for p in &basis {
            if !PolyRing::same(p.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let n = basis.len();
        let cofactors = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| if k == i { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        Ok(GroebnerBasis {
            ring: ring.clone(),
            generators: basis.clone(),
            reduced: true,
            inputs: basis,
            cofactors: Some(cofactors),
            stats: GroebnerStats::default(),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<C>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<C>] {
        &self.generators
    }

    pub fn inputs(&self) -> &[Poly<C>] {
        &self.inputs
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn is_tracked(&self) -> bool {
        self.cofactors.is_some()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn normal_form(&self, f: &Poly<C>) -> Poly<C> {
        let refs: Vec<&Poly<C>> = self.generators.iter().collect();
        divide(f, &refs, false).remainder
    }

    pub fn divide(&self, f: &Poly<C>) -> Division<C> {
        let refs: Vec<&Poly<C>> = self.generators.iter().collect();
        divide(f, &refs, true)
    }

    pub fn contains(&self, f: &Poly<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Cofactors `cᵢ` with `f = Σ cᵢ · inputs[i]`, if `f` lies in the ideal
    /// and the basis was computed with tracking.
    pub fn express(&self, f: &Poly<C>) -> Option<Vec<Poly<C>>> {
        let reps = self.cofactors.as_ref()?;
        let div = self.divide(f);
        if !div.remainder.is_zero() {
            return None;
        }
        let mut out = vec![self.ring.zero(); self.inputs.len()];
        for (q, rep) in div.quotients.iter().zip(reps) {
            if q.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(rep) {
                *o = o.add(&q.mul(r));
            }
        }
        Some(out)
    }

    /// Checks that every S-polynomial of basis pairs reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (li, lj) = (g[i].leading_term().unwrap(), g[j].leading_term().unwrap());
                let lcm = li.0.lcm(&lj.0);
                let ci = li.1.inv().unwrap();
                let cj = lj.1.inv().unwrap();
                let s = g[i]
                    .mul_term(&li.0.div(&lcm).unwrap(), &ci)
                    .sub(&g[j].mul_term(&lj.0.div(&lcm).unwrap(), &cj));
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, RationalField};
    use crate::poly::parse::parse_poly;

    fn ring() -> Arc<PolyRing<crate::coeff::Rational>> {
        PolyRing::standard(RationalField, &["x", "y", "z"])
    }

    #[test]
    fn unit_ideal() {
        let r = ring();
        let g = GroebnerBasis::compute(&r, &[r.one()]).unwrap();
        assert!(g.is_unit());
        assert_eq!(g.generators(), &[r.one()]);
    }

    #[test]
    fn monomial_generators_are_already_a_basis() {
        let r = crate::poly::standard_ring(RationalField, &["x", "y"]);
        let x2 = parse_poly(&r, "x^2").unwrap();
        let xy = parse_poly(&r, "x*y").unwrap();
        let g = GroebnerBasis::compute(&r, &[x2.clone(), xy.clone()]).unwrap();
        assert_eq!(g.generators().len(), 2);
        assert!(g.generators().contains(&x2) && g.generators().contains(&xy));
        assert!(g.verify_s_pairs());
    }

    #[test]
    fn twisted_cubic() {
        let r = ring();
        let f: Vec<_> = ["x^2 - y", "x^3 - z"]
            .iter()
            .map(|s| parse_poly(&r, s).unwrap())
            .collect();
        let g = GroebnerBasis::compute_tracked(&r, &f).unwrap();
        assert!(g.verify_s_pairs());
        let target = parse_poly(&r, "x*y - z").unwrap();
        let cof = g.express(&target).unwrap();
        let back = cof[0].mul(&f[0]).add(&cof[1].mul(&f[1]));
        assert_eq!(back, target);
        assert!(!g.contains(&parse_poly(&r, "y").unwrap()));
    }

    #[test]
    fn division_records_quotients() {
        let r = ring();
        let f = parse_poly(&r, "x^2*y + 3*x*y^2 + 1/2").unwrap();
        let g1 = parse_poly(&r, "x*y - 1").unwrap();
        let d = divide(&f, &[&g1], true);
        let back = d.quotients[0].mul(&g1).add(&d.remainder);
        assert_eq!(back, f);
        assert_eq!(d.remainder.constant_coeff(), rat(1, 2));
    }
}
