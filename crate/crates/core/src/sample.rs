//! Seeded random polynomials for property tests and experiments.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Coeff, CoeffDomain};
use crate::poly::ideal::monomials_up_to;
use crate::poly::{Poly, PolyRing};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `nterms` random terms of total degree ≤ `max_deg`, coefficients
/// drawn from `-coeff_bound..=coeff_bound` and mapped into the domain.
pub fn random_poly<C: Coeff>(
    ring: &Arc<PolyRing<C>>,
    max_deg: u64,
    nterms: usize,
    coeff_bound: i64,
    rng: &mut impl Rng,
) -> Poly<C> {
    let monos = monomials_up_to(ring.nvars(), max_deg);
    let dom = ring.domain();
    let terms = (0..nterms)
        .map(|_| {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            (m, dom.from_i64(rng.gen_range(-coeff_bound..=coeff_bound)))
        })
        .collect();
    Poly::from_terms(ring, terms)
}

/// Random homogeneous polynomial of degree `deg` (standard grading).
pub fn random_form<C: Coeff>(
    ring: &Arc<PolyRing<C>>,
    deg: u64,
    nterms: usize,
    coeff_bound: i64,
    rng: &mut impl Rng,
) -> Poly<C> {
    let monos = crate::poly::ideal::monomials_of_degree(ring, deg);
    let dom = ring.domain();
    let terms = (0..nterms)
        .map(|_| {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            (m, dom.from_i64(rng.gen_range(-coeff_bound..=coeff_bound)))
        })
        .collect();
    Poly::from_terms(ring, terms)
}
