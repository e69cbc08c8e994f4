//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use rplus_core::coeff::{Coeff, CoeffDomain};
use rplus_core::poly::ideal::monomials_up_to;
use rplus_core::poly::linalg::rref;
use rplus_core::poly::{Monomial, Poly};

fn degree_slice(nvars: usize, d: u64) -> Vec<Monomial> {
    monomials_up_to(nvars, d)
        .into_iter()
        .filter(|m| m.total_degree() == d)
        .collect()
}

fn total_degree<C: Coeff>(f: &Poly<C>) -> Option<u64> {
    let mut degs = f.terms().iter().map(|(m, _)| m.total_degree());
    let d = degs.next()?;
    degs.all(|e| e == d).then_some(d)
}

/// Membership of a homogeneous `f` in the homogeneous ideal `(gens)` over a
/// field, decided by linear algebra in the degree-d slice: f lies in the
/// span of m·g for monomials m of degree d − deg g. No Gröbner basis involved.
pub fn slice_member<C: Coeff>(f: &Poly<C>, gens: &[Poly<C>]) -> bool {
    let Some(d) = total_degree(f) else {
        return f.is_zero();
    };
    let ring = f.ring();
    let n = ring.nvars();
    let cols = degree_slice(n, d);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dom = ring.domain();
    let row_of = |p: &Poly<C>| {
        let mut row = vec![dom.zero(); cols.len()];
        for (m, c) in p.terms() {
            row[index[m]] = c.clone();
        }
        row
    };
    let mut rows = Vec::new();
    for g in gens {
        let Some(e) = total_degree(g) else {
            assert!(g.is_zero(), "generators must be homogeneous");
            continue;
        };
        if e > d {
            continue;
        }
        for m in degree_slice(n, d - e) {
            rows.push(row_of(&g.mul_term(&m, &dom.one())));
        }
    }
    let mut base = rows.clone();
    let r0 = rref(&mut base, cols.len()).len();
    rows.push(row_of(f));
    let r1 = rref(&mut rows, cols.len()).len();
    r0 == r1
}
