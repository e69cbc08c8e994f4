//! Dense exact linear algebra over a coefficient field.

use crate::coeff::Coeff;

/// Row-reduces `rows` in place to reduced echelon form; returns the pivot
/// column of each nonzero row, in order. Zero rows are dropped.
pub fn rref<C: Coeff>(rows: &mut Vec<Vec<C>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][col].inv().expect("field coefficients");
        if !inv.is_one() {
            for v in rows[r][col..].iter_mut() {
                *v = v.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *v = v.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right kernel {v : M·v = 0} of the matrix given by rows. The
/// basis is in echelon form with respect to the free columns, listed by
/// increasing free column index.
pub fn kernel<C: Coeff>(rows: &[Vec<C>], ncols: usize, zero: &C, one: &C) -> Vec<Vec<C>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (row, &p) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = row[free].neg();
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, Rational};
    use num_traits::{One, Zero};

    fn q(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn kernel_of_rank_one() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = kernel(&rows, 3, &Rational::zero(), &Rational::one());
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                let dot = r.iter().zip(v).fold(Rational::zero(), |a, (x, y)| a + x * y);
                assert!(Zero::is_zero(&dot));
            }
        }
    }

    #[test]
    fn rref_identity() {
        let mut rows = vec![vec![q(0), q(2)], vec![q(3), q(1)]];
        let piv = rref(&mut rows, 2);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
    }
}
