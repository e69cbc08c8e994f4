use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector indexed by the ring's variable list.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Integer-weighted degree.
    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()
    }
}

/// Monomial order tag of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    /// Weighted degree first, ties broken by reverse lexicographic order on
    /// the fixed variable list.
    #[default]
    WeightedGrevlex,
    /// Block order eliminating the first `block` variables: weighted grevlex
    /// on the block, then weighted grevlex on the remaining variables.
    Elimination { block: usize },
}

fn grevlex(a: &[u32], b: &[u32], w: &[u64]) -> Ordering {
    let da: u64 = a.iter().zip(w).map(|(&e, &w)| e as u64 * w).sum();
    let db: u64 = b.iter().zip(w).map(|(&e, &w)| e as u64 * w).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable is larger
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u64]) -> Ordering {
        match *self {
            MonomialOrder::WeightedGrevlex => grevlex(&a.0, &b.0, weights),
            MonomialOrder::Elimination { block } => {
                grevlex(&a.0[..block], &b.0[..block], &weights[..block])
                    .then_with(|| grevlex(&a.0[block..], &b.0[block..], &weights[block..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::WeightedGrevlex => "wgrevlex".into(),
            MonomialOrder::Elimination { block } => format!("elim({block})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_cubes() {
        let o = MonomialOrder::WeightedGrevlex;
        let w = [1, 1, 1];
        assert_eq!(o.compare(&m(&[3, 0, 0]), &m(&[0, 3, 0]), &w), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 3, 0]), &m(&[0, 0, 3]), &w), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1, 1]), &m(&[0, 0, 3]), &w), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 1]), &m(&[2, 0, 0]), &w), Ordering::Less);
    }

    #[test]
    fn weights_dominate() {
        let o = MonomialOrder::WeightedGrevlex;
        assert_eq!(o.compare(&m(&[0, 1]), &m(&[2, 0]), &[1, 3]), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::Elimination { block: 1 };
        let w = [1, 1, 1];
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 9, 9]), &w), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert_eq!(a.div(&b), Some(m(&[1, 0, 1])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 2])));
    }
}
