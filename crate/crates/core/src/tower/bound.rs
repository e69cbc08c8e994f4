//! The level count forcing a contradiction: if every xₖ, yₖ, zₖ has
//! valuation ≥ δ, unrolling v(zₖ₋₁) = v(xₖ) + v(yₖ) + v(zₖ) N times gives
//! v(z) ≥ (2N+1)·δ.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReplay {
    pub n: u64,
    /// `bounds[k-1]` = (2k+1)·δ, the lower bound on v(z) after unrolling k levels.
    pub bounds: Vec<Rational>,
    /// (2N+1)·δ > v(z).
    pub exceeds: bool,
}

/// Smallest N ≥ 1 with (2N+1)·δ > v(z).
pub fn contradiction_bound(delta: &Rational, vz: &Rational) -> Result<u64> {
    if !delta.is_positive() || !vz.is_positive() {
        return Err(Error::Config {
            field: "delta/vz".into(),
            msg: "both must be positive".into(),
        });
    }
    // (2N+1) > vz/δ  ⇔  N > (vz/δ − 1)/2
    let half = (vz / delta - Rational::one()) / Rational::from_integer(2.into());
    let n: num_bigint::BigInt = half.floor().to_integer() + 1;
    let n = n.max(One::one());
    n.to_u64().ok_or_else(|| Error::Config {
        field: "delta".into(),
        msg: "bound does not fit in 64 bits".into(),
    })
}

/// The bound together with the unrolled chain of lower bounds.
pub fn replay_bound(delta: &Rational, vz: &Rational) -> Result<BoundReplay> {
    let n = contradiction_bound(delta, vz)?;
    let mut bounds = Vec::with_capacity(n as usize);
    // v(z) ≥ v(x₁) + v(y₁) + v(z₁) ≥ 2δ + v(z₁) ≥ …
    let mut acc = Rational::zero();
    for _ in 0..n {
        acc += delta * Rational::from_integer(2.into());
        bounds.push(&acc + delta);
    }
    let exceeds = bounds.last().is_some_and(|b| b > vz);
    Ok(BoundReplay { n, bounds, exceeds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn worked_values() {
        assert_eq!(contradiction_bound(&rat(1, 10), &rat(1, 1)).unwrap(), 5);
        assert_eq!(contradiction_bound(&rat(1, 1), &rat(1, 1)).unwrap(), 1);
        assert_eq!(contradiction_bound(&rat(1, 3), &rat(1, 1)).unwrap(), 2);
        assert!(contradiction_bound(&rat(0, 1), &rat(1, 1)).is_err());
    }

    #[test]
    fn replay_reaches_past_vz() {
        let r = replay_bound(&rat(1, 10), &rat(1, 1)).unwrap();
        assert_eq!(r.bounds.first(), Some(&rat(3, 10)));
        assert_eq!(r.bounds.last(), Some(&rat(11, 10)));
        assert!(r.exceeds);
    }
}
