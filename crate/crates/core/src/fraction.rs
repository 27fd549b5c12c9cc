//! Exact non-negative fractions, the step function `phi_r` and the
//! smallest-denominator fraction of a half-open interval.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::FractionError;

/// A non-negative fraction in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Fraction {
    num: i64,
    den: i64,
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Result<Self, FractionError> {
        if den == 0 {
            return Err(FractionError::ZeroDenominator);
        }
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(n: i64) -> Self {
        Fraction { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `phi_r(t) = r t + 1` when `r t` is an integer and `ceil(r t)` otherwise;
/// equivalently the least integer `m` with `m > r t`.
///
/// `phi_r(0) = 1`.
pub fn phi(r: Fraction, t: i64) -> i64 {
    debug_assert!(r.num >= 0 && t >= 0);
    let prod = r.num as i128 * t as i128;
    (prod.div_euclid(r.den as i128) + 1) as i64
}

/// `M(lo, hi)`: the fraction `e/f` with `lo < e/f <= hi`, `f` minimal and then
/// `e` minimal.
///
/// Walks the Stern-Brocot tree, taking runs of same-direction steps at once.
/// The first node that lands in the interval is the simplest fraction there,
/// which has both the smallest denominator and the smallest numerator.
pub fn min_fraction_in_interval(lo: Fraction, hi: Fraction) -> Result<Fraction, FractionError> {
    if lo >= hi || lo.num < 0 {
        return Err(FractionError::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let (p, q) = (lo.num as i128, lo.den as i128);
    let (pp, qq) = (hi.num as i128, hi.den as i128);
    // left = a/b <= lo, right = c/d > hi (c/d = 1/0 stands for infinity)
    let (mut a, mut b, mut c, mut d): (i128, i128, i128, i128) = (0, 1, 1, 0);
    loop {
        let (m_num, m_den) = (a + c, b + d);
        if m_num * q <= p * m_den {
            // mediant <= lo: move the left bound as far right as possible
            // while staying <= lo, i.e. the largest k with (a+kc)/(b+kd) <= lo
            let k = (p * b - q * a) / (q * c - p * d);
            a += k * c;
            b += k * d;
        } else if m_num * qq > pp * m_den {
            // mediant > hi: largest k with (c+ka)/(d+kb) > hi
            let k = (qq * c - pp * d - 1) / (pp * b - qq * a);
            c += k * a;
            d += k * b;
        } else {
            return Ok(Fraction::new(m_num as i64, m_den as i64).expect("positive denominator"));
        }
    }
}

/// Reference implementation of [`min_fraction_in_interval`]: scans
/// denominators `f = 1, 2, ...` and takes `e = phi_lo(f)`.
pub fn min_fraction_by_scan(lo: Fraction, hi: Fraction) -> Result<Fraction, FractionError> {
    if lo >= hi || lo.num < 0 {
        return Err(FractionError::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let mut f = 1;
    loop {
        let e = phi(lo, f);
        if Fraction::new(e, f)? <= hi {
            return Ok(Fraction { num: e, den: f });
        }
        f += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(fr(23, 8), 1), 3);
        assert_eq!(phi(fr(3, 2), 2), 4);
        assert_eq!(phi(fr(1, 4), 4), 2);
        assert_eq!(phi(fr(49, 20), 1), 3);
        assert_eq!(phi(fr(5, 7), 0), 1);
    }

    #[test]
    fn min_fraction_examples() {
        assert_eq!(min_fraction_in_interval(fr(7, 3), fr(23, 8)), Ok(fr(5, 2)));
        assert_eq!(min_fraction_in_interval(fr(20, 49), fr(7, 16)), Ok(fr(3, 7)));
        assert_eq!(min_fraction_in_interval(fr(1, 2), fr(1, 1)), Ok(fr(1, 1)));
        assert_eq!(min_fraction_in_interval(fr(4, 1), fr(9, 2)), Ok(fr(9, 2)));
        assert_eq!(min_fraction_in_interval(fr(4, 5), fr(7, 8)), Ok(fr(5, 6)));
        assert_eq!(min_fraction_in_interval(fr(0, 1), fr(1, 100)), Ok(fr(1, 100)));
        assert_eq!(min_fraction_in_interval(fr(1000, 1), fr(1001, 1)), Ok(fr(1001, 1)));
        assert_eq!(min_fraction_in_interval(fr(1000, 1), fr(2001, 2)), Ok(fr(2001, 2)));
        assert!(matches!(
            min_fraction_in_interval(fr(1, 2), fr(1, 2)),
            Err(FractionError::EmptyInterval { .. })
        ));
        assert!(min_fraction_in_interval(fr(3, 4), fr(1, 2)).is_err());
    }

    #[test]
    fn fractions_reduce() {
        assert_eq!(fr(6, 4), fr(3, 2));
        assert_eq!(fr(0, 5).den(), 1);
        assert!(fr(2, 3) < fr(3, 4));
        assert_eq!(Fraction::new(1, 0), Err(FractionError::ZeroDenominator));
    }

    proptest! {
        #[test]
        fn phi_is_least_strict_majorant(num in 0i64..=50, den in 1i64..=50, t in 1i64..=50) {
            let r = fr(num, den);
            let m = phi(r, t);
            // m / t > r and (m - 1) / t <= r
            prop_assert!(m as i128 * r.den() as i128 > r.num() as i128 * t as i128);
            prop_assert!((m - 1) as i128 * r.den() as i128 <= r.num() as i128 * t as i128);
            let brute = (0..).find(|&k| k * r.den() > r.num() * t).unwrap();
            prop_assert_eq!(m, brute);
        }

        #[test]
        fn stern_brocot_matches_scan(
            n1 in 0i64..=60, d1 in 1i64..=60, n2 in 1i64..=60, d2 in 1i64..=60,
        ) {
            let (lo, hi) = (fr(n1, d1), fr(n2, d2));
            prop_assume!(lo < hi);
            let fast = min_fraction_in_interval(lo, hi).unwrap();
            let slow = min_fraction_by_scan(lo, hi).unwrap();
            prop_assert_eq!(fast, slow);
            prop_assert!(lo < fast && fast <= hi);
            prop_assert_eq!(fast.num(), phi(lo, fast.den()));
            for f in 1..fast.den() {
                let e = phi(lo, f);
                prop_assert!(fr(e, f) > hi);
            }
        }
    }
}
