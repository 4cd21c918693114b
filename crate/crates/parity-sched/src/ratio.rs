//! Exact non-negative rationals used for completion-time ratios and bounds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatioError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("ratio arithmetic overflowed 128-bit integers")]
    Overflow,
    #[error("invalid ratio literal `{0}`")]
    Parse(String),
}

/// A non-negative rational held as a reduced `num/den` pair of `u128`.
///
/// Values are normalized on construction: `den > 0` and `gcd(num, den) == 1`.
/// Ordering and equality are exact. Comparison cross-multiplies in `u128`
/// and falls back to a continued-fraction walk when the products would
/// overflow, so it never loses precision and never panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u128,
    den: u128,
}

impl Ratio {
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn new(num: impl Into<u128>, den: impl Into<u128>) -> Result<Self, RatioError> {
        let (num, den) = (num.into(), den.into());
        if den == 0 {
            return Err(RatioError::ZeroDenominator);
        }
        let g = gcd(num, den);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    /// Nearest `f64`; presentation only, never used for comparisons.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn checked_add(self, rhs: Ratio) -> Result<Ratio, RatioError> {
        let left = self
            .num
            .checked_mul(rhs.den)
            .ok_or(RatioError::Overflow)?;
        let right = rhs
            .num
            .checked_mul(self.den)
            .ok_or(RatioError::Overflow)?;
        let num = left.checked_add(right).ok_or(RatioError::Overflow)?;
        let den = self
            .den
            .checked_mul(rhs.den)
            .ok_or(RatioError::Overflow)?;
        Ratio::new(num, den)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    // gcd(0, d) = d, so 0/d normalizes to 0/1.
    if a == 0 {
        1
    } else {
        a
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (
            self.num.checked_mul(other.den),
            other.num.checked_mul(self.den),
        ) {
            (Some(l), Some(r)) => l.cmp(&r),
            _ => cmp_continued_fraction((self.num, self.den), (other.num, other.den)),
        }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact comparison of `a.0/a.1` and `b.0/b.1` without wide products.
///
/// Compares integer parts, then recurses on the reciprocals of the
/// fractional parts. Denominators strictly shrink, so this terminates.
fn cmp_continued_fraction(mut a: (u128, u128), mut b: (u128, u128)) -> Ordering {
    loop {
        let (qa, ra) = (a.0 / a.1, a.0 % a.1);
        let (qb, rb) = (b.0 / b.1, b.0 % b.1);
        match qa.cmp(&qb) {
            Ordering::Equal => {}
            unequal => return unequal,
        }
        match (ra, rb) {
            (0, 0) => return Ordering::Equal,
            (0, _) => return Ordering::Less,
            (_, 0) => return Ordering::Greater,
            _ => {
                // ra/a1 < rb/b1  iff  b1/rb < a1/ra
                let next_a = (b.1, rb);
                let next_b = (a.1, ra);
                a = next_a;
                b = next_b;
            }
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = RatioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RatioError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let num: u128 = n.trim().parse().map_err(|_| bad())?;
                let den: u128 = d.trim().parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(RatioError::ZeroDenominator);
                }
                Ratio::new(num, den)
            }
            None => {
                let num: u128 = s.trim().parse().map_err(|_| bad())?;
                Ratio::new(num, 1u8)
            }
        }
    }
}
