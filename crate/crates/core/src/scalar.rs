//! Scalar tower used by every jet: exact rationals or doubles.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::integer::Roots;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Coefficient field of a [`Jet`](crate::jets::Jet).
///
/// Implemented for [`Rational`] (exact) and `f64`. All normal-form identities
/// hold with equality over the rationals; the `f64` instance is used for the
/// numeric oracles and for germs whose normalization needs irrational square
/// roots.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// `true` for the exact tower.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn to_f64(&self) -> f64;

    fn mul_ref(&self, other: &Self) -> Self;

    fn add_assign_ref(&mut self, other: &Self);

    /// Square root if it exists in the tower. Rationals only return perfect squares.
    fn sqrt_exact(&self) -> Option<Self>;

    /// Zero test used by structural predicates (frontality, divisibility, class detection).
    ///
    /// Exact for rationals; for doubles anything below `1e-12` in magnitude counts as zero.
    fn is_negligible(&self) -> bool;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn is_positive(&self) -> bool {
        !self.is_negligible() && *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        !self.is_negligible() && *self < Self::zero()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = Roots::sqrt(n);
        let rd = Roots::sqrt(d);
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Rational::new(rn, rd))
        } else {
            None
        }
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += *other;
    }

    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn is_negligible(&self) -> bool {
        f64::abs(*self) < 1e-12
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

/// Parse `num/den` style integers (arbitrary size) into a rational.
pub fn rational_from_parts(num: &str, den: &str) -> Option<Rational> {
    let n: BigInt = num.trim().parse().ok()?;
    let d: BigInt = den.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_for_squares() {
        assert_eq!(
            Rational::from_ratio(9, 4).sqrt_exact(),
            Some(Rational::from_ratio(3, 2))
        );
        assert_eq!(Rational::from_i64(2).sqrt_exact(), None);
        assert_eq!(Rational::from_i64(-4).sqrt_exact(), None);
        assert_eq!(4.0f64.sqrt_exact(), Some(2.0));
    }

    #[test]
    fn negligible_thresholds() {
        assert!(1e-14f64.is_negligible());
        assert!(!1e-9f64.is_negligible());
        assert!(!Rational::from_ratio(1, 1_000_000_000_000_000).is_negligible());
    }
}
