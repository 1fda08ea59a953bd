use std::fmt::Debug;

use super::{Rational, TropValue};

/// The exact fields the kernel computes over: `Q` and `Q(t)`.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics when `rhs` is zero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_i64(n: i64) -> Self;
}

/// Fields carrying a (possibly trivial) valuation.
pub trait Valued {
    fn tval(&self) -> TropValue;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_int(n)
    }
}

/// Rationals carry the trivial valuation.
impl Valued for Rational {
    fn tval(&self) -> TropValue {
        if self.is_zero() {
            TropValue::Infinity
        } else {
            TropValue::zero()
        }
    }
}
