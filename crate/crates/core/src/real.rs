//! Scalar abstraction shared by the f64 and double-double code paths.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::dd::Dd;

pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
{
    /// Unit roundoff of the representation.
    const EPSILON: f64;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// A unit vector at angle `t`, exact to the working precision.
    fn unit(t: f64) -> (Self, Self) {
        let (s, c) = t.sin_cos();
        let (c, s) = (Self::from_f64(c), Self::from_f64(s));
        let n = (c * c + s * s).sqrt();
        (c / n, s / n)
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON / 2.0;

    #[inline]
    fn from_f64(x: f64) -> f64 {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    #[inline]
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn unit(t: f64) -> (f64, f64) {
        let (s, c) = t.sin_cos();
        (c, s)
    }
}

impl Real for Dd {
    const EPSILON: f64 = Dd::EPSILON;

    #[inline]
    fn from_f64(x: f64) -> Dd {
        Dd::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    #[inline]
    fn sqrt(self) -> Dd {
        Dd::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Dd {
        Dd::abs(self)
    }
    fn is_finite(self) -> bool {
        Dd::is_finite(self)
    }
}
