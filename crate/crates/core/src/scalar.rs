//! Scalar traits the generic algebra is written against.
//!
//! Everything in this crate is exact: the coefficient rings in use are
//! `BigRational` (the default, see the aliases in the crate root), the
//! fixed-width `Ratio<i64>`/`Ratio<i128>` for quick experiments, and `BigInt`
//! for ring-only computations. Floating point types deliberately do not
//! implement [`Field`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// A commutative ring with exact equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("integer constant representable in scalar type")
    }

    fn is_unit_sign(&self) -> Option<bool> {
        if self.is_one() {
            Some(false)
        } else if (-self.clone()).is_one() {
            Some(true)
        } else {
            None
        }
    }
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Zero
        + One
        + FromPrimitive
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// An exact field.
pub trait Field: Scalar + Div<Output = Self> {
    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    /// `base^exp` for any integer exponent; `base` must be non-zero when `exp < 0`.
    fn powi(base: &Self, exp: i64) -> Self {
        let mut acc = Self::one();
        let b = if exp < 0 { base.recip() } else { base.clone() };
        for _ in 0..exp.unsigned_abs() {
            acc = acc * b.clone();
        }
        acc
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + FromPrimitive + Send + Sync + 'static,
    Ratio<T>: FromPrimitive,
{
}
