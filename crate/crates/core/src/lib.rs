//! Exact computation of the local pro-isomorphic zeta functions of the
//! groups `D*_{x^2}` and `D*_{x^3}`, with independent brute-force checks for
//! every step.

pub mod arith;
pub mod cones;
pub mod count;
pub mod error;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod theta;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};

use num_rational::BigRational;

/// Default exact coefficient field.
pub type Rational = BigRational;
pub type Poly = arith::Polynomial<Rational>;
pub type RationalFunction = arith::FactoredRational<Rational>;
pub type Series = arith::TruncatedSeries<Rational>;
pub type QMatrix = linalg::Matrix<Rational>;

/// Integer as a [`Rational`].
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n / d` as a [`Rational`].
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
pub type LieLattice = lie::LieLattice<Rational>;
