//! Exact algebra over Laurent monomials in a fixed variable registry.

mod monomial;
mod polynomial;
mod rational;
mod series;

pub use monomial::{Bindings, Monomial, Var, NVARS};
pub use polynomial::Polynomial;
pub use rational::{FactoredRational, Factor};
pub use series::{Grading, TruncatedSeries};
