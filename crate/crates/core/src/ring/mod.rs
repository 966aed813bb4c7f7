//! The exact coefficient ring: arbitrary-precision rationals, multivariate
//! polynomials over the graded time alphabet, and rational functions.

mod polynomial;
mod ratfun;
mod rational;
mod variable;

pub use polynomial::{GradedDegreeError, Monomial, Polynomial};
pub use ratfun::RationalFunction;
pub use rational::{ParseRationalError, Rational};
pub use variable::Variable;
