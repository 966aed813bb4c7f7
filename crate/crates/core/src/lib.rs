//! Exact symbolic kernel for the Adler-Moser polynomials and the polynomial
//! tau functions of the KdV hierarchy.
//!
//! Everything here is computed over arbitrary-precision rationals; there is
//! no floating point and no tolerance anywhere. The crate is organized in
//! layers:
//!
//! - [`ring`]: rationals, multivariate polynomials over a graded variable
//!   alphabet, and rational functions;
//! - [`series`]: truncated formal power series in the spectral variable `z`
//!   with polynomial coefficients, including hyperbolic composition;
//! - [`wronskian`]: the psi/phi/Schur function families and (bordered)
//!   Wronskian determinants over the polynomial ring;
//! - [`kdv`]: the Adler-Moser recursion, the tanh change of variables, the
//!   tau functions, the Miwa shift and `u = -2 (log tau)''`;
//! - [`verify`]: exact pass/fail checks of the structural, flow, shift and
//!   Schur-coincidence identities.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the command
//! line front end live in the companion `kdvtau-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod kdv;
pub mod ring;
pub mod series;
pub mod verify;
pub mod wronskian;

pub use ring::{GradedDegreeError, Monomial, Polynomial, Rational, RationalFunction, Variable};
pub use series::{HyperKind, PowerSeries, SeriesError};
pub use verify::{FlowVariable, VerificationReport};
pub use wronskian::{BorderPosition, FamilyKind, FunctionFamily};
