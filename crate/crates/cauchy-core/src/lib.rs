//! Numerical laboratory for the Cauchy two-matrix ensemble.
//!
//! The crate builds the coupled biorthogonal polynomial families attached to
//! a pair of positive weights through the kernel 1/(x+y), and everything
//! downstream of them: exact bimoment tables and their total positivity,
//! four-term recurrences, Christoffel–Darboux-type window identities, the
//! 3×3 Riemann–Hilbert characterization, Eynard–Mehta correlation kernels,
//! Monte Carlo cross-checks, the O(1)-model Pfaffian bridge, and the cubic
//! spectral curve of the associated two-species log-gas.
//!
//! Computations run in one of two channels: an exact rational channel
//! (`scalar::Rat`) for everything that is algebraic in the moment data, and a
//! multiprecision float channel (`scalar::Bf`, global precision set by
//! [`precision::set_bits`]) for quadrature, transforms, and contour checks.

pub mod bimoments;
pub mod bops;
pub mod cdrhp;
pub mod correlations;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod montecarlo;
pub mod par;
pub mod poly;
pub mod precision;
pub mod quadrature;
pub mod report;
pub mod scalar;

pub use scalar::{Bf, Cx, Rat, Scalar};
