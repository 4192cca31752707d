//! Exact rational arithmetic, polynomials, ξ-adapted coordinates and residues.

mod fraction;
pub mod linalg;
mod poly;
mod rational;
mod residue;
mod xibasis;

pub use fraction::{Fraction, LinearForm};
pub use poly::{monomials_of_degree, Monomial, Polynomial};
pub use rational::{int, parse_rational, rat, Rational, Vector};
pub use residue::{elementary_symmetric, power_reduce, res_xi, residue_at_infinity};
pub use xibasis::{rho_project, EdgeForm, XiBasis};

use alloc::string::String;

/// Failures of the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MathError {
    #[error("linear form is zero or not homogeneous of degree 1")]
    NotLinear,
    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),
    #[error("rational function is not a polynomial: leftover factor {0}")]
    NotPolynomial(String),
    #[error("roots are not pairwise distinct")]
    RepeatedRoot,
    #[error("root differences must be constants or linear forms")]
    UnsupportedRoot,
    #[error("pairing with xi vanishes")]
    ZeroPairing,
    #[error("xi is the zero covector")]
    ZeroXi,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
}
