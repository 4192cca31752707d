//! Equivariant classes, Thom classes, integration, the degree-wise oracle
//! and generating families.

mod basis;
mod class;
mod family;
mod integral;
mod package;
mod thom;

pub use basis::{basis_by_degree, class_coordinates, module_generators, solve_class};
pub use class::{is_class, EquivariantClass};
pub use family::{
    generating_family, planar_codim2_class, strengthen, weak_class_oracle, weak_family, FamilyFailure, FailureStage,
    Flavor, GeneratingFamily,
};
pub use integral::{integral, IntegralData};
pub use package::{morse_package, rank_check, MorsePackageVerdict, RankCheck, SliceVerdict};
pub use thom::{edge_class, thom_class, thom_multiply, vertex_class, ThomClass};

use alloc::string::String;
use alloc::vec::Vec;

use crate::exactmath::Rational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("value at {0} is not homogeneous of degree {1}")]
    Inhomogeneous(String, u32),
    #[error("alpha({0}{1}) does not divide the difference of values")]
    NotDivisible(String, String),
    #[error("wrong number of values: expected {0}, found {1}")]
    Arity(usize, usize),
    #[error("subskeleton is not normally straight: loop {cycle:?} has normal number {number}")]
    NotNormallyStraight { cycle: Vec<String>, number: Rational },
    #[error("skeleton is not straight: loop {cycle:?} has number {number}")]
    NotStraight { cycle: Vec<String>, number: Rational },
    #[error("integral is not a polynomial: factor {0} does not cancel")]
    NotPolynomial(String),
    #[error("{0}")]
    Construction(String),
}
