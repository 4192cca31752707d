//! Exact computations on GKM-type 1-skeleta: equivariant cohomology,
//! Morse packages, cross sections and Kirwan maps.
//!
//! Everything is computed over the rationals with no floating point.
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod cohomology;
pub mod crosssection;
pub mod exactmath;
pub mod instances;
pub mod morse;
pub mod skeleton;

pub use exactmath::{Polynomial, Rational, Vector};
