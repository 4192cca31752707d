use alloc::vec::Vec;

use super::CohomologyError;
use crate::exactmath::{Polynomial, Rational};
use crate::skeleton::Skeleton;

/// A map from vertices to homogeneous polynomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantClass {
    degree: u32,
    values: Vec<Polynomial>,
}

impl EquivariantClass {
    /// Checks homogeneity only; use [`is_class`] for the edge condition.
    pub fn new(degree: u32, values: Vec<Polynomial>) -> Result<Self, CohomologyError> {
        for (p, v) in values.iter().enumerate() {
            if !v.is_homogeneous_of(degree) {
                return Err(CohomologyError::Inhomogeneous(alloc::format!("#{p}"), degree));
            }
        }
        Ok(EquivariantClass { degree, values })
    }

    pub(crate) fn new_unchecked(degree: u32, values: Vec<Polynomial>) -> Self {
        EquivariantClass { degree, values }
    }

    pub fn constant(n_vertices: usize, value: Polynomial) -> Self {
        let degree = value.total_degree().unwrap_or(0);
        EquivariantClass { degree, values: alloc::vec![value; n_vertices] }
    }

    pub fn zero(n_vertices: usize, nvars: usize, degree: u32) -> Self {
        EquivariantClass { degree, values: alloc::vec![Polynomial::zero(nvars); n_vertices] }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn value(&self, p: usize) -> &Polynomial {
        &self.values[p]
    }

    pub fn set_value(&mut self, p: usize, v: Polynomial) {
        self.values[p] = v;
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&p| !self.values[p].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        EquivariantClass { degree: self.degree, values }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        EquivariantClass { degree: self.degree, values }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        EquivariantClass { degree: self.degree + other.degree, values }
    }

    /// Multiplies by a homogeneous element of `S`.
    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        let d = f.total_degree().unwrap_or(0);
        EquivariantClass { degree: self.degree + d, values: self.values.iter().map(|v| v * f).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        EquivariantClass { degree: self.degree, values: self.values.iter().map(|v| v.scale(s)).collect() }
    }
}

/// Direct edge-divisibility test; names the first violating edge.
pub fn is_class(skel: &Skeleton, values: &[Polynomial]) -> Result<(), CohomologyError> {
    if values.len() != skel.num_vertices() {
        return Err(CohomologyError::Arity(skel.num_vertices(), values.len()));
    }
    let degree = values.iter().find_map(Polynomial::total_degree).unwrap_or(0);
    for (p, v) in values.iter().enumerate() {
        if !v.is_homogeneous_of(degree) {
            return Err(CohomologyError::Inhomogeneous(skel.id(p).into(), degree));
        }
    }
    for (p, q) in skel.edges() {
        let diff = &values[q] - &values[p];
        if !diff.restrict_to_hyperplane(skel.alpha_of(p, q)).is_zero() {
            return Err(CohomologyError::NotDivisible(skel.id(p).into(), skel.id(q).into()));
        }
    }
    Ok(())
}
