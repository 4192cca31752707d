use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use super::EquivariantClass;
use crate::exactmath::linalg::Matrix;
use crate::exactmath::{monomials_of_degree, Monomial, Polynomial, Rational};
use crate::skeleton::Skeleton;

struct System {
    mons: Vec<Monomial>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl System {
    /// Edge divisibility in degree `m`: each `f(q) − f(p)` vanishes on `α(pq) = 0`.
    fn new(skel: &Skeleton, m: u32) -> Self {
        let n = skel.dim();
        let mons = monomials_of_degree(n, m);
        let mm = mons.len();
        let cols = skel.num_vertices() * mm;
        let mut rows = Vec::new();
        for (p, q) in skel.edges() {
            let alpha = skel.alpha_of(p, q);
            let mut by_target: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
            for (i, mon) in mons.iter().enumerate() {
                let img = Polynomial::from_terms(n, [(mon.clone(), Rational::from_integer(1.into()))]).restrict_to_hyperplane(alpha);
                for (t, c) in img.terms() {
                    by_target.entry(t.clone()).or_insert_with(|| vec![Rational::zero(); mm])[i] = c.clone();
                }
            }
            for coeffs in by_target.into_values() {
                let mut row = vec![Rational::zero(); cols];
                for (i, c) in coeffs.into_iter().enumerate() {
                    if !c.is_zero() {
                        row[q * mm + i] = c.clone();
                        row[p * mm + i] = -c;
                    }
                }
                rows.push(row);
            }
        }
        let rhs = vec![Rational::zero(); rows.len()];
        System { mons, rows, rhs }
    }

    fn fix(&mut self, p: usize, value: &Polynomial) {
        let mm = self.mons.len();
        let cols = self.rows.first().map_or(0, Vec::len).max(mm * (p + 1));
        for (i, mon) in self.mons.iter().enumerate() {
            let mut row = vec![Rational::zero(); cols];
            row[p * mm + i] = Rational::from_integer(1.into());
            self.rows.push(row);
            self.rhs.push(value.coefficient(mon));
        }
    }

    fn matrix(&self, cols: usize) -> Matrix {
        if self.rows.is_empty() {
            return Matrix::zeros(0, cols);
        }
        Matrix::from_rows(&self.rows)
    }

    fn to_class(&self, n_vertices: usize, nvars: usize, m: u32, x: &[Rational]) -> EquivariantClass {
        let mm = self.mons.len();
        let values = (0..n_vertices)
            .map(|p| Polynomial::from_terms(nvars, self.mons.iter().enumerate().map(|(i, mon)| (mon.clone(), x[p * mm + i].clone()))))
            .collect();
        EquivariantClass::new_unchecked(m, values)
    }
}

/// Basis of the degree-`m` classes vanishing at the listed vertices, read off
/// the reduced row echelon form of the divisibility system.
pub fn basis_by_degree(skel: &Skeleton, m: u32, vanishing_at: &[usize]) -> Vec<EquivariantClass> {
    let mut sys = System::new(skel, m);
    for &p in vanishing_at {
        sys.fix(p, &Polynomial::zero(skel.dim()));
    }
    let cols = skel.num_vertices() * sys.mons.len();
    sys.matrix(cols)
        .nullspace()
        .iter()
        .map(|v| sys.to_class(skel.num_vertices(), skel.dim(), m, v))
        .collect()
}

/// Some degree-`m` class with the prescribed values, if one exists.
pub fn solve_class(skel: &Skeleton, m: u32, fixed: &[(usize, Polynomial)]) -> Option<EquivariantClass> {
    let mut sys = System::new(skel, m);
    for (p, v) in fixed {
        sys.fix(*p, v);
    }
    let cols = skel.num_vertices() * sys.mons.len();
    let x = sys.matrix(cols).solve(&sys.rhs)?;
    Some(sys.to_class(skel.num_vertices(), skel.dim(), m, &x))
}

/// Flattened coefficient vector of a class in the degree's monomial basis.
pub fn class_coordinates(c: &EquivariantClass, nvars: usize) -> Vec<Rational> {
    let mons = monomials_of_degree(nvars, c.degree());
    c.values().iter().flat_map(|v| mons.iter().map(move |m| v.coefficient(m))).collect()
}

/// Minimal homogeneous generators of `H` as an `S`-module, degree by degree up to `max_degree`.
pub fn module_generators(skel: &Skeleton, max_degree: u32) -> Vec<EquivariantClass> {
    let n = skel.dim();
    let mut gens: Vec<EquivariantClass> = Vec::new();
    for m in 0..=max_degree {
        let mut span: Vec<Vec<Rational>> = Vec::new();
        for g in &gens {
            for mon in monomials_of_degree(n, m - g.degree()) {
                let f = Polynomial::from_terms(n, [(mon, Rational::from_integer(1.into()))]);
                span.push(class_coordinates(&g.mul_poly(&f), n));
            }
        }
        let mut rank = if span.is_empty() { 0 } else { Matrix::from_rows(&span).rank() };
        for b in basis_by_degree(skel, m, &[]) {
            span.push(class_coordinates(&b, n));
            let r = Matrix::from_rows(&span).rank();
            if r > rank {
                rank = r;
                gens.push(b);
            } else {
                span.pop();
            }
        }
    }
    gens
}
