use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;

use super::{Fraction, MathError, Polynomial, Rational, Vector, XiBasis};

/// `Res_{x=∞}(f / Π(x − z_k))` for pairwise distinct roots, via
/// `Σ_k f(z_k) / Π_{j≠k} (z_k − z_j)`.
///
/// `f` is in ξ-coordinates (variable 0 is `x`), the roots are free of `x`.
/// Root differences must be nonzero constants or degree-1 polynomials.
pub fn residue_at_infinity(f: &Polynomial, roots: &[Polynomial]) -> Result<Polynomial, MathError> {
    let n = f.nvars();
    let mut total = Fraction::zero(n);
    for (k, zk) in roots.iter().enumerate() {
        let mut factors = Vec::with_capacity(roots.len());
        for (j, zj) in roots.iter().enumerate() {
            if j != k {
                let d = zk - zj;
                if d.is_zero() {
                    return Err(MathError::RepeatedRoot);
                }
                if d.total_degree() > Some(1) {
                    return Err(MathError::UnsupportedRoot);
                }
                factors.push(d);
            }
        }
        let term = Fraction::over_product(f.substitute_var(0, zk), &factors)?;
        total = total.add(&term);
    }
    total.to_polynomial()
}

/// `Res_ξ(f / Π α_i) = (Π m_i)^{-1} Res_{x=∞}`; `f` in standard coordinates,
/// result in ξ-coordinates (an element of `S_ξ`).
pub fn res_xi(f: &Polynomial, alphas: &[Vector], basis: &XiBasis) -> Result<Polynomial, MathError> {
    let mut roots = Vec::with_capacity(alphas.len());
    let mut m = Rational::one();
    for a in alphas {
        let e = basis.edge_form(a)?;
        m *= &e.m;
        roots.push(e.beta);
    }
    Ok(residue_at_infinity(&basis.to_xi(f), &roots)?.scale(&m.recip()))
}

/// All elementary symmetric polynomials `s_0..s_m` of the given values.
pub fn elementary_symmetric_all(nvars: usize, values: &[Polynomial]) -> Vec<Polynomial> {
    let mut e = vec![Polynomial::zero(nvars); values.len() + 1];
    e[0] = Polynomial::one(nvars);
    for (i, v) in values.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] = &e[j] + &(&e[j - 1] * v);
        }
    }
    e
}

/// `s_{m,k}(values)`, zero for `k > m`.
pub fn elementary_symmetric(nvars: usize, k: usize, values: &[Polynomial]) -> Polynomial {
    elementary_symmetric_all(nvars, values).get(k).cloned().unwrap_or_else(|| Polynomial::zero(nvars))
}

/// Coefficients `c_0..c_{m-1}` with `x^m ≡ Σ c_j x^j` modulo `Π (x − z_i)`,
/// so `c_j = (−1)^{m−j−1} s_{m,m−j}`.
pub fn power_reduce(nvars: usize, values: &[Polynomial]) -> Vec<Polynomial> {
    let m = values.len();
    let s = elementary_symmetric_all(nvars, values);
    (0..m)
        .map(|j| {
            let c = &s[m - j];
            if (m - j - 1).is_multiple_of(2) {
                c.clone()
            } else {
                -c
            }
        })
        .collect()
}
