use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::CrossError;
use crate::exactmath::{elementary_symmetric, Fraction, Polynomial};

/// Coefficients `g_0..g_{m−1}` in `S_ξ` with `g = Σ g_k τ^k` on an m-point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauExpansion {
    pub coeffs: Vec<Polynomial>,
}

impl TauExpansion {
    /// `Σ g_k t^k`.
    pub fn evaluate(&self, t: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(t.nvars());
        for c in self.coeffs.iter().rev() {
            out = &(&out * t) + c;
        }
        out
    }

    /// `Σ g_k x^k` with `x` the ξ-coordinate variable 0.
    pub fn as_x_polynomial(&self, nvars: usize) -> Polynomial {
        Polynomial::from_coefficients_in(nvars, 0, &self.coeffs)
    }
}

fn divide_exact(a: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    if d.is_constant() {
        return Some(a.scale(&d.constant_term().recip()));
    }
    a.divide_by_linear(d).ok().flatten()
}

/// First coefficient of the fraction-field solution that is not a polynomial.
fn witness(g: &[Polynomial], tau: &[Polynomial]) -> CrossError {
    let m = g.len();
    let nv = g[0].nvars();
    for j in 0..m {
        let mut total = Fraction::zero(nv);
        for k in 0..m {
            let others: Vec<Polynomial> = (0..m).filter(|&i| i != k).map(|i| tau[i].clone()).collect();
            let mut c = elementary_symmetric(nv, m - 1 - j, &others);
            if (m - 1 - j) % 2 == 1 {
                c = -&c;
            }
            let den: Vec<Polynomial> = others.iter().map(|t| &tau[k] - t).collect();
            total = total.add(&Fraction::over_product(&g[k] * &c, &den).expect("injective tau"));
        }
        let r = total.reduce();
        if r.to_polynomial().is_err() {
            return CrossError::NonMember { index: j, witness: format!("{r}") };
        }
    }
    CrossError::NonMember { index: 0, witness: "?".into() }
}

/// Solves the Vandermonde system through Newton divided differences; every
/// step is an exact division by some `τ_i − τ_j`, which succeeds for all
/// steps exactly when `g ∈ H(Δ, τ)`.
pub fn expand_in_tau(g: &[Polynomial], tau: &[Polynomial]) -> Result<TauExpansion, CrossError> {
    let m = g.len();
    assert_eq!(m, tau.len());
    if m == 0 {
        return Ok(TauExpansion { coeffs: Vec::new() });
    }
    for i in 0..m {
        for j in i + 1..m {
            if tau[i] == tau[j] {
                return Err(CrossError::NotInjective);
            }
        }
    }
    let nv = g[0].nvars();
    let mut dd = g.to_vec();
    for k in 1..m {
        for i in (k..m).rev() {
            let num = &dd[i] - &dd[i - 1];
            match divide_exact(&num, &(&tau[i] - &tau[i - k])) {
                Some(q) => dd[i] = q,
                None => return Err(witness(g, tau)),
            }
        }
    }
    // Newton form to monomial form in x
    let mut coeffs = vec![Polynomial::zero(nv); m];
    let mut basis = vec![Polynomial::one(nv)];
    for k in 0..m {
        for (j, b) in basis.iter().enumerate() {
            coeffs[j] = &coeffs[j] + &(b * &dd[k]);
        }
        let mut next = vec![Polynomial::zero(nv); basis.len() + 1];
        for (j, b) in basis.iter().enumerate() {
            next[j + 1] = &next[j + 1] + b;
            next[j] = &next[j] - &(b * &tau[k]);
        }
        basis = next;
    }
    Ok(TauExpansion { coeffs })
}
