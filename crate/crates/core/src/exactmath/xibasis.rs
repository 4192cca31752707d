use alloc::vec::Vec;
use num_traits::Zero;

use super::linalg::Matrix;
use super::{MathError, Polynomial, Rational, Vector};

/// Basis `{x, y_1, .., y_{n-1}}` adapted to a covector ξ: `⟨ξ,x⟩ = 1`, `⟨ξ,y_k⟩ = 0`.
///
/// Polynomials in ξ-coordinates keep `n` variables; variable 0 is `x` and
/// variables `1..n` are the `y_k`. The ring `S_ξ` is the part free of `x`.
#[derive(Clone, Debug)]
pub struct XiBasis {
    xi: Vector,
    pivot: usize,
    basis: Vec<Vector>,
    inverse: Matrix,
    to_xi_images: Vec<Polynomial>,
    from_xi_images: Vec<Polynomial>,
}

impl XiBasis {
    pub fn new(xi: &Vector) -> Result<Self, MathError> {
        let n = xi.dim();
        let pivot = xi.0.iter().position(|c| !c.is_zero()).ok_or(MathError::ZeroXi)?;
        let xp = xi.0[pivot].clone();
        let mut basis = Vec::with_capacity(n);
        basis.push(Vector::unit(n, pivot).scale(&xp.recip()));
        for k in (0..n).filter(|&k| k != pivot) {
            let mut y = Vector::unit(n, k);
            y.0[pivot] = -(&xi.0[k] / &xp);
            basis.push(y);
        }
        let b = Matrix::from_columns(&basis.iter().map(|v| v.0.clone()).collect::<Vec<_>>());
        let inverse = b.inverse().expect("adapted basis is invertible");
        let to_xi_images = (0..n)
            .map(|i| {
                let col: Vec<Rational> = (0..n).map(|j| inverse.get(j, i).clone()).collect();
                Polynomial::linear(&Vector(col))
            })
            .collect();
        let from_xi_images = basis.iter().map(Polynomial::linear).collect();
        Ok(XiBasis { xi: xi.clone(), pivot, basis, inverse, to_xi_images, from_xi_images })
    }

    pub fn xi(&self) -> &Vector {
        &self.xi
    }

    pub fn dim(&self) -> usize {
        self.xi.dim()
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// `x` followed by the `y_k`, in standard coordinates.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of a vector with respect to the adapted basis.
    pub fn coords(&self, v: &Vector) -> Vector {
        Vector(self.inverse.mul_vec(&v.0))
    }

    pub fn to_xi(&self, f: &Polynomial) -> Polynomial {
        f.substitute(&self.to_xi_images)
    }

    pub fn from_xi(&self, f: &Polynomial) -> Polynomial {
        f.substitute(&self.from_xi_images)
    }

    /// The variable `x` as a polynomial in ξ-coordinates.
    pub fn x(&self) -> Polynomial {
        Polynomial::var(self.dim(), 0)
    }

    /// `x` as an element of `S` in standard coordinates.
    pub fn x_standard(&self) -> Polynomial {
        Polynomial::linear(&self.basis[0])
    }

    pub fn edge_form(&self, alpha: &Vector) -> Result<EdgeForm, MathError> {
        EdgeForm::new(alpha, self)
    }
}

/// `α(e) = m_e (x − β_e)` with `m_e = ⟨ξ, α(e)⟩ ∈ Q` and `β_e ∈ S_ξ` linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeForm {
    pub m: Rational,
    pub beta: Polynomial,
}

impl EdgeForm {
    pub fn new(alpha: &Vector, basis: &XiBasis) -> Result<Self, MathError> {
        if alpha.dim() != basis.dim() {
            return Err(MathError::Dimension { expected: basis.dim(), found: alpha.dim() });
        }
        let w = basis.coords(alpha);
        let m = w.0[0].clone();
        if m.is_zero() {
            return Err(MathError::ZeroPairing);
        }
        let mut yv = w.clone();
        yv.0[0] = Rational::zero();
        let beta = Polynomial::linear(&yv).scale(&-m.recip());
        Ok(EdgeForm { m, beta })
    }

    /// `α(e)` in ξ-coordinates.
    pub fn alpha_xi(&self) -> Polynomial {
        let n = self.beta.nvars();
        (&Polynomial::var(n, 0) - &self.beta).scale(&self.m)
    }
}

/// `ρ_e`: substitutes `x = β` in a ξ-coordinate polynomial.
pub fn rho_project(f_xi: &Polynomial, beta: &Polynomial) -> Polynomial {
    f_xi.substitute_var(0, beta)
}
