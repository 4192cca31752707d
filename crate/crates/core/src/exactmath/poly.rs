use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use num_traits::{One, Signed, Zero};

use super::{MathError, Rational, Vector};

/// Exponent vector; ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `nvars` variables, ascending.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, 0, d, &mut vec![0; nvars], &mut out);
    out.sort();
    out
}

/// Polynomial with rational coefficients in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        Self::from_terms(nvars, [(m, Rational::one())])
    }

    /// The degree-1 element `Σ v_i X_i` of the symmetric algebra.
    pub fn linear(v: &Vector) -> Self {
        let n = v.dim();
        let mut p = Self::zero(n);
        for (i, c) in v.0.iter().enumerate() {
            let mut m = Monomial::one(n);
            m.0[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree if every term has the same degree; the zero polynomial is
    /// homogeneous of every degree and reports `Some(None)`.
    pub fn homogeneous_degree(&self) -> Option<Option<u32>> {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => Some(None),
            Some(d) => it.all(|e| e == d).then_some(Some(d)),
        }
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        matches!(self.homogeneous_degree(), Some(None)) || self.homogeneous_degree() == Some(Some(d))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients of the degree-1 part as a vector (ignores other terms).
    pub fn linear_part(&self) -> Vector {
        let mut v = Vector::zeros(self.nvars);
        for (m, c) in &self.terms {
            if m.degree() == 1 {
                let i = m.0.iter().position(|&e| e == 1).unwrap();
                v.0[i] = c.clone();
            }
        }
        v
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Replaces every variable `X_i` by `images[i]`; all images share one arity.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let out_n = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(p.nvars)]).collect();
        let mut out = Polynomial::zero(out_n);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(out_n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Replaces the single variable `X_var` by `image`.
    pub fn substitute_var(&self, var: usize, image: &Polynomial) -> Polynomial {
        let coeffs = self.coefficients_in(var);
        let mut out = Polynomial::zero(self.nvars);
        for c in coeffs.iter().rev() {
            out = &(&out * image) + c;
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// `[c_0, c_1, ...]` with `self = Σ c_k X_var^k` and each `c_k` free of `X_var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(self.nvars); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    /// `Σ c_k X_var^k`.
    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2.0[var] += k as u32;
                out.add_term(m2, a.clone());
            }
        }
        out
    }

    /// Exact quotient by a polynomial of total degree 1 (constant term allowed).
    /// Returns `None` when the remainder is nonzero.
    pub(crate) fn divide_by_degree1(&self, ell: &Polynomial) -> Option<Polynomial> {
        let pivot = (0..ell.nvars).find(|&i| ell.degree_in(i) > 0)?;
        let mut pm = Monomial::one(ell.nvars);
        pm.0[pivot] = 1;
        let a = ell.coefficient(&pm);
        let mut rest = ell.clone();
        rest.terms.remove(&pm);
        let inv_a = a.recip();
        let c = self.coefficients_in(pivot);
        let k = c.len() - 1;
        if k == 0 {
            return self.is_zero().then(|| Polynomial::zero(self.nvars));
        }
        let mut q = vec![Polynomial::zero(self.nvars); k];
        q[k - 1] = c[k].scale(&inv_a);
        for j in (1..k).rev() {
            q[j - 1] = (&c[j] - &(&rest * &q[j])).scale(&inv_a);
        }
        let rem = &c[0] - &(&rest * &q[0]);
        rem.is_zero().then(|| Polynomial::from_coefficients_in(self.nvars, pivot, &q))
    }

    /// Exact division by a nonzero homogeneous linear form.
    pub fn divide_by_linear(&self, ell: &Polynomial) -> Result<Option<Polynomial>, MathError> {
        if ell.homogeneous_degree() != Some(Some(1)) {
            return Err(MathError::NotLinear);
        }
        Ok(self.divide_by_degree1(ell))
    }

    /// Image in the quotient by `ell`: eliminates the pivot variable of `ell`.
    pub fn restrict_to_hyperplane(&self, ell: &Vector) -> Polynomial {
        let pivot = ell.0.iter().position(|c| !c.is_zero()).expect("nonzero form");
        let inv = ell.0[pivot].recip();
        let mut image = Polynomial::zero(self.nvars);
        for (i, c) in ell.0.iter().enumerate() {
            if i != pivot && !c.is_zero() {
                image = &image - &Polynomial::var(self.nvars, i).scale(&(c * &inv));
            }
        }
        self.substitute_var(pivot, &image)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                parts.push(alloc::format!("{a}"));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(alloc::format!("X{i}")),
                    _ => parts.push(alloc::format!("X{i}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity");
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { (&self).$f(&rhs) }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial { (&self).$f(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);
