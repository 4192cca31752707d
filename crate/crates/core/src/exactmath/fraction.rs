use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Zero};

use super::{MathError, Polynomial, Rational};

/// Degree-1 polynomial scaled so its first nonzero variable coefficient is 1.
/// Entries are the variable coefficients followed by the constant term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(Vec<Rational>);

impl LinearForm {
    /// Splits `p = k * form`. Fails unless `p` has total degree exactly 1.
    pub fn normalize(p: &Polynomial) -> Result<(LinearForm, Rational), MathError> {
        if p.total_degree() != Some(1) {
            return Err(MathError::NotLinear);
        }
        let n = p.nvars();
        let mut coeffs = p.linear_part().0;
        coeffs.push(p.constant_term());
        let k = coeffs[..n].iter().find(|c| !c.is_zero()).cloned().unwrap();
        let inv = k.recip();
        Ok((LinearForm(coeffs.iter().map(|c| c * &inv).collect()), k))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.0.len() - 1;
        let mut p = Polynomial::constant(n, self.0[n].clone());
        for i in 0..n {
            p = &p + &Polynomial::var(n, i).scale(&self.0[i]);
        }
        p
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Rational function `num / Π form^k` whose denominator splits into linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    num: Polynomial,
    den: BTreeMap<LinearForm, u32>,
}

impl Fraction {
    pub fn zero(nvars: usize) -> Self {
        Fraction::from_poly(Polynomial::zero(nvars))
    }

    pub fn from_poly(num: Polynomial) -> Self {
        Fraction { num, den: BTreeMap::new() }
    }

    /// `num / Π factors`; each factor is a nonzero constant or has degree 1.
    pub fn over_product(num: Polynomial, factors: &[Polynomial]) -> Result<Self, MathError> {
        let mut num = num;
        let mut den = BTreeMap::new();
        for f in factors {
            if f.is_zero() {
                return Err(MathError::RepeatedRoot);
            }
            if f.is_constant() {
                num = num.scale(&f.constant_term().recip());
                continue;
            }
            let (form, k) = LinearForm::normalize(f)?;
            num = num.scale(&k.recip());
            *den.entry(form).or_insert(0) += 1;
        }
        Ok(Fraction { num, den })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.den.iter().map(|(f, &k)| (f, k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn lift(&self, den: &BTreeMap<LinearForm, u32>) -> Polynomial {
        let mut num = self.num.clone();
        for (form, &k) in den {
            let have = self.den.get(form).copied().unwrap_or(0);
            if k > have {
                num = &num * &form.to_polynomial().pow(k - have);
            }
        }
        num
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        let mut den = self.den.clone();
        for (f, &k) in &other.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let num = &self.lift(&den) + &other.lift(&den);
        Fraction { num, den }
    }

    pub fn neg(&self) -> Fraction {
        Fraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        let mut den = self.den.clone();
        for (f, &k) in &other.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        Fraction { num: &self.num * &other.num, den }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Fraction {
        Fraction { num: &self.num * p, den: self.den.clone() }
    }

    pub fn scale(&self, s: &Rational) -> Fraction {
        Fraction { num: self.num.scale(s), den: self.den.clone() }
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&self) -> Fraction {
        if self.num.is_zero() {
            return Fraction::zero(self.num.nvars());
        }
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        for (form, &k) in &self.den {
            let lp = form.to_polynomial();
            let mut left = k;
            while left > 0 {
                match num.divide_by_degree1(&lp) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(form.clone(), left);
            }
        }
        Fraction { num, den }
    }

    /// The polynomial this fraction equals, or the first factor that refuses to cancel.
    pub fn to_polynomial(&self) -> Result<Polynomial, MathError> {
        let r = self.reduce();
        match r.den.keys().next() {
            None => Ok(r.num),
            Some(f) => Err(MathError::NotPolynomial(format!("{f}"))),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.to_polynomial().is_ok()
    }

    /// Exact equality of rational functions.
    pub fn equals(&self, other: &Fraction) -> bool {
        self.sub(other).reduce().is_zero()
    }

    /// Value at a point avoiding the poles.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        let mut d = Rational::one();
        let mut ext = point.to_vec();
        ext.push(Rational::one());
        for (form, &k) in &self.den {
            let v: Rational = form.0.iter().zip(&ext).map(|(a, b)| a * b).sum();
            if v.is_zero() {
                return None;
            }
            for _ in 0..k {
                d *= &v;
            }
        }
        Some(self.num.evaluate(point) / d)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        for (form, k) in &self.den {
            write!(f, " / ({form})^{k}")?;
        }
        Ok(())
    }
}
