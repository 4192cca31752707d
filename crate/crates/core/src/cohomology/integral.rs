use alloc::format;
use alloc::vec::Vec;

use super::{CohomologyError, EquivariantClass};
use crate::exactmath::{Fraction, MathError, Polynomial, Rational};
use crate::morse::MorseData;
use crate::skeleton::{straightness, Skeleton, Straightness};

/// Integration constants `c_p` with `c_q = c_p |K_pq|`, normalized to 1 at `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralData {
    pub constants: Vec<Rational>,
    pub base: usize,
}

impl IntegralData {
    /// Normalizes at the φ-minimum when Morse data is given, else at vertex 0.
    pub fn new(skel: &Skeleton, morse: Option<&MorseData>) -> Result<Self, CohomologyError> {
        match straightness(skel) {
            Straightness::Straight { constants } => {
                let base = morse.map_or(0, |m| m.order()[0]);
                let s = constants[base].recip();
                Ok(IntegralData { constants: constants.iter().map(|c| c * &s).collect(), base })
            }
            Straightness::NotStraight { cycle, number } => {
                Err(CohomologyError::NotStraight { cycle: cycle.iter().map(|&p| skel.id(p).into()).collect(), number })
            }
        }
    }

    /// Integral of arbitrary vertex values as a reduced rational function.
    pub fn integrand(&self, skel: &Skeleton, values: &[Polynomial]) -> Fraction {
        let n = skel.dim();
        let mut total = Fraction::zero(n);
        for (p, v) in values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let den: Vec<Polynomial> = skel.alphas(p).iter().map(Polynomial::linear).collect();
            let term = Fraction::over_product(v.scale(&self.constants[p].recip()), &den).expect("axial vectors are nonzero");
            total = total.add(&term);
        }
        total.reduce()
    }
}

/// `Σ_p f(p) / (c_p Π_{e∈E^p} α(e))`, which is a polynomial for classes on straight skeleta.
pub fn integral(skel: &Skeleton, data: &IntegralData, f: &EquivariantClass) -> Result<Polynomial, CohomologyError> {
    data.integrand(skel, f.values()).to_polynomial().map_err(|e| match e {
        MathError::NotPolynomial(s) => CohomologyError::NotPolynomial(s),
        other => CohomologyError::Construction(format!("{other}")),
    })
}
