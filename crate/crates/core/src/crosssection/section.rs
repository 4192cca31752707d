use alloc::format;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::One;

use super::CrossError;
use crate::cohomology::{EquivariantClass, IntegralData};
use crate::exactmath::{res_xi, rho_project, EdgeForm, Fraction, MathError, Polynomial, Rational};
use crate::morse::MorseData;
use crate::skeleton::Skeleton;

/// The edges crossing a regular level, oriented upward, with their edge forms.
#[derive(Clone, Debug)]
pub struct CrossSectionData {
    pub level: Rational,
    /// `(i(e), t(e))` with `φ(i(e)) < c < φ(t(e))`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub forms: Vec<EdgeForm>,
    /// Vertex just below the level; `Δ_c^− = E^q_+`.
    pub below: Option<usize>,
    /// Vertex just above the level; `Δ_c^+` is its incoming edges.
    pub above: Option<usize>,
}

/// A map `V_c → S_ξ`, values in ξ-coordinates, aligned with `CrossSectionData::edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSectionClass {
    pub values: Vec<Polynomial>,
}

impl CrossSectionData {
    pub fn position(&self, e: (usize, usize)) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Positions of `Δ_c^−` in `edges`.
    pub fn delta_minus(&self) -> Vec<usize> {
        match self.below {
            Some(q) => (0..self.edges.len()).filter(|&i| self.edges[i].0 == q).collect(),
            None => Vec::new(),
        }
    }

    /// Positions of `Δ_c^+` in `edges`.
    pub fn delta_plus(&self) -> Vec<usize> {
        match self.above {
            Some(p) => (0..self.edges.len()).filter(|&i| self.edges[i].1 == p).collect(),
            None => Vec::new(),
        }
    }
}

/// The N+1 regular levels: below the minimum, midpoints, above the maximum.
pub fn canonical_levels(morse: &MorseData) -> Vec<Rational> {
    let order = morse.order();
    let two = Rational::from_integer(BigInt::from(2));
    let mut out = Vec::with_capacity(order.len() + 1);
    out.push(morse.phi(order[0]) - Rational::one());
    for w in order.windows(2) {
        out.push((morse.phi(w[0]) + morse.phi(w[1])) / &two);
    }
    out.push(morse.phi(*order.last().unwrap()) + Rational::one());
    out
}

/// Canonical level just above `p`.
pub fn level_above(morse: &MorseData, p: usize) -> Rational {
    canonical_levels(morse)[morse.rank(p) + 1].clone()
}

/// Canonical level just below `p`.
pub fn level_below(morse: &MorseData, p: usize) -> Rational {
    canonical_levels(morse)[morse.rank(p)].clone()
}

pub fn cross_section(skel: &Skeleton, morse: &MorseData, c: &Rational) -> Result<CrossSectionData, CrossError> {
    let n = skel.num_vertices();
    if let Some(p) = (0..n).find(|&p| morse.phi(p) == c) {
        return Err(CrossError::Critical { level: format!("{c}"), vertex: skel.id(p).into() });
    }
    let mut edges = Vec::new();
    let mut forms = Vec::new();
    for (p, q) in skel.oriented_edges() {
        if morse.phi(p) < c && c < morse.phi(q) {
            edges.push((p, q));
            forms.push(morse.basis().edge_form(skel.alpha_of(p, q)).expect("polarizing"));
        }
    }
    let below = morse.order().iter().rev().copied().find(|&p| morse.phi(p) < c);
    let above = morse.order().iter().copied().find(|&p| morse.phi(p) > c);
    Ok(CrossSectionData { level: c.clone(), edges, forms, below, above })
}

/// `K_c(f)(e) = ρ_e(f(i(e)))`.
pub fn kirwan_map(morse: &MorseData, f: &EquivariantClass, cs: &CrossSectionData) -> CrossSectionClass {
    let basis = morse.basis();
    let values = cs
        .edges
        .iter()
        .zip(&cs.forms)
        .map(|(&(i, _), form)| rho_project(&basis.to_xi(f.value(i)), &form.beta))
        .collect();
    CrossSectionClass { values }
}

/// `Σ_{e∈V_c} g(e) / (c_{i(e)} m_e Π_{e'≠e} ρ_e(α(e')))`, reduced.
pub fn cross_integral(
    skel: &Skeleton,
    morse: &MorseData,
    data: &IntegralData,
    g: &CrossSectionClass,
    cs: &CrossSectionData,
) -> Fraction {
    let nv = skel.dim();
    let basis = morse.basis();
    let mut total = Fraction::zero(nv);
    for (idx, &(i, t)) in cs.edges.iter().enumerate() {
        if g.values[idx].is_zero() {
            continue;
        }
        let form = &cs.forms[idx];
        let k = skel.slot(i, t).unwrap();
        let mut den = Vec::with_capacity(skel.valency());
        den.push(Polynomial::constant(nv, &data.constants[i] * &form.m));
        for (j, a) in skel.alphas(i).iter().enumerate() {
            if j != k {
                let other = basis.edge_form(a).expect("polarizing");
                den.push((&form.beta - &other.beta).scale(&other.m));
            }
        }
        let term = Fraction::over_product(g.values[idx].clone(), &den).expect("generic covector");
        total = total.add(&term);
    }
    total.reduce()
}

/// `Σ_{φ(q)<c} (1/c_q) Res_ξ(f_q / Π_{e∈E^q} α(e))`, in ξ-coordinates.
pub fn residue_side(
    skel: &Skeleton,
    morse: &MorseData,
    data: &IntegralData,
    f: &EquivariantClass,
    c: &Rational,
) -> Result<Polynomial, MathError> {
    let mut total = Polynomial::zero(skel.dim());
    for q in 0..skel.num_vertices() {
        if morse.phi(q) < c {
            let r = res_xi(f.value(q), skel.alphas(q), morse.basis())?;
            total = &total + &r.scale(&data.constants[q].recip());
        }
    }
    Ok(total)
}
