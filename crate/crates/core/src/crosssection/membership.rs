use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::section::{cross_integral, kirwan_map};
use super::{CrossSectionClass, CrossSectionData};
use crate::cohomology::{basis_by_degree, edge_class, vertex_class, EquivariantClass, IntegralData};
use crate::exactmath::Polynomial;
use crate::morse::MorseData;
use crate::skeleton::Skeleton;

/// Outcome of a membership test; the witness names the generator index,
/// the power of `x`, and the factor that fails to cancel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<(usize, u32, String)>,
}

fn pairs_to_polynomial(
    skel: &Skeleton,
    morse: &MorseData,
    data: &IntegralData,
    g: &CrossSectionClass,
    cs: &CrossSectionData,
    h: &EquivariantClass,
) -> Result<(), String> {
    let k = kirwan_map(morse, h, cs);
    let prod = CrossSectionClass { values: g.values.iter().zip(&k.values).map(|(a, b)| a * b).collect() };
    cross_integral(skel, morse, data, &prod, cs).to_polynomial().map(|_| ()).map_err(|e| format!("{e}"))
}

/// Checks `∫_{Γ_c} g·K_c(x^k τ) ∈ S_ξ` for every generator τ and `k < |V_c|`.
///
/// With a generating set of `H` as an `S`-module this decides membership in
/// `H(Γ_c)`; with [`necessary_generators`] it is sound but incomplete.
pub fn hc_membership(
    skel: &Skeleton,
    morse: &MorseData,
    data: &IntegralData,
    g: &CrossSectionClass,
    cs: &CrossSectionData,
    generators: &[EquivariantClass],
) -> Membership {
    let x = morse.basis().x_standard();
    for (i, tau) in generators.iter().enumerate() {
        let mut h = tau.clone();
        for k in 0..cs.len().max(1) as u32 {
            if let Err(w) = pairs_to_polynomial(skel, morse, data, g, cs, &h) {
                return Membership { member: false, witness: Some((i, k, w)) };
            }
            h = h.mul_poly(&x);
        }
    }
    Membership { member: true, witness: None }
}

/// Constants, vertex Thom classes and edge Thom classes.
pub fn necessary_generators(skel: &Skeleton) -> Vec<EquivariantClass> {
    let mut out = Vec::new();
    out.push(EquivariantClass::constant(skel.num_vertices(), Polynomial::one(skel.dim())));
    for p in 0..skel.num_vertices() {
        out.push(vertex_class(skel, p));
    }
    for (p, q) in skel.edges() {
        out.push(edge_class(skel, p, q));
    }
    out
}

/// Exhaustive-sample oracle: pairs `g` against every basis element of
/// `H^m` for `m ≤ max_degree`.
pub fn membership_oracle(
    skel: &Skeleton,
    morse: &MorseData,
    data: &IntegralData,
    g: &CrossSectionClass,
    cs: &CrossSectionData,
    max_degree: u32,
) -> Membership {
    for m in 0..=max_degree {
        for h in basis_by_degree(skel, m, &[]) {
            if let Err(w) = pairs_to_polynomial(skel, morse, data, g, cs, &h) {
                return Membership { member: false, witness: Some((m as usize, 0, w)) };
            }
        }
    }
    Membership { member: true, witness: None }
}
