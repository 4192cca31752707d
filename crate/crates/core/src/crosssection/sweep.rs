use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::section::{cross_section, kirwan_map, level_above, level_below};
use super::tau::{expand_in_tau, TauExpansion};
use super::{CrossError, CrossSectionClass, CrossSectionData};
use crate::cohomology::{is_class, EquivariantClass};
use crate::exactmath::{EdgeForm, Polynomial};
use crate::morse::MorseData;
use crate::skeleton::Skeleton;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Δ_c^−`, the outgoing edges of the vertex just below.
    Minus,
    /// `Δ_c^+`, the incoming edges of the vertex just above.
    Plus,
}

/// Result of crossing one critical vertex.
#[derive(Clone, Debug)]
pub struct FlipFlop {
    pub target: CrossSectionData,
    pub class: CrossSectionClass,
    /// `F_p` (upward) or `G_p` (downward) in ξ-coordinates.
    pub transition: Polynomial,
}

fn star_forms(skel: &Skeleton, morse: &MorseData, p: usize) -> Vec<EdgeForm> {
    skel.alphas(p).iter().map(|a| morse.basis().edge_form(a).expect("polarizing")).collect()
}

type Level = BTreeMap<(usize, usize), Polynomial>;

/// Crosses `p` going up (`μ^p`) or down (`δ^p`): expands the values on the
/// source-side star of `p` in powers of τ and re-evaluates on the other side.
fn cross(skel: &Skeleton, morse: &MorseData, cur: &mut Level, p: usize, dir: Direction) -> Result<Polynomial, CrossError> {
    let forms = star_forms(skel, morse, p);
    let (source, target) = match dir {
        Direction::Up => (morse.down_slots(p), morse.up_slots(p)),
        Direction::Down => (morse.up_slots(p), morse.down_slots(p)),
    };
    let key = |k: usize| {
        let q = skel.neighbors(p)[k];
        if morse.is_up(p, k) {
            (p, q)
        } else {
            (q, p)
        }
    };
    let nv = skel.dim();
    let mut vals = Vec::with_capacity(source.len());
    let mut taus = Vec::with_capacity(source.len());
    for &k in &source {
        vals.push(cur.remove(&key(k)).unwrap_or_else(|| Polynomial::zero(nv)));
        taus.push(forms[k].beta.clone());
    }
    let exp: TauExpansion = expand_in_tau(&vals, &taus)
        .map_err(|e| CrossError::Crossing { vertex: skel.id(p).into(), source: Box::new(e) })?;
    for &k in &target {
        cur.insert(key(k), exp.evaluate(&forms[k].beta));
    }
    Ok(exp.as_x_polynomial(nv))
}

fn to_level(g: &CrossSectionClass, cs: &CrossSectionData) -> Result<Level, CrossError> {
    if g.values.len() != cs.edges.len() {
        return Err(CrossError::Arity(g.values.len(), cs.edges.len()));
    }
    Ok(cs.edges.iter().copied().zip(g.values.iter().cloned()).collect())
}

/// Restriction to `Δ_c^±` followed by [`expand_in_tau`].
pub fn restrict(g: &CrossSectionClass, cs: &CrossSectionData, side: Side) -> Result<TauExpansion, CrossError> {
    let pos = match side {
        Side::Minus => cs.delta_minus(),
        Side::Plus => cs.delta_plus(),
    };
    let vals: Vec<Polynomial> = pos.iter().map(|&i| g.values[i].clone()).collect();
    let taus: Vec<Polynomial> = pos.iter().map(|&i| cs.forms[i].beta.clone()).collect();
    expand_in_tau(&vals, &taus)
}

/// `μ^p` (up, across the vertex just above `cs`) or `δ^p` (down, across the vertex just below).
pub fn flip_flop(
    skel: &Skeleton,
    morse: &MorseData,
    g: &CrossSectionClass,
    cs: &CrossSectionData,
    dir: Direction,
) -> Result<FlipFlop, CrossError> {
    let mut cur = to_level(g, cs)?;
    let (p, level) = match dir {
        Direction::Up => {
            let p = cs.above.ok_or(CrossError::NoAdjacentVertex("upper"))?;
            (p, level_above(morse, p))
        }
        Direction::Down => {
            let p = cs.below.ok_or(CrossError::NoAdjacentVertex("lower"))?;
            (p, level_below(morse, p))
        }
    };
    let transition = cross(skel, morse, &mut cur, p, dir)?;
    let target = cross_section(skel, morse, &level)?;
    let values = target.edges.iter().map(|e| cur.get(e).cloned().unwrap_or_else(|| Polynomial::zero(skel.dim()))).collect();
    Ok(FlipFlop { target, class: CrossSectionClass { values }, transition })
}

fn sweep(
    skel: &Skeleton,
    morse: &MorseData,
    g: &CrossSectionClass,
    cs: &CrossSectionData,
    dir: Direction,
    out: &mut [Option<Polynomial>],
) -> Result<(), CrossError> {
    let mut cur = to_level(g, cs)?;
    let verts: Vec<usize> = match dir {
        Direction::Up => morse.order().iter().copied().filter(|&p| morse.phi(p) > &cs.level).collect(),
        Direction::Down => morse.order().iter().rev().copied().filter(|&p| morse.phi(p) < &cs.level).collect(),
    };
    for p in verts {
        let f = cross(skel, morse, &mut cur, p, dir)?;
        out[p] = Some(morse.basis().from_xi(&f));
    }
    Ok(())
}

/// Transition polynomials (standard coordinates) for the vertices above the
/// level, from the upward half of the preimage sweep.
pub fn lift_upward(
    skel: &Skeleton,
    morse: &MorseData,
    g: &CrossSectionClass,
    cs: &CrossSectionData,
) -> Result<Vec<Option<Polynomial>>, CrossError> {
    let mut out = alloc::vec![None; skel.num_vertices()];
    sweep(skel, morse, g, cs, Direction::Up, &mut out)?;
    Ok(out)
}

/// Sweeps down to the empty level and up to the top, assembling `p ↦ F_p`;
/// verifies the result is a class with `K_c(F) = g`.
pub fn kirwan_preimage(
    skel: &Skeleton,
    morse: &MorseData,
    g: &CrossSectionClass,
    cs: &CrossSectionData,
) -> Result<EquivariantClass, CrossError> {
    let mut out = alloc::vec![None; skel.num_vertices()];
    sweep(skel, morse, g, cs, Direction::Down, &mut out)?;
    sweep(skel, morse, g, cs, Direction::Up, &mut out)?;
    let values: Vec<Polynomial> = out.into_iter().map(|v| v.unwrap_or_else(|| Polynomial::zero(skel.dim()))).collect();
    is_class(skel, &values).map_err(|e| CrossError::ClassCheck(format!("{e}")))?;
    let degree = values.iter().find_map(Polynomial::total_degree).unwrap_or(0);
    let f = EquivariantClass::new(degree, values).map_err(|e| CrossError::ClassCheck(format!("{e}")))?;
    if kirwan_map(morse, &f, cs) != *g {
        return Err(CrossError::RoundTrip);
    }
    Ok(f)
}
