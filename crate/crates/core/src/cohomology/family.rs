use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;

use super::{is_class, solve_class, CohomologyError, EquivariantClass};
use crate::crosssection::{cross_section, level_above, lift_upward, CrossSectionClass};
use crate::exactmath::{Polynomial, Rational};
use crate::morse::{at_or_above, flow_up, MorseData};
use crate::skeleton::{holonomy, Skeleton};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Supports in `F_p`.
    Weak,
    /// Supports in the flow-up `𝓕_p`.
    Strong,
}

/// `τ_p` for every vertex, indexed by vertex.
#[derive(Clone, Debug)]
pub struct GeneratingFamily {
    pub flavor: Flavor,
    pub classes: Vec<EquivariantClass>,
}

impl GeneratingFamily {
    /// Classes ordered by increasing φ of their vertex.
    pub fn ordered<'a>(&'a self, morse: &'a MorseData) -> impl Iterator<Item = (usize, &'a EquivariantClass)> {
        morse.order().iter().map(move |&p| (p, &self.classes[p]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureStage {
    Preimage(String),
    ClassCheck(String),
    Strengthening(String),
}

/// Vertex and stage at which the constructive pipeline broke.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFailure {
    pub vertex: usize,
    pub stage: FailureStage,
    /// Whether the degree-wise oracle confirms that no weak generating class exists at the vertex.
    pub oracle_confirms: bool,
}

fn down_product(skel: &Skeleton, morse: &MorseData, p: usize) -> Polynomial {
    let mut v = Polynomial::one(skel.dim());
    for k in morse.down_slots(p) {
        v = &v * &Polynomial::linear(skel.alpha(p, k));
    }
    v
}

/// A weak generating class for `p` found by exact linear algebra, if one exists.
pub fn weak_class_oracle(skel: &Skeleton, morse: &MorseData, p: usize) -> Option<EquivariantClass> {
    let mut fixed = vec![(p, down_product(skel, morse, p))];
    for &q in &morse.order()[..morse.rank(p)] {
        fixed.push((q, Polynomial::zero(skel.dim())));
    }
    solve_class(skel, morse.index(p) as u32, &fixed)
}

fn check_generating(
    skel: &Skeleton,
    morse: &MorseData,
    p: usize,
    c: &EquivariantClass,
    allowed: &[usize],
) -> Result<(), String> {
    is_class(skel, c.values()).map_err(|e| format!("{e}"))?;
    if c.degree() != morse.index(p) as u32 {
        return Err(format!("degree {} differs from index {}", c.degree(), morse.index(p)));
    }
    if c.value(p) != &down_product(skel, morse, p) {
        return Err(format!("value at {} is not the product of descending edges", skel.id(p)));
    }
    if let Some(q) = c.support().into_iter().find(|q| allowed.binary_search(q).is_err()) {
        return Err(format!("support leaks to {}", skel.id(q)));
    }
    Ok(())
}

fn fail(skel: &Skeleton, morse: &MorseData, p: usize, stage: FailureStage) -> FamilyFailure {
    let _ = skel;
    FamilyFailure { vertex: p, stage, oracle_confirms: weak_class_oracle(skel, morse, p).is_none() }
}

/// Weak generating class for `p` from the cross section just above `p`:
/// lift `F(e_a) = Π_i (β_a − β_i)` on `E^p_+` and scale by `M_p`.
fn weak_class(skel: &Skeleton, morse: &MorseData, p: usize) -> Result<EquivariantClass, FamilyFailure> {
    let nv = skel.dim();
    let basis = morse.basis();
    let down: Vec<_> = morse.down_slots(p).into_iter().map(|k| basis.edge_form(skel.alpha(p, k)).unwrap()).collect();
    let cs = cross_section(skel, morse, &level_above(morse, p)).expect("canonical level");
    let values = cs
        .edges
        .iter()
        .zip(&cs.forms)
        .map(|(&(i, _), form)| {
            if i != p {
                return Polynomial::zero(nv);
            }
            down.iter().fold(Polynomial::one(nv), |acc, e| &acc * &(&form.beta - &e.beta))
        })
        .collect();
    let t = lift_upward(skel, morse, &CrossSectionClass { values }, &cs)
        .map_err(|e| fail(skel, morse, p, FailureStage::Preimage(format!("{e}"))))?;
    let m_p: Rational = down.iter().map(|e| e.m.clone()).product();
    let mut out = vec![Polynomial::zero(nv); skel.num_vertices()];
    out[p] = down_product(skel, morse, p);
    for (q, v) in t.into_iter().enumerate() {
        if let Some(v) = v {
            out[q] = v.scale(&m_p);
        }
    }
    let c = EquivariantClass::new_unchecked(morse.index(p) as u32, out);
    check_generating(skel, morse, p, &c, &at_or_above(morse, p))
        .map_err(|e| fail(skel, morse, p, FailureStage::ClassCheck(e)))?;
    Ok(c)
}

/// Weak generating classes for all vertices, built in descending φ.
pub fn weak_family(skel: &Skeleton, morse: &MorseData) -> Result<GeneratingFamily, FamilyFailure> {
    let mut classes = vec![None; skel.num_vertices()];
    for &p in morse.order().iter().rev() {
        classes[p] = Some(weak_class(skel, morse, p)?);
    }
    Ok(GeneratingFamily { flavor: Flavor::Weak, classes: classes.into_iter().map(Option::unwrap).collect() })
}

/// Shrinks supports from `F_p` to `𝓕_p` by subtracting multiples of the
/// classes of offending vertices, smallest φ first.
pub fn strengthen(skel: &Skeleton, morse: &MorseData, weak: &GeneratingFamily) -> Result<GeneratingFamily, FamilyFailure> {
    let n = skel.num_vertices();
    let mut strong: Vec<Option<EquivariantClass>> = vec![None; n];
    for &p in morse.order().iter().rev() {
        let flow = flow_up(skel, morse, p);
        let mut t = weak.classes[p].clone();
        loop {
            let q = morse.order().iter().copied().find(|&q| !t.value(q).is_zero() && flow.binary_search(&q).is_err());
            let Some(q) = q else { break };
            let mut c0 = t.value(q).clone();
            for k in morse.down_slots(q) {
                let a = Polynomial::linear(skel.alpha(q, k));
                c0 = match c0.divide_by_linear(&a) {
                    Ok(Some(v)) => v,
                    _ => {
                        let msg = format!("value at {} not divisible by its descending edges", skel.id(q));
                        return Err(fail(skel, morse, p, FailureStage::Strengthening(msg)));
                    }
                };
            }
            let kq = strong[q].as_ref().expect("processed in descending order");
            t = t.sub(&kq.mul_poly(&c0));
            t = EquivariantClass::new_unchecked(weak.classes[p].degree(), t.values().to_vec());
        }
        check_generating(skel, morse, p, &t, &flow).map_err(|e| fail(skel, morse, p, FailureStage::Strengthening(e)))?;
        strong[p] = Some(t);
    }
    Ok(GeneratingFamily { flavor: Flavor::Strong, classes: strong.into_iter().map(Option::unwrap).collect() })
}

/// Weak family through Kirwan preimages, then strengthening; every class is verified.
pub fn generating_family(skel: &Skeleton, morse: &MorseData) -> Result<GeneratingFamily, FamilyFailure> {
    strengthen(skel, morse, &weak_family(skel, morse)?)
}

/// Follows an oriented path from `p` through the edge in `slot` up to a sink.
fn climb(skel: &Skeleton, morse: &MorseData, p: usize, slot: usize) -> Vec<usize> {
    let mut path = vec![p, skel.neighbors(p)[slot]];
    loop {
        let cur = *path.last().unwrap();
        match morse.up_slots(cur).first() {
            Some(&k) => path.push(skel.neighbors(cur)[k]),
            None => return path,
        }
    }
}

/// Generating class of degree `d − 2` in the plane, supported on a 2-valent
/// cycle through `p` inside its flow-up.
pub fn planar_codim2_class(skel: &Skeleton, morse: &MorseData, p: usize) -> Result<EquivariantClass, CohomologyError> {
    let d = skel.valency();
    if skel.dim() != 2 || d < 2 || morse.index(p) != d - 2 {
        return Err(CohomologyError::Construction(format!("{} is not a planar vertex of index d-2", skel.id(p))));
    }
    let up = morse.up_slots(p);
    let a = climb(skel, morse, p, up[0]);
    let b = climb(skel, morse, p, up[1]);
    let (ia, ib) = b
        .iter()
        .enumerate()
        .skip(1)
        .find_map(|(j, v)| a.iter().position(|w| w == v).map(|i| (i, j)))
        .ok_or_else(|| CohomologyError::Construction(format!("oriented paths from {} never merge", skel.id(p))))?;
    let mut cycle: Vec<usize> = a[..=ia].to_vec();
    cycle.extend(b[1..ib].iter().rev());
    let len = cycle.len();
    let at = |i: usize| cycle[i % len];
    // λ_i as a quotient of wedges, so α(v_i v_{i-1}) ≡ λ_i α(v_{i+1} v_{i+2}) mod α(v_i v_{i+1})
    let lam = |i: usize| {
        let (prev, v, next, next2) = (at(i + len - 1), at(i), at(i + 1), at(i + 2));
        skel.alpha_of(v, prev).wedge(skel.alpha_of(v, next)) / skel.alpha_of(next, v).wedge(skel.alpha_of(next, next2))
    };
    let k = |i: usize| holonomy(skel, &[at(i), at(i + 1)]).unwrap().1;
    let total: Rational = (0..len).map(|i| k(i) / lam(i)).product();
    if !total.is_one() {
        return Err(CohomologyError::Construction(format!("cycle product is {total}, not 1")));
    }
    let nv = skel.dim();
    let mut values = vec![Polynomial::zero(nv); skel.num_vertices()];
    let mut m = Rational::one();
    for i in 0..len {
        let v = at(i);
        let (prev, next) = (at(i + len - 1), at(i + 1));
        let mut val = Polynomial::constant(nv, m.clone());
        for (j, &q) in skel.neighbors(v).iter().enumerate() {
            if q != prev && q != next {
                val = &val * &Polynomial::linear(skel.alpha(v, j));
            }
        }
        values[v] = val;
        m = &m * k(i) / lam(i);
    }
    let c = EquivariantClass::new(morse.index(p) as u32, values)?;
    is_class(skel, c.values())?;
    Ok(c)
}
