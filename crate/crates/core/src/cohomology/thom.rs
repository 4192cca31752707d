use alloc::vec::Vec;

use super::{is_class, CohomologyError, EquivariantClass};
use crate::exactmath::{Polynomial, Rational};
use crate::skeleton::{normally_straight, Skeleton, Straightness, Subskeleton};

/// Thom class of a subskeleton: `t_p Π_{e∈N^p} α(e)` on its vertices, zero elsewhere.
#[derive(Clone, Debug)]
pub struct ThomClass {
    pub subskeleton: Subskeleton,
    pub class: EquivariantClass,
    /// `t_p` for the subskeleton's vertices, in order; 1 at the first.
    pub constants: Vec<Rational>,
}

pub fn thom_class(skel: &Skeleton, sub: &Subskeleton) -> Result<ThomClass, CohomologyError> {
    let constants = match normally_straight(skel, sub) {
        Straightness::Straight { constants } => constants,
        Straightness::NotStraight { cycle, number } => {
            return Err(CohomologyError::NotNormallyStraight { cycle: cycle.iter().map(|&p| skel.id(p).into()).collect(), number })
        }
    };
    let n = skel.dim();
    let codim = (skel.valency() - sub.valency()) as u32;
    let mut values = alloc::vec![Polynomial::zero(n); skel.num_vertices()];
    for (i, &p) in sub.vertices().iter().enumerate() {
        let mut v = Polynomial::constant(n, constants[i].clone());
        for j in sub.normal_slots(skel, p) {
            v = &v * &Polynomial::linear(skel.alpha(p, j));
        }
        values[p] = v;
    }
    is_class(skel, &values)?;
    Ok(ThomClass { subskeleton: sub.clone(), class: EquivariantClass::new_unchecked(codim, values), constants })
}

/// `T_p`, the Thom class of the vertex p.
pub fn vertex_class(skel: &Skeleton, p: usize) -> EquivariantClass {
    thom_class(skel, &Subskeleton::vertex(p)).expect("vertices carry Thom classes").class
}

/// `σ_pq`, normalized by `σ_pq(p) = Π_{e≠pq} α(e)`.
pub fn edge_class(skel: &Skeleton, p: usize, q: usize) -> EquivariantClass {
    let sub = Subskeleton::edge(skel, p, q);
    let t = thom_class(skel, &sub).expect("edges carry Thom classes");
    if sub.vertices()[0] == p {
        t.class
    } else {
        t.class.scale(&t.constants[1].recip())
    }
}

/// Multiplies a class of the subskeleton (values in the subskeleton's vertex
/// order) by its Thom class, extending by zero.
pub fn thom_multiply(skel: &Skeleton, f: &[Polynomial], tau: &ThomClass) -> Result<EquivariantClass, CohomologyError> {
    let sub = &tau.subskeleton;
    if f.len() != sub.vertices().len() {
        return Err(CohomologyError::Arity(sub.vertices().len(), f.len()));
    }
    for (p, q) in sub.edges(skel) {
        let (i, j) = (sub.position(p).unwrap(), sub.position(q).unwrap());
        if !(&f[j] - &f[i]).restrict_to_hyperplane(skel.alpha_of(p, q)).is_zero() {
            return Err(CohomologyError::NotDivisible(skel.id(p).into(), skel.id(q).into()));
        }
    }
    let deg = f.iter().find_map(Polynomial::total_degree).unwrap_or(0);
    let mut values = tau.class.values().to_vec();
    for (i, &p) in sub.vertices().iter().enumerate() {
        values[p] = &values[p] * &f[i];
    }
    Ok(EquivariantClass::new_unchecked(tau.class.degree() + deg, values))
}
