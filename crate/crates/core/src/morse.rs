//! Polarizing covectors, orientations, Morse functions, indices and flow-ups.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactmath::{MathError, Rational, Vector, XiBasis};
use crate::skeleton::{two_slices, Skeleton};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolarizationError {
    #[error("xi has dimension {0}, skeleton has {1}")]
    Dimension(usize, usize),
    #[error("xi pairs to zero with the edge {0}-{1}")]
    ZeroPairing(String, String),
    #[error("xi is not generic at {vertex}: edges to {edges:?} violate the quadruple inequality")]
    NotGeneric { vertex: String, edges: [String; 4] },
    #[error("orientation has a directed cycle {0:?}")]
    Cyclic(Vec<String>),
    #[error("no generic polarizing covector found within {0} candidates")]
    BudgetExhausted(usize),
}

/// Orientation, Morse function and indices induced by a generic polarizing ξ.
#[derive(Clone, Debug)]
pub struct MorseData {
    basis: XiBasis,
    positive: Vec<Vec<bool>>,
    phi: Vec<Rational>,
    index: Vec<usize>,
    order: Vec<usize>,
    rank: Vec<usize>,
}

const SEARCH_MAX_HEIGHT: i64 = 8;

impl MorseData {
    pub fn xi(&self) -> &Vector {
        self.basis.xi()
    }

    pub fn basis(&self) -> &XiBasis {
        &self.basis
    }

    /// True when the edge in slot `k` at `p` points up.
    pub fn is_up(&self, p: usize, k: usize) -> bool {
        self.positive[p][k]
    }

    pub fn phi(&self, p: usize) -> &Rational {
        &self.phi[p]
    }

    pub fn index(&self, p: usize) -> usize {
        self.index[p]
    }

    pub fn indices(&self) -> &[usize] {
        &self.index
    }

    /// Vertices by increasing φ.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of `p` in [`Self::order`].
    pub fn rank(&self, p: usize) -> usize {
        self.rank[p]
    }

    /// Slots of `E^p_−` (edges pointing down from p).
    pub fn down_slots(&self, p: usize) -> Vec<usize> {
        (0..self.positive[p].len()).filter(|&k| !self.positive[p][k]).collect()
    }

    /// Slots of `E^p_+`.
    pub fn up_slots(&self, p: usize) -> Vec<usize> {
        (0..self.positive[p].len()).filter(|&k| self.positive[p][k]).collect()
    }

    pub fn betti(&self, d: usize) -> Vec<usize> {
        let mut b = vec![0; d + 1];
        for &i in &self.index {
            b[i] += 1;
        }
        b
    }
}

fn check_generic(skel: &Skeleton, xi: &Vector) -> Result<(), PolarizationError> {
    let d = skel.valency();
    for p in 0..skel.num_vertices() {
        let u: Vec<Vector> = skel.alphas(p).iter().map(|a| a.scale(&xi.dot(a).recip())).collect();
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    for e in c + 1..d {
                        let pairings = [(a, b, c, e), (a, c, b, e), (a, e, b, c)];
                        for (i, j, k, l) in pairings {
                            if &u[i] + &u[j] == &u[k] + &u[l] {
                                let name = |s: usize| String::from(skel.id(skel.neighbors(p)[s]));
                                return Err(PolarizationError::NotGeneric {
                                    vertex: skel.id(p).into(),
                                    edges: [name(i), name(k), name(l), name(j)],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Accepts `xi` if it is polarizing, generic and induces an acyclic orientation.
pub fn check_polarization(skel: &Skeleton, xi: &Vector) -> Result<MorseData, PolarizationError> {
    if xi.dim() != skel.dim() {
        return Err(PolarizationError::Dimension(xi.dim(), skel.dim()));
    }
    let n = skel.num_vertices();
    let mut positive = vec![Vec::new(); n];
    for p in 0..n {
        for (k, a) in skel.alphas(p).iter().enumerate() {
            let m = xi.dot(a);
            if m.is_zero() {
                return Err(PolarizationError::ZeroPairing(skel.id(p).into(), skel.id(skel.neighbors(p)[k]).into()));
            }
            positive[p].push(m.is_positive());
        }
    }
    check_generic(skel, xi)?;
    let topo = topological_order(skel, &positive).map_err(|cyc| PolarizationError::Cyclic(cyc.iter().map(|&p| skel.id(p).into()).collect()))?;
    let mut hat = vec![0usize; n];
    let mut weight = vec![Rational::zero(); n];
    for &p in &topo {
        for (k, &q) in skel.neighbors(p).iter().enumerate() {
            if positive[p][k] {
                hat[q] = hat[q].max(hat[p] + 1);
                let w = &weight[p] + xi.dot(skel.alpha(p, k));
                if w > weight[q] {
                    weight[q] = w;
                }
            }
        }
    }
    // ties in φ̂ are ranked by the heaviest ⟨ξ,α⟩-weighted path, then by id
    let denom = BigInt::from(n + 1);
    let mut phi = vec![Rational::zero(); n];
    for p in 0..n {
        let tie = (0..n).filter(|&q| hat[q] == hat[p] && (&weight[q], q) < (&weight[p], p)).count();
        phi[p] = Rational::from_integer(BigInt::from(hat[p])) + Rational::new(BigInt::from(tie), denom.clone());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| phi[a].cmp(&phi[b]));
    let mut rank = vec![0; n];
    for (i, &p) in order.iter().enumerate() {
        rank[p] = i;
    }
    let index = positive.iter().map(|ps| ps.iter().filter(|&&b| !b).count()).collect();
    let basis = XiBasis::new(xi).map_err(|e| match e {
        MathError::ZeroXi => PolarizationError::ZeroPairing(skel.id(0).into(), skel.id(skel.neighbors(0)[0]).into()),
        _ => PolarizationError::Dimension(xi.dim(), skel.dim()),
    })?;
    Ok(MorseData { basis, positive, phi, index, order, rank })
}

/// Kahn's algorithm; on failure returns a directed cycle.
fn topological_order(skel: &Skeleton, positive: &[Vec<bool>]) -> Result<Vec<usize>, Vec<usize>> {
    let n = skel.num_vertices();
    let mut indeg = vec![0usize; n];
    for p in 0..n {
        for (k, &q) in skel.neighbors(p).iter().enumerate() {
            if positive[p][k] {
                indeg[q] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&p| indeg[p] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(p) = ready.pop_first() {
        out.push(p);
        for (k, &q) in skel.neighbors(p).iter().enumerate() {
            if positive[p][k] {
                indeg[q] -= 1;
                if indeg[q] == 0 {
                    ready.insert(q);
                }
            }
        }
    }
    if out.len() == n {
        return Ok(out);
    }
    // every leftover vertex has a leftover predecessor; walk back until a repeat
    let left: BTreeSet<usize> = (0..n).filter(|p| indeg[*p] > 0).collect();
    let mut walk = vec![*left.first().unwrap()];
    loop {
        let cur = *walk.last().unwrap();
        let pred = skel
            .neighbors(cur)
            .iter()
            .enumerate()
            .find(|&(k, q)| !positive[cur][k] && left.contains(q))
            .map(|(_, &q)| q)
            .unwrap();
        if let Some(pos) = walk.iter().position(|&v| v == pred) {
            let mut cyc: Vec<usize> = walk[pos..].to_vec();
            cyc.reverse();
            cyc.push(cyc[0]);
            return Err(cyc);
        }
        walk.push(pred);
    }
}

/// Candidate ξ in search order: coordinate vectors, then integer vectors by max-norm.
pub fn search_candidates(n: usize, max_height: i64) -> Vec<Vector> {
    let mut out: Vec<Vector> = (0..n).map(|i| Vector::unit(n, i)).collect();
    for h in 1..=max_height {
        let width = (2 * h + 1) as usize;
        let total = width.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut v = vec![0i64; n];
            for slot in v.iter_mut().rev() {
                *slot = (c % width) as i64 - h;
                c /= width;
            }
            if v.iter().any(|x| x.abs() == h) {
                let v = Vector::from_ints(&v);
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Checks the supplied ξ, or searches deterministic candidates when none is given.
pub fn find_polarization(skel: &Skeleton, candidate: Option<&Vector>) -> Result<MorseData, PolarizationError> {
    if let Some(xi) = candidate {
        return check_polarization(skel, xi);
    }
    let cands = search_candidates(skel.dim(), SEARCH_MAX_HEIGHT);
    let total = cands.len();
    for xi in cands {
        if let Ok(m) = check_polarization(skel, &xi) {
            return Ok(m);
        }
    }
    Err(PolarizationError::BudgetExhausted(total))
}

/// `𝓕_p`: vertices reachable from p along oriented edges, sorted.
pub fn flow_up(skel: &Skeleton, morse: &MorseData, p: usize) -> Vec<usize> {
    let mut seen = BTreeSet::from([p]);
    let mut stack = vec![p];
    while let Some(a) = stack.pop() {
        for (k, &q) in skel.neighbors(a).iter().enumerate() {
            if morse.is_up(a, k) && seen.insert(q) {
                stack.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// `F_p = {x : φ(x) ≥ φ(p)}`, sorted.
pub fn at_or_above(morse: &MorseData, p: usize) -> Vec<usize> {
    let mut v: Vec<usize> = morse.order()[morse.rank(p)..].to_vec();
    v.sort();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pointedness {
    pub is_pointed: bool,
    pub is_noncyclic: bool,
}

pub fn pointedness(skel: &Skeleton, morse: &MorseData) -> Pointedness {
    let b = morse.betti(skel.valency());
    let is_pointed = b[0] == 1 && b[b.len() - 1] == 1;
    let is_noncyclic = two_slices(skel).iter().all(|s| {
        let k = s.valency();
        let idx = |p: usize| s.tangent_slots(p).iter().filter(|&&j| !morse.is_up(p, j)).count();
        let mins = s.vertices().iter().filter(|&&p| idx(p) == 0).count();
        let maxs = s.vertices().iter().filter(|&&p| idx(p) == k).count();
        mins == 1 && maxs == 1
    });
    Pointedness { is_pointed, is_noncyclic }
}
