//! 1-skeleta: graph, connection, axial function and the derived λ system.

mod holonomy;
mod slice;

pub use holonomy::{holonomy, straightness, straightness_on, SpanningTree, Straightness};
pub use slice::{normal_holonomy, normally_straight, slices, tangent_holonomy, two_slices, SliceSkeleton, Subskeleton};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{Rational, Vector};

/// One edge of an input instance, listed in a single orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub from: String,
    pub to: String,
    pub alpha: Vector,
}

/// `θ_pq` for one oriented edge; each pair names the far endpoints of `e ∈ E^p` and `θ_pq(e) ∈ E^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawConnection {
    pub edge: (String, String),
    pub map: Vec<(String, String)>,
}

/// Unvalidated instance data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawSkeleton {
    pub dimension: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    pub connection: Option<Vec<RawConnection>>,
    /// When set, validation also checks that every λ equals 1.
    pub claims_gkm: bool,
}

/// Every valid matching found for one ambiguous edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguousEdge {
    pub edge: (String, String),
    pub candidates: Vec<Vec<(String, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("edge refers to unknown vertex {0}")]
    UnknownVertex(String),
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("edge {0}-{1} listed twice")]
    ParallelEdge(String, String),
    #[error("axial vector on {0}-{1} has dimension {2}, expected {3}")]
    Dimension(String, String, usize, usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("valency is not constant: {0} has {1} edges, expected {2}")]
    Valency(String, usize, usize),
    #[error("graph is disconnected: {0} unreachable")]
    Disconnected(String),
    #[error("A1 violated at {vertex}: edges to {first} and {second} are parallel")]
    A1 { vertex: String, first: String, second: String },
    #[error("A2 violated on {0}-{1}: alpha(qp) != -alpha(pq)")]
    A2(String, String),
    #[error("connection map for {0}-{1} is missing")]
    ConnectionMissing(String, String),
    #[error("connection map for {0}-{1} is not a bijection of the edge stars")]
    ConnectionNotBijective(String, String),
    #[error("connection map for {0}-{1} does not send pq to qp")]
    ConnectionEdge(String, String),
    #[error("connection maps on {0}-{1} are not mutually inverse")]
    NotInvolutive(String, String),
    #[error("coplanarity fails on {p}-{q} for the edge to {e}")]
    Coplanarity { p: String, q: String, e: String },
    #[error("lambda on {p}-{q} for the edge to {e} is {lambda}, not positive")]
    NonPositiveLambda { p: String, q: String, e: String, lambda: Rational },
    #[error("GKM claimed but lambda on {p}-{q} for the edge to {e} is {lambda}")]
    NotGkm { p: String, q: String, e: String, lambda: Rational },
    #[error("connection is ambiguous on {} edge(s)", .0.len())]
    Ambiguous(Vec<AmbiguousEdge>),
    #[error("no compatible connection exists on {0}-{1}")]
    Infeasible(String, String),
}

/// A validated 1-skeleton. Vertices are indexed in lexicographic id order;
/// edges at a vertex are addressed by slot, the position of the far
/// endpoint in the sorted neighbour list.
#[derive(Clone, Debug)]
pub struct Skeleton {
    dim: usize,
    ids: Vec<String>,
    nbrs: Vec<Vec<usize>>,
    alpha: Vec<Vec<Vector>>,
    // theta[p][k][j]: slot at q = nbrs[p][k] of θ_pq(edge in slot j at p)
    theta: Vec<Vec<Vec<usize>>>,
    lambda: Vec<Vec<Vec<Rational>>>,
    shift: Vec<Vec<Vec<Rational>>>,
}

/// Graph plus axial function, before a connection is attached.
struct Frame {
    dim: usize,
    ids: Vec<String>,
    nbrs: Vec<Vec<usize>>,
    alpha: Vec<Vec<Vector>>,
}

impl Frame {
    fn build(raw: &RawSkeleton) -> Result<Frame, ValidationError> {
        if raw.vertices.is_empty() {
            return Err(ValidationError::Empty);
        }
        let mut ids = raw.vertices.clone();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(ValidationError::DuplicateVertex(w[0].clone()));
            }
        }
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let look = |s: &String| index.get(s.as_str()).copied().ok_or_else(|| ValidationError::UnknownVertex(s.clone()));
        let mut oriented: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        let mut listed: BTreeSet<(usize, usize)> = BTreeSet::new();
        for e in &raw.edges {
            let (p, q) = (look(&e.from)?, look(&e.to)?);
            if p == q {
                return Err(ValidationError::SelfLoop(e.from.clone()));
            }
            if e.alpha.dim() != raw.dimension {
                return Err(ValidationError::Dimension(e.from.clone(), e.to.clone(), e.alpha.dim(), raw.dimension));
            }
            if !listed.insert((p, q)) {
                return Err(ValidationError::ParallelEdge(e.from.clone(), e.to.clone()));
            }
            if let Some(prev) = oriented.get(&(q, p)) {
                if listed.contains(&(q, p)) {
                    if *prev != -&e.alpha {
                        return Err(ValidationError::A2(e.from.clone(), e.to.clone()));
                    }
                    continue;
                }
            }
            oriented.insert((p, q), e.alpha.clone());
            oriented.insert((q, p), -&e.alpha);
        }
        let n = ids.len();
        let mut nbrs = vec![Vec::new(); n];
        let mut alpha = vec![Vec::new(); n];
        for ((p, q), a) in &oriented {
            nbrs[*p].push(*q);
            alpha[*p].push(a.clone());
        }
        let d = nbrs[0].len();
        for p in 0..n {
            if nbrs[p].len() != d {
                return Err(ValidationError::Valency(ids[p].clone(), nbrs[p].len(), d));
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(p) = stack.pop() {
            for &q in &nbrs[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(ValidationError::Disconnected(ids[p].clone()));
        }
        for p in 0..n {
            for i in 0..d {
                if alpha[p][i].is_zero() {
                    return Err(ValidationError::A1 { vertex: ids[p].clone(), first: ids[nbrs[p][i]].clone(), second: ids[nbrs[p][i]].clone() });
                }
                for j in i + 1..d {
                    if alpha[p][i].is_parallel(&alpha[p][j]) {
                        return Err(ValidationError::A1 {
                            vertex: ids[p].clone(),
                            first: ids[nbrs[p][i]].clone(),
                            second: ids[nbrs[p][j]].clone(),
                        });
                    }
                }
            }
        }
        Ok(Frame { dim: raw.dimension, ids, nbrs, alpha })
    }

    fn slot(&self, p: usize, q: usize) -> Option<usize> {
        self.nbrs[p].binary_search(&q).ok()
    }

    /// Solves `a = λ b + c w` exactly; `None` when `a ∉ span(b, w)`.
    fn decompose(a: &Vector, b: &Vector, w: &Vector) -> Option<(Rational, Rational)> {
        let n = a.dim();
        for i in 0..n {
            for j in i + 1..n {
                let det = &b.0[i] * &w.0[j] - &b.0[j] * &w.0[i];
                if det.is_zero() {
                    continue;
                }
                let lam = (&a.0[i] * &w.0[j] - &a.0[j] * &w.0[i]) / &det;
                let c = (&b.0[i] * &a.0[j] - &b.0[j] * &a.0[i]) / &det;
                let ok = (0..n).all(|k| a.0[k] == &lam * &b.0[k] + &c * &w.0[k]);
                return ok.then_some((lam, c));
            }
        }
        // b and w parallel only happens for n = 1, where e must be pq itself
        None
    }

    /// λ for `e` (slot j at p) mapped to slot `t` at q along pq.
    fn lambda_for(&self, p: usize, k: usize, j: usize, t: usize) -> Option<(Rational, Rational)> {
        let q = self.nbrs[p][k];
        if j == k {
            let back = self.slot(q, p)?;
            return (t == back).then(|| (Rational::one(), Rational::from_integer(2.into())));
        }
        Self::decompose(&self.alpha[p][j], &self.alpha[q][t], &self.alpha[p][k])
    }

    /// All bijections `E^p → E^q` compatible with A3 for the edge in slot k at p.
    fn matchings(&self, p: usize, k: usize) -> Vec<Vec<usize>> {
        let q = self.nbrs[p][k];
        let d = self.nbrs[p].len();
        let back = self.slot(q, p).unwrap();
        let ok: Vec<Vec<bool>> = (0..d)
            .map(|j| {
                (0..d)
                    .map(|t| {
                        if (j == k) != (t == back) {
                            return false;
                        }
                        matches!(self.lambda_for(p, k, j, t), Some((l, _)) if l.is_positive())
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![usize::MAX; d];
        let mut used = vec![false; d];
        fn rec(j: usize, ok: &[Vec<bool>], cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if j == ok.len() {
                out.push(cur.clone());
                return;
            }
            for t in 0..ok.len() {
                if ok[j][t] && !used[t] {
                    used[t] = true;
                    cur[j] = t;
                    rec(j + 1, ok, cur, used, out);
                    used[t] = false;
                }
            }
        }
        rec(0, &ok, &mut cur, &mut used, &mut out);
        out
    }

    fn describe(&self, p: usize, k: usize, m: &[usize]) -> Vec<(String, String)> {
        let q = self.nbrs[p][k];
        m.iter().enumerate().map(|(j, &t)| (self.ids[self.nbrs[p][j]].clone(), self.ids[self.nbrs[q][t]].clone())).collect()
    }
}

/// Connection as slot maps, `theta[p][k][j]`.
pub type ConnectionMap = Vec<Vec<Vec<usize>>>;

fn infer_on(frame: &Frame) -> Result<ConnectionMap, ValidationError> {
    let n = frame.ids.len();
    let d = frame.nbrs[0].len();
    let mut theta = vec![vec![Vec::new(); d]; n];
    let mut ambiguous = Vec::new();
    for p in 0..n {
        for k in 0..d {
            let q = frame.nbrs[p][k];
            if q < p {
                continue;
            }
            let ms = frame.matchings(p, k);
            match ms.len() {
                0 => return Err(ValidationError::Infeasible(frame.ids[p].clone(), frame.ids[q].clone())),
                1 => {
                    let back = frame.slot(q, p).unwrap();
                    let mut inv = vec![0; d];
                    for (j, &t) in ms[0].iter().enumerate() {
                        inv[t] = j;
                    }
                    theta[p][k] = ms[0].clone();
                    theta[q][back] = inv;
                }
                _ => ambiguous.push(AmbiguousEdge {
                    edge: (frame.ids[p].clone(), frame.ids[q].clone()),
                    candidates: ms.iter().map(|m| frame.describe(p, k, m)).collect(),
                }),
            }
        }
    }
    if !ambiguous.is_empty() {
        return Err(ValidationError::Ambiguous(ambiguous));
    }
    Ok(theta)
}

/// Searches, edge by edge, for the unique connection compatible with A3.
/// Ambiguous edges are all reported with every candidate matching.
pub fn infer_connection(raw: &RawSkeleton) -> Result<ConnectionMap, ValidationError> {
    infer_on(&Frame::build(raw)?)
}

fn parse_connection(frame: &Frame, conn: &[RawConnection]) -> Result<ConnectionMap, ValidationError> {
    let n = frame.ids.len();
    let d = frame.nbrs[0].len();
    let index: BTreeMap<&str, usize> = frame.ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let look = |s: &String| index.get(s.as_str()).copied().ok_or_else(|| ValidationError::UnknownVertex(s.clone()));
    let mut given: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; d]; n];
    for c in conn {
        let (p, q) = (look(&c.edge.0)?, look(&c.edge.1)?);
        let bad = || ValidationError::ConnectionNotBijective(c.edge.0.clone(), c.edge.1.clone());
        let k = frame.slot(p, q).ok_or_else(|| ValidationError::ConnectionMissing(c.edge.0.clone(), c.edge.1.clone()))?;
        let back = frame.slot(q, p).unwrap();
        let mut map = vec![usize::MAX; d];
        for (r, s) in &c.map {
            let j = frame.slot(p, look(r)?).ok_or_else(bad)?;
            let t = frame.slot(q, look(s)?).ok_or_else(bad)?;
            if map[j] != usize::MAX {
                return Err(bad());
            }
            map[j] = t;
        }
        if map[k] == usize::MAX {
            map[k] = back;
        }
        if map[k] != back {
            return Err(ValidationError::ConnectionEdge(c.edge.0.clone(), c.edge.1.clone()));
        }
        let mut hit = vec![false; d];
        for &t in &map {
            if t == usize::MAX || hit[t] {
                return Err(bad());
            }
            hit[t] = true;
        }
        given[p][k] = Some(map);
    }
    let mut theta = vec![vec![Vec::new(); d]; n];
    for p in 0..n {
        for k in 0..d {
            let q = frame.nbrs[p][k];
            let back = frame.slot(q, p).unwrap();
            let (a, b) = (&given[p][k], &given[q][back]);
            let map = match (a, b) {
                (Some(m), Some(inv)) => {
                    if (0..d).any(|j| inv[m[j]] != j) {
                        return Err(ValidationError::NotInvolutive(frame.ids[p].clone(), frame.ids[q].clone()));
                    }
                    m.clone()
                }
                (Some(m), None) => m.clone(),
                (None, Some(inv)) => {
                    let mut m = vec![0; d];
                    for (t, &j) in inv.iter().enumerate() {
                        m[j] = t;
                    }
                    m
                }
                (None, None) => return Err(ValidationError::ConnectionMissing(frame.ids[p].clone(), frame.ids[q].clone())),
            };
            theta[p][k] = map;
        }
    }
    Ok(theta)
}

/// Checks A1, A2, the connection laws and A3, deriving λ for every `(pq, e)`.
pub fn validate(raw: &RawSkeleton) -> Result<Skeleton, ValidationError> {
    let frame = Frame::build(raw)?;
    let theta = match &raw.connection {
        Some(c) => parse_connection(&frame, c)?,
        None => infer_on(&frame)?,
    };
    let n = frame.ids.len();
    let d = frame.nbrs[0].len();
    let mut lambda = vec![vec![Vec::with_capacity(d); d]; n];
    let mut shift = vec![vec![Vec::with_capacity(d); d]; n];
    for p in 0..n {
        for k in 0..d {
            let q = frame.nbrs[p][k];
            for j in 0..d {
                let t = theta[p][k][j];
                let name = |s: usize| frame.ids[s].clone();
                let (l, c) = frame.lambda_for(p, k, j, t).ok_or_else(|| ValidationError::Coplanarity {
                    p: name(p),
                    q: name(q),
                    e: name(frame.nbrs[p][j]),
                })?;
                if !l.is_positive() {
                    return Err(ValidationError::NonPositiveLambda { p: name(p), q: name(q), e: name(frame.nbrs[p][j]), lambda: l });
                }
                if raw.claims_gkm && !l.is_one() {
                    return Err(ValidationError::NotGkm { p: name(p), q: name(q), e: name(frame.nbrs[p][j]), lambda: l });
                }
                lambda[p][k].push(l);
                shift[p][k].push(c);
            }
        }
    }
    Ok(Skeleton { dim: frame.dim, ids: frame.ids, nbrs: frame.nbrs, alpha: frame.alpha, theta, lambda, shift })
}

impl Skeleton {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn valency(&self) -> usize {
        self.nbrs[0].len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, p: usize) -> &str {
        &self.ids[p]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|s| s.as_str().cmp(id)).ok()
    }

    pub fn neighbors(&self, p: usize) -> &[usize] {
        &self.nbrs[p]
    }

    pub fn slot(&self, p: usize, q: usize) -> Option<usize> {
        self.nbrs[p].binary_search(&q).ok()
    }

    pub fn alpha(&self, p: usize, slot: usize) -> &Vector {
        &self.alpha[p][slot]
    }

    pub fn alphas(&self, p: usize) -> &[Vector] {
        &self.alpha[p]
    }

    /// `α(pq)`; panics when p and q are not adjacent.
    pub fn alpha_of(&self, p: usize, q: usize) -> &Vector {
        &self.alpha[p][self.slot(p, q).expect("adjacent vertices")]
    }

    /// Slot at q of `θ_pq(e)`, where pq is in slot `k` at p and e in slot `j`.
    pub fn theta(&self, p: usize, k: usize, j: usize) -> usize {
        self.theta[p][k][j]
    }

    pub fn lambda(&self, p: usize, k: usize, j: usize) -> &Rational {
        &self.lambda[p][k][j]
    }

    /// The `c` in `α(e) = λ α(θe) + c α(pq)`.
    pub fn shift(&self, p: usize, k: usize, j: usize) -> &Rational {
        &self.shift[p][k][j]
    }

    /// Every oriented edge `(p, q)`, in index order.
    pub fn oriented_edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_vertices()).flat_map(|p| self.nbrs[p].iter().map(move |&q| (p, q))).collect()
    }

    /// Each edge once, as `(p, q)` with `p < q`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.oriented_edges().into_iter().filter(|(p, q)| p < q).collect()
    }

    pub fn is_gkm(&self) -> bool {
        self.lambda.iter().flatten().flatten().all(One::is_one)
    }

    /// The connection as far-endpoint pairs, suitable for a [`RawConnection`] list.
    pub fn connection(&self) -> Vec<RawConnection> {
        let mut out = Vec::new();
        for (p, q) in self.oriented_edges() {
            let k = self.slot(p, q).unwrap();
            let map = (0..self.valency())
                .map(|j| (self.ids[self.nbrs[p][j]].clone(), self.ids[self.nbrs[q][self.theta[p][k][j]]].clone()))
                .collect();
            out.push(RawConnection { edge: (self.ids[p].clone(), self.ids[q].clone()), map });
        }
        out
    }

    /// Round-trips back to input form (one orientation per edge, explicit connection).
    pub fn to_raw(&self) -> RawSkeleton {
        RawSkeleton {
            dimension: self.dim,
            vertices: self.ids.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(p, q)| RawEdge { from: self.ids[p].clone(), to: self.ids[q].clone(), alpha: self.alpha_of(p, q).clone() })
                .collect(),
            connection: Some(self.connection()),
            claims_gkm: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;
    use alloc::string::ToString;

    fn edge(a: &str, b: &str, v: &[i64]) -> RawEdge {
        RawEdge { from: a.to_string(), to: b.to_string(), alpha: Vector::from_ints(v) }
    }

    fn raw(edges: Vec<RawEdge>, verts: &[&str], dim: usize) -> RawSkeleton {
        RawSkeleton { dimension: dim, vertices: verts.iter().map(|s| s.to_string()).collect(), edges, connection: None, claims_gkm: false }
    }

    #[test]
    fn segment_is_trivially_valid() {
        let s = validate(&raw(vec![edge("p", "q", &[1])], &["p", "q"], 1)).unwrap();
        assert!(s.is_gkm());
        assert_eq!(s.alpha_of(1, 0), &Vector::from_ints(&[-1]));
    }

    #[test]
    fn parallel_vectors_violate_a1() {
        let r = raw(vec![edge("a", "b", &[1, 0]), edge("a", "c", &[2, 0]), edge("b", "c", &[1, 1])], &["a", "b", "c"], 2);
        match validate(&r) {
            Err(ValidationError::A1 { vertex, .. }) => assert_eq!(vertex, "a"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_orientations_violate_a2() {
        let r = raw(vec![edge("p", "q", &[1]), edge("q", "p", &[1])], &["p", "q"], 1);
        assert!(matches!(validate(&r), Err(ValidationError::A2(..))));
    }

    #[test]
    fn gkm_claim_is_checked() {
        let mut r = raw(vec![edge("a", "b", &[1, 0]), edge("a", "c", &[0, 1]), edge("b", "c", &[-1, 2])], &["a", "b", "c"], 2);
        assert!(!validate(&r).unwrap().is_gkm());
        r.claims_gkm = true;
        assert!(matches!(validate(&r), Err(ValidationError::NotGkm { .. })));
        let s = validate(&raw(vec![edge("a", "b", &[1, 0]), edge("a", "c", &[0, 1]), edge("b", "c", &[-1, 1])], &["a", "b", "c"], 2)).unwrap();
        assert!(s.is_gkm());
        assert_eq!(s.lambda(0, 0, 1), &int(1));
    }
}
