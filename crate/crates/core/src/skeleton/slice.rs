use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;

use super::holonomy::{check_on_tree, SpanningTree, Straightness};
use super::{validate, RawConnection, RawEdge, RawSkeleton, Skeleton, ValidationError};
use crate::exactmath::linalg::{rank_of, Matrix};
use crate::exactmath::{Rational, Vector};

/// Vertices of the parent together with, at each, the slots of the edges
/// that belong to the subskeleton. The remaining slots are normal edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subskeleton {
    vertices: Vec<usize>,
    slots: Vec<Vec<usize>>,
}

impl Subskeleton {
    pub fn vertex(p: usize) -> Self {
        Subskeleton { vertices: vec![p], slots: vec![Vec::new()] }
    }

    pub fn edge(skel: &Skeleton, p: usize, q: usize) -> Self {
        let mut e = BTreeSet::new();
        e.insert((p, q));
        e.insert((q, p));
        Self::from_oriented(skel, &e)
    }

    fn from_oriented(skel: &Skeleton, edges: &BTreeSet<(usize, usize)>) -> Self {
        let mut vertices: Vec<usize> = edges.iter().map(|e| e.0).collect();
        vertices.dedup();
        let slots = vertices
            .iter()
            .map(|&p| edges.range((p, 0)..(p + 1, 0)).map(|&(_, q)| skel.slot(p, q).unwrap()).collect())
            .collect();
        Subskeleton { vertices, slots }
    }

    /// Builds a subskeleton from undirected edges, checking constant valency
    /// and closure of the edge stars under the connection.
    pub fn from_edges(skel: &Skeleton, edges: &[(usize, usize)]) -> Option<Self> {
        let mut set = BTreeSet::new();
        for &(p, q) in edges {
            skel.slot(p, q)?;
            set.insert((p, q));
            set.insert((q, p));
        }
        let sub = Self::from_oriented(skel, &set);
        sub.is_closed(skel).then_some(sub)
    }

    /// True when the valency is constant and every `θ_pq` maps the star into the star.
    pub fn is_closed(&self, skel: &Skeleton) -> bool {
        let k = self.slots.first().map_or(0, Vec::len);
        if self.slots.iter().any(|s| s.len() != k) {
            return false;
        }
        for (i, &p) in self.vertices.iter().enumerate() {
            for &kslot in &self.slots[i] {
                let q = skel.neighbors(p)[kslot];
                let Some(qi) = self.position(q) else { return false };
                for &j in &self.slots[i] {
                    if !self.slots[qi].contains(&skel.theta(p, kslot, j)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn valency(&self) -> usize {
        self.slots.first().map_or(0, Vec::len)
    }

    pub fn position(&self, p: usize) -> Option<usize> {
        self.vertices.binary_search(&p).ok()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.position(p).is_some()
    }

    /// Slots at `p` of the subskeleton's own edges.
    pub fn tangent_slots(&self, p: usize) -> &[usize] {
        &self.slots[self.position(p).expect("vertex in subskeleton")]
    }

    /// Slots at `p` of the normal edges `N^p`.
    pub fn normal_slots(&self, skel: &Skeleton, p: usize) -> Vec<usize> {
        let t = self.tangent_slots(p);
        (0..skel.valency()).filter(|j| !t.contains(j)).collect()
    }

    pub fn contains_edge(&self, skel: &Skeleton, p: usize, q: usize) -> bool {
        match (self.position(p), skel.slot(p, q)) {
            (Some(i), Some(k)) => self.slots[i].contains(&k),
            _ => false,
        }
    }

    /// Undirected edges `(p, q)`, `p < q`.
    pub fn edges(&self, skel: &Skeleton) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &p) in self.vertices.iter().enumerate() {
            for &k in &self.slots[i] {
                let q = skel.neighbors(p)[k];
                if p < q {
                    out.push((p, q));
                }
            }
        }
        out
    }

    fn tree(&self, skel: &Skeleton) -> SpanningTree {
        let n = skel.num_vertices();
        let root = self.vertices[0];
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(p) = queue.pop_front() {
            for &k in self.tangent_slots(p) {
                let q = skel.neighbors(p)[k];
                if !seen[q] {
                    seen[q] = true;
                    parent[q] = Some(p);
                    order.push(q);
                    queue.push_back(q);
                }
            }
        }
        SpanningTree { root, parent, order }
    }

    /// Re-expresses the subskeleton as a skeleton in coordinates of the span
    /// of its edge vectors.
    pub fn to_skeleton(&self, skel: &Skeleton) -> Result<SliceSkeleton, ValidationError> {
        let vectors: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .flat_map(|&p| self.tangent_slots(p).iter().map(move |&k| skel.alpha(p, k).0.clone()))
            .collect();
        let mut m = Matrix::from_rows(&vectors);
        let rank = m.rref().len();
        let basis: Vec<Vector> = (0..rank).map(|i| Vector(m.row(i).to_vec())).collect();
        let cols = Matrix::from_columns(&basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>());
        let coords = |v: &Vector| Vector(cols.solve(&v.0).expect("vector lies in the span"));
        let ids = |p: usize| skel.id(p).into();
        let mut edges = Vec::new();
        let mut connection = Vec::new();
        for (i, &p) in self.vertices.iter().enumerate() {
            for &k in &self.slots[i] {
                let q = skel.neighbors(p)[k];
                if p < q {
                    edges.push(RawEdge { from: ids(p), to: ids(q), alpha: coords(skel.alpha(p, k)) });
                }
                let map = self.slots[i]
                    .iter()
                    .map(|&j| (ids(skel.neighbors(p)[j]), ids(skel.neighbors(q)[skel.theta(p, k, j)])))
                    .collect();
                connection.push(RawConnection { edge: (ids(p), ids(q)), map });
            }
        }
        let raw = RawSkeleton {
            dimension: rank,
            vertices: self.vertices.iter().map(|&p| ids(p)).collect(),
            edges,
            connection: Some(connection),
            claims_gkm: false,
        };
        Ok(SliceSkeleton { skeleton: validate(&raw)?, basis, vertex_map: self.vertices.clone() })
    }
}

/// A subskeleton re-expressed as a skeleton in its own span.
#[derive(Clone, Debug)]
pub struct SliceSkeleton {
    pub skeleton: Skeleton,
    /// Basis of the span, in parent coordinates.
    pub basis: Vec<Vector>,
    /// Slice vertex index to parent vertex index.
    pub vertex_map: Vec<usize>,
}

impl SliceSkeleton {
    /// Restriction of a covector of the parent space to the span.
    pub fn restrict_covector(&self, xi: &Vector) -> Vector {
        Vector(self.basis.iter().map(|b| xi.dot(b)).collect())
    }
}

fn in_span(h_rank: usize, h: &[Vec<Rational>], v: &Vector) -> bool {
    let mut rows = h.to_vec();
    rows.push(v.0.clone());
    rank_of(&rows) == h_rank
}

fn component(skel: &Skeleton, start: usize, keep: &dyn Fn(usize, usize) -> bool) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for (k, &q) in skel.neighbors(p).iter().enumerate() {
            if keep(p, k) {
                out.insert((p, q));
                out.insert((q, p));
                if seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
    }
    out
}

/// Connected components of the edges whose axial vectors lie in the span of `h`.
pub fn slices(skel: &Skeleton, h: &[Vector]) -> Vec<Subskeleton> {
    let rows: Vec<Vec<Rational>> = h.iter().map(|v| v.0.clone()).collect();
    let r = rank_of(&rows);
    let keep = |p: usize, k: usize| in_span(r, &rows, skel.alpha(p, k));
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut out = Vec::new();
    for p in 0..skel.num_vertices() {
        if seen.contains(&p) || !(0..skel.valency()).any(|k| keep(p, k)) {
            continue;
        }
        let comp = component(skel, p, &keep);
        seen.extend(comp.iter().map(|e| e.0));
        out.push(Subskeleton::from_oriented(skel, &comp));
    }
    out
}

/// All 2-slices: the component through p of the span of each pair of edges at p,
/// deduplicated by edge set.
pub fn two_slices(skel: &Skeleton) -> Vec<Subskeleton> {
    let d = skel.valency();
    let mut found: BTreeSet<BTreeSet<(usize, usize)>> = BTreeSet::new();
    for p in 0..skel.num_vertices() {
        for i in 0..d {
            for j in i + 1..d {
                let rows = vec![skel.alpha(p, i).0.clone(), skel.alpha(p, j).0.clone()];
                let keep = |a: usize, k: usize| in_span(2, &rows, skel.alpha(a, k));
                found.insert(component(skel, p, &keep));
            }
        }
    }
    found.iter().map(|e| Subskeleton::from_oriented(skel, e)).collect()
}

fn partial_holonomy(skel: &Skeleton, sub: &Subskeleton, path: &[usize], normal: bool) -> Option<Rational> {
    let mut number = Rational::one();
    for w in path.windows(2) {
        let (p, q) = (w[0], w[1]);
        if !sub.contains_edge(skel, p, q) {
            return None;
        }
        let k = skel.slot(p, q).unwrap();
        let t = sub.tangent_slots(p);
        for j in 0..skel.valency() {
            if t.contains(&j) != normal {
                number *= skel.lambda(p, k, j);
            }
        }
    }
    Some(number)
}

/// `|K^⊥_γ|`: product of λ over normal edges; `None` when the path leaves `sub`.
pub fn normal_holonomy(skel: &Skeleton, sub: &Subskeleton, path: &[usize]) -> Option<Rational> {
    partial_holonomy(skel, sub, path, true)
}

/// `|K^0_γ|`: product of λ over the subskeleton's own edges.
pub fn tangent_holonomy(skel: &Skeleton, sub: &Subskeleton, path: &[usize]) -> Option<Rational> {
    partial_holonomy(skel, sub, path, false)
}

/// Normal straightness on the fundamental cycles of a BFS tree of `sub`.
/// Constants are reported for the subskeleton's vertices in order.
pub fn normally_straight(skel: &Skeleton, sub: &Subskeleton) -> Straightness {
    let tree = sub.tree(skel);
    let res = check_on_tree(
        skel.num_vertices(),
        &tree,
        &sub.edges(skel),
        |p, q| normal_holonomy(skel, sub, &[p, q]).unwrap(),
        |cyc| normal_holonomy(skel, sub, cyc).unwrap(),
    );
    match res {
        Straightness::Straight { constants } => {
            Straightness::Straight { constants: sub.vertices.iter().map(|&p| constants[p].clone()).collect() }
        }
        other => other,
    }
}

