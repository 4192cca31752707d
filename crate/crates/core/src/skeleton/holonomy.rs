use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;

use super::Skeleton;
use crate::exactmath::Rational;

/// Path connection map `K_γ` (slots at the start to slots at the end) and number `|K_γ|`.
/// Returns `None` when two consecutive vertices are not adjacent.
pub fn holonomy(skel: &Skeleton, path: &[usize]) -> Option<(Vec<usize>, Rational)> {
    let d = skel.valency();
    let mut map: Vec<usize> = (0..d).collect();
    let mut number = Rational::one();
    for w in path.windows(2) {
        let (p, q) = (w[0], w[1]);
        let k = skel.slot(p, q)?;
        for j in 0..d {
            number *= skel.lambda(p, k, j);
        }
        for m in map.iter_mut() {
            *m = skel.theta(p, k, *m);
        }
    }
    Some((map, number))
}

/// Rooted spanning tree, given by parent pointers.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    /// Vertices in discovery order, root first.
    pub order: Vec<usize>,
}

impl SpanningTree {
    pub fn bfs(skel: &Skeleton, root: usize) -> Self {
        let n = skel.num_vertices();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(p) = queue.pop_front() {
            for &q in skel.neighbors(p) {
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

    /// Depth-first tree visiting neighbours in increasing `rank`.
    pub fn dfs_ranked(skel: &Skeleton, root: usize, rank: &[usize]) -> Self {
        let n = skel.num_vertices();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut stack = vec![(root, None)];
        while let Some((p, par)) = stack.pop() {
            if seen[p] {
                continue;
            }
            seen[p] = true;
            parent[p] = par;
            order.push(p);
            let mut next: Vec<usize> = skel.neighbors(p).iter().copied().filter(|&q| !seen[q]).collect();
            next.sort_by_key(|&q| core::cmp::Reverse(rank[q]));
            for q in next {
                stack.push((q, Some(p)));
            }
        }
        SpanningTree { root, parent, order }
    }

    /// Tree path from the root to `p`.
    pub fn path_from_root(&self, p: usize) -> Vec<usize> {
        let mut path = vec![p];
        let mut cur = p;
        while let Some(par) = self.parent[cur] {
            path.push(par);
            cur = par;
        }
        path.reverse();
        path
    }

    pub fn is_tree_edge(&self, p: usize, q: usize) -> bool {
        self.parent[q] == Some(p) || self.parent[p] == Some(q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Straightness {
    /// Constants `c_p` with `c_q = c_p |K_pq|` on every edge.
    Straight { constants: Vec<Rational> },
    /// A closed loop (first vertex repeated at the end) with `|K_γ| ≠ 1`.
    NotStraight { cycle: Vec<usize>, number: Rational },
}

impl Straightness {
    pub fn is_straight(&self) -> bool {
        matches!(self, Straightness::Straight { .. })
    }

    pub fn constants(&self) -> Option<&[Rational]> {
        match self {
            Straightness::Straight { constants } => Some(constants),
            Straightness::NotStraight { .. } => None,
        }
    }
}

/// Edge number `|K_pq|`.
pub(crate) fn edge_number(skel: &Skeleton, p: usize, q: usize) -> Rational {
    holonomy(skel, &[p, q]).expect("adjacent").1
}

pub(crate) fn check_on_tree(
    n: usize,
    tree: &SpanningTree,
    edges: &[(usize, usize)],
    number: impl Fn(usize, usize) -> Rational,
    loop_number: impl Fn(&[usize]) -> Rational,
) -> Straightness {
    let mut c = vec![Rational::one(); n];
    for &q in &tree.order[1..] {
        let p = tree.parent[q].unwrap();
        c[q] = &c[p] * number(p, q);
    }
    for &(p, q) in edges {
        if tree.is_tree_edge(p, q) {
            continue;
        }
        if c[q] != &c[p] * number(p, q) {
            let mut cycle = tree.path_from_root(p);
            let mut back = tree.path_from_root(q);
            back.reverse();
            cycle.extend(back);
            let number = loop_number(&cycle);
            return Straightness::NotStraight { cycle, number };
        }
    }
    Straightness::Straight { constants: c }
}

/// Decides straightness on the fundamental cycles of a BFS tree rooted at vertex 0.
pub fn straightness(skel: &Skeleton) -> Straightness {
    straightness_on(skel, &SpanningTree::bfs(skel, 0))
}

/// Same as [`straightness`] on a caller-chosen spanning tree; constants are 1 at its root.
pub fn straightness_on(skel: &Skeleton, tree: &SpanningTree) -> Straightness {
    check_on_tree(
        skel.num_vertices(),
        tree,
        &skel.edges(),
        |p, q| edge_number(skel, p, q),
        |cyc| holonomy(skel, cyc).unwrap().1,
    )
}
