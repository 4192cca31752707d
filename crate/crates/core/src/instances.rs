//! Built-in instances.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::exactmath::{rat, Vector};
use crate::skeleton::{RawConnection, RawEdge, RawSkeleton};

/// Verdicts a built-in is known to have, re-checked by the test suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub straight: bool,
    pub noncyclic: bool,
    pub betti: Vec<usize>,
    pub has_package: bool,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub raw: RawSkeleton,
    /// Planar drawing positions, when the instance has one.
    pub positions: Option<Vec<Vector>>,
    /// Default polarizing covector.
    pub xi: Vector,
    pub expected: Option<Expected>,
}

fn point(c: &[(i64, i64)]) -> Vector {
    Vector(c.iter().map(|&(p, q)| rat(p, q)).collect())
}

fn ipoint(c: &[i64]) -> Vector {
    Vector::from_ints(c)
}

fn ids(prefix: &str, range: core::ops::Range<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// Complete graph on `positions` with `α(pq) = q − p` and `θ_pq(pr) = qr`.
pub fn simplex_raw(positions: &[Vector], names: &[String]) -> RawSkeleton {
    let n = positions.first().map_or(0, Vector::dim);
    let m = positions.len();
    let mut edges = Vec::new();
    let mut conn = Vec::new();
    for p in 0..m {
        for q in 0..m {
            if p == q {
                continue;
            }
            if p < q {
                edges.push(RawEdge { from: names[p].clone(), to: names[q].clone(), alpha: &positions[q] - &positions[p] });
            }
            let map = (0..m)
                .filter(|&r| r != p)
                .map(|r| (names[r].clone(), if r == q { names[p].clone() } else { names[r].clone() }))
                .collect();
            conn.push(RawConnection { edge: (names[p].clone(), names[q].clone()), map });
        }
    }
    RawSkeleton { dimension: n, vertices: names.to_vec(), edges, connection: Some(conn), claims_gkm: true }
}

fn simplex_instance(name: &str, positions: Vec<Vector>, xi: Vector, expected: Option<Expected>) -> Instance {
    let names = ids("p", 0..positions.len());
    let raw = simplex_raw(&positions, &names);
    let planar = positions.first().is_some_and(|v| v.dim() == 2);
    Instance { name: name.into(), raw, positions: planar.then_some(positions), xi, expected }
}

fn expected(straight: bool, betti: &[usize], has_package: bool) -> Option<Expected> {
    Some(Expected { straight, noncyclic: true, betti: betti.to_vec(), has_package })
}

/// Two vertices joined by one edge in ℝ¹.
pub fn seg() -> Instance {
    let raw = RawSkeleton {
        dimension: 1,
        vertices: vec!["a".into(), "b".into()],
        edges: vec![RawEdge { from: "a".into(), to: "b".into(), alpha: ipoint(&[1]) }],
        connection: None,
        claims_gkm: true,
    };
    let positions = Some(vec![ipoint(&[0, 0]), ipoint(&[1, 0])]);
    Instance { name: "SEG".into(), raw, positions, xi: ipoint(&[1]), expected: expected(true, &[1, 1], true) }
}

pub fn triangle() -> Instance {
    let pos = vec![ipoint(&[0, 0]), ipoint(&[1, 0]), ipoint(&[0, 1])];
    simplex_instance("TRI", pos, point(&[(1, 3), (1, 1)]), expected(true, &[1, 1, 1], true))
}

pub fn k4() -> Instance {
    let pos = vec![ipoint(&[0, 0]), ipoint(&[1, 0]), ipoint(&[0, 1]), ipoint(&[1, 1])];
    simplex_instance("K4", pos, point(&[(1, 3), (1, 1)]), expected(true, &[1, 1, 1, 1], true))
}

/// Further convex quadrilaterals with the K4 graph, `i` in `0..5`.
pub fn k4_variant(i: usize) -> Option<Instance> {
    let quads: [[[i64; 2]; 4]; 5] = [
        [[0, 0], [2, 0], [3, 2], [1, 3]],
        [[0, 0], [3, 1], [2, 3], [-1, 2]],
        [[0, 0], [4, 0], [3, 1], [1, 2]],
        [[0, 0], [1, -1], [3, 1], [0, 2]],
        [[0, 0], [5, 1], [4, 4], [1, 3]],
    ];
    let q = quads.get(i)?;
    let pos = q.iter().map(|c| ipoint(c)).collect();
    Some(simplex_instance(&format!("K4_{}", i + 1), pos, point(&[(1, 7), (1, 1)]), expected(true, &[1, 1, 1, 1], true)))
}

/// The standard `n`-simplex: `0, e_1, …, e_n` in ℝⁿ.
pub fn simplex(n: usize) -> Instance {
    let mut pos = vec![Vector::zeros(n)];
    pos.extend((0..n).map(|i| Vector::unit(n, i)));
    let xi = Vector((1..=n).map(|i| rat(i as i64, 1)).collect());
    let betti = vec![1; n + 1];
    simplex_instance(&format!("SIMPLEX{n}"), pos, xi, expected(true, &betti, true))
}

/// Complete graph on five points of a convex pentagon.
pub fn k5() -> Instance {
    let pos = vec![ipoint(&[0, 0]), ipoint(&[2, 0]), ipoint(&[3, 2]), ipoint(&[1, 3]), ipoint(&[-1, 2])];
    simplex_instance("K5", pos, point(&[(1, 7), (1, 1)]), expected(true, &[1, 1, 1, 1, 1], true))
}

/// Boundary of a convex polygon, 2-valent, with `α(pq) = q − p`.
pub fn polygon(name: &str, positions: Vec<Vector>) -> Instance {
    let m = positions.len();
    let names = ids("p", 0..m);
    let edges = (0..m)
        .map(|i| {
            let j = (i + 1) % m;
            RawEdge { from: names[i].clone(), to: names[j].clone(), alpha: &positions[j] - &positions[i] }
        })
        .collect();
    let raw = RawSkeleton { dimension: 2, vertices: names, edges, connection: None, claims_gkm: false };
    Instance { name: name.into(), raw, positions: Some(positions), xi: point(&[(1, 7), (1, 1)]), expected: None }
}

/// Rational convex positions of the heptagon `p1, …, p7`.
pub fn hept7_positions() -> Vec<Vector> {
    vec![
        point(&[(1, 1), (-1, 5)]),
        point(&[(4, 5), (17, 25)]),
        point(&[(0, 1), (1, 1)]),
        point(&[(-4, 5), (13, 25)]),
        point(&[(-1, 1), (-2, 5)]),
        point(&[(-17, 39), (-184, 195)]),
        point(&[(17, 39), (-167, 195)]),
    ]
}

/// Heptagon with edges `p_i p_{i±1}` and `p_i p_{i±3}` and the reflection
/// connection `θ_{p_i p_j}(p_i p_r) = p_j p_{i+j−r}`.
pub fn hept7() -> Instance {
    heptagon("HEPT7", hept7_positions())
}

/// The HEPT7 combinatorics on arbitrary positions `p1, …, p7`.
pub fn heptagon(name: &str, pos: Vec<Vector>) -> Instance {
    let label = |i: usize| format!("p{}", (i + 6) % 7 + 1);
    let mut edges = Vec::new();
    let mut conn = Vec::new();
    for i in 1..=7usize {
        let nbrs = [i + 1, i + 6, i + 3, i + 4].map(|j| j % 7);
        for &j in &nbrs {
            let (a, b) = (i % 7, j);
            if (a + 6) % 7 < (b + 6) % 7 {
                let pa = &pos[(a + 6) % 7];
                let pb = &pos[(b + 6) % 7];
                edges.push(RawEdge { from: label(a), to: label(b), alpha: pb - pa });
            }
            let map = nbrs.iter().map(|&r| (label(r), label((a + b + 7 - r) % 7))).collect();
            conn.push(RawConnection { edge: (label(a), label(b)), map });
        }
    }
    let raw = RawSkeleton { dimension: 2, vertices: (1..=7).map(|i| format!("p{i}")).collect(), edges, connection: Some(conn), claims_gkm: false };
    let expected = (name == "HEPT7").then(|| Expected { straight: true, noncyclic: true, betti: vec![1, 2, 1, 2, 1], has_package: false });
    Instance { name: name.into(), raw, positions: Some(pos), xi: ipoint(&[0, 1]), expected }
}

pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = ["SEG", "TRI", "K4", "SIMPLEX3", "K5", "HEPT7"].iter().map(|s| s.to_string()).collect();
    names.extend((1..=5).map(|i| format!("K4_{i}")));
    names
}

/// Looks a built-in up by name (case-insensitive).
pub fn builtin(name: &str) -> Option<Instance> {
    let up = name.to_ascii_uppercase();
    match up.as_str() {
        "SEG" => Some(seg()),
        "TRI" => Some(triangle()),
        "K4" => Some(k4()),
        "K5" => Some(k5()),
        "HEPT7" => Some(hept7()),
        _ => {
            if let Some(n) = up.strip_prefix("SIMPLEX") {
                let n: usize = n.parse().ok()?;
                return (1..=6).contains(&n).then(|| simplex(n));
            }
            let i: usize = up.strip_prefix("K4_")?.parse().ok()?;
            k4_variant(i.checked_sub(1)?)
        }
    }
}
