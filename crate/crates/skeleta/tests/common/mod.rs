#![allow(dead_code)]

use std::io::Write;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skeleta_core::cohomology::{basis_by_degree, EquivariantClass};
use skeleta_core::exactmath::{monomials_of_degree, rat, Monomial};
use skeleta_core::instances::{builtin, builtin_names, heptagon, hept7_positions, polygon};
use skeleta_core::morse::{check_polarization, MorseData};
use skeleta_core::skeleton::{validate, Skeleton};
use skeleta_core::{Polynomial, Rational, Vector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// Random homogeneous polynomial of degree `d` in the variables `vars`.
pub fn random_poly_in(rng: &mut ChaCha8Rng, nvars: usize, vars: &[usize], d: u32) -> Polynomial {
    let terms: Vec<_> = monomials_of_degree(vars.len(), d)
        .into_iter()
        .map(|m| {
            let mut e = vec![0; nvars];
            for (i, &v) in vars.iter().enumerate() {
                e[v] = m.0[i];
            }
            (Monomial(e), small_rat(rng))
        })
        .collect();
    Polynomial::from_terms(nvars, terms)
}

/// `m` pairwise distinct nonzero linear forms free of variable 0.
pub fn distinct_roots(rng: &mut ChaCha8Rng, nvars: usize, m: usize) -> Vec<Polynomial> {
    let vars: Vec<usize> = (1..nvars).collect();
    let mut out: Vec<Polynomial> = Vec::new();
    while out.len() < m {
        let z = random_poly_in(rng, nvars, &vars, 1);
        if !z.is_zero() && !out.contains(&z) {
            out.push(z);
        }
    }
    out
}

pub fn load(name: &str) -> (Skeleton, MorseData) {
    let inst = builtin(name).unwrap();
    let skel = validate(&inst.raw).unwrap();
    let morse = check_polarization(&skel, &inst.xi).unwrap();
    (skel, morse)
}

/// Random combination of a precomputed basis.
pub fn combine(rng: &mut ChaCha8Rng, skel: &Skeleton, m: u32, basis: &[EquivariantClass]) -> EquivariantClass {
    let mut out = EquivariantClass::zero(skel.num_vertices(), skel.dim(), m);
    for b in basis {
        out = out.add(&b.scale(&small_rat(rng)));
    }
    out
}

pub fn random_class(rng: &mut ChaCha8Rng, skel: &Skeleton, m: u32) -> EquivariantClass {
    combine(rng, skel, m, &basis_by_degree(skel, m, &[]))
}

/// Built-ins plus polygons and a non-straight heptagon.
pub fn all_skeleta() -> Vec<(String, Skeleton)> {
    let mut out: Vec<(String, Skeleton)> = builtin_names()
        .into_iter()
        .map(|n| {
            let s = validate(&builtin(&n).unwrap().raw).unwrap();
            (n, s)
        })
        .collect();
    let v = |x, y| Vector::from_ints(&[x, y]);
    for (name, pos) in [
        ("SQUARE", vec![v(0, 0), v(1, 0), v(1, 1), v(0, 1)]),
        ("QUAD", vec![v(0, 0), v(3, 1), v(2, 3), v(-1, 2)]),
        ("PENT", vec![v(0, 0), v(2, 0), v(3, 2), v(1, 3), v(-1, 2)]),
    ] {
        out.push((name.into(), validate(&polygon(name, pos).raw).unwrap()));
    }
    let mut bent = hept7_positions();
    bent[0] = Vector::from_ints(&[1, 0]);
    out.push(("BENT7".into(), validate(&heptagon("BENT7", bent).raw).unwrap()));
    out
}

/// Every simple cycle, once up to rotation and reversal, closed at the start.
pub fn simple_loops(skel: &Skeleton) -> Vec<Vec<usize>> {
    fn extend(skel: &Skeleton, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for &q in skel.neighbors(last) {
            if q == start && path.len() >= 3 && path[1] < path[path.len() - 1] {
                let mut l = path.clone();
                l.push(start);
                out.push(l);
            } else if q > start && !path.contains(&q) {
                path.push(q);
                extend(skel, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..skel.num_vertices() {
        extend(skel, &mut vec![s], &mut out);
    }
    out
}

/// Writes one verdict line past the test harness capture, then fails on error.
pub fn verdict(n: u32, what: &str, result: Result<String, String>) {
    let mut out = std::io::stdout().lock();
    match result {
        Ok(detail) => {
            let _ = writeln!(out, "PASS criterion {n:>2}: {what} ({detail})");
        }
        Err(e) => {
            let _ = writeln!(out, "FAIL criterion {n:>2}: {what}: {e}");
            drop(out);
            panic!("criterion {n} failed: {e}");
        }
    }
}

#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}
