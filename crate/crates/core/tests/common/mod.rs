#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skeleta_core::cohomology::{basis_by_degree, EquivariantClass};
use skeleta_core::exactmath::{monomials_of_degree, rat};
use skeleta_core::instances::builtin;
use skeleta_core::morse::{check_polarization, MorseData};
use skeleta_core::skeleton::{validate, Skeleton};
use skeleta_core::{Polynomial, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rat(rng);
        if r != rat(0, 1) {
            return r;
        }
    }
}

/// Random homogeneous polynomial of degree `d` in variables `vars`.
pub fn random_poly_in(rng: &mut ChaCha8Rng, nvars: usize, vars: &[usize], d: u32) -> Polynomial {
    let terms = monomials_of_degree(vars.len(), d).into_iter().map(|m| {
        let mut e = vec![0; nvars];
        for (i, &v) in vars.iter().enumerate() {
            e[v] = m.0[i];
        }
        (skeleta_core::exactmath::Monomial(e), small_rat(rng))
    });
    Polynomial::from_terms(nvars, terms.collect::<Vec<_>>())
}

pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, d: u32) -> Polynomial {
    let vars: Vec<usize> = (0..nvars).collect();
    random_poly_in(rng, nvars, &vars, d)
}

/// `m` pairwise distinct linear forms in the variables `1..nvars`.
pub fn distinct_roots(rng: &mut ChaCha8Rng, nvars: usize, m: usize) -> Vec<Polynomial> {
    let vars: Vec<usize> = (1..nvars).collect();
    let mut out: Vec<Polynomial> = Vec::new();
    while out.len() < m {
        let z = random_poly_in(rng, nvars, &vars, 1);
        if !out.contains(&z) {
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

/// Random rational combination of the oracle basis of `H^m`.
pub fn random_class(rng: &mut ChaCha8Rng, skel: &Skeleton, m: u32) -> EquivariantClass {
    let mut out = EquivariantClass::zero(skel.num_vertices(), skel.dim(), m);
    for b in basis_by_degree(skel, m, &[]) {
        out = out.add(&b.scale(&small_rat(rng)));
    }
    out
}
