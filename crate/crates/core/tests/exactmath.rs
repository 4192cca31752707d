mod common;

use common::*;
use proptest::prelude::*;
use skeleta_core::exactmath::*;
use skeleta_core::Polynomial;

/// `x^{-1}` coefficient of `f / Π(x − z_i)` by long division in `x`.
fn residue_by_division(f: &Polynomial, roots: &[Polynomial]) -> Polynomial {
    let n = f.nvars();
    let x = Polynomial::var(n, 0);
    let m = roots.len() as u32;
    let p = roots.iter().fold(Polynomial::one(n), |acc, z| &acc * &(&x - z));
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(0) >= m {
        let k = r.degree_in(0);
        let lead = r.coefficients_in(0)[k as usize].clone();
        r = &r - &(&(&lead * &x.pow(k - m)) * &p);
    }
    r.coefficients_in(0).get(m as usize - 1).cloned().unwrap_or_else(|| Polynomial::zero(n))
}

fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> Polynomial {
    Polynomial::from_terms(nvars, terms.iter().map(|(e, c)| (Monomial(e.to_vec()), int(*c))).collect::<Vec<_>>())
}

#[test]
fn divide_by_linear_examples() {
    let x_minus_y = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
    let one = x_minus_y.divide_by_linear(&x_minus_y).unwrap().unwrap();
    assert_eq!(one, Polynomial::one(2));
    let sq = poly(2, &[(&[2, 0], 1), (&[0, 2], -1)]);
    assert_eq!(sq.divide_by_linear(&x_minus_y).unwrap().unwrap(), poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
    let sum = poly(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
    assert_eq!(sum.divide_by_linear(&x_minus_y).unwrap(), None);
    assert!(matches!(sum.divide_by_linear(&sum), Err(MathError::NotLinear)));
}

#[test]
fn xi_coordinates() {
    let mut r = rng(1);
    for _ in 0..20 {
        let xi = Vector((0..3).map(|_| small_rat(&mut r)).collect());
        if xi.is_zero() {
            continue;
        }
        let b = XiBasis::new(&xi).unwrap();
        let f = random_poly(&mut r, 3, 3);
        assert_eq!(b.from_xi(&b.to_xi(&f)), f);
        assert_eq!(b.to_xi(&Polynomial::constant(3, int(5))), Polynomial::constant(3, int(5)));
        let alpha = Vector((0..3).map(|_| small_rat(&mut r)).collect());
        if xi.dot(&alpha) == int(0) {
            continue;
        }
        let e = b.edge_form(&alpha).unwrap();
        assert_eq!(e.m, xi.dot(&alpha));
        let expect = (&b.x() - &e.beta).scale(&e.m);
        assert_eq!(b.to_xi(&Polynomial::linear(&alpha)), expect);
        assert_eq!(e.alpha_xi(), expect);
        assert!(rho_project(&e.alpha_xi(), &e.beta).is_zero());
    }
}

#[test]
fn rho_is_a_ring_homomorphism() {
    let mut r = rng(2);
    let xi = Vector::from_ints(&[1, 2, -1]);
    let b = XiBasis::new(&xi).unwrap();
    for _ in 0..20 {
        let beta = distinct_roots(&mut r, 3, 1).pop().unwrap();
        let f = random_poly(&mut r, 3, 2);
        let g = random_poly(&mut r, 3, 1);
        assert_eq!(rho_project(&(&f * &g), &beta), &rho_project(&f, &beta) * &rho_project(&g, &beta));
        assert_eq!(rho_project(&(&f + &f), &beta), &rho_project(&f, &beta) + &rho_project(&f, &beta));
        let a = Vector::from_ints(&[1, 0, 3]);
        let e = b.edge_form(&a).unwrap();
        let other = b.edge_form(&Vector::from_ints(&[2, 1, 0])).unwrap();
        assert_eq!(rho_project(&other.alpha_xi(), &e.beta), (&e.beta - &other.beta).scale(&other.m));
        let y_only = random_poly_in(&mut r, 3, &[1, 2], 2);
        assert_eq!(rho_project(&y_only, &beta), y_only);
    }
}

#[test]
fn residue_matches_long_division() {
    let mut r = rng(3);
    for m in 1..=5 {
        for _ in 0..6 {
            let roots = distinct_roots(&mut r, 3, m);
            let f = random_poly(&mut r, 3, r_deg(m));
            assert_eq!(residue_at_infinity(&f, &roots).unwrap(), residue_by_division(&f, &roots));
        }
    }
    let z = distinct_roots(&mut r, 2, 1);
    assert_eq!(residue_at_infinity(&Polynomial::one(2), &z).unwrap(), Polynomial::one(2));
    let twice = vec![z[0].clone(), z[0].clone()];
    assert!(matches!(residue_at_infinity(&Polynomial::one(2), &twice), Err(MathError::RepeatedRoot)));
}

fn r_deg(m: usize) -> u32 {
    (m as u32 + 1).min(4)
}

#[test]
fn residue_is_linear_and_symmetric() {
    let mut r = rng(4);
    let roots = distinct_roots(&mut r, 3, 4);
    let f = random_poly(&mut r, 3, 4);
    let g = random_poly(&mut r, 3, 4);
    let a = residue_at_infinity(&(&f + &g), &roots).unwrap();
    assert_eq!(a, &residue_at_infinity(&f, &roots).unwrap() + &residue_at_infinity(&g, &roots).unwrap());
    let mut rev = roots.clone();
    rev.reverse();
    assert_eq!(residue_at_infinity(&f, &rev).unwrap(), residue_at_infinity(&f, &roots).unwrap());
}

#[test]
fn res_xi_of_single_form() {
    let b = XiBasis::new(&Vector::from_ints(&[1])).unwrap();
    let r = res_xi(&Polynomial::one(1), &[Vector::from_ints(&[1])], &b).unwrap();
    assert_eq!(r, Polynomial::one(1));
    let bad = XiBasis::new(&Vector::from_ints(&[0, 1])).unwrap();
    assert!(matches!(res_xi(&Polynomial::one(2), &[Vector::from_ints(&[1, 0])], &bad), Err(MathError::ZeroPairing)));
}

#[test]
fn symmetric_functions() {
    let a = Polynomial::var(2, 0);
    let b = Polynomial::var(2, 1);
    let vals = [a.clone(), b.clone()];
    assert_eq!(elementary_symmetric(2, 1, &vals), &a + &b);
    assert_eq!(elementary_symmetric(2, 0, &vals), Polynomial::one(2));
    assert_eq!(elementary_symmetric(2, 2, &vals), &a * &b);
    // a² = (a+b)·a − ab
    let c = power_reduce(2, &vals);
    assert_eq!(c, vec![-&(&a * &b), &a + &b]);
    let mut r = rng(5);
    for m in 1..=5 {
        let z = distinct_roots(&mut r, 3, m);
        let c = power_reduce(3, &z);
        for zi in &z {
            let rhs = c.iter().enumerate().fold(Polynomial::zero(3), |acc, (j, cj)| &acc + &(cj * &zi.pow(j as u32)));
            assert_eq!(zi.pow(m as u32), rhs);
        }
    }
}

#[test]
fn fractions_reduce_exactly() {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let f = Fraction::over_product(&x * &y, &[x.clone()]).unwrap();
    assert_eq!(f.to_polynomial().unwrap(), y);
    let g = Fraction::over_product(y.clone(), &[x.clone()]).unwrap();
    assert!(!g.is_polynomial());
    let h = g.add(&Fraction::over_product(-&y, &[x.scale(&int(3))]).unwrap().scale(&int(3)));
    assert!(h.reduce().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn division_round_trip(seed in any::<u64>(), d in 0u32..4) {
        let mut r = rng(seed);
        let q = random_poly(&mut r, 3, d);
        let ell = loop {
            let l = random_poly(&mut r, 3, 1);
            if !l.is_zero() { break l; }
        };
        let f = &q * &ell;
        prop_assert_eq!(f.divide_by_linear(&ell).unwrap(), Some(q));
    }

    #[test]
    fn residue_of_top_power_is_one(seed in any::<u64>(), m in 1usize..=6) {
        let mut r = rng(seed);
        let z = distinct_roots(&mut r, 3, m);
        let x = Polynomial::var(3, 0);
        prop_assert_eq!(residue_at_infinity(&x.pow(m as u32 - 1), &z).unwrap(), Polynomial::one(3));
        for k in 0..m.saturating_sub(1) {
            prop_assert!(residue_at_infinity(&x.pow(k as u32), &z).unwrap().is_zero());
        }
    }
}
