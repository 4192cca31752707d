//! The ten acceptance criteria. Each test prints one PASS or FAIL line.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use serde_json::Value;
use skeleta_core::cohomology::*;
use skeleta_core::crosssection::*;
use skeleta_core::exactmath::{int, residue_at_infinity, Fraction};
use skeleta_core::morse::{at_or_above, check_polarization, flow_up, pointedness, MorseData};
use skeleta_core::skeleton::{holonomy, straightness, two_slices, Skeleton};
use skeleta_core::{Polynomial, Rational, Vector};

fn run_cli(args: &[&str]) -> (i32, Value) {
    let out = skeleta::cli::run(std::iter::once("skeleta").chain(args.iter().copied()));
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, json)
}

fn down_product(s: &Skeleton, m: &MorseData, p: usize) -> Polynomial {
    m.down_slots(p).iter().fold(Polynomial::one(s.dim()), |a, &k| &a * &Polynomial::linear(s.alpha(p, k)))
}

/// Degree, support and value checks for a generating class; `allowed` bounds the support.
fn check_generating(s: &Skeleton, m: &MorseData, p: usize, c: &EquivariantClass, allowed: &[usize]) -> Result<(), String> {
    is_class(s, c.values()).map_err(|e| format!("{} not a class: {e}", s.id(p)))?;
    ensure!(c.degree() as usize == m.index(p), "{}: degree {} but index {}", s.id(p), c.degree(), m.index(p));
    ensure!(c.value(p) == &down_product(s, m, p), "{}: wrong value at its own vertex", s.id(p));
    ensure!(c.support().iter().all(|q| allowed.contains(q)), "{}: support escapes", s.id(p));
    Ok(())
}

#[test]
fn criterion_01_heptagon_counterexample() {
    let start = Instant::now();
    let r = (|| {
        let (code, j) = run_cli(&["package", "HEPT7"]);
        ensure!(code == 1, "exit code {code}");
        ensure!(j["straight"] == true && j["noncyclic"] == true, "straight/noncyclic: {} {}", j["straight"], j["noncyclic"]);
        ensure!(j["has_morse_package"] == false, "package reported");
        ensure!(j["certificate"]["vertex"] == "p5", "certificate at {}", j["certificate"]["vertex"]);
        ensure!(j["certificate"]["oracle_confirms"] == true, "oracle did not confirm");
        let (s, _) = load("HEPT7");
        let top = [s.index_of("p6").unwrap(), s.index_of("p7").unwrap()];
        let dim = basis_by_degree(&s, 1, &top).len();
        ensure!(dim == 0, "degree-1 classes vanishing at p6, p7: {dim}");
        let t = start.elapsed();
        ensure!(t < Duration::from_secs(30), "took {t:?}");
        Ok(format!("certificate p5, obstruction dimension 0, {} ms", t.as_millis()))
    })();
    verdict(1, "HEPT7 has no Morse package", r);
}

#[test]
fn criterion_02_three_valent_planar_families() {
    let start = Instant::now();
    let r = (|| {
        let names = ["K4", "K4_1", "K4_2", "K4_3", "K4_4", "K4_5"];
        for name in names {
            let (s, m) = load(name);
            ensure!(s.valency() == 3 && s.dim() == 2, "{name} is not 3-valent planar");
            ensure!(straightness(&s).is_straight(), "{name} not straight");
            ensure!(pointedness(&s, &m).is_noncyclic, "{name} cyclic");
            let fam = generating_family(&s, &m).map_err(|f| format!("{name} fails at {}", s.id(f.vertex)))?;
            for (p, c) in fam.ordered(&m) {
                check_generating(&s, &m, p, c, &flow_up(&s, &m, p)).map_err(|e| format!("{name}: {e}"))?;
            }
        }
        let t = start.elapsed();
        ensure!(t < Duration::from_secs(60), "took {t:?}");
        Ok(format!("{} instances, {} ms", names.len(), t.as_millis()))
    })();
    verdict(2, "3-valent planar families", r);
}

/// Vertices of `sub` reachable from `p` by ascending edges inside the slice.
fn slice_flow_up(s: &Skeleton, m: &MorseData, slice: &[usize], p: usize) -> Vec<usize> {
    let mut seen = vec![p];
    let mut i = 0;
    while i < seen.len() {
        let q = seen[i];
        for k in m.up_slots(q) {
            let r = s.neighbors(q)[k];
            if slice.contains(&r) && !seen.contains(&r) {
                seen.push(r);
            }
        }
        i += 1;
    }
    seen
}

#[test]
fn criterion_03_simplex_slices() {
    let r = (|| {
        let (s, m) = load("SIMPLEX3");
        let v = morse_package(&s, &m, 3);
        ensure!(v.slices.len() == 4, "{} slices", v.slices.len());
        ensure!(v.slices.iter().all(|sl| sl.has_package), "a slice lacks the package");
        ensure!(v.has_package && v.slices_agree, "global verdict disagrees");
        ensure!(v.slices.iter().all(|sl| sl.restrictions_ok == Some(true)), "restriction check failed");
        let fam = v.family.ok_or("no family")?;
        for sub in two_slices(&s) {
            let vs = sub.vertices();
            for &p in vs {
                let tau = &fam.classes[p];
                ensure!(!tau.value(p).is_zero(), "tau_{} vanishes at its vertex", s.id(p));
                let inside_down = m.down_slots(p).iter().all(|&k| vs.contains(&s.neighbors(p)[k]));
                if inside_down {
                    let up = slice_flow_up(&s, &m, vs, p);
                    ensure!(
                        tau.support().iter().filter(|q| vs.contains(q)).all(|q| up.contains(q)),
                        "tau_{} escapes the slice flow-up",
                        s.id(p)
                    );
                }
            }
        }
        Ok("4 slices, family exists, restrictions generate".into())
    })();
    verdict(3, "SIMPLEX3 slices and global package", r);
}

/// `x^{-1}` coefficient of `f / Π(x − z_i)` by long division in `x`.
fn residue_by_division(f: &Polynomial, roots: &[Polynomial]) -> Polynomial {
    let (n, m) = (f.nvars(), roots.len() as u32);
    let x = Polynomial::var(n, 0);
    let p = roots.iter().fold(Polynomial::one(n), |acc, z| &acc * &(&x - z));
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(0) >= m {
        let k = r.degree_in(0);
        let lead = r.coefficients_in(0)[k as usize].clone();
        r = &r - &(&(&lead * &x.pow(k - m)) * &p);
    }
    r.coefficients_in(0).get(m as usize - 1).cloned().unwrap_or_else(|| Polynomial::zero(n))
}

fn remainder_is_zero(f: &Polynomial, roots: &[Polynomial]) -> bool {
    let (n, m) = (f.nvars(), roots.len() as u32);
    let x = Polynomial::var(n, 0);
    let p = roots.iter().fold(Polynomial::one(n), |acc, z| &acc * &(&x - z));
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(0) >= m {
        let k = r.degree_in(0);
        let lead = r.coefficients_in(0)[k as usize].clone();
        r = &r - &(&(&lead * &x.pow(k - m)) * &p);
    }
    r.is_zero()
}

fn sum_fractions(terms: impl Iterator<Item = (Polynomial, Vec<Polynomial>)>, n: usize) -> Result<Polynomial, String> {
    let mut total = Fraction::zero(n);
    for (num, den) in terms {
        total = total.add(&Fraction::over_product(num, &den).map_err(|e| e.to_string())?);
    }
    total.reduce().to_polynomial().map_err(|e| e.to_string())
}

#[test]
fn criterion_04_residue_suite() {
    let r = (|| {
        let mut g = rng(404);
        let n = 3;
        let x = Polynomial::var(n, 0);
        let one = Polynomial::one(n);
        for t in 0..100 {
            let m = 1 + t % 6;
            let z = distinct_roots(&mut g, n, m);
            let others = |i: usize| (0..m).filter(move |&j| j != i);
            let c11 = sum_fractions(
                (0..m).map(|i| (z[i].pow(m as u32 - 1), others(i).map(|j| &z[i] - &z[j]).collect())),
                n,
            )?;
            ensure!(c11 == one, "first identity fails for m = {m}");
            ensure!(residue_at_infinity(&x.pow(m as u32 - 1), &z).map_err(|e| e.to_string())? == one, "residue of x^(m-1)");
            let c12 = sum_fractions(
                (0..m).map(|i| {
                    let num = others(i).fold(Polynomial::one(n), |a, j| &a * &z[j]);
                    (num, others(i).map(|j| &z[j] - &z[i]).collect())
                }),
                n,
            )?;
            ensure!(c12 == one, "second identity fails for m = {m}");
            let mut with_zero = vec![Polynomial::zero(n)];
            with_zero.extend(z.iter().cloned());
            let prod = z.iter().fold(Polynomial::one(n), |a, zi| &a * zi);
            ensure!(residue_at_infinity(&prod, &with_zero).map_err(|e| e.to_string())?.is_zero(), "product residue");
            for k in 0..m.saturating_sub(1) {
                ensure!(residue_at_infinity(&x.pow(k as u32), &z).map_err(|e| e.to_string())?.is_zero(), "x^{k} with m = {m}");
            }
        }
        let mut correct = 0;
        for t in 0..50 {
            let m = 1 + t % 4;
            let z = distinct_roots(&mut g, n, m);
            let p = z.iter().fold(Polynomial::one(n), |acc, zi| &acc * &(&x - zi));
            let hd = g.gen_range(0..3);
            let h = &random_poly_in(&mut g, n, &[0, 1, 2], hd) + &one;
            let divisible = t % 2 == 0;
            let f = if divisible {
                &h * &p
            } else {
                let rem = loop {
                    let r = random_poly_in(&mut g, n, &[0, 1, 2], (m as u32 - 1).min(2));
                    if !r.is_zero() {
                        break r;
                    }
                };
                &(&h * &p) + &rem
            };
            ensure!(remainder_is_zero(&f, &z) == divisible, "construction case {t}");
            let mut all_zero = true;
            for k in 0..m as u32 {
                let xf = &x.pow(k) * &f;
                let r = residue_at_infinity(&xf, &z).map_err(|e| e.to_string())?;
                ensure!(r == residue_by_division(&xf, &z), "residue disagrees with division in case {t}");
                all_zero &= r.is_zero();
            }
            ensure!(all_zero == divisible, "divisibility misjudged in case {t}");
            correct += 1;
        }
        Ok(format!("100 tuples, {correct} divisibility cases"))
    })();
    verdict(4, "residue identities and divisibility", r);
}

#[test]
fn criterion_05_integrals_and_straightness() {
    let r = (|| {
        let mut straight_count = 0;
        for (name, s) in all_skeleta() {
            if s.num_vertices() <= 8 {
                let exhaustive = simple_loops(&s).iter().all(|l| holonomy(&s, l).unwrap().1 == int(1));
                ensure!(straightness(&s).is_straight() == exhaustive, "{name}: straightness disagrees with loops");
            }
            if !straightness(&s).is_straight() || skeleta_core::instances::builtin(&name).is_none() {
                continue;
            }
            straight_count += 1;
            let data = IntegralData::new(&s, None).map_err(|e| format!("{name}: {e}"))?;
            let d = s.valency() as u32;
            for deg in 0..=d + 2 {
                for b in basis_by_degree(&s, deg, &[]) {
                    let v = integral(&s, &data, &b).map_err(|e| format!("{name} degree {deg}: {e}"))?;
                    ensure!(v.is_zero() || (deg >= d && v.is_homogeneous_of(deg - d)), "{name}: integral has wrong degree");
                }
            }
            for p in 0..s.num_vertices() {
                let v = integral(&s, &data, &vertex_class(&s, p)).map_err(|e| e.to_string())?;
                ensure!(v == Polynomial::constant(s.dim(), data.constants[p].recip()), "{name}: integral of T_{}", s.id(p));
            }
        }
        Ok(format!("{straight_count} straight built-ins"))
    })();
    verdict(5, "integrals and straightness", r);
}

/// Rational points with `x = 0`, offset to avoid vanishing denominators.
fn points(g: &mut rand_chacha::ChaCha8Rng, n: usize, count: usize) -> Vec<Vec<Rational>> {
    (0..count)
        .map(|_| {
            let mut p = vec![int(0)];
            p.extend((1..n).map(|_| small_rat(g) + Rational::new(1.into(), 97.into())));
            p
        })
        .collect()
}

#[test]
fn criterion_06_residue_integral_identity() {
    let r = (|| {
        let mut g = rng(606);
        let mut checked = 0;
        for name in ["SEG", "TRI", "K4", "SIMPLEX3", "HEPT7"] {
            let (s, m) = load(name);
            let data = IntegralData::new(&s, Some(&m)).map_err(|e| e.to_string())?;
            let basis = m.basis();
            let set: Vec<EquivariantClass> =
                (0..=s.valency() as u32 + 1).flat_map(|d| basis_by_degree(&s, d, &[])).collect();
            let pts = points(&mut g, s.dim(), 2);
            for level in canonical_levels(&m) {
                let cs = cross_section(&s, &m, &level).map_err(|e| e.to_string())?;
                for f in &set {
                    let mut rhs = Polynomial::zero(s.dim());
                    for q in 0..s.num_vertices() {
                        if m.phi(q) < &level {
                            let forms: Vec<_> = s.alphas(q).iter().map(|a| basis.edge_form(a).unwrap()).collect();
                            let betas: Vec<Polynomial> = forms.iter().map(|e| e.beta.clone()).collect();
                            let scale = forms.iter().fold(data.constants[q].clone(), |a, e| a * &e.m);
                            rhs = &rhs + &residue_by_division(&basis.to_xi(f.value(q)), &betas).scale(&scale.recip());
                        }
                    }
                    let k = kirwan_map(&m, f, &cs);
                    for pt in &pts {
                        let mut lhs = int(0);
                        for (idx, &(i, t)) in cs.edges.iter().enumerate() {
                            let form = &cs.forms[idx];
                            let mut den = &data.constants[i] * &form.m;
                            for a in s.alphas(i) {
                                if a != s.alpha_of(i, t) {
                                    let o = basis.edge_form(a).unwrap();
                                    den *= o.m.clone() * (form.beta.evaluate(pt) - o.beta.evaluate(pt));
                                }
                            }
                            lhs += k.values[idx].evaluate(pt) / den;
                        }
                        ensure!(lhs == rhs.evaluate(pt), "{name} at level {level}: pointwise mismatch");
                    }
                    let core = cross_integral(&s, &m, &data, &k, &cs).to_polynomial().map_err(|e| e.to_string())?;
                    ensure!(core == rhs, "{name} at level {level}: cross integral differs");
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} class-level pairs"))
    })();
    verdict(6, "cross-sectional integral equals residue sum", r);
}

#[test]
fn criterion_07_kirwan_surjectivity() {
    let r = (|| {
        let mut g = rng(707);
        let mut count = 0;
        for name in ["TRI", "K4", "SIMPLEX3"] {
            let (s, m) = load(name);
            let bases: Vec<Vec<EquivariantClass>> = (0..=3).map(|d| basis_by_degree(&s, d, &[])).collect();
            for level in canonical_levels(&m) {
                let cs = cross_section(&s, &m, &level).map_err(|e| e.to_string())?;
                for _ in 0..25 {
                    let d = g.gen_range(0..=3u32);
                    let h = combine(&mut g, &s, d, &bases[d as usize]);
                    let img = kirwan_map(&m, &h, &cs);
                    let f = kirwan_preimage(&s, &m, &img, &cs).map_err(|e| format!("{name} at {level}: {e}"))?;
                    ensure!(is_class(&s, f.values()).is_ok(), "{name}: preimage not a class");
                    ensure!(kirwan_map(&m, &f, &cs) == img, "{name}: round trip differs");
                    count += 1;
                }
            }
            let weak = weak_family(&s, &m).map_err(|f| format!("{name}: weak class fails at {}", s.id(f.vertex)))?;
            for (p, c) in weak.ordered(&m) {
                check_generating(&s, &m, p, c, &at_or_above(&m, p)).map_err(|e| format!("{name}: {e}"))?;
            }
        }
        Ok(format!("{count} preimages"))
    })();
    verdict(7, "Kirwan preimages and weak families", r);
}

#[test]
fn criterion_08_betti_invariants() {
    let r = (|| {
        let mut checked = 0;
        for (name, s) in all_skeleta() {
            let d = s.valency();
            let mut g = rng(808);
            let mut accepted: Vec<MorseData> = Vec::new();
            for _ in 0..4000 {
                if accepted.len() == 20 {
                    break;
                }
                let xi = Vector((0..s.dim()).map(|_| small_rat(&mut g)).collect());
                if let Ok(m) = check_polarization(&s, &xi) {
                    accepted.push(m);
                }
            }
            ensure!(accepted.len() == 20, "{name}: only {} covectors accepted", accepted.len());
            let b = accepted[0].betti(d);
            ensure!(b.iter().sum::<usize>() == s.num_vertices(), "{name}: sum");
            ensure!((0..=d).all(|i| b[i] == b[d - i]), "{name}: not symmetric {b:?}");
            ensure!(accepted.iter().all(|m| m.betti(d) == b), "{name}: varies with the covector");
            checked += 1;
        }
        Ok(format!("{checked} instances, 20 covectors each"))
    })();
    verdict(8, "Betti numbers", r);
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_09_free_module_rank() {
    let r = (|| {
        for name in ["K4", "SIMPLEX3"] {
            let (s, m) = load(name);
            let (d, n) = (s.valency(), s.dim());
            let b = m.betti(d);
            let fam = generating_family(&s, &m).map_err(|_| format!("{name}: no family"))?;
            for deg in 0..=d + 2 {
                let oracle = basis_by_degree(&s, deg as u32, &[]).len();
                let predicted: usize = (0..=d.min(deg)).map(|j| b[j] * binomial(deg - j + n - 1, n - 1)).sum();
                ensure!(oracle == predicted, "{name} degree {deg}: {oracle} vs {predicted}");
                let rc = rank_check(&s, &b, Some(&fam), deg as u32);
                ensure!(rc.passes() && rc.family_span == Some(oracle), "{name} degree {deg}: family spans {:?}", rc.family_span);
            }
        }
        Ok("K4 and SIMPLEX3 up to degree d+2".into())
    })();
    verdict(9, "free module ranks", r);
}

#[test]
fn criterion_10_membership_bound() {
    let r = (|| {
        let mut g = rng(1010);
        let mut checked = 0;
        let mut negatives = 0;
        for name in skeleta_core::instances::builtin_names() {
            let (s, m) = load(&name);
            if s.num_vertices() > 8 {
                continue;
            }
            let d = s.valency() as u32;
            let data = IntegralData::new(&s, Some(&m)).map_err(|e| e.to_string())?;
            let gens = match generating_family(&s, &m) {
                Ok(f) => f.classes,
                Err(_) => module_generators(&s, d),
            };
            let ys: Vec<usize> = (1..s.dim()).collect();
            let bases: Vec<Vec<EquivariantClass>> = (0..=2).map(|k| basis_by_degree(&s, k, &[])).collect();
            for level in canonical_levels(&m) {
                let cs = cross_section(&s, &m, &level).map_err(|e| e.to_string())?;
                if cs.is_empty() {
                    continue;
                }
                let mut candidates = Vec::new();
                for k in 0..=2u32 {
                    let img = kirwan_map(&m, &combine(&mut g, &s, k, &bases[k as usize]), &cs);
                    let mut bent = img.clone();
                    bent.values[0] = &bent.values[0] + &random_poly_in(&mut g, s.dim(), &ys, k);
                    let free = CrossSectionClass {
                        values: (0..cs.len()).map(|_| random_poly_in(&mut g, s.dim(), &ys, k)).collect(),
                    };
                    candidates.extend([img, bent, free]);
                }
                let bound = d + cs.len() as u32;
                for c in &candidates {
                    let fast = hc_membership(&s, &m, &data, c, &cs, &gens).member;
                    let slow = membership_oracle(&s, &m, &data, c, &cs, bound).member;
                    ensure!(fast == slow, "{name} at {level}: finite test says {fast}, oracle says {slow}");
                    negatives += usize::from(!fast);
                    checked += 1;
                }
            }
        }
        ensure!(negatives > 0, "no non-member was exercised");
        Ok(format!("{checked} candidates, {negatives} non-members"))
    })();
    verdict(10, "finite membership test agrees with the oracle", r);
}
