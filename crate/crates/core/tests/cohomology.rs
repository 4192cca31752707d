mod common;

use common::*;
use skeleta_core::cohomology::*;
use skeleta_core::exactmath::{int, Vector};
use skeleta_core::instances::*;
use skeleta_core::morse::{at_or_above, flow_up};
use skeleta_core::skeleton::{holonomy, straightness, two_slices, validate, Straightness, Subskeleton};
use skeleta_core::Polynomial;

const STRAIGHT: [&str; 10] = ["SEG", "TRI", "K4", "SIMPLEX3", "K5", "HEPT7", "K4_1", "K4_2", "K4_3", "K4_4"];

#[test]
fn constants_and_thom_classes_are_classes() {
    for name in STRAIGHT {
        let (s, _) = load(name);
        let one = EquivariantClass::constant(s.num_vertices(), Polynomial::one(s.dim()));
        assert!(is_class(&s, one.values()).is_ok());
        for p in 0..s.num_vertices() {
            let t = vertex_class(&s, p);
            let prod = s.alphas(p).iter().fold(Polynomial::one(s.dim()), |a, v| &a * &Polynomial::linear(v));
            assert_eq!(t.value(p), &prod);
            assert_eq!(t.support(), vec![p]);
        }
    }
}

#[test]
fn perturbation_breaks_the_class_property() {
    let (s, _) = load("K4");
    let t = vertex_class(&s, 0);
    let mut values = t.values().to_vec();
    values[1] = &values[1] + &Polynomial::var(2, 0).pow(3);
    assert!(matches!(is_class(&s, &values), Err(CohomologyError::NotDivisible(..))));
    let mixed = vec![Polynomial::var(2, 0), Polynomial::one(2), Polynomial::one(2), Polynomial::one(2)];
    assert!(matches!(is_class(&s, &mixed), Err(CohomologyError::Inhomogeneous(..))));
}

#[test]
fn edge_classes_follow_the_edge_formula() {
    for name in ["K4", "SIMPLEX3", "HEPT7"] {
        let (s, _) = load(name);
        for (p, q) in s.edges() {
            let sigma = edge_class(&s, p, q);
            let kp = s.slot(p, q).unwrap();
            let kq = s.slot(q, p).unwrap();
            let prod = |v: usize, skip: usize| {
                (0..s.valency()).filter(|&j| j != skip).fold(Polynomial::one(s.dim()), |a, j| &a * &Polynomial::linear(s.alpha(v, j)))
            };
            let num = holonomy(&s, &[p, q]).unwrap().1;
            assert_eq!(sigma.value(p), &prod(p, kp));
            assert_eq!(sigma.value(q), &prod(q, kq).scale(&num));
            assert_eq!(sigma.support(), vec![p.min(q), p.max(q)]);
        }
    }
}

#[test]
fn face_thom_classes_multiply_into_the_parent() {
    let mut r = rng(31);
    let (s, _) = load("SIMPLEX3");
    for face in two_slices(&s) {
        let t = thom_class(&s, &face).unwrap();
        assert_eq!(t.class.degree(), 1);
        assert_eq!(t.class.support(), face.vertices().to_vec());
        let ones = vec![Polynomial::one(3); face.vertices().len()];
        assert_eq!(thom_multiply(&s, &ones, &t).unwrap().values(), t.class.values());
        let g = random_class(&mut r, &s, 2);
        let restricted: Vec<Polynomial> = face.vertices().iter().map(|&p| g.value(p).clone()).collect();
        let prod = thom_multiply(&s, &restricted, &t).unwrap();
        assert_eq!(prod.values(), g.mul(&t.class).values());
        assert!(is_class(&s, prod.values()).is_ok());
    }
}

#[test]
fn classes_form_a_ring() {
    let mut r = rng(32);
    for name in ["TRI", "K4", "SIMPLEX3", "HEPT7"] {
        let (s, _) = load(name);
        for _ in 0..4 {
            let f = random_class(&mut r, &s, 1);
            let g = random_class(&mut r, &s, 2);
            assert!(is_class(&s, f.mul(&g).values()).is_ok());
            assert!(is_class(&s, f.add(&f.scale(&int(3))).values()).is_ok());
        }
    }
}

#[test]
fn integral_of_the_segment() {
    let (s, m) = load("SEG");
    let data = IntegralData::new(&s, Some(&m)).unwrap();
    let f = EquivariantClass::new(1, vec![Polynomial::zero(1), Polynomial::var(1, 0)]).unwrap();
    assert_eq!(integral(&s, &data, &f).unwrap(), Polynomial::constant(1, int(-1)));
}

#[test]
fn integrals_of_basis_classes_are_polynomial() {
    for name in STRAIGHT {
        let (s, m) = load(name);
        let data = IntegralData::new(&s, Some(&m)).unwrap();
        assert_eq!(data.constants[m.order()[0]], int(1));
        let d = s.valency() as u32;
        for deg in 0..=d + 2 {
            for b in basis_by_degree(&s, deg, &[]) {
                let v = integral(&s, &data, &b).unwrap();
                if deg < d {
                    assert!(v.is_zero());
                } else {
                    assert!(v.is_homogeneous_of(deg - d));
                }
            }
        }
        for p in 0..s.num_vertices() {
            let v = integral(&s, &data, &vertex_class(&s, p)).unwrap();
            assert_eq!(v, Polynomial::constant(s.dim(), data.constants[p].recip()));
        }
    }
}

#[test]
fn non_straight_skeleta_have_no_integration_constants() {
    let mut pos = hept7_positions();
    pos[0] = Vector::from_ints(&[1, 0]);
    let s = validate(&heptagon("BENT7", pos).raw).unwrap();
    assert!(matches!(IntegralData::new(&s, None), Err(CohomologyError::NotStraight { .. })));
}

#[test]
fn duality_with_edge_classes() {
    let mut r = rng(33);
    for name in ["TRI", "K4", "HEPT7"] {
        let (s, m) = load(name);
        let data = IntegralData::new(&s, Some(&m)).unwrap();
        let edges: Vec<_> = s.edges().iter().map(|&(p, q)| edge_class(&s, p, q)).collect();
        let pairs = |values: &[Polynomial]| {
            edges.iter().all(|sig| {
                let prod: Vec<Polynomial> = values.iter().zip(sig.values()).map(|(a, b)| a * b).collect();
                data.integrand(&s, &prod).is_polynomial()
            })
        };
        for deg in 1..=2 {
            let f = random_class(&mut r, &s, deg);
            assert!(pairs(f.values()));
            let junk: Vec<Polynomial> = (0..s.num_vertices()).map(|_| random_poly(&mut r, s.dim(), deg)).collect();
            assert_eq!(is_class(&s, &junk).is_ok(), pairs(&junk));
        }
    }
}

#[test]
fn degree_zero_classes_are_constant() {
    for name in STRAIGHT {
        let (s, _) = load(name);
        assert_eq!(basis_by_degree(&s, 0, &[]).len(), 1);
    }
    let (s, _) = load("SEG");
    assert_eq!(basis_by_degree(&s, 1, &[]).len(), 2);
}

#[test]
fn segment_family() {
    let (s, m) = load("SEG");
    let f = generating_family(&s, &m).unwrap();
    assert_eq!(f.classes[0], EquivariantClass::constant(2, Polynomial::one(1)));
    let tq = EquivariantClass::new(1, vec![Polynomial::zero(1), Polynomial::linear(s.alpha_of(1, 0))]).unwrap();
    assert_eq!(f.classes[1], tq);
}

#[test]
fn k4_family_degrees_and_checks() {
    for name in ["K4", "K4_1", "K4_2", "K4_3", "K4_4", "K4_5", "TRI", "SIMPLEX3", "K5"] {
        let (s, m) = load(name);
        let fam = generating_family(&s, &m).unwrap();
        assert_eq!(fam.flavor, Flavor::Strong);
        let degrees: Vec<u32> = fam.ordered(&m).map(|(_, c)| c.degree()).collect();
        if name.starts_with("K4") {
            assert_eq!(degrees, vec![0, 1, 2, 3]);
        }
        for (p, c) in fam.ordered(&m) {
            assert!(is_class(&s, c.values()).is_ok());
            assert_eq!(c.degree() as usize, m.index(p));
            let prod = m.down_slots(p).iter().fold(Polynomial::one(s.dim()), |a, &k| &a * &Polynomial::linear(s.alpha(p, k)));
            assert_eq!(c.value(p), &prod);
            let flow = flow_up(&s, &m, p);
            assert!(c.support().iter().all(|q| flow.contains(q)));
        }
        let weak = weak_family(&s, &m).unwrap();
        for (p, c) in weak.ordered(&m) {
            let big = at_or_above(&m, p);
            assert!(c.support().iter().all(|q| big.contains(q)));
        }
    }
}

#[test]
fn heptagon_has_no_package() {
    let (s, m) = load("HEPT7");
    let p = |id: &str| s.index_of(id).unwrap();
    let fail = generating_family(&s, &m).unwrap_err();
    assert_eq!(s.id(fail.vertex), "p5");
    assert!(fail.oracle_confirms);
    assert_eq!(basis_by_degree(&s, 1, &[p("p6"), p("p7")]).len(), 0);
    assert_eq!(basis_by_degree(&s, 1, &[p("p2"), p("p3")]).len(), 0);
    for id in ["p1", "p2", "p3", "p4", "p6", "p7"] {
        assert!(weak_class_oracle(&s, &m, p(id)).is_some(), "{id}");
    }
    assert!(weak_class_oracle(&s, &m, p("p5")).is_none());
}

#[test]
fn planar_codimension_two_classes() {
    for name in ["K4", "HEPT7", "K5"] {
        let (s, m) = load(name);
        let target = s.valency() - 2;
        let mut seen = 0;
        for v in 0..s.num_vertices() {
            if m.index(v) != target {
                continue;
            }
            let c = planar_codim2_class(&s, &m, v).unwrap();
            assert!(is_class(&s, c.values()).is_ok());
            assert_eq!(c.degree() as usize, target);
            let flow = flow_up(&s, &m, v);
            assert!(c.support().iter().all(|q| flow.contains(q)));
            seen += 1;
        }
        assert!(seen > 0);
    }
}

#[test]
fn package_verdicts() {
    let (s, m) = load("HEPT7");
    let v = morse_package(&s, &m, 3);
    assert!(v.straight && v.noncyclic && !v.has_package);
    assert_eq!(s.id(v.certificate.unwrap().vertex), "p5");
    for name in ["K4", "SIMPLEX3"] {
        let (s, m) = load(name);
        let v = morse_package(&s, &m, s.valency() as u32 + 2);
        assert!(v.has_package && v.slices_agree);
        assert!(v.rank_checks.iter().all(RankCheck::passes));
        assert!(v.slices.iter().all(|sl| sl.has_package && sl.restrictions_ok == Some(true)));
        if name == "SIMPLEX3" {
            assert_eq!(v.slices.len(), 4);
        }
    }
}

#[test]
fn generators_span_every_degree() {
    let (s, _) = load("HEPT7");
    let gens = module_generators(&s, 4);
    assert!(gens.iter().any(|g| g.degree() == 0));
    assert!(matches!(straightness(&s), Straightness::Straight { .. }));
    let vertex = Subskeleton::vertex(0);
    assert_eq!(thom_class(&s, &vertex).unwrap().constants, vec![int(1)]);
}
