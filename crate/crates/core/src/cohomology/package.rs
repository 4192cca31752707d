use alloc::string::String;
use alloc::vec::Vec;

use super::{basis_by_degree, class_coordinates, generating_family, is_class, FamilyFailure, GeneratingFamily};
use crate::exactmath::linalg::Matrix;
use crate::exactmath::{monomials_of_degree, Polynomial, Rational};
use crate::morse::{check_polarization, flow_up, pointedness, MorseData};
use crate::skeleton::{straightness, two_slices, Skeleton, Straightness, Subskeleton};

/// Dimension of `H^m` from the oracle against the free-module prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCheck {
    pub degree: u32,
    pub oracle_dim: usize,
    pub predicted_dim: usize,
    /// Rank of the family's `S`-multiples in this degree, when a family exists.
    pub family_span: Option<usize>,
}

impl RankCheck {
    pub fn passes(&self) -> bool {
        self.oracle_dim == self.predicted_dim && self.family_span.is_none_or(|s| s == self.oracle_dim)
    }
}

#[derive(Clone, Debug)]
pub struct SliceVerdict {
    pub vertices: Vec<String>,
    pub has_package: bool,
    pub certificate: Option<(String, String)>,
    /// Restrictions of the global family behave as required on this slice.
    pub restrictions_ok: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct MorsePackageVerdict {
    pub has_package: bool,
    pub straight: bool,
    pub noncyclic: bool,
    pub pointed: bool,
    pub betti: Vec<usize>,
    pub family: Option<GeneratingFamily>,
    pub certificate: Option<FamilyFailure>,
    /// For planar skeleta the only 2-slice is the skeleton itself.
    pub slices: Vec<SliceVerdict>,
    pub slices_agree: bool,
    pub rank_checks: Vec<RankCheck>,
    pub straightness: Straightness,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim S^m` in `n` variables.
fn sym_dim(n: usize, m: usize) -> usize {
    if n == 0 {
        return usize::from(m == 0);
    }
    binomial(m + n - 1, n - 1)
}

pub fn rank_check(skel: &Skeleton, betti: &[usize], family: Option<&GeneratingFamily>, m: u32) -> RankCheck {
    let n = skel.dim();
    let oracle_dim = basis_by_degree(skel, m, &[]).len();
    let predicted_dim = betti.iter().enumerate().filter(|(j, _)| *j as u32 <= m).map(|(j, b)| b * sym_dim(n, m as usize - j)).sum();
    let family_span = family.map(|f| {
        let mut rows = Vec::new();
        for c in &f.classes {
            if c.degree() > m {
                continue;
            }
            for mon in monomials_of_degree(n, m - c.degree()) {
                let mono = Polynomial::from_terms(n, [(mon, Rational::from_integer(1.into()))]);
                rows.push(class_coordinates(&c.mul_poly(&mono), n));
            }
        }
        if rows.is_empty() {
            0
        } else {
            Matrix::from_rows(&rows).rank()
        }
    });
    RankCheck { degree: m, oracle_dim, predicted_dim, family_span }
}

/// Checks the restriction of each `τ_p` to a slice: a slice class supported in
/// `𝓕_p` with value `Π_{E^p_−} α` at p, and a generating class of the slice
/// whenever all descending edges at p lie in the slice.
fn restrictions_ok(skel: &Skeleton, morse: &MorseData, sub: &Subskeleton, fam: &GeneratingFamily) -> bool {
    let slice_flow = |p: usize| {
        let mut seen = alloc::collections::BTreeSet::from([p]);
        let mut stack = alloc::vec![p];
        while let Some(a) = stack.pop() {
            for &k in sub.tangent_slots(a) {
                let q = skel.neighbors(a)[k];
                if morse.is_up(a, k) && seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        seen
    };
    for &p in sub.vertices() {
        let tau = &fam.classes[p];
        for (a, b) in sub.edges(skel) {
            if !(tau.value(b) - tau.value(a)).restrict_to_hyperplane(skel.alpha_of(a, b)).is_zero() {
                return false;
            }
        }
        let flow = flow_up(skel, morse, p);
        let in_sub_support: Vec<usize> = sub.vertices().iter().copied().filter(|&q| !tau.value(q).is_zero()).collect();
        if in_sub_support.iter().any(|q| flow.binary_search(q).is_err()) {
            return false;
        }
        let downs = morse.down_slots(p);
        if downs.iter().all(|k| sub.tangent_slots(p).contains(k)) {
            let sf = slice_flow(p);
            if in_sub_support.iter().any(|q| !sf.contains(q)) {
                return false;
            }
        }
    }
    true
}

/// Decides the Morse package by construction, alongside the 2-slice verdicts
/// and the degree-wise rank checks up to `max_degree`.
pub fn morse_package(skel: &Skeleton, morse: &MorseData, max_degree: u32) -> MorsePackageVerdict {
    let d = skel.valency();
    let betti = morse.betti(d);
    let st = straightness(skel);
    let pt = pointedness(skel, morse);
    let built = generating_family(skel, morse);
    let (family, certificate) = match built {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e)),
    };
    let has_package = family.is_some();
    let mut slices = Vec::new();
    if skel.dim() > 2 {
        for sub in two_slices(skel) {
            let ids = sub.vertices().iter().map(|&p| String::from(skel.id(p))).collect();
            let verdict = sub.to_skeleton(skel).ok().and_then(|s| {
                let xi = s.restrict_covector(morse.xi());
                let m = check_polarization(&s.skeleton, &xi).ok()?;
                Some(match generating_family(&s.skeleton, &m) {
                    Ok(_) => (true, None),
                    Err(f) => (false, Some((String::from(s.skeleton.id(f.vertex)), alloc::format!("{:?}", f.stage)))),
                })
            });
            let (ok, cert) = verdict.unwrap_or((false, Some((String::new(), "slice could not be analysed".into()))));
            let restr = family.as_ref().map(|f| restrictions_ok(skel, morse, &sub, f));
            slices.push(SliceVerdict { vertices: ids, has_package: ok, certificate: cert, restrictions_ok: restr });
        }
    } else {
        slices.push(SliceVerdict {
            vertices: skel.ids().to_vec(),
            has_package,
            certificate: certificate.as_ref().map(|c| (String::from(skel.id(c.vertex)), alloc::format!("{:?}", c.stage))),
            restrictions_ok: family.as_ref().map(|f| f.classes.iter().all(|c| is_class(skel, c.values()).is_ok())),
        });
    }
    let slices_agree = slices.iter().all(|s| s.has_package) == has_package;
    let rank_checks = (0..=max_degree).map(|m| rank_check(skel, &betti, family.as_ref(), m)).collect();
    MorsePackageVerdict {
        has_package,
        straight: st.is_straight(),
        noncyclic: pt.is_noncyclic,
        pointed: pt.is_pointed,
        betti,
        family,
        certificate,
        slices,
        slices_agree,
        rank_checks,
        straightness: st,
    }
}
