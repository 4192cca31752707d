//! Verdict reports. Every verdict carries an artifact that can be re-checked:
//! straightness constants or a loop, a generating family or a failure
//! certificate, and the Morse indices behind the Betti numbers.

use std::time::Instant;

use serde::Serialize;
use skeleta_core::cohomology::{morse_package, FailureStage, FamilyFailure, MorsePackageVerdict};
use skeleta_core::instances::Instance;
use skeleta_core::morse::{find_polarization, MorseData};
use skeleta_core::skeleton::{validate, Skeleton, Straightness};
use skeleta_core::Vector;

use crate::format::{class_to_file, vector_strings, ClassFile};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub instance: String,
    pub verdicts: Verdicts,
    pub artifacts: Artifacts,
    pub timing_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    pub valid: bool,
    pub straight: Option<bool>,
    pub noncyclic: Option<bool>,
    pub pointed: Option<bool>,
    pub betti: Option<Vec<usize>>,
    pub has_morse_package: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Artifacts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morse: Option<MorseArtifact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub straightness: Option<StraightnessArtifact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub package: Option<PackageArtifact>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorseArtifact {
    /// Vertex ids by increasing φ.
    pub order: Vec<String>,
    pub phi: Vec<String>,
    pub index: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum StraightnessArtifact {
    Constants { constants: Vec<(String, String)> },
    Loop { cycle: Vec<String>, number: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateArtifact {
    pub vertex: String,
    pub stage: String,
    pub detail: String,
    pub oracle_confirms: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceArtifact {
    pub vertices: Vec<String>,
    pub has_package: bool,
    pub certificate: Option<(String, String)>,
    pub restrictions_ok: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankArtifact {
    pub degree: u32,
    pub oracle_dim: usize,
    pub predicted_dim: usize,
    pub family_span: Option<usize>,
    pub passes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyEntry {
    pub vertex: String,
    pub class: ClassFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct PackageArtifact {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<FamilyEntry>>,
    pub certificate: Option<CertificateArtifact>,
    pub slices: Vec<SliceArtifact>,
    pub slices_agree: bool,
    pub rank_checks: Vec<RankArtifact>,
}

pub fn morse_artifact(skel: &Skeleton, morse: &MorseData) -> MorseArtifact {
    MorseArtifact {
        order: morse.order().iter().map(|&p| skel.id(p).to_string()).collect(),
        phi: (0..skel.num_vertices()).map(|p| morse.phi(p).to_string()).collect(),
        index: morse.indices().to_vec(),
    }
}

pub fn straightness_artifact(skel: &Skeleton, s: &Straightness) -> StraightnessArtifact {
    match s {
        Straightness::Straight { constants } => StraightnessArtifact::Constants {
            constants: constants.iter().enumerate().map(|(p, c)| (skel.id(p).to_string(), c.to_string())).collect(),
        },
        Straightness::NotStraight { cycle, number } => StraightnessArtifact::Loop {
            cycle: cycle.iter().map(|&p| skel.id(p).to_string()).collect(),
            number: number.to_string(),
        },
    }
}

pub fn certificate_artifact(skel: &Skeleton, f: &FamilyFailure) -> CertificateArtifact {
    let (stage, detail) = match &f.stage {
        FailureStage::Preimage(d) => ("preimage", d),
        FailureStage::ClassCheck(d) => ("class-check", d),
        FailureStage::Strengthening(d) => ("strengthening", d),
    };
    CertificateArtifact {
        vertex: skel.id(f.vertex).to_string(),
        stage: stage.into(),
        detail: detail.clone(),
        oracle_confirms: f.oracle_confirms,
    }
}

pub fn package_artifact(skel: &Skeleton, morse: &MorseData, v: &MorsePackageVerdict) -> PackageArtifact {
    PackageArtifact {
        family: v.family.as_ref().map(|fam| {
            fam.ordered(morse)
                .map(|(p, c)| FamilyEntry { vertex: skel.id(p).to_string(), class: class_to_file(skel, c) })
                .collect()
        }),
        certificate: v.certificate.as_ref().map(|f| certificate_artifact(skel, f)),
        slices: v
            .slices
            .iter()
            .map(|s| SliceArtifact {
                vertices: s.vertices.clone(),
                has_package: s.has_package,
                certificate: s.certificate.clone(),
                restrictions_ok: s.restrictions_ok,
            })
            .collect(),
        slices_agree: v.slices_agree,
        rank_checks: v
            .rank_checks
            .iter()
            .map(|r| RankArtifact {
                degree: r.degree,
                oracle_dim: r.oracle_dim,
                predicted_dim: r.predicted_dim,
                family_span: r.family_span,
                passes: r.passes(),
            })
            .collect(),
    }
}

/// Full pipeline on one instance. `xi` overrides the instance's covector.
pub fn build(inst: &Instance, xi: Option<&Vector>, max_degree: Option<u32>) -> Report {
    let start = Instant::now();
    let mut verdicts =
        Verdicts { valid: false, straight: None, noncyclic: None, pointed: None, betti: None, has_morse_package: None };
    let mut artifacts = Artifacts::default();
    let finish = |verdicts, artifacts| Report {
        instance: inst.name.clone(),
        verdicts,
        artifacts,
        timing_ms: start.elapsed().as_millis(),
    };
    let skel = match validate(&inst.raw) {
        Ok(s) => s,
        Err(e) => {
            artifacts.error = Some(e.to_string());
            return finish(verdicts, artifacts);
        }
    };
    verdicts.valid = true;
    let candidate = xi.or((!inst.xi.0.is_empty()).then_some(&inst.xi));
    let morse = match find_polarization(&skel, candidate) {
        Ok(m) => m,
        Err(e) => {
            artifacts.error = Some(e.to_string());
            let s = skeleta_core::skeleton::straightness(&skel);
            verdicts.straight = Some(s.is_straight());
            artifacts.straightness = Some(straightness_artifact(&skel, &s));
            return finish(verdicts, artifacts);
        }
    };
    let v = morse_package(&skel, &morse, max_degree.unwrap_or(skel.dim() as u32 + 2));
    verdicts.straight = Some(v.straight);
    verdicts.noncyclic = Some(v.noncyclic);
    verdicts.pointed = Some(v.pointed);
    verdicts.betti = Some(v.betti.clone());
    verdicts.has_morse_package = Some(v.has_package);
    artifacts.xi = Some(vector_strings(morse.xi()));
    artifacts.morse = Some(morse_artifact(&skel, &morse));
    artifacts.straightness = Some(straightness_artifact(&skel, &v.straightness));
    artifacts.package = Some(package_artifact(&skel, &morse, &v));
    finish(verdicts, artifacts)
}

impl Report {
    /// True when every decided verdict is positive.
    pub fn is_positive(&self) -> bool {
        let v = &self.verdicts;
        v.valid && v.straight != Some(false) && v.has_morse_package == Some(true)
    }
}
