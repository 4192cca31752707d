//! JSON interchange: instance files, polynomials, classes and cross-section classes.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use skeleta_core::cohomology::EquivariantClass;
use skeleta_core::crosssection::{CrossSectionClass, CrossSectionData};
use skeleta_core::exactmath::{parse_rational, Monomial};
use skeleta_core::instances::{builtin, Instance};
use skeleta_core::skeleton::{RawConnection, RawEdge, RawSkeleton, Skeleton};
use skeleta_core::{Polynomial, Rational, Vector};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("not a rational: {0:?}")]
    Rational(String),
    #[error("monomial has {found} exponents, expected {expected}")]
    Exponents { expected: usize, found: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("{0}")]
    Shape(String),
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Instance file; λ is derived, so a `lambda` key is rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<Vec<ConnectionFile>>,
    /// Drawing positions, aligned with `vertices`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub gkm: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub from: String,
    pub to: String,
    pub alpha: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionFile {
    pub edge: [String; 2],
    pub map: Vec<[String; 2]>,
}

pub fn rational(s: &str) -> Result<Rational, FormatError> {
    parse_rational(s.trim()).ok_or_else(|| FormatError::Rational(s.into()))
}

pub fn vector(v: &[String]) -> Result<Vector, FormatError> {
    v.iter().map(|s| rational(s)).collect::<Result<_, _>>().map(Vector)
}

/// Comma-separated rationals, as taken by `--xi`.
pub fn parse_csv(s: &str) -> Result<Vector, FormatError> {
    s.split(',').map(rational).collect::<Result<_, _>>().map(Vector)
}

pub fn vector_strings(v: &Vector) -> Vec<String> {
    v.0.iter().map(|r| r.to_string()).collect()
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let raw = &inst.raw;
        InstanceFile {
            name: Some(inst.name.clone()),
            dimension: raw.dimension,
            vertices: raw.vertices.clone(),
            edges: raw
                .edges
                .iter()
                .map(|e| EdgeFile { from: e.from.clone(), to: e.to.clone(), alpha: vector_strings(&e.alpha) })
                .collect(),
            connection: raw.connection.as_ref().map(|c| {
                c.iter()
                    .map(|rc| ConnectionFile {
                        edge: [rc.edge.0.clone(), rc.edge.1.clone()],
                        map: rc.map.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
                    })
                    .collect()
            }),
            positions: inst.positions.as_ref().map(|ps| ps.iter().map(vector_strings).collect()),
            gkm: raw.claims_gkm,
            xi: Some(vector_strings(&inst.xi)),
        }
    }

    /// The instance, with `xi` empty when the file does not fix one.
    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        let edges = self
            .edges
            .iter()
            .map(|e| Ok(RawEdge { from: e.from.clone(), to: e.to.clone(), alpha: vector(&e.alpha)? }))
            .collect::<Result<_, FormatError>>()?;
        let connection = self.connection.as_ref().map(|c| {
            c.iter()
                .map(|cf| RawConnection {
                    edge: (cf.edge[0].clone(), cf.edge[1].clone()),
                    map: cf.map.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
                })
                .collect()
        });
        let positions = match &self.positions {
            Some(ps) => {
                if ps.len() != self.vertices.len() {
                    return Err(FormatError::Shape(format!("{} positions for {} vertices", ps.len(), self.vertices.len())));
                }
                Some(ps.iter().map(|p| vector(p)).collect::<Result<_, _>>()?)
            }
            None => None,
        };
        let xi = match &self.xi {
            Some(x) => vector(x)?,
            None => Vector(Vec::new()),
        };
        Ok(Instance {
            name: self.name.clone().unwrap_or_else(|| "instance".into()),
            raw: RawSkeleton { dimension: self.dimension, vertices: self.vertices.clone(), edges, connection, claims_gkm: self.gkm },
            positions,
            xi,
            expected: None,
        })
    }
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// A built-in name, or else a path to an instance file.
pub fn load_instance(arg: &str) -> Result<Instance, FormatError> {
    if let Some(inst) = builtin(arg) {
        return Ok(inst);
    }
    let file: InstanceFile = serde_json::from_str(&read(Path::new(arg))?)?;
    file.to_instance()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

/// Terms in the canonical (graded lexicographic) order.
pub fn poly_to_file(p: &Polynomial) -> Vec<TermFile> {
    p.terms().map(|(m, c)| TermFile { exponents: m.0.clone(), coefficient: c.to_string() }).collect()
}

pub fn poly_from_file(nvars: usize, terms: &[TermFile]) -> Result<Polynomial, FormatError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exponents.len() != nvars {
            return Err(FormatError::Exponents { expected: nvars, found: t.exponents.len() });
        }
        out.push((Monomial(t.exponents.clone()), rational(&t.coefficient)?));
    }
    Ok(Polynomial::from_terms(nvars, out))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassFile {
    pub degree: u32,
    pub values: BTreeMap<String, Vec<TermFile>>,
}

pub fn class_to_file(skel: &Skeleton, c: &EquivariantClass) -> ClassFile {
    ClassFile {
        degree: c.degree(),
        values: (0..skel.num_vertices()).map(|p| (skel.id(p).to_string(), poly_to_file(c.value(p)))).collect(),
    }
}

/// Vertex values; missing vertices are zero.
pub fn class_values_from_file(skel: &Skeleton, f: &ClassFile) -> Result<Vec<Polynomial>, FormatError> {
    let mut values = vec![Polynomial::zero(skel.dim()); skel.num_vertices()];
    for (id, terms) in &f.values {
        let p = skel.index_of(id).ok_or_else(|| FormatError::UnknownVertex(id.clone()))?;
        values[p] = poly_from_file(skel.dim(), terms)?;
    }
    Ok(values)
}

/// A map `V_c → S_ξ`; polynomials are in ξ-coordinates (variable 0 is `x`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossClassFile {
    pub level: String,
    pub xi: Vec<String>,
    pub values: Vec<CrossValueFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossValueFile {
    pub edge: [String; 2],
    pub value: Vec<TermFile>,
}

pub fn cross_to_file(skel: &Skeleton, xi: &Vector, cs: &CrossSectionData, g: &CrossSectionClass) -> CrossClassFile {
    CrossClassFile {
        level: cs.level.to_string(),
        xi: vector_strings(xi),
        values: cs
            .edges
            .iter()
            .zip(&g.values)
            .map(|(&(i, t), v)| CrossValueFile { edge: [skel.id(i).into(), skel.id(t).into()], value: poly_to_file(v) })
            .collect(),
    }
}

/// Values aligned with `cs.edges`; edges not listed are zero.
pub fn cross_from_file(skel: &Skeleton, cs: &CrossSectionData, f: &CrossClassFile) -> Result<CrossSectionClass, FormatError> {
    let mut values = vec![Polynomial::zero(skel.dim()); cs.len()];
    for v in &f.values {
        let look = |s: &String| skel.index_of(s).ok_or_else(|| FormatError::UnknownVertex(s.clone()));
        let e = (look(&v.edge[0])?, look(&v.edge[1])?);
        let pos = cs
            .position(e)
            .ok_or_else(|| FormatError::Shape(format!("edge {}-{} does not cross level {}", v.edge[0], v.edge[1], cs.level)))?;
        values[pos] = poly_from_file(skel.dim(), &v.value)?;
    }
    Ok(CrossSectionClass { values })
}
