//! Shipped fixtures (Heegaard diagrams, grading complexes, surgery presentations)
//! and the manifest of values each one must reproduce.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::complexes::{class_of, homology, quotient_by_subcomplex, ComplexError, UComplex};
use crate::heegaard::{DomainSolver, HeegaardDiagram, HeegaardError};
use crate::surgery::{
    cobordism_signature, d3, framed_linking_matrix, rot_after_surgery, tb_after_surgery,
    SurgeryError, SurgeryPresentation,
};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unsupported fixture {name} with parameters {params:?}")]
    Unsupported { name: String, params: Vec<usize> },
    #[error("fixture file {0} not found")]
    Missing(String),
    #[error("{file}: {source}")]
    Diagram {
        file: String,
        #[source]
        source: HeegaardError,
    },
    #[error("{file}: {source}")]
    Complex {
        file: String,
        #[source]
        source: ComplexError,
    },
    #[error("{file}: {source}")]
    Surgery {
        file: String,
        #[source]
        source: SurgeryError,
    },
    #[error("{file}: {msg}")]
    Io { file: String, msg: String },
    #[error("malformed manifest: {0}")]
    Manifest(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureKind {
    Diagram,
    Complex,
    Surgery,
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Diagram(HeegaardDiagram),
    Complex(UComplex),
    Surgery(SurgeryPresentation),
}

impl Fixture {
    pub fn kind(&self) -> FixtureKind {
        match self {
            Fixture::Diagram(_) => FixtureKind::Diagram,
            Fixture::Complex(_) => FixtureKind::Complex,
            Fixture::Surgery(_) => FixtureKind::Surgery,
        }
    }
}

macro_rules! embedded {
    ($($p:literal),* $(,)?) => {
        &[$(($p, include_str!(concat!("../fixtures/", $p)))),*]
    };
}

static EMBEDDED: &[(&str, &str)] = embedded!(
    "manifest.json",
    "Ln/n1.json",
    "Ln/n2.json",
    "Ln/n3.json",
    "Ln/n4.json",
    "Ln/n5.json",
    "Ln/n6.json",
    "Ln/n7.json",
    "Ln/n8.json",
    "L0l/l0.json",
    "L0l/l1.json",
    "L0l/l2.json",
    "L0l/l3.json",
    "L0l/l4.json",
    "L0l/l5.json",
    "L0l/l6.json",
    "L1l/l1.json",
    "L1l/l2.json",
    "unknot_stab/w1.json",
    "unknot_stab/w2.json",
    "surgery/Lkl/k0l0.json",
    "surgery/Lkl/k0l1.json",
    "surgery/Lkl/k0l2.json",
    "surgery/Lkl/k0l3.json",
    "surgery/Lkl/k0l4.json",
    "surgery/Lkl/k0l5.json",
    "surgery/Lkl/k0l6.json",
    "surgery/Lkl/k1l0.json",
    "surgery/Lkl/k1l1.json",
    "surgery/Lkl/k1l2.json",
    "surgery/Lkl/k1l3.json",
    "surgery/Lkl/k1l4.json",
    "surgery/Lkl/k1l5.json",
    "surgery/Lkl/k1l6.json",
    "surgery/Lkl/k2l0.json",
    "surgery/Lkl/k2l1.json",
    "surgery/Lkl/k2l2.json",
    "surgery/Lkl/k2l3.json",
    "surgery/Lkl/k2l4.json",
    "surgery/Lkl/k2l5.json",
    "surgery/Lkl/k2l6.json",
    "surgery/Lkl/k3l0.json",
    "surgery/Lkl/k3l1.json",
    "surgery/Lkl/k3l2.json",
    "surgery/Lkl/k3l3.json",
    "surgery/Lkl/k3l4.json",
    "surgery/Lkl/k3l5.json",
    "surgery/Lkl/k3l6.json",
    "surgery/Ln/n1.json",
    "surgery/Ln/n2.json",
    "surgery/Ln/n3.json",
    "surgery/Ln/n4.json",
    "surgery/Ln/n5.json",
    "surgery/Ln/n6.json",
    "surgery/Ln/n7.json",
    "surgery/Ln/n8.json",
);

/// Where fixture files are read from: compiled into the binary, or a directory on disk.
#[derive(Clone, Debug, Default)]
pub enum Store {
    #[default]
    Embedded,
    Dir(PathBuf),
}

impl Store {
    pub fn read(&self, rel: &str) -> Result<String, FixtureError> {
        match self {
            Store::Embedded => EMBEDDED
                .iter()
                .find(|(p, _)| *p == rel)
                .map(|(_, t)| t.to_string())
                .ok_or_else(|| FixtureError::Missing(rel.to_string())),
            Store::Dir(root) => {
                let path = root.join(rel);
                if !path.exists() {
                    return Err(FixtureError::Missing(rel.to_string()));
                }
                std::fs::read_to_string(&path).map_err(|e| FixtureError::Io {
                    file: rel.to_string(),
                    msg: e.to_string(),
                })
            }
        }
    }

    pub fn manifest(&self) -> Result<Manifest, FixtureError> {
        let text = self.read("manifest.json")?;
        serde_json::from_str(&text).map_err(|e| FixtureError::Manifest(e.to_string()))
    }
}

/// Relative file and kind for a named, parameterised fixture.
pub fn locate(name: &str, params: &[usize]) -> Result<(String, FixtureKind), FixtureError> {
    use FixtureKind::*;
    let found = match (name, params) {
        ("Ln", &[n]) if (1..=8).contains(&n) => Some((format!("Ln/n{n}.json"), Diagram)),
        ("L0l", &[l]) if l <= 6 => Some((format!("L0l/l{l}.json"), Diagram)),
        ("L1l", &[l]) if (1..=2).contains(&l) => Some((format!("L1l/l{l}.json"), Complex)),
        ("unknot_stab", &[]) => Some(("unknot_stab/w2.json".to_string(), Complex)),
        ("unknot_stab", &[w]) if (1..=2).contains(&w) => {
            Some((format!("unknot_stab/w{w}.json"), Complex))
        }
        ("surgery_Lkl", &[k, l]) if k <= 3 && l <= 6 => {
            Some((format!("surgery/Lkl/k{k}l{l}.json"), Surgery))
        }
        ("surgery_Ln", &[n]) if (1..=8).contains(&n) => {
            Some((format!("surgery/Ln/n{n}.json"), Surgery))
        }
        _ => None,
    };
    found.ok_or_else(|| FixtureError::Unsupported {
        name: name.to_string(),
        params: params.to_vec(),
    })
}

pub fn parse(kind: FixtureKind, file: &str, text: &str) -> Result<Fixture, FixtureError> {
    let file = file.to_string();
    Ok(match kind {
        FixtureKind::Diagram => Fixture::Diagram(
            HeegaardDiagram::from_json(text).map_err(|source| FixtureError::Diagram { file, source })?,
        ),
        FixtureKind::Complex => Fixture::Complex(
            UComplex::from_json(text).map_err(|source| FixtureError::Complex { file, source })?,
        ),
        FixtureKind::Surgery => Fixture::Surgery(
            SurgeryPresentation::from_json(text)
                .map_err(|source| FixtureError::Surgery { file, source })?,
        ),
    })
}

pub fn build(name: &str, params: &[usize]) -> Result<Fixture, FixtureError> {
    build_from(&Store::Embedded, name, params)
}

pub fn build_from(store: &Store, name: &str, params: &[usize]) -> Result<Fixture, FixtureError> {
    let (file, kind) = locate(name, params)?;
    parse(kind, &file, &store.read(&file)?)
}

pub fn diagram(name: &str, params: &[usize]) -> Result<HeegaardDiagram, FixtureError> {
    match build(name, params)? {
        Fixture::Diagram(d) => Ok(d),
        _ => Err(FixtureError::Unsupported {
            name: name.to_string(),
            params: params.to_vec(),
        }),
    }
}

/// Generator types of a diagram: the leading letters of its point names in α order.
pub fn census(d: &HeegaardDiagram) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for x in d.generators() {
        let key: String = x
            .0
            .iter()
            .filter_map(|&p| d.point(p).name.chars().next())
            .collect();
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub fixtures: Vec<ManifestEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub kind: FixtureKind,
    pub name: String,
    pub params: Vec<usize>,
    pub expect: BTreeMap<String, Value>,
    #[serde(default)]
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub key: String,
    pub expected: Value,
    pub found: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub file: String,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

impl EntryReport {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ManifestReport {
    pub entries: Vec<EntryReport>,
    pub warnings: Vec<String>,
}

impl ManifestReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(EntryReport::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryReport> {
        self.entries.iter().filter(|e| !e.pass())
    }
}

pub fn manifest_check(store: &Store) -> Result<ManifestReport, FixtureError> {
    let manifest = store.manifest()?;
    let mut report = ManifestReport::default();
    if manifest.fixtures.is_empty() {
        report.warnings.push("manifest lists no fixtures".into());
    }
    for e in &manifest.fixtures {
        let entry = match store.read(&e.file) {
            Ok(text) => check_entry(e, &text),
            Err(err) => EntryReport {
                file: e.file.clone(),
                checks: vec![],
                error: Some(err.to_string()),
            },
        };
        report.entries.push(entry);
    }
    Ok(report)
}

/// Recompute every expectation of one manifest entry against the given file text.
pub fn check_entry(e: &ManifestEntry, text: &str) -> EntryReport {
    let computed = parse(e.kind, &e.file, text).and_then(|f| {
        e.expect
            .keys()
            .map(|k| Ok((k.clone(), compute(&f, k).map_err(|m| io(&e.file, m))?)))
            .collect::<Result<BTreeMap<_, _>, FixtureError>>()
    });
    match computed {
        Err(err) => EntryReport {
            file: e.file.clone(),
            checks: vec![],
            error: Some(err.to_string()),
        },
        Ok(found) => EntryReport {
            file: e.file.clone(),
            checks: e
                .expect
                .iter()
                .map(|(k, v)| Check {
                    key: k.clone(),
                    expected: v.clone(),
                    found: found[k].clone(),
                    pass: found[k] == *v,
                })
                .collect(),
            error: None,
        },
    }
}

fn io(file: &str, msg: String) -> FixtureError {
    FixtureError::Io {
        file: file.to_string(),
        msg,
    }
}

fn rat_value(v: &num::BigRational) -> Value {
    match v.to_integer().to_i64() {
        Some(i) if v.is_integer() => json!(i),
        _ => json!(crate::surgery::fmt_rational(v)),
    }
}

fn compute(f: &Fixture, key: &str) -> Result<Value, String> {
    let unknown = || Err(format!("unknown expectation {key}"));
    let s = |e: &dyn std::fmt::Display| e.to_string();
    match f {
        Fixture::Diagram(d) => {
            let solver = || DomainSolver::new(d).map_err(|e| s(&e));
            let marked = || d.marked().ok_or_else(|| "no marked generator".to_string());
            let marked_grading = || -> Result<(crate::heegaard::Gradings, i64), String> {
                let gr = solver()?.gradings().map_err(|e| s(&e))?;
                let a = gr.of(marked()?).ok_or("marked generator ungraded")?;
                Ok((gr, a))
            };
            Ok(match key {
                "generators" => json!(d.generators().len()),
                "genus" => json!(d.genus()),
                "marked_alexander" => json!(marked_grading()?.1),
                "marked_unique" => {
                    let (gr, a) = marked_grading()?;
                    json!(gr.in_grading(a).len() == 1)
                }
                "marked_max" => {
                    let (gr, a) = marked_grading()?;
                    json!(gr.histogram().keys().last() == Some(&a))
                }
                "cycle" => json!(solver()?.verify_invariant_cycle().map_err(|e| s(&e))?),
                "periodic_trivial" => json!(solver()?.constrained_periodic_domains().is_empty()),
                "intersection_matrix" => {
                    let m = d.intersection_matrix(&[], &[]);
                    let rows: Vec<Vec<Value>> = (0..m.rows())
                        .map(|i| (0..m.cols()).map(|j| rat_value(m.get(i, j))).collect())
                        .collect();
                    json!(rows)
                }
                "census" => json!(census(d)),
                _ => return unknown(),
            })
        }
        Fixture::Complex(c) => {
            let h = || homology(c);
            Ok(match key {
                "generators" => json!(c.generators().len()),
                "arrows" => json!(c.arrows().len()),
                "towers" => json!(h().free_towers.len()),
                "torsion" => json!(h().torsion.len()),
                "marked_nonzero" => {
                    let h = h();
                    json!(!class_of(c, &h, &c.marked_chain()).map_err(|e| s(&e))?.is_zero())
                }
                "marked_is_u_multiple" => {
                    let h = h();
                    let cl = class_of(c, &h, &c.marked_chain()).map_err(|e| s(&e))?;
                    json!(!cl.is_zero() && cl.0.values().all(|p| !p.coeff(0)))
                }
                "quotient_acyclic" => {
                    let q = quotient_by_subcomplex(c, c.marked()).map_err(|e| s(&e))?;
                    json!(homology(&q).rank() == 0)
                }
                _ => return unknown(),
            })
        }
        Fixture::Surgery(p) => {
            let r = |v: Result<num::BigRational, SurgeryError>| v.map(|v| rat_value(&v)).map_err(|e| s(&e));
            Ok(match key {
                "tb" => r(tb_after_surgery(p))?,
                "rot" => r(rot_after_surgery(p))?,
                "d3" => r(d3(p))?,
                "signature" => json!(cobordism_signature(p).map_err(|e| s(&e))?),
                "det_abs" => {
                    let m = framed_linking_matrix(p, false, None);
                    r(crate::exact_linalg::det(&m).map(|v| v.abs()).map_err(SurgeryError::from))?
                }
                _ => return unknown(),
            })
        }
    }
}
