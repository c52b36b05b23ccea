//! Connected sums of doubly pointed diagrams and the induced bigrading.

use std::collections::BTreeMap;

use num::ToPrimitive;

use super::domains::{DomainConstraint, DomainSolver};
use super::{Generator, HeegaardDiagram, HeegaardError, RawDiagram, RawPoint, RawRegion};

const MERGED: &str = "m";

fn prefixed(tag: &str, name: &str) -> String {
    format!("{tag}{name}")
}

/// Σ₁ # Σ₂ formed inside the regions of z₁ and w₂; basepoints (w₁, z₂), third point m in the merged region.
/// Point names get the prefixes `1.` and `2.`; overrides are dropped since generator names change.
pub fn connected_sum_diagram(
    d1: &HeegaardDiagram,
    d2: &HeegaardDiagram,
) -> Result<HeegaardDiagram, HeegaardError> {
    let (r1, r2) = (d1.to_raw(), d2.to_raw());
    let region_name = |tag: &str, r: &str, merged: &str| {
        if r == merged {
            MERGED.to_string()
        } else {
            prefixed(tag, r)
        }
    };
    let mut points = BTreeMap::new();
    let mut regions = BTreeMap::new();
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut marked = Vec::new();
    for (tag, raw, merged) in [("1.", &r1, r1.z.as_str()), ("2.", &r2, r2.w.as_str())] {
        for (name, p) in &raw.points {
            points.insert(
                prefixed(tag, name),
                RawPoint {
                    quadrants: p.quadrants.clone().map(|q| region_name(tag, &q, merged)),
                    sign: p.sign,
                },
            );
        }
        for (name, r) in &raw.regions {
            if name != merged {
                regions.insert(prefixed(tag, name), r.clone());
            }
        }
        let rename = |seqs: &[Vec<String>]| -> Vec<Vec<String>> {
            seqs.iter()
                .map(|s| s.iter().map(|p| prefixed(tag, p)).collect())
                .collect()
        };
        alpha.extend(rename(&raw.alpha));
        beta.extend(rename(&raw.beta));
        marked.extend(raw.marked.iter().map(|p| prefixed(tag, p)));
    }
    // two open disks removed and an annulus glued in
    let chi = r1.regions[&r1.z].chi + r2.regions[&r2.w].chi - 2;
    regions.insert(MERGED.to_string(), RawRegion { chi });
    let both_marked = !r1.marked.is_empty() && !r2.marked.is_empty();
    let raw = RawDiagram {
        alpha,
        beta,
        points,
        regions,
        w: prefixed("1.", &r1.w),
        z: prefixed("2.", &r2.z),
        m: Some(MERGED.to_string()),
        marked: if both_marked { marked } else { Vec::new() },
        overrides: Vec::new(),
    };
    HeegaardDiagram::from_raw(raw)
}

impl<'a> DomainSolver<'a> {
    /// (s₁(x) − s₁(y), s₂(x) − s₂(y)) with s₁ measured by n_m − n_w and s₂ by n_z − n_m.
    pub fn rel_bigrading(&self, x: &Generator, y: &Generator) -> Result<Option<(i64, i64)>, HeegaardError> {
        let d = self.diagram();
        let m = d.m().ok_or(HeegaardError::MissingM)?;
        let Some(dom) = self.connect(x, y, DomainConstraint::NONE) else {
            return Ok(None);
        };
        let (nw, nz, nm) = (dom.at(d.w()), dom.at(d.z()), dom.at(m));
        let s1 = (nm - nw).to_i64().expect("fits");
        let s2 = (nz - nm).to_i64().expect("fits");
        Ok(Some((s1, s2)))
    }
}

/// Absolute bigrading of a product generator, pinned so the sum equals its Alexander grading and
/// the first coordinate matches the first summand's normalization on a reference generator.
pub fn bigrading(
    solver: &DomainSolver<'_>,
    x: &Generator,
    reference: &Generator,
    reference_grading: (i64, i64),
) -> Result<Option<(i64, i64)>, HeegaardError> {
    Ok(solver
        .rel_bigrading(x, reference)?
        .map(|(a, b)| (a + reference_grading.0, b + reference_grading.1)))
}
