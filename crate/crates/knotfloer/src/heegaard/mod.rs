//! Combinatorial doubly pointed Heegaard diagrams.
//!
//! A diagram is stored as its α and β curves (cyclic, oriented sequences of
//! intersection points), the sign of every point, and for each point the four
//! regions meeting there, listed counterclockwise starting from the quadrant
//! spanned by the positive α and positive β directions.

mod differentials;
mod domains;
mod sum;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::RatMatrix;

pub use crate::exact_linalg::Rref;
pub use differentials::{homology_in_grading, DiffArrow, DomainKind, GradingHomology};
pub use domains::{alexander_normalize, Domain, DomainConstraint, DomainSolver, Gradings};
pub use sum::{bigrading, connected_sum_diagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeegaardError {
    #[error("malformed diagram: {0}")]
    Parse(String),
    #[error("{0} alpha curves but {1} beta curves")]
    CurveCount(usize, usize),
    #[error("point {0} is not listed in the points table")]
    UnknownPoint(String),
    #[error("point {point} lies on {found} {family} curves")]
    PointIncidence {
        point: String,
        family: &'static str,
        found: usize,
    },
    #[error("unknown region {0}")]
    UnknownRegion(String),
    #[error("point {0} has sign other than ±1")]
    BadSign(String),
    #[error("regions around {point} disagree with the {curve} edge to {next}")]
    Quadrants {
        point: String,
        next: String,
        curve: String,
    },
    #[error("Euler characteristic {found} does not match genus {genus}")]
    Euler { found: i64, genus: usize },
    #[error("marked points {0:?} do not form a generator")]
    MarkedNotGenerator(Vec<String>),
    #[error("diagram has no marked generator")]
    NoMarked,
    #[error("ambient manifold is not a rational homology sphere")]
    NotRationalHomologySphere,
    #[error("Alexander normalization is ambiguous")]
    AmbiguousNormalization,
    #[error("undetermined arrows: {0:?}")]
    Undetermined(Vec<(String, String)>),
    #[error("diagram has no region m")]
    MissingM,
    #[error(transparent)]
    Complex(#[from] crate::complexes::ComplexError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawPoint {
    quadrants: [String; 4],
    sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawRegion {
    chi: i64,
}

/// Hand-resolved count of holomorphic representatives for a non-rectangular domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Override {
    pub from: String,
    pub to: String,
    pub count: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawDiagram {
    alpha: Vec<Vec<String>>,
    beta: Vec<Vec<String>>,
    points: BTreeMap<String, RawPoint>,
    regions: BTreeMap<String, RawRegion>,
    w: String,
    z: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<String>,
    #[serde(default)]
    marked: Vec<String>,
    #[serde(default)]
    overrides: Vec<Override>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointIx(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionIx(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub name: String,
    pub alpha: usize,
    pub beta: usize,
    pub sign: i8,
    /// Counterclockwise from the (+α, +β) quadrant.
    pub quadrants: [RegionIx; 4],
}

/// The four quadrants at a point named by the α and β directions bounding them.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Quad {
    pp: RegionIx,
    mp: RegionIx,
    mm: RegionIx,
    pm: RegionIx,
}

impl Point {
    pub(crate) fn quad(&self) -> Quad {
        let q = self.quadrants;
        if self.sign > 0 {
            Quad { pp: q[0], mp: q[1], mm: q[2], pm: q[3] }
        } else {
            Quad { pp: q[0], pm: q[1], mm: q[2], mp: q[3] }
        }
    }

    /// (left, right) of the α curve on its outgoing and incoming edges.
    fn alpha_sides(&self) -> ((RegionIx, RegionIx), (RegionIx, RegionIx)) {
        let q = self.quad();
        if self.sign > 0 {
            ((q.pp, q.pm), (q.mp, q.mm))
        } else {
            ((q.pm, q.pp), (q.mm, q.mp))
        }
    }

    fn beta_sides(&self) -> ((RegionIx, RegionIx), (RegionIx, RegionIx)) {
        let q = self.quad();
        if self.sign > 0 {
            ((q.mp, q.pp), (q.mm, q.pm))
        } else {
            ((q.pp, q.mp), (q.pm, q.mm))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub name: String,
    pub chi: i64,
}

/// A g-tuple of intersection points, one on each α and each β curve, listed in α order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(pub Vec<PointIx>);

/// Validated diagram; immutable.
#[derive(Clone, Debug)]
pub struct HeegaardDiagram {
    alpha: Vec<Vec<PointIx>>,
    beta: Vec<Vec<PointIx>>,
    points: Vec<Point>,
    regions: Vec<Region>,
    w: RegionIx,
    z: RegionIx,
    m: Option<RegionIx>,
    marked: Option<Generator>,
    overrides: Vec<Override>,
    point_index: HashMap<String, PointIx>,
}

impl HeegaardDiagram {
    pub fn from_json(text: &str) -> Result<Self, HeegaardError> {
        let raw: RawDiagram =
            serde_json::from_str(text).map_err(|e| HeegaardError::Parse(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawDiagram) -> Result<Self, HeegaardError> {
        if raw.alpha.len() != raw.beta.len() {
            return Err(HeegaardError::CurveCount(raw.alpha.len(), raw.beta.len()));
        }
        let region_index: HashMap<&str, RegionIx> = raw
            .regions
            .keys()
            .enumerate()
            .map(|(i, k)| (k.as_str(), RegionIx(i)))
            .collect();
        let region = |name: &str| {
            region_index
                .get(name)
                .copied()
                .ok_or_else(|| HeegaardError::UnknownRegion(name.to_string()))
        };
        let mut point_index = HashMap::new();
        let mut points = Vec::new();
        for (name, p) in &raw.points {
            if p.sign != 1 && p.sign != -1 {
                return Err(HeegaardError::BadSign(name.clone()));
            }
            let mut quadrants = [RegionIx(0); 4];
            for (q, r) in quadrants.iter_mut().zip(&p.quadrants) {
                *q = region(r)?;
            }
            point_index.insert(name.clone(), PointIx(points.len()));
            points.push(Point {
                name: name.clone(),
                alpha: usize::MAX,
                beta: usize::MAX,
                sign: p.sign,
                quadrants,
            });
        }
        let mut curves = |seqs: &[Vec<String>], family: &'static str| {
            let mut out = Vec::new();
            let mut seen: HashMap<PointIx, usize> = HashMap::new();
            for (c, seq) in seqs.iter().enumerate() {
                let mut ixs = Vec::new();
                for name in seq {
                    let &ix = point_index
                        .get(name)
                        .ok_or_else(|| HeegaardError::UnknownPoint(name.clone()))?;
                    *seen.entry(ix).or_default() += 1;
                    let p = &mut points[ix.0];
                    if family == "alpha" {
                        p.alpha = c;
                    } else {
                        p.beta = c;
                    }
                    ixs.push(ix);
                }
                out.push(ixs);
            }
            for (i, p) in raw.points.keys().enumerate() {
                let found = seen.get(&PointIx(i)).copied().unwrap_or(0);
                if found != 1 {
                    return Err(HeegaardError::PointIncidence {
                        point: p.clone(),
                        family,
                        found,
                    });
                }
            }
            Ok(out)
        };
        let alpha = curves(&raw.alpha, "alpha")?;
        let beta = curves(&raw.beta, "beta")?;
        let regions = raw
            .regions
            .iter()
            .map(|(k, r)| Region {
                name: k.clone(),
                chi: r.chi,
            })
            .collect();
        let mut d = HeegaardDiagram {
            alpha,
            beta,
            points,
            regions,
            w: region(&raw.w)?,
            z: region(&raw.z)?,
            m: raw.m.as_deref().map(region).transpose()?,
            marked: None,
            overrides: raw.overrides,
            point_index,
        };
        d.check_edges()?;
        d.check_euler()?;
        if !raw.marked.is_empty() {
            d.marked = Some(d.generator_from_names(&raw.marked)?);
        }
        Ok(d)
    }

    fn check_edges(&self) -> Result<(), HeegaardError> {
        for (family, curves) in [("alpha", &self.alpha), ("beta", &self.beta)] {
            for (c, seq) in curves.iter().enumerate() {
                for (i, &p) in seq.iter().enumerate() {
                    let q = seq[(i + 1) % seq.len()];
                    let (pp, qq) = (&self.points[p.0], &self.points[q.0]);
                    let (out_p, in_q) = if family == "alpha" {
                        (pp.alpha_sides().0, qq.alpha_sides().1)
                    } else {
                        (pp.beta_sides().0, qq.beta_sides().1)
                    };
                    if out_p != in_q {
                        return Err(HeegaardError::Quadrants {
                            point: pp.name.clone(),
                            next: qq.name.clone(),
                            curve: format!("{family}{}", c + 1),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_euler(&self) -> Result<(), HeegaardError> {
        let g = self.genus();
        let chi: i64 =
            self.regions.iter().map(|r| r.chi).sum::<i64>() - self.points.len() as i64;
        if chi != 2 - 2 * g as i64 {
            return Err(HeegaardError::Euler { found: chi, genus: g });
        }
        Ok(())
    }

    fn to_raw(&self) -> RawDiagram {
        let names = |seqs: &[Vec<PointIx>]| -> Vec<Vec<String>> {
            seqs.iter()
                .map(|s| s.iter().map(|p| self.points[p.0].name.clone()).collect())
                .collect()
        };
        let rn = |r: RegionIx| self.regions[r.0].name.clone();
        RawDiagram {
            alpha: names(&self.alpha),
            beta: names(&self.beta),
            points: self
                .points
                .iter()
                .map(|p| {
                    (
                        p.name.clone(),
                        RawPoint {
                            quadrants: p.quadrants.map(rn),
                            sign: p.sign,
                        },
                    )
                })
                .collect(),
            regions: self
                .regions
                .iter()
                .map(|r| (r.name.clone(), RawRegion { chi: r.chi }))
                .collect(),
            w: rn(self.w),
            z: rn(self.z),
            m: self.m.map(rn),
            marked: self
                .marked
                .as_ref()
                .map(|g| g.0.iter().map(|p| self.points[p.0].name.clone()).collect())
                .unwrap_or_default(),
            overrides: self.overrides.clone(),
        }
    }

    /// Canonical serialization: keys sorted, two-space indentation.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("diagram serializes")
    }

    pub fn genus(&self) -> usize {
        self.alpha.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, ix: PointIx) -> &Point {
        &self.points[ix.0]
    }

    pub fn point_ix(&self, name: &str) -> Option<PointIx> {
        self.point_index.get(name).copied()
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_ix(&self, name: &str) -> Option<RegionIx> {
        self.regions.iter().position(|r| r.name == name).map(RegionIx)
    }

    pub fn alpha(&self) -> &[Vec<PointIx>] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Vec<PointIx>] {
        &self.beta
    }

    pub fn w(&self) -> RegionIx {
        self.w
    }

    pub fn z(&self) -> RegionIx {
        self.z
    }

    pub fn m(&self) -> Option<RegionIx> {
        self.m
    }

    pub fn marked(&self) -> Option<&Generator> {
        self.marked.as_ref()
    }

    pub fn overrides(&self) -> &[Override] {
        &self.overrides
    }

    /// Same diagram with a different marked generator.
    pub fn with_marked<S: AsRef<str>>(&self, names: &[S]) -> Result<Self, HeegaardError> {
        let mut d = self.clone();
        d.marked = if names.is_empty() {
            None
        } else {
            Some(self.generator_from_names(names)?)
        };
        Ok(d)
    }

    /// Same diagram with the basepoints moved.
    pub fn with_basepoints(&self, w: &str, z: &str) -> Result<Self, HeegaardError> {
        let mut d = self.clone();
        d.w = self
            .region_ix(w)
            .ok_or_else(|| HeegaardError::UnknownRegion(w.into()))?;
        d.z = self
            .region_ix(z)
            .ok_or_else(|| HeegaardError::UnknownRegion(z.into()))?;
        Ok(d)
    }

    pub fn generator_from_names<S: AsRef<str>>(
        &self,
        names: &[S],
    ) -> Result<Generator, HeegaardError> {
        let bad = || HeegaardError::MarkedNotGenerator(names.iter().map(|s| s.as_ref().to_string()).collect());
        let mut pts = Vec::new();
        for n in names {
            pts.push(
                self.point_ix(n.as_ref())
                    .ok_or_else(|| HeegaardError::UnknownPoint(n.as_ref().to_string()))?,
            );
        }
        let g = self.genus();
        let alphas: BTreeSet<usize> = pts.iter().map(|p| self.points[p.0].alpha).collect();
        let betas: BTreeSet<usize> = pts.iter().map(|p| self.points[p.0].beta).collect();
        if pts.len() != g || alphas.len() != g || betas.len() != g {
            return Err(bad());
        }
        pts.sort_by_key(|p| self.points[p.0].alpha);
        Ok(Generator(pts))
    }

    /// Concatenated point names in α order.
    pub fn generator_name(&self, x: &Generator) -> String {
        x.0.iter().map(|p| self.points[p.0].name.as_str()).collect()
    }

    /// All generators by backtracking over the α curves; order is lexicographic in curve position.
    pub fn generators(&self) -> Vec<Generator> {
        let g = self.genus();
        let mut out = Vec::new();
        let mut used = vec![false; g];
        let mut cur = Vec::with_capacity(g);
        self.extend_generators(0, &mut used, &mut cur, &mut out);
        out
    }

    fn extend_generators(
        &self,
        a: usize,
        used: &mut [bool],
        cur: &mut Vec<PointIx>,
        out: &mut Vec<Generator>,
    ) {
        if a == self.alpha.len() {
            out.push(Generator(cur.clone()));
            return;
        }
        for &p in &self.alpha[a] {
            let b = self.points[p.0].beta;
            if used[b] {
                continue;
            }
            used[b] = true;
            cur.push(p);
            self.extend_generators(a + 1, used, cur, out);
            cur.pop();
            used[b] = false;
        }
    }

    /// Signed intersection matrix (α_i · β_j) after reversing the flagged curves.
    pub fn intersection_matrix(&self, flip_alpha: &[bool], flip_beta: &[bool]) -> RatMatrix {
        let g = self.genus();
        let mut m = vec![vec![0i64; g]; g];
        for p in &self.points {
            let mut s = i64::from(p.sign);
            if flip_alpha.get(p.alpha).copied().unwrap_or(false) {
                s = -s;
            }
            if flip_beta.get(p.beta).copied().unwrap_or(false) {
                s = -s;
            }
            m[p.alpha][p.beta] += s;
        }
        RatMatrix::from_int_rows(&m).expect("square")
    }

    pub fn geometric_intersections(&self) -> Vec<Vec<usize>> {
        let g = self.genus();
        let mut m = vec![vec![0; g]; g];
        for p in &self.points {
            m[p.alpha][p.beta] += 1;
        }
        m
    }

    /// Sign of the generator in the Euler characteristic: permutation sign times point signs.
    pub fn generator_sign(&self, x: &Generator) -> i64 {
        let perm: Vec<usize> = x.0.iter().map(|p| self.points[p.0].beta).collect();
        let mut inv = 0;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        let s: i64 = x.0.iter().map(|p| i64::from(self.points[p.0].sign)).product();
        if inv % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// Number of quadrant corners of each region.
    pub(crate) fn corner_counts(&self) -> Vec<i64> {
        let mut c = vec![0i64; self.regions.len()];
        for p in &self.points {
            for q in p.quadrants {
                c[q.0] += 1;
            }
        }
        c
    }
}

pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn is_integral(v: &BigRational) -> bool {
    v.is_integer() || v.is_zero()
}
