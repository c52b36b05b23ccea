//! Domains: 2-chains of regions whose boundary runs from one generator to another.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::{is_integral, rat, Generator, HeegaardDiagram, HeegaardError, RegionIx};
use crate::exact_linalg::{RatMatrix, Rref};

/// Integer multiplicities, one per region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain(pub Vec<BigInt>);

impl Domain {
    pub fn at(&self, r: RegionIx) -> &BigInt {
        &self.0[r.0]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|m| !m.is_negative())
    }

    pub fn support(&self) -> impl Iterator<Item = RegionIx> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, _)| RegionIx(i))
    }
}

/// Which basepoint multiplicities are forced to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainConstraint {
    pub nz: bool,
    pub nw: bool,
}

impl DomainConstraint {
    pub const NONE: Self = Self { nz: false, nw: false };
    pub const Z: Self = Self { nz: true, nw: false };
    pub const W: Self = Self { nz: false, nw: true };
    pub const ZW: Self = Self { nz: true, nw: true };
}

/// Row-reduced corner equations of a diagram, reused across all domain queries.
///
/// At each point p the corner equation reads
/// `s_p (D(q++) − D(q+−) − D(q−+) + D(q−−)) = x_p − y_p`
/// for a domain from x to y.
pub struct DomainSolver<'a> {
    d: &'a HeegaardDiagram,
    rref_z: Rref,
    rref_w: Rref,
    rref_zw: Rref,
    corners: RatMatrix,
}

impl<'a> DomainSolver<'a> {
    pub fn new(d: &'a HeegaardDiagram) -> Result<Self, HeegaardError> {
        let corners = corner_matrix(d);
        let with = |extra: &[RegionIx]| {
            let mut rows: Vec<Vec<BigRational>> =
                (0..corners.rows()).map(|i| corners.row(i).to_vec()).collect();
            for r in extra {
                let mut row = vec![BigRational::zero(); d.regions.len()];
                row[r.0] = BigRational::one();
                rows.push(row);
            }
            RatMatrix::from_rows(rows).expect("rectangular").rref()
        };
        let s = DomainSolver {
            d,
            rref_z: with(&[d.z]),
            rref_w: with(&[d.w]),
            rref_zw: with(&[d.z, d.w]),
            corners,
        };
        if !s.rref_zw.kernel().is_empty() {
            return Err(HeegaardError::NotRationalHomologySphere);
        }
        Ok(s)
    }

    pub fn diagram(&self) -> &HeegaardDiagram {
        self.d
    }

    /// The domain from x to y satisfying the constraint, if one exists over ℤ.
    /// Without constraints the representative with `n_z = 0` is returned.
    pub fn connect(&self, x: &Generator, y: &Generator, c: DomainConstraint) -> Option<Domain> {
        let (rref, extra) = match (c.nz, c.nw) {
            (true, true) => (&self.rref_zw, 2),
            (false, true) => (&self.rref_w, 1),
            _ => (&self.rref_z, 1),
        };
        let mut rhs = vec![BigRational::zero(); self.d.points.len() + extra];
        for p in &x.0 {
            rhs[p.0] += BigRational::one();
        }
        for p in &y.0 {
            rhs[p.0] -= BigRational::one();
        }
        let sol = rref.solve(&rhs)?;
        if !sol.particular.iter().all(is_integral) {
            return None;
        }
        Some(Domain(sol.particular.iter().map(|v| v.to_integer()).collect()))
    }

    /// A(x) − A(y) = n_z(D) − n_w(D) for any domain D from x to y.
    pub fn rel_alexander(&self, x: &Generator, y: &Generator) -> Option<i64> {
        let dom = self.connect(x, y, DomainConstraint::Z)?;
        (-dom.at(self.d.w)).to_i64()
    }

    /// Combinatorial Maslov index e(D) + n_x(D) + n_y(D).
    pub fn maslov_index(&self, dom: &Domain, x: &Generator, y: &Generator) -> BigRational {
        let corners = self.d.corner_counts();
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        let mut e = BigRational::zero();
        for (i, m) in dom.0.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let r = &self.d.regions[i];
            e += BigRational::from_integer(m.clone())
                * (rat(r.chi) - rat(corners[i]) * &quarter);
        }
        let point_measure = |g: &Generator| {
            let mut s = BigRational::zero();
            for p in &g.0 {
                for q in self.d.points[p.0].quadrants {
                    s += BigRational::from_integer(dom.0[q.0].clone());
                }
            }
            s * &quarter
        };
        e + point_measure(x) + point_measure(y)
    }

    /// Point weights c with A(x) = Σ_{p∈x} c_p up to a constant.
    pub fn point_weights(&self) -> Option<Vec<BigRational>> {
        let n = self.d.regions.len();
        let mut rhs = vec![BigRational::zero(); n];
        rhs[self.d.z.0] += BigRational::one();
        rhs[self.d.w.0] -= BigRational::one();
        let sol = self.corners.transpose().rref().solve(&rhs)?;
        Some(sol.particular)
    }

    /// Relative Alexander gradings of all generators via point weights.
    pub fn gradings(&self) -> Result<Gradings, HeegaardError> {
        let weights = self
            .point_weights()
            .ok_or(HeegaardError::NotRationalHomologySphere)?;
        let generators = self.d.generators();
        let raw: Vec<BigRational> = generators
            .iter()
            .map(|g| g.0.iter().map(|p| weights[p.0].clone()).sum())
            .collect();
        let base = raw.first().cloned().unwrap_or_else(BigRational::zero);
        let mut relative = Vec::with_capacity(raw.len());
        for v in &raw {
            let dv = v - &base;
            if !is_integral(&dv) {
                return Err(HeegaardError::NotRationalHomologySphere);
            }
            relative.push(dv.to_integer().to_i64().expect("grading fits i64"));
        }
        let shift = alexander_normalize(&relative)?;
        let absolute = relative.iter().map(|a| a + shift).collect();
        Ok(Gradings {
            generators,
            relative,
            absolute,
        })
    }

    /// True iff no nonzero domain with `n_z = 0` from the marked generator is nonnegative.
    pub fn verify_invariant_cycle(&self) -> Result<bool, HeegaardError> {
        let x = self.d.marked().ok_or(HeegaardError::NoMarked)?;
        for y in self.d.generators() {
            if &y == x {
                continue;
            }
            if let Some(dom) = self.connect(x, &y, DomainConstraint::Z) {
                if !dom.is_zero() && dom.is_nonnegative() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Nonzero periodic domains avoiding both basepoints (empty for rational homology spheres).
    pub fn constrained_periodic_domains(&self) -> Vec<Vec<BigRational>> {
        self.rref_zw.kernel()
    }
}

fn corner_matrix(d: &HeegaardDiagram) -> RatMatrix {
    let n = d.regions.len();
    let rows = d
        .points
        .iter()
        .map(|p| {
            let q = p.quad();
            let s = i64::from(p.sign);
            let mut row = vec![BigRational::zero(); n];
            for (r, c) in [(q.pp, 1), (q.pm, -1), (q.mp, -1), (q.mm, 1)] {
                row[r.0] += rat(s * c);
            }
            row
        })
        .collect();
    RatMatrix::from_rows(rows).expect("rectangular")
}

/// Generators with their Alexander gradings; `absolute` is normalized by parity symmetry.
#[derive(Clone, Debug)]
pub struct Gradings {
    pub generators: Vec<Generator>,
    pub relative: Vec<i64>,
    pub absolute: Vec<i64>,
}

impl Gradings {
    pub fn of(&self, x: &Generator) -> Option<i64> {
        self.generators
            .iter()
            .position(|g| g == x)
            .map(|i| self.absolute[i])
    }

    pub fn histogram(&self) -> BTreeMap<i64, usize> {
        let mut h = BTreeMap::new();
        for &a in &self.absolute {
            *h.entry(a).or_default() += 1;
        }
        h
    }

    pub fn in_grading(&self, a: i64) -> Vec<&Generator> {
        self.generators
            .iter()
            .zip(&self.absolute)
            .filter(|(_, &b)| b == a)
            .map(|(g, _)| g)
            .collect()
    }
}

/// The unique shift making the set of gradings with an odd number of generators symmetric about 0.
pub fn alexander_normalize(relative: &[i64]) -> Result<i64, HeegaardError> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &a in relative {
        *counts.entry(a).or_default() += 1;
    }
    let odd: Vec<i64> = counts
        .iter()
        .filter(|(_, &c)| c % 2 == 1)
        .map(|(&a, _)| a)
        .collect();
    let (Some(&lo), Some(&hi)) = (odd.first(), odd.last()) else {
        return Err(HeegaardError::AmbiguousNormalization);
    };
    if (lo + hi) % 2 != 0 {
        return Err(HeegaardError::AmbiguousNormalization);
    }
    let shift = -(lo + hi) / 2;
    let symmetric = odd.iter().all(|a| odd.binary_search(&(-(a + shift) - shift)).is_ok());
    if !symmetric {
        return Err(HeegaardError::AmbiguousNormalization);
    }
    Ok(shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_single() {
        assert_eq!(alexander_normalize(&[5]).unwrap(), -5);
    }

    #[test]
    fn normalize_symmetric_odd_set() {
        assert_eq!(alexander_normalize(&[0, 1, 2, 5, 5]).unwrap(), -1);
    }

    #[test]
    fn normalize_rejects_asymmetric() {
        assert!(alexander_normalize(&[0, 1, 3]).is_err());
        assert!(alexander_normalize(&[1, 1]).is_err());
    }
}
