//! Classical invariants of Legendrian knots given by contact (±1)-surgery diagrams.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::{det, signature, solve, LinalgError, RatMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("linking matrix is singular: the surgered manifold is not a rational homology sphere")]
    Singular,
    #[error("distinguished knot is not null-homologous after surgery")]
    NotNullHomologous,
    #[error("presentation has no distinguished knot")]
    NoKnot,
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryComponent {
    pub tb0: i64,
    pub rot0: i64,
    /// Contact surgery coefficient, +1 or −1.
    pub sign: i64,
}

impl SurgeryComponent {
    pub fn framing(&self) -> i64 {
        self.tb0 + self.sign
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishedKnot {
    pub tb0: i64,
    pub rot0: i64,
    pub linkings: Vec<i64>,
}

/// Legendrian surgery link plus an unframed Legendrian knot in its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryPresentation {
    pub components: Vec<SurgeryComponent>,
    /// Pairwise linking numbers; diagonal entries are ignored.
    pub linking: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knot: Option<DistinguishedKnot>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl SurgeryPresentation {
    pub fn from_json(text: &str) -> Result<Self, SurgeryError> {
        let p: Self =
            serde_json::from_str(text).map_err(|e| SurgeryError::Invalid(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SurgeryError> {
        let n = self.components.len();
        if self.linking.len() != n || self.linking.iter().any(|r| r.len() != n) {
            return Err(SurgeryError::Invalid(format!(
                "linking matrix must be {n}x{n}"
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if self.linking[i][j] != self.linking[j][i] {
                    return Err(SurgeryError::Invalid(format!(
                        "linking not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        if let Some(c) = self.components.iter().find(|c| c.sign.abs() != 1) {
            return Err(SurgeryError::Invalid(format!(
                "contact coefficient {} is not ±1",
                c.sign
            )));
        }
        if let Some(k) = &self.knot {
            if k.linkings.len() != n {
                return Err(SurgeryError::Invalid(format!(
                    "knot has {} linkings for {n} components",
                    k.linkings.len()
                )));
            }
        }
        Ok(())
    }

    fn knot(&self) -> Result<&DistinguishedKnot, SurgeryError> {
        self.knot.as_ref().ok_or(SurgeryError::NoKnot)
    }

    /// Number of contact (+1)-surgeries.
    pub fn plus_count(&self) -> i64 {
        self.components.iter().filter(|c| c.sign > 0).count() as i64
    }

    fn rotations(&self) -> Vec<BigRational> {
        self.components.iter().map(|c| q(c.rot0)).collect()
    }

    fn knot_linkings(&self) -> Result<Vec<BigRational>, SurgeryError> {
        Ok(self.knot()?.linkings.iter().map(|&v| q(v)).collect())
    }

    /// Same presentation with components reordered: new component `i` is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        SurgeryPresentation {
            components: perm.iter().map(|&i| self.components[i].clone()).collect(),
            linking: perm
                .iter()
                .map(|&i| perm.iter().map(|&j| self.linking[i][j]).collect())
                .collect(),
            knot: self.knot.as_ref().map(|k| DistinguishedKnot {
                tb0: k.tb0,
                rot0: k.rot0,
                linkings: perm.iter().map(|&i| k.linkings[i]).collect(),
            }),
        }
    }

    /// Reverse the orientation of the distinguished knot.
    pub fn reversed_knot(&self) -> Self {
        let mut p = self.clone();
        if let Some(k) = &mut p.knot {
            k.rot0 = -k.rot0;
            k.linkings.iter_mut().for_each(|v| *v = -*v);
        }
        p
    }
}

/// Linking matrix with framings `a_i = tb0_i + sign_i` on the diagonal, optionally
/// bordered by the distinguished knot with diagonal entry `a0` (default 0).
pub fn framed_linking_matrix(
    p: &SurgeryPresentation,
    include_distinguished: bool,
    a0: Option<BigRational>,
) -> RatMatrix {
    let n = p.components.len();
    let off = usize::from(include_distinguished);
    let mut m = RatMatrix::zeros(n + off, n + off);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j {
                p.components[i].framing()
            } else {
                p.linking[i][j]
            };
            m.set(i + off, j + off, q(v));
        }
    }
    if include_distinguished {
        m.set(0, 0, a0.unwrap_or_else(BigRational::zero));
        if let Some(k) = &p.knot {
            for (i, &l) in k.linkings.iter().enumerate() {
                m.set(0, i + 1, q(l));
                m.set(i + 1, 0, q(l));
            }
        }
    }
    m
}

fn nonsingular(p: &SurgeryPresentation) -> Result<(RatMatrix, BigRational), SurgeryError> {
    let m = framed_linking_matrix(p, false, None);
    let d = det(&m)?;
    if d.is_zero() {
        return Err(SurgeryError::Singular);
    }
    Ok((m, d))
}

fn linking_solution(p: &SurgeryPresentation) -> Result<Vec<BigRational>, SurgeryError> {
    let (m, _) = nonsingular(p)?;
    let lam = p.knot_linkings()?;
    if lam.is_empty() {
        return Ok(lam);
    }
    let x = solve(&m, &lam)?;
    // [L₀] = Σ lk(L₀, Lᵢ)·μᵢ vanishes in H₁ iff M⁻¹Λ is integral
    if x.iter().any(|v| !v.is_integer()) {
        return Err(SurgeryError::NotNullHomologous);
    }
    Ok(x)
}

pub fn tb_after_surgery(p: &SurgeryPresentation) -> Result<BigRational, SurgeryError> {
    let tb0 = q(p.knot()?.tb0);
    if p.components.is_empty() {
        return Ok(tb0);
    }
    let (_, d) = nonsingular(p)?;
    linking_solution(p)?;
    let full = det(&framed_linking_matrix(p, true, None))?;
    Ok(tb0 + full / d)
}

pub fn rot_after_surgery(p: &SurgeryPresentation) -> Result<BigRational, SurgeryError> {
    let r0 = q(p.knot()?.rot0);
    if p.components.is_empty() {
        return Ok(r0);
    }
    let x = linking_solution(p)?;
    let pairing = p
        .rotations()
        .iter()
        .zip(&x)
        .fold(BigRational::zero(), |acc, (r, v)| acc + r * v);
    Ok(r0 - pairing)
}

/// Hopf invariant of the surgered contact structure, `(c² − 3σ − 2b₂)/4 + q`.
pub fn d3(p: &SurgeryPresentation) -> Result<BigRational, SurgeryError> {
    let (m, _) = nonsingular(p)?;
    let r = p.rotations();
    let c2 = if r.is_empty() {
        BigRational::zero()
    } else {
        r.iter()
            .zip(solve(&m, &r)?)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    };
    let sigma = signature(&m)?;
    let b2 = p.components.len() as i64;
    Ok((c2 - q(3 * sigma) - q(2 * b2)) / q(4) + q(p.plus_count()))
}

/// Signature of the surgery cobordism.
pub fn cobordism_signature(p: &SurgeryPresentation) -> Result<i64, SurgeryError> {
    Ok(signature(&framed_linking_matrix(p, false, None))?)
}

/// c² for the class determined by the rotation numbers.
pub fn c_squared(p: &SurgeryPresentation) -> Result<BigRational, SurgeryError> {
    let (m, _) = nonsingular(p)?;
    let r = p.rotations();
    Ok(r.iter()
        .zip(solve(&m, &r)?)
        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
}

/// Self-linking of the positive transverse push-off.
pub fn self_linking(tb: &BigRational, rot: &BigRational) -> BigRational {
    tb - rot
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalInvariants {
    pub tb: BigRational,
    pub rot: BigRational,
    pub sl: BigRational,
    pub d3: Option<BigRational>,
}

impl ClassicalInvariants {
    pub fn new(tb: BigRational, rot: BigRational, d3: Option<BigRational>) -> Self {
        let sl = self_linking(&tb, &rot);
        ClassicalInvariants { tb, rot, sl, d3 }
    }

    /// Invariants of the presented knot; d3 is absent when the surgered manifold is not a ℚHS³.
    pub fn of(p: &SurgeryPresentation) -> Result<Self, SurgeryError> {
        let tb = tb_after_surgery(p)?;
        let rot = rot_after_surgery(p)?;
        let d3 = if p.components.is_empty() {
            Some(BigRational::zero())
        } else {
            d3(p).ok()
        };
        Ok(Self::new(tb, rot, d3))
    }

    pub fn is_integral(&self) -> bool {
        [&self.tb, &self.rot].iter().all(|v| v.is_integer())
            && self.d3.as_ref().is_none_or(BigRational::is_integer)
    }
}

/// Legendrian connected sum: tb adds with a +1 correction, rot and d3 add.
pub fn connected_sum(a: &ClassicalInvariants, b: &ClassicalInvariants) -> ClassicalInvariants {
    let d3 = match (&a.d3, &b.d3) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    ClassicalInvariants::new(&a.tb + &b.tb + BigRational::one(), &a.rot + &b.rot, d3)
}

/// Render an exact rational as an integer when possible.
pub fn fmt_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom().abs())
    }
}
