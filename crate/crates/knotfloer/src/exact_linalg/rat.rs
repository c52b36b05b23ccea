use std::fmt;

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

use super::LinalgError;

/// Dense matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| q(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row echelon form together with the row operations used.
    pub fn rref(&self) -> Rref {
        Rref::new(self)
    }
}

/// Determinant by fraction-free (Bareiss) elimination over ℤ after clearing denominators.
pub fn det(m: &RatMatrix) -> Result<BigRational, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigRational::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = m
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.push(
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect(),
        );
        scale *= l;
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigRational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(BigRational::new(sign * &a[n - 1][n - 1], scale))
}

/// Solve `m·x = v` for square nonsingular `m`.
pub fn solve(m: &RatMatrix, v: &[BigRational]) -> Result<Vec<BigRational>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if v.len() != m.rows {
        return Err(LinalgError::Dimension(format!(
            "vector of length {} for {} rows",
            v.len(),
            m.rows
        )));
    }
    let r = m.rref();
    if r.rank() < m.cols {
        return Err(LinalgError::Singular);
    }
    r.solve(v)
        .map(|s| s.particular)
        .ok_or(LinalgError::Singular)
}

/// Signature of a symmetric matrix via symmetric Gaussian elimination (Sylvester's law of inertia).
pub fn signature(m: &RatMatrix) -> Result<i64, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut sig = 0i64;
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a.get(p, p).is_zero()) {
                a.swap_rows(k, p);
                swap_cols(&mut a, k, p);
            } else if let Some(p) = (k + 1..n).find(|&p| !a.get(k, p).is_zero()) {
                // a_kk = a_pp = 0, a_kp ≠ 0: row/col k += row/col p gives 2·a_kp on the diagonal
                add_row(&mut a, k, p);
                add_col(&mut a, k, p);
            } else {
                continue;
            }
        }
        let pivot = a.get(k, k).clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            let f = a.get(i, k) / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a.get(i, j) - &f * a.get(k, j);
                a.set(i, j, v);
            }
            for j in k..n {
                let v = a.get(j, i) - &f * a.get(j, k);
                a.set(j, i, v);
            }
        }
    }
    Ok(sig)
}

fn swap_cols(a: &mut RatMatrix, x: usize, y: usize) {
    for i in 0..a.rows {
        let (ix, iy) = (i * a.cols + x, i * a.cols + y);
        a.data.swap(ix, iy);
    }
}

fn add_row(a: &mut RatMatrix, dst: usize, src: usize) {
    for j in 0..a.cols {
        let v = a.get(dst, j) + a.get(src, j);
        a.set(dst, j, v);
    }
}

fn add_col(a: &mut RatMatrix, dst: usize, src: usize) {
    for i in 0..a.rows {
        let v = a.get(i, dst) + a.get(i, src);
        a.set(i, dst, v);
    }
}

/// General solution `particular + span(kernel)` of an affine system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<BigRational>,
    pub kernel: Vec<Vec<BigRational>>,
}

/// Reduced row echelon form `reduced = transform · original`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub transform: RatMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    fn new(m: &RatMatrix) -> Self {
        let mut r = m.clone();
        let mut t = RatMatrix::identity(m.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !r.get(i, col).is_zero()) else {
                continue;
            };
            r.swap_rows(row, p);
            t.swap_rows(row, p);
            let inv = r.get(row, col).recip();
            scale_row(&mut r, row, &inv);
            scale_row(&mut t, row, &inv);
            for i in 0..m.rows {
                if i == row || r.get(i, col).is_zero() {
                    continue;
                }
                let f = r.get(i, col).clone();
                sub_row(&mut r, i, row, &f);
                sub_row(&mut t, i, row, &f);
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            reduced: r,
            transform: t,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Solve `original · x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<AffineSolution> {
        let tb = self.transform.mul_vec(b).ok()?;
        if tb[self.rank()..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let n = self.reduced.cols;
        let mut x = vec![BigRational::zero(); n];
        for (i, &c) in self.pivots.iter().enumerate() {
            x[c] = tb[i].clone();
        }
        Some(AffineSolution {
            particular: x,
            kernel: self.kernel(),
        })
    }

    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let n = self.reduced.cols;
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); n];
                v[f] = BigRational::one();
                for (i, &c) in self.pivots.iter().enumerate() {
                    v[c] = -self.reduced.get(i, f).clone();
                }
                v
            })
            .collect()
    }
}

fn scale_row(m: &mut RatMatrix, i: usize, f: &BigRational) {
    for j in 0..m.cols {
        let idx = i * m.cols + j;
        if !m.data[idx].is_zero() {
            m.data[idx] *= f;
        }
    }
}

fn sub_row(m: &mut RatMatrix, dst: usize, src: usize, f: &BigRational) {
    for j in 0..m.cols {
        let s = &m.data[src * m.cols + j];
        if s.is_zero() {
            continue;
        }
        let v = s * f;
        m.data[dst * m.cols + j] -= v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(rows).unwrap()
    }

    // Laplace expansion along the first row; test-only oracle.
    fn cofactor_det(m: &RatMatrix) -> BigRational {
        let n = m.rows();
        if n == 0 {
            return BigRational::one();
        }
        let mut total = BigRational::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let minor = RatMatrix::from_rows(
                (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m.get(i, c).clone())
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            let minor = if n == 1 {
                RatMatrix::zeros(0, 0)
            } else {
                minor
            };
            let term = m.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn ln_matrix(n: i64) -> RatMatrix {
        ints(&[
            &[n + 1, -1, 0, 0],
            &[-1, 4, -2, 0],
            &[0, -2, 2, -1],
            &[0, 0, -1, 1],
        ])
    }

    #[test]
    fn det_identity_and_singular() {
        assert_eq!(det(&RatMatrix::identity(3)).unwrap(), q(1));
        assert_eq!(
            det(&ints(&[&[1, 2, 3], &[1, 2, 3], &[4, 5, 7]])).unwrap(),
            q(0)
        );
        assert!(matches!(
            det(&RatMatrix::zeros(2, 3)),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn det_torus_intersection_matrix_matches_cofactor() {
        let m = ln_matrix(1);
        let d = det(&m).unwrap();
        assert_eq!(d, cofactor_det(&m));
        assert_eq!(d, q(-1));
        for n in 1..8 {
            assert_eq!(det(&ln_matrix(n)).unwrap(), q(-1));
        }
    }

    #[test]
    fn solve_examples() {
        let id = RatMatrix::identity(3);
        let v = vec![q(1), q(-2), q(5)];
        assert_eq!(solve(&id, &v).unwrap(), v);
        let two = ints(&[&[2]]);
        assert_eq!(
            solve(&two, &[q(3)]).unwrap(),
            vec![BigRational::new(3.into(), 2.into())]
        );
        assert_eq!(
            solve(&ints(&[&[1, 1], &[2, 2]]), &[q(1), q(2)]),
            Err(LinalgError::Singular)
        );
    }

    #[test]
    fn shortcut_step_is_two() {
        // last coefficient of M⁻¹(1,0,0,0) for the L(n) matrix: consecutive A_i differ by two
        for n in 1..6 {
            let x = solve(&ln_matrix(n), &[q(1), q(0), q(0), q(0)]).unwrap();
            assert_eq!(x[3], q(-2));
        }
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&ints(&[&[1, 0], &[0, -1]])).unwrap(), 0);
        assert_eq!(signature(&ints(&[&[-2, 1], &[1, -3]])).unwrap(), -2);
        assert_eq!(signature(&ints(&[&[0, 1], &[1, 0]])).unwrap(), 0);
        assert_eq!(signature(&ints(&[&[0, 0], &[0, 0]])).unwrap(), 0);
        assert_eq!(
            signature(&ints(&[&[1, 2], &[3, 4]])),
            Err(LinalgError::NotSymmetric)
        );
    }

    #[test]
    fn rref_kernel() {
        let m = ints(&[&[1, 1, 0], &[0, 1, 1]]);
        let r = m.rref();
        assert_eq!(r.rank(), 2);
        let k = r.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
        assert!(r.solve(&[q(1), q(2)]).is_some());
        let s = ints(&[&[1, 1], &[1, 1]]).rref();
        assert!(s.solve(&[q(1), q(2)]).is_none());
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(n).map(<[i64]>::to_vec).collect();
            RatMatrix::from_int_rows(&rows).unwrap()
        })
    }

    fn unimodular(n: usize) -> impl Strategy<Value = RatMatrix> {
        // product of elementary matrices and sign flips
        proptest::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..12).prop_map(
            move |ops| {
                let mut p = RatMatrix::identity(n);
                for (i, j, f, flip) in ops {
                    if i != j {
                        let mut e = RatMatrix::identity(n);
                        e.set(i, j, q(f));
                        p = p.mul(&e).unwrap();
                    }
                    if flip {
                        let mut e = RatMatrix::identity(n);
                        e.set(i, i, q(-1));
                        p = p.mul(&e).unwrap();
                    }
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in small_matrix(4), b in small_matrix(4)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(det(&ab).unwrap(), det(&a).unwrap() * det(&b).unwrap());
        }

        #[test]
        fn det_agrees_with_cofactor(a in small_matrix(4)) {
            prop_assert_eq!(det(&a).unwrap(), cofactor_det(&a));
        }

        #[test]
        fn solve_recovers_vector(a in small_matrix(4), xs in proptest::collection::vec((-9i64..=9, 1i64..=5), 4)) {
            prop_assume!(!det(&a).unwrap().is_zero());
            let x: Vec<BigRational> = xs.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
            let v = a.mul_vec(&x).unwrap();
            prop_assert_eq!(solve(&a, &v).unwrap(), x);
        }

        #[test]
        fn signature_congruence_invariant(a in small_matrix(4), p in unimodular(4)) {
            let s = a.mul(&a.transpose()).unwrap();
            let sym = RatMatrix::from_rows((0..4).map(|i| (0..4).map(|j| a.get(i, j) + a.get(j, i) - s.get(i, j)).collect()).collect()).unwrap();
            let conj = p.transpose().mul(&sym).unwrap().mul(&p).unwrap();
            prop_assert_eq!(signature(&sym).unwrap(), signature(&conj).unwrap());
        }
    }
}
