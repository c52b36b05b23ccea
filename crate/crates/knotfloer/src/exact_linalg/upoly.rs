use std::fmt;
use std::ops::{Add, Mul};

/// Polynomial in `U` over F₂, bit `i` of the packed words is the coefficient of `U^i`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct UPoly(Vec<u64>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: u32) -> Self {
        let mut p = UPoly(vec![0; k as usize / 64 + 1]);
        p.0[k as usize / 64] = 1 << (k % 64);
        p
    }

    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    pub fn degree(&self) -> Option<u32> {
        let last = *self.0.last()?;
        Some((self.0.len() as u32 - 1) * 64 + 63 - last.leading_zeros())
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i as u32 * 64 + w.trailing_zeros())
    }

    pub fn coeff(&self, k: u32) -> bool {
        self.0
            .get(k as usize / 64)
            .is_some_and(|w| w >> (k % 64) & 1 == 1)
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        let top = self.degree().map_or(0, |d| d + 1);
        (0..top).filter(move |&k| self.coeff(k))
    }

    /// The exponent if this is a single monomial `U^k`.
    pub fn as_monomial(&self) -> Option<u32> {
        let mut it = self.exponents();
        let k = it.next()?;
        it.next().is_none().then_some(k)
    }

    pub fn shift(&self, k: u32) -> Self {
        self.exponents()
            .fold(UPoly::zero(), |acc, e| acc + UPoly::monomial(e + k))
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.clone();
        let mut q = UPoly::zero();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            q = q + UPoly::monomial(rd - dd);
            r = r + d.shift(rd - dd);
        }
        (q, r)
    }

    /// Set `U = 1`: the parity of the number of terms.
    pub fn at_one(&self) -> bool {
        self.0.iter().map(|w| w.count_ones()).sum::<u32>() % 2 == 1
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        let (mut long, short) = if self.0.len() >= rhs.0.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (a, b) in long.0.iter_mut().zip(short.0) {
            *a ^= b;
        }
        long.trim()
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        self.clone() + rhs.clone()
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        self.exponents()
            .fold(UPoly::zero(), |acc, e| acc + rhs.shift(e))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = self
            .exponents()
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "U".to_string(),
                _ => format!("U^{k}"),
            })
            .collect();
        terms.reverse();
        write!(f, "{}", terms.join("+"))
    }
}

/// Dense matrix over F₂[U].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<UPoly>,
}

impl UPolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        UPolyMatrix {
            rows,
            cols,
            data: vec![UPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, UPoly::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &UPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: UPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &UPolyMatrix) -> UPolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
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
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f · row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &UPoly) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(dst, j) + &(f * s);
                self.set(dst, j, v);
            }
        }
    }

    /// col[dst] += f · col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &UPoly) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let v = self.get(i, dst) + &(f * s);
                self.set(i, dst, v);
            }
        }
    }
}

/// `left · input · right = diagonal`, with the inverses kept alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<UPoly>,
    pub left: UPolyMatrix,
    pub left_inv: UPolyMatrix,
    pub right: UPolyMatrix,
    pub right_inv: UPolyMatrix,
}

impl SmithForm {
    pub fn diagonal_matrix(&self) -> UPolyMatrix {
        let mut d = UPolyMatrix::zeros(self.left.rows, self.right.cols);
        for (i, p) in self.diagonal.iter().enumerate() {
            d.set(i, i, p.clone());
        }
        d
    }

    /// Exponents of the nonzero diagonal entries that are monomials.
    pub fn u_exponents(&self) -> Vec<Option<u32>> {
        self.diagonal
            .iter()
            .filter(|p| !p.is_zero())
            .map(UPoly::as_monomial)
            .collect()
    }
}

/// Smith normal form over the Euclidean domain F₂[U].
///
/// For matrices whose entries are monomials compatible with a grading the
/// diagonal consists of powers of `U`.
pub fn u_smith_reduce(d: &UPolyMatrix) -> SmithForm {
    let (rows, cols) = (d.rows, d.cols);
    let mut a = d.clone();
    let mut left = UPolyMatrix::identity(rows);
    let mut left_inv = UPolyMatrix::identity(rows);
    let mut right = UPolyMatrix::identity(cols);
    let mut right_inv = UPolyMatrix::identity(cols);

    // Row ops act as left·a, so left_inv receives the inverse column op; dually for columns.
    let row_add =
        |a: &mut UPolyMatrix, l: &mut UPolyMatrix, li: &mut UPolyMatrix, dst, src, f: &UPoly| {
            a.add_row(dst, src, f);
            l.add_row(dst, src, f);
            li.add_col(src, dst, f);
        };
    let col_add =
        |a: &mut UPolyMatrix, r: &mut UPolyMatrix, ri: &mut UPolyMatrix, dst, src, f: &UPoly| {
            a.add_col(dst, src, f);
            r.add_col(dst, src, f);
            ri.add_row(src, dst, f);
        };

    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by_key(|&(i, j)| a.get(i, j).degree());
            let Some((pi, pj)) = pivot else {
                return finish(a, left, left_inv, right, right_inv);
            };
            if pi != t {
                a.swap_rows(pi, t);
                left.swap_rows(pi, t);
                left_inv.swap_cols(pi, t);
            }
            if pj != t {
                a.swap_cols(pj, t);
                right.swap_cols(pj, t);
                right_inv.swap_rows(pj, t);
            }
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (quo, rem) = a.get(i, t).div_rem(&p);
                row_add(&mut a, &mut left, &mut left_inv, i, t, &quo);
                clean &= rem.is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (quo, rem) = a.get(t, j).div_rem(&p);
                col_add(&mut a, &mut right, &mut right_inv, j, t, &quo);
                clean &= rem.is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).div_rem(&p).1.is_zero());
            match bad {
                Some((i, _)) => row_add(&mut a, &mut left, &mut left_inv, t, i, &UPoly::one()),
                None => break,
            }
        }
    }
    finish(a, left, left_inv, right, right_inv)
}

fn finish(
    a: UPolyMatrix,
    left: UPolyMatrix,
    left_inv: UPolyMatrix,
    right: UPolyMatrix,
    right_inv: UPolyMatrix,
) -> SmithForm {
    let diagonal = (0..a.rows.min(a.cols))
        .map(|i| a.get(i, i).clone())
        .collect();
    SmithForm {
        diagonal,
        left,
        left_inv,
        right,
        right_inv,
    }
}
