//! Dense matrices over `F_q` and exact row reduction.

use std::fmt;

use super::field::{Elem, FieldSpec};
use super::gf2::BitMatrix;
use crate::error::{Error, Result};

/// Default cap on the number of vectors a span enumeration may produce.
pub const DEFAULT_SPAN_CAP: u128 = 1 << 24;

/// Row-major matrix of field codes.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: FqMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of the reduced form: a canonical basis of the row space.
    pub fn basis(&self) -> FqMatrix {
        self.reduced.select_rows(&(0..self.rank()).collect::<Vec<_>>())
    }
}

impl FqMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FqMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_flat(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        let q = field.order();
        if let Some(bad) = data.iter().find(|&&x| x >= q) {
            return Err(Error::Field(format!("entry {bad} is not a code of GF({q})")));
        }
        Ok(FqMatrix { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix with `cols` columns from explicit rows.
    pub fn from_rows(field: &FieldSpec, cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::dim(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        Self::from_flat(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        debug_assert!(v < self.field.order());
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> FqMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        FqMatrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> FqMatrix {
        let mut m = FqMatrix::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (k, &c) in idx.iter().enumerate() {
                m.set(r, k, self.get(r, c));
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.rows != other.rows {
            return Err(Error::dim("hstack needs equal row counts"));
        }
        let mut m = FqMatrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            m.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        Ok(m)
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = FqMatrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![0; other.cols];
            for k in 0..self.cols {
                f.axpy(&mut acc, self.get(r, k), other.row(k));
            }
            out.row_mut(r).copy_from_slice(&acc);
        }
        Ok(out)
    }

    /// Row vector times matrix: `v * M`.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows, "vector length must equal row count");
        let mut acc = vec![0; self.cols];
        for (r, &c) in v.iter().enumerate() {
            self.field.axpy(&mut acc, c, self.row(r));
        }
        acc
    }

    /// Matrix times column vector: `M * v^T`.
    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    /// Row reduction. Takes the packed path over `GF(2)`.
    pub fn rref(&self) -> Echelon {
        if self.field.order() == 2 {
            BitMatrix::from_fq(self).rref_fq(&self.field)
        } else {
            self.rref_generic()
        }
    }

    /// Row reduction over any field: pivot on the first nonzero entry of each
    /// column in ascending order, scale the pivot to 1, clear the column.
    pub fn rref_generic(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if p != lead {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, lead * m.cols + k);
                }
            }
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            f.scale(m.row_mut(lead), inv);
            let pivot_row = m.row(lead).to_vec();
            for r in 0..m.rows {
                let factor = m.get(r, c);
                if r != lead && factor != 0 {
                    f.axpy(m.row_mut(r), f.neg(factor), &pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn rank_generic(&self) -> usize {
        self.rref_generic().rank()
    }

    /// Basis of the right kernel `{x : A x^T = 0}`, one vector per row,
    /// one per free column in ascending order.
    pub fn kernel_basis(&self) -> FqMatrix {
        kernel_from_echelon(&self.rref(), self.cols)
    }

    pub fn kernel_basis_generic(&self) -> FqMatrix {
        kernel_from_echelon(&self.rref_generic(), self.cols)
    }

    /// All solutions `x` of `A x^T = b^T`.
    pub fn solve_affine(&self, b: &[Elem]) -> Result<AffineSolutions> {
        if b.len() != self.rows {
            return Err(Error::dim(format!(
                "right-hand side has {} entries, system has {} equations",
                b.len(),
                self.rows
            )));
        }
        let rhs = FqMatrix::from_flat(&self.field, self.rows, 1, b.to_vec())?;
        let aug = self.hstack(&rhs)?;
        let ech = aug.rref();
        let n = self.cols;
        let consistent = ech.pivots.last() != Some(&n);
        let pivots: Vec<usize> = ech.pivots.iter().copied().filter(|&c| c < n).collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        Ok(AffineSolutions {
            field: self.field.clone(),
            reduced: ech.reduced,
            pivots,
            free_digits: consistent.then(|| vec![0; free.len()]),
            consistent,
            free,
            n,
        })
    }

    /// Iterator over the vectors `c * M` for every coefficient vector `c`.
    pub fn span_iter(&self, cap: u128) -> Result<SpanIter> {
        span_iter(&self.field, &self.row_vecs(), self.cols, cap)
    }
}

fn kernel_from_echelon(ech: &Echelon, cols: usize) -> FqMatrix {
    let f = ech.reduced.field();
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    let mut k = FqMatrix::zeros(f, free.len(), cols);
    for (i, &fc) in free.iter().enumerate() {
        k.set(i, fc, 1);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            k.set(i, pc, f.neg(ech.reduced.get(r, fc)));
        }
    }
    k
}

/// Enumeration of an affine solution set, free variables swept
/// lexicographically (first free column most significant).
pub struct AffineSolutions {
    field: FieldSpec,
    reduced: FqMatrix,
    pivots: Vec<usize>,
    free: Vec<usize>,
    free_digits: Option<Vec<Elem>>,
    consistent: bool,
    n: usize,
}

impl AffineSolutions {
    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Dimension of the solution space, `cols - rank`.
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// `q^(cols - rank)` when consistent, otherwise 0.
    pub fn size(&self) -> u128 {
        if !self.consistent {
            0
        } else {
            (self.field.order() as u128).pow(self.free.len() as u32)
        }
    }
}

impl Iterator for AffineSolutions {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        let digits = self.free_digits.as_mut()?;
        let f = &self.field;
        let mut x = vec![0; self.n];
        for (k, &c) in self.free.iter().enumerate() {
            x[c] = digits[k];
        }
        for (r, &pc) in self.pivots.iter().enumerate() {
            let mut v = self.reduced.get(r, self.n);
            for (k, &fc) in self.free.iter().enumerate() {
                v = f.sub(v, f.mul(self.reduced.get(r, fc), digits[k]));
            }
            x[pc] = v;
        }
        if !advance(digits, f.order()) {
            self.free_digits = None;
        }
        Some(x)
    }
}

/// Lexicographic odometer step, last digit fastest. Returns false after the
/// all-`(base-1)` state wraps.
pub(crate) fn advance(digits: &mut [Elem], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Streams every vector in the span of a set of rows exactly once.
pub struct SpanIter {
    field: FieldSpec,
    basis: Vec<Vec<Elem>>,
    coeffs: Vec<Elem>,
    current: Vec<Elem>,
    done: bool,
}

impl SpanIter {
    /// Number of vectors the iterator yields, `q^rank`.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128).pow(self.basis.len() as u32)
    }
}

pub fn span_iter(field: &FieldSpec, rows: &[Vec<Elem>], cols: usize, cap: u128) -> Result<SpanIter> {
    let m = FqMatrix::from_rows(field, cols, rows)?;
    let basis = m.rref().basis().row_vecs();
    let size = (field.order() as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::budget("span enumeration", size, cap));
    }
    Ok(SpanIter { field: field.clone(), coeffs: vec![0; basis.len()], basis, current: vec![0; cols], done: false })
}

impl Iterator for SpanIter {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let f = &self.field;
        let q = f.order();
        // Odometer step, keeping `current = coeffs * basis` up to date.
        let mut k = self.coeffs.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            let old = self.coeffs[k];
            let new = if old + 1 == q { 0 } else { old + 1 };
            self.coeffs[k] = new;
            f.axpy(&mut self.current, f.sub(new, old), &self.basis[k]);
            if new != 0 {
                break;
            }
        }
        Some(out)
    }
}

/// Hamming distance between two vectors of equal length.
pub fn distance(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}
