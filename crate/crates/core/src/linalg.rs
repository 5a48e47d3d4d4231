//! Dense matrices over a [`FiniteField`], with entries stored as encoded
//! field values in row-major order.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::FiniteField;

#[derive(Clone)]
pub struct Matrix {
    field: Arc<FiniteField>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && same_field(&self.field, &other.field)
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

pub(crate) fn same_field(a: &Arc<FiniteField>, b: &Arc<FiniteField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Matrix {
    pub fn zeros(field: &Arc<FiniteField>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: Arc::clone(field),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Arc<FiniteField>, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// `value · I_n`.
    pub fn scalar(field: &Arc<FiniteField>, n: usize, value: u32) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = value;
        }
        m
    }

    pub fn from_vec(field: &Arc<FiniteField>, rows: usize, cols: usize, data: Vec<u32>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(Error::NotAnElement {
                value: bad as u64,
                order: field.order(),
            });
        }
        Ok(Matrix {
            field: Arc::clone(field),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Arc<FiniteField>, rows: &[Vec<u32>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Matrix::from_vec(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        debug_assert!(self.field.contains(value));
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &*self.field;
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                if a == 0 {
                    continue;
                }
                let other_row = &other.data[l * other.cols..(l + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(other_row) {
                    if b != 0 {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch("addition of different shapes".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(c, a)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack with different column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: Arc::clone(&self.field),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// `(self | other)`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack with different row counts".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            field: Arc::clone(&self.field),
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Block diagonal matrix `diag(blocks...)`.
    pub fn block_diag(field: &Arc<FiniteField>, blocks: &[&Matrix]) -> Result<Matrix> {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if !same_field(field, &b.field) {
                return Err(Error::MixedFields);
            }
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.data[r * block.cols + c];
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: Arc::clone(&self.field),
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    /// Whether the matrix is `a · I` for some field element `a`.
    pub fn is_scalar(&self) -> bool {
        if !self.is_square() || self.rows == 0 {
            return false;
        }
        let a = self.get(0, 0);
        (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == if r == c { a } else { 0 }))
    }

    /// Gaussian elimination with first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let (rank, pivots) = m.rref_in_place();
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    pub(crate) fn rref_in_place(&mut self) -> (usize, Vec<usize>) {
        let f = Arc::clone(&self.field);
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    self.data.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(self.data[rank * cols + c]).expect("pivot is nonzero");
            if inv != 1 {
                for j in c..cols {
                    let v = self.data[rank * cols + j];
                    self.data[rank * cols + j] = f.mul(inv, v);
                }
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.data[r * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let pv = self.data[rank * cols + j];
                    if pv != 0 {
                        let v = self.data[r * cols + j];
                        self.data[r * cols + j] = f.sub(v, f.mul(factor, pv));
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        (rank, pivots)
    }

    /// RREF with the zero rows removed.
    pub(crate) fn row_basis(&self) -> Matrix {
        let mut m = self.clone();
        let (rank, _) = m.rref_in_place();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        m
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().0
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let r = aug.rref();
        if r.pivots.iter().take(n).copied().ne(0..n) || r.rank < n {
            return Err(Error::SingularMatrix);
        }
        Ok(r.matrix.submatrix(0..n, n..2 * n))
    }

    /// Basis rows of the right null space `{x : M xᵀ = 0}`.
    pub fn kernel(&self) -> Matrix {
        let r = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.data[i * self.cols + fc] = 1;
            for (pr, &pc) in r.pivots.iter().enumerate() {
                out.data[i * self.cols + pc] = f.neg(r.matrix.get(pr, fc));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Least `m >= 1` with `A^m = I`, by repeated multiplication capped at
    /// `q^n - 1` (the largest element order in GL(n,q)).
    pub fn matrix_order(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("order of a non-square matrix".into()));
        }
        if self.rank() < self.rows {
            return Err(Error::SingularMatrix);
        }
        let cap = (self.field.order() as u128).pow(self.rows as u32) - 1;
        let mut x = self.clone();
        let mut m = 1u64;
        while !x.is_identity() {
            if m as u128 >= cap {
                return Err(Error::InvariantViolated("matrix order exceeds q^n - 1".into()));
            }
            x = x.mul(self)?;
            m += 1;
        }
        Ok(m)
    }

    /// Order of `A` given that it divides `hint`.
    pub fn matrix_order_dividing(&self, hint: u64) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("order of a non-square matrix".into()));
        }
        if self.rank() < self.rows {
            return Err(Error::SingularMatrix);
        }
        if !self.pow(hint)?.is_identity() {
            return Err(Error::NotADivisor { t: 0, order: hint });
        }
        let mut ord = hint;
        for r in arith::prime_factors(hint) {
            while ord.is_multiple_of(r) && self.pow(ord / r)?.is_identity() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Rows of whitespace-separated element integers.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(field: &Arc<FiniteField>, text: &str) -> Result<Matrix> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for tok in line.split_whitespace() {
                let col = line.find(tok).unwrap_or(0) + 1;
                let v: u32 = tok.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    column: col,
                    message: format!("expected an element integer, found {tok:?}"),
                })?;
                row.push(v);
            }
            rows.push(row);
        }
        Matrix::from_rows(field, &rows)
    }
}
