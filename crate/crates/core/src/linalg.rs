//! Dense matrices over finite fields.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let order = field.order();
        if rows.iter().flatten().any(|&x| x as u64 >= order) {
            return Err(Error::InvalidField("matrix entry outside the field".into()));
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_columns(field: &Field, nrows: usize, columns: &[Vec<Elem>]) -> Result<Matrix> {
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        Ok(Matrix::from_fn(field, nrows, columns.len(), |i, j| columns[j][i]))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::IncompatibleFields(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = f.add(out.get(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        Ok(Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        if self.field.is_gf2() {
            let mut b = BitMatrix::from_matrix(self);
            let piv = b.rref();
            return (b.to_matrix(&self.field), piv);
        }
        self.rref_generic()
    }

    /// Field-generic elimination; also the oracle for the packed GF(2) path.
    pub fn rref_generic(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if x != 0 {
                        let v = f.sub(m.get(i, j), f.mul(factor, x));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.field.is_gf2() {
            return BitMatrix::from_matrix(self).rref().len();
        }
        self.rref_generic().1.len()
    }

    /// Canonical kernel basis as the columns of a `cols x d` matrix in reduced
    /// column echelon form.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut vecs = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            vecs.push(v);
        }
        if vecs.is_empty() {
            return Matrix::zeros(f, self.cols, 0);
        }
        let m = Matrix::from_rows(f, &vecs).expect("kernel rows");
        let (red, _) = m.rref();
        red.transpose()
    }

    /// Canonical basis of the column space (reduced column echelon form).
    pub fn column_basis(&self) -> Matrix {
        let (r, piv) = self.transpose().rref();
        r.select_rows(&(0..piv.len()).collect::<Vec<_>>()).transpose()
    }

    /// Solves `self * X = b`, with free variables set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        self.check_field(b)?;
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch("right-hand side rows".into()));
        }
        let aug = self.hstack(b)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Matrix::zeros(&self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        if self.rank() < self.rows {
            return Err(Error::DivisionByZero);
        }
        self.solve(&Matrix::identity(&self.field, self.rows))
    }

    pub fn det(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

/// Bit-packed GF(2) matrix.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> BitMatrix {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn from_matrix(m: &Matrix) -> BitMatrix {
        let mut b = BitMatrix::new(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                if m.get(i, j) & 1 == 1 {
                    b.set(i, j);
                }
            }
        }
        b
    }

    pub fn to_matrix(&self, field: &Field) -> Matrix {
        Matrix::from_fn(field, self.rows, self.cols, |i, j| self.get(i, j) as Elem)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] ^= 1 << (j % 64);
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (wi, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (r..self.rows).find(|&i| self.data[i * w + wi] & bit != 0) else {
                continue;
            };
            if p != r {
                for k in 0..w {
                    self.data.swap(p * w + k, r * w + k);
                }
            }
            for i in 0..self.rows {
                if i != r && self.data[i * w + wi] & bit != 0 {
                    for k in wi..w {
                        let v = self.data[r * w + k];
                        self.data[i * w + k] ^= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Incremental GF(2) row space: rows are reduced against pivots on insertion.
#[derive(Clone, Debug)]
pub struct Gf2RowSpace {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
}

impl Gf2RowSpace {
    pub fn new(cols: usize) -> Self {
        Gf2RowSpace { cols, words: cols.div_ceil(64), rows: Vec::new(), pivot_row: vec![None; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a row given by its set bit positions; returns true if the rank grew.
    pub fn insert_bits(&mut self, bits: &[usize]) -> bool {
        let mut v = vec![0u64; self.words];
        for &b in bits {
            v[b / 64] ^= 1 << (b % 64);
        }
        self.insert(v)
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        loop {
            let Some(low) = lowest_bit(&v) else {
                return false;
            };
            match self.pivot_row[low] {
                Some(r) => {
                    for (a, b) in v.iter_mut().zip(&self.rows[r]) {
                        *a ^= b;
                    }
                }
                None => {
                    self.pivot_row[low] = Some(self.rows.len());
                    self.rows.push(v);
                    return true;
                }
            }
        }
    }

    /// Kernel of the row space (vectors orthogonal to every row), reduced.
    pub fn kernel(&self, field: &Field) -> Matrix {
        let mut b = BitMatrix::new(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            b.data[i * self.words..(i + 1) * self.words].copy_from_slice(r);
        }
        b.to_matrix(field).kernel()
    }
}

fn lowest_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}
