use std::fmt;

use num_rational::BigRational;

use super::field::{FieldOps, FieldSpec, Ops, Repr, Scalar};
use crate::error::{contract, Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Fin(Vec<u32>),
    Rat(Vec<BigRational>),
}

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Entries,
}

/// Runs `$body` with `$o` bound to the field ops and `$d` to the entry vector.
macro_rules! dispatch {
    ($field:expr, $data:expr, |$o:ident, $d:ident| $body:expr) => {
        match ($field.ops(), $data) {
            (Ops::Prime($o), Entries::Fin($d)) => $body,
            (Ops::Gf($o), Entries::Fin($d)) => $body,
            (Ops::Rat($o), Entries::Rat($d)) => $body,
            _ => unreachable!("matrix storage does not match its field"),
        }
    };
}

/// Row-reduces in place with the first-nonzero-column, first-nonzero-row pivot
/// rule. Pivot rows are normalized to a leading one; with `reduced` the pivot
/// columns are also cleared above. Returns the pivot columns.
fn echelon<O: FieldOps>(
    o: &O,
    m: &mut [O::E],
    rows: usize,
    cols: usize,
    reduced: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !o.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if p != r {
            for k in c..cols {
                m.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = o.inv(&m[r * cols + c]);
        o.scale(&mut m[r * cols + c..(r + 1) * cols], &inv);
        let (head, tail) = m.split_at_mut(r * cols);
        let (pivot_row, below) = tail.split_at_mut(cols);
        let pivot_row = &pivot_row[c..];
        for row in below.chunks_mut(cols) {
            if !o.is_zero(&row[c]) {
                let f = row[c].clone();
                o.sub_scaled(&mut row[c..], &f, pivot_row);
            }
        }
        if reduced {
            for row in head.chunks_mut(cols) {
                if !o.is_zero(&row[c]) {
                    let f = row[c].clone();
                    o.sub_scaled(&mut row[c..], &f, pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Right kernel rows (one per free column) and the pivot columns of `m`.
/// With `normalize` the kernel rows are brought to reduced echelon form.
fn kernel_rows<O: FieldOps>(
    o: &O,
    m: &[O::E],
    rows: usize,
    cols: usize,
    normalize: bool,
) -> (Vec<O::E>, usize, Vec<usize>) {
    let mut work = m.to_vec();
    let pivots = echelon(o, &mut work, rows, cols, true);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = vec![o.zero(); free.len() * cols];
    for (k, &f) in free.iter().enumerate() {
        let v = &mut out[k * cols..(k + 1) * cols];
        v[f] = o.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = o.neg(&work[i * cols + f]);
        }
    }
    let n = free.len();
    if normalize {
        let rank = echelon(o, &mut out, n, cols, true).len();
        debug_assert_eq!(rank, n);
    }
    (out, n, pivots)
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        let data = if field.is_rational() {
            Entries::Rat(vec![BigRational::default(); rows * cols])
        } else {
            Entries::Fin(vec![0; rows * cols])
        };
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, &one);
        }
        m
    }

    /// Builds a matrix from row-major scalars, rejecting entries from different fields.
    pub fn from_scalars(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: &[Scalar],
    ) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return contract(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            ));
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::Configuration(format!(
                "entry over {} in a matrix over {field}",
                bad.field()
            )));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (k, s) in entries.iter().enumerate() {
            m.set(k / cols.max(1), k % cols.max(1), s);
        }
        Ok(m)
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return contract("ragged rows");
        }
        let flat: Vec<Scalar> = rows.iter().flatten().cloned().collect();
        Matrix::from_scalars(field, rows.len(), cols, &flat)
    }

    /// Integer matrix mapped into `field`.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Result<Matrix> {
        let s: Vec<Scalar> = entries.iter().map(|&v| field.from_i64(v)).collect();
        Matrix::from_scalars(field, rows, cols, &s)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match &self.data {
            Entries::Fin(d) => Scalar::from_fin(self.field, d[k]),
            Entries::Rat(d) => Scalar::from_rat(d[k].clone()),
        }
    }

    /// Panics if `s` lives in another field.
    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) {
        assert_eq!(s.field(), self.field, "entry from a different field");
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match (&mut self.data, &s.repr) {
            (Entries::Fin(d), Repr::Fin(v)) => d[k] = *v,
            (Entries::Rat(d), Repr::Rat(v)) => d[k] = v.clone(),
            _ => unreachable!(),
        }
    }

    /// `self[i][j] += s`.
    pub fn add_at(&mut self, i: usize, j: usize, s: &Scalar) {
        let cur = self.get(i, j);
        self.set(i, j, &(&cur + s));
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Entries::Fin(d) => d.iter().all(|&v| v == 0),
            Entries::Rat(d) => d.iter().all(|v| *v == BigRational::default()),
        }
    }

    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        dispatch!(self.field, &self.data, |o, d| {
            let mut w = d.clone();
            echelon(&o, &mut w, rows, cols, false).len()
        })
    }

    /// Basis of the right kernel as rows, in reduced row echelon form.
    pub fn kernel_basis(&self) -> Matrix {
        let (rows, cols) = (self.rows, self.cols);
        let (data, n) = dispatch!(self.field, &self.data, |o, d| {
            let (k, n, _) = kernel_rows(&o, d, rows, cols, true);
            (wrap(k), n)
        });
        Matrix {
            field: self.field,
            rows: n,
            cols,
            data,
        }
    }

    /// A basis of the left kernel `{y : y·self = 0}` as rows (not reduced),
    /// together with the indices of a maximal set of independent rows.
    pub fn left_kernel(&self) -> (Matrix, Vec<usize>) {
        let t = self.transpose();
        let (rows, cols) = (t.rows, t.cols);
        let (data, n, pivots) = dispatch!(t.field, &t.data, |o, d| {
            let (k, n, pivots) = kernel_rows(&o, d, rows, cols, false);
            (wrap(k), n, pivots)
        });
        (
            Matrix {
                field: self.field,
                rows: n,
                cols,
                data,
            },
            pivots,
        )
    }

    /// The rows at `indices`, in that order.
    pub fn select_rows(&self, indices: &[usize]) -> Matrix {
        let cols = self.cols;
        let data = match &self.data {
            Entries::Fin(d) => Entries::Fin(
                indices
                    .iter()
                    .flat_map(|&i| d[i * cols..(i + 1) * cols].iter().copied())
                    .collect(),
            ),
            Entries::Rat(d) => Entries::Rat(
                indices
                    .iter()
                    .flat_map(|&i| d[i * cols..(i + 1) * cols].iter().cloned())
                    .collect(),
            ),
        };
        Matrix {
            field: self.field,
            rows: indices.len(),
            cols,
            data,
        }
    }

    /// Column index of the first nonzero entry of each row (`None` for zero rows).
    pub fn leading_columns(&self) -> Vec<Option<usize>> {
        (0..self.rows)
            .map(|i| match &self.data {
                Entries::Fin(d) => d[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .position(|&v| v != 0),
                Entries::Rat(d) => d[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .position(|v| *v != BigRational::default()),
            })
            .collect()
    }

    /// Reduced row echelon basis of the row space.
    pub fn row_basis(&self) -> Matrix {
        let (rows, cols) = (self.rows, self.cols);
        let (data, r) = dispatch!(self.field, &self.data, |o, d| {
            let mut w = d.clone();
            let r = echelon(&o, &mut w, rows, cols, true).len();
            w.truncate(r * cols);
            (wrap(w), r)
        });
        Matrix {
            field: self.field,
            rows: r,
            cols,
            data,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let (rows, cols) = (self.rows, self.cols);
        let data = match &self.data {
            Entries::Fin(d) => Entries::Fin(transpose_vec(d, rows, cols)),
            Entries::Rat(d) => Entries::Rat(transpose_vec(d, rows, cols)),
        };
        Matrix {
            field: self.field,
            rows: cols,
            cols: rows,
            data,
        }
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let Some(first) = parts.first() else {
            return contract("vstack of nothing");
        };
        let (field, cols) = (first.field, first.cols);
        if parts.iter().any(|m| m.field != field || m.cols != cols) {
            return contract("vstack of incompatible matrices");
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let data = match &first.data {
            Entries::Fin(_) => Entries::Fin(
                parts
                    .iter()
                    .flat_map(|m| m.fin_data().iter().copied())
                    .collect(),
            ),
            Entries::Rat(_) => Entries::Rat(
                parts
                    .iter()
                    .flat_map(|m| m.rat_data().iter().cloned())
                    .collect(),
            ),
        };
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let transposed: Vec<Matrix> = parts.iter().map(|m| m.transpose()).collect();
        let refs: Vec<&Matrix> = transposed.iter().collect();
        Ok(Matrix::vstack(&refs)?.transpose())
    }

    /// Columns `range` as a new matrix.
    pub fn column_block(&self, start: usize, end: usize) -> Matrix {
        assert!(start <= end && end <= self.cols);
        let cols = end - start;
        let rows = self.rows;
        let data = match &self.data {
            Entries::Fin(d) => Entries::Fin(
                (0..rows)
                    .flat_map(|i| {
                        d[i * self.cols + start..i * self.cols + end]
                            .iter()
                            .copied()
                    })
                    .collect(),
            ),
            Entries::Rat(d) => Entries::Rat(
                (0..rows)
                    .flat_map(|i| {
                        d[i * self.cols + start..i * self.cols + end]
                            .iter()
                            .cloned()
                    })
                    .collect(),
            ),
        };
        Matrix {
            field: self.field,
            rows,
            cols,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field || self.cols != other.rows {
            return contract(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let data = match (self.field.ops(), &self.data, &other.data) {
            (Ops::Prime(o), Entries::Fin(a), Entries::Fin(b)) => {
                Entries::Fin(matmul(&o, a, b, n, m, p))
            }
            (Ops::Gf(o), Entries::Fin(a), Entries::Fin(b)) => {
                Entries::Fin(matmul(&o, a, b, n, m, p))
            }
            (Ops::Rat(o), Entries::Rat(a), Entries::Rat(b)) => {
                Entries::Rat(matmul(&o, a, b, n, m, p))
            }
            _ => unreachable!(),
        };
        Ok(Matrix {
            field: self.field,
            rows: n,
            cols: p,
            data,
        })
    }

    pub fn scaled(&self, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.set(i, j, &(&v * s));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field || self.rows != other.rows || self.cols != other.cols {
            return contract("matrix sum of incompatible shapes");
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.add_at(i, j, &other.get(i, j));
            }
        }
        Ok(out)
    }

    /// True iff `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.cols {
            return contract(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            ));
        }
        let vm = Matrix::from_scalars(self.field, 1, self.cols, v)?;
        let stacked = Matrix::vstack(&[self, &vm])?;
        Ok(stacked.rank() == self.rank())
    }

    /// True iff the row space of `other` is contained in the row space of `self`.
    pub fn row_space_contains_all(&self, other: &Matrix) -> Result<bool> {
        if other.rows == 0 {
            return Ok(true);
        }
        let stacked = Matrix::vstack(&[self, other])?;
        Ok(stacked.rank() == self.rank())
    }

    fn fin_data(&self) -> &[u32] {
        match &self.data {
            Entries::Fin(d) => d,
            Entries::Rat(_) => unreachable!(),
        }
    }

    fn rat_data(&self) -> &[BigRational] {
        match &self.data {
            Entries::Rat(d) => d,
            Entries::Fin(_) => unreachable!(),
        }
    }
}

trait Wrap {
    fn wrap(self) -> Entries;
}

impl Wrap for Vec<u32> {
    fn wrap(self) -> Entries {
        Entries::Fin(self)
    }
}

impl Wrap for Vec<BigRational> {
    fn wrap(self) -> Entries {
        Entries::Rat(self)
    }
}

fn wrap<W: Wrap>(w: W) -> Entries {
    w.wrap()
}

fn transpose_vec<T: Clone>(d: &[T], rows: usize, cols: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(d.len());
    for j in 0..cols {
        for i in 0..rows {
            out.push(d[i * cols + j].clone());
        }
    }
    out
}

fn matmul<O: FieldOps>(o: &O, a: &[O::E], b: &[O::E], n: usize, m: usize, p: usize) -> Vec<O::E> {
    let mut out = vec![o.zero(); n * p];
    for i in 0..n {
        for k in 0..m {
            let aik = &a[i * m + k];
            if o.is_zero(aik) {
                continue;
            }
            let neg = o.neg(aik);
            o.sub_scaled(&mut out[i * p..(i + 1) * p], &neg, &b[k * p..(k + 1) * p]);
        }
    }
    out
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

/// True iff `v` lies in `span(rows of a) + span(rows of b)`.
pub fn subspace_sum_contains(a: &Matrix, b: &Matrix, v: &[Scalar]) -> Result<bool> {
    if a.field != b.field || a.cols != b.cols {
        return contract(format!(
            "generator sets with {} and {} columns",
            a.cols, b.cols
        ));
    }
    Matrix::vstack(&[a, b])?.row_space_contains(v)
}
