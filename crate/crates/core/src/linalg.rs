use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar. `BigRational` keeps values reduced with a positive denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_scalar(s: &str) -> Result<Scalar, num_rational::ParseRatioError> {
    s.trim().parse::<Scalar>()
}

pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// Dense rectangular matrix with optional row/column labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

/// Result of a row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            data,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
            cols,
        )
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        self.row_labels = rows;
        self.col_labels = cols;
        self
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
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
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.rows_vec();
        let pivots = rref_in_place(&mut rows, self.cols);
        let reduced = Matrix::from_rows(rows, self.cols)
            .with_labels(Vec::new(), self.col_labels.clone());
        Rref {
            rank: pivots.len(),
            reduced,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rr.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &p) in rr.pivots.iter().enumerate() {
                let x = rr.reduced.get(r, free);
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Exact determinant by elimination. Panics on non-square input.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.rows_vec();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &piv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
        det
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Reduce `rows` to reduced row-echelon form; returns pivot columns.
/// Zero rows are dropped, so afterwards `rows.len()` is the rank.
pub fn rref_in_place(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                axpy(row, &pivot_row, &f, c);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// `row -= f * other`, starting at column `from`.
fn axpy(row: &mut [Scalar], other: &[Scalar], f: &Scalar, from: usize) {
    for (x, y) in row.iter_mut().zip(other).skip(from) {
        if !y.is_zero() {
            *x -= f * y;
        }
    }
}

/// Incrementally maintained reduced row-echelon basis of a subspace of Q^dim.
/// The stored form depends only on the spanned subspace, not on insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` modulo the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                axpy(&mut v, row, &f, p);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert `v`; returns the normalized new basis row when it was independent.
    pub fn insert(&mut self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.dim, "vector length does not match echelon dimension");
        let mut v = self.reduce(v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].recip();
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                axpy(row, &v, &f, p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v.clone());
        Some(v)
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn intersect(&self, other: &Echelon) -> Echelon {
        assert_eq!(self.dim, other.dim);
        // Solve x*A = y*B via the kernel of [A; -B]^T.
        let a = self.rank();
        let b = other.rank();
        let mut out = Echelon::new(self.dim);
        if a == 0 || b == 0 {
            return out;
        }
        let mut stacked = Matrix::zeros(self.dim, a + b);
        for (j, row) in self.rows.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                stacked.set(i, j, x.clone());
            }
        }
        for (j, row) in other.rows.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                stacked.set(i, a + j, -x.clone());
            }
        }
        for k in stacked.kernel_basis() {
            let mut v = vec![Scalar::zero(); self.dim];
            for (j, row) in self.rows.iter().enumerate() {
                if !k[j].is_zero() {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x += &k[j] * y;
                    }
                }
            }
            out.insert(&v);
        }
        out
    }

    pub fn sum(&self, other: &Echelon) -> Echelon {
        let mut out = self.clone();
        for row in &other.rows {
            out.insert(row);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        assert_eq!(Matrix::zeros(3, 4).rref().rank, 0);
        let id = Matrix::identity(3).rref();
        assert_eq!(id.rank, 3);
        assert_eq!(id.pivots, vec![0, 1, 2]);
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(m.rank, 1);
        assert_eq!(m.pivots, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(4).kernel_basis().is_empty());
        let k = Matrix::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
        let k = Matrix::from_i64(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (2,-1)
        assert_eq!(&k[0][0] * int(-1), &k[0][1] * int(2));
    }

    #[test]
    fn det_small() {
        let m = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), int(-1));
        let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), int(18));
    }

    #[test]
    fn echelon_is_canonical() {
        let mut a = Echelon::new(3);
        a.insert(&[int(1), int(1), int(0)]);
        a.insert(&[int(0), int(1), int(1)]);
        let mut b = Echelon::new(3);
        b.insert(&[int(1), int(0), int(-1)]);
        b.insert(&[int(2), int(3), int(1)]);
        assert_eq!(a, b);
        assert!(a.contains(&[int(1), int(2), int(1)]));
        assert!(!a.contains(&[int(0), int(0), int(1)]));
    }

    #[test]
    fn intersection_of_planes() {
        let mut a = Echelon::new(3);
        a.insert(&[int(1), int(0), int(0)]);
        a.insert(&[int(0), int(1), int(0)]);
        let mut b = Echelon::new(3);
        b.insert(&[int(0), int(1), int(0)]);
        b.insert(&[int(0), int(0), int(1)]);
        let c = a.intersect(&b);
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&[int(0), int(5), int(0)]));
        assert_eq!(a.sum(&b).rank(), 3);
    }

    #[test]
    fn scalar_round_trip() {
        for s in ["0", "-3", "7/2", "-22/7"] {
            assert_eq!(parse_scalar(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_scalar("4/6").unwrap(), frac(2, 3));
    }
}
