use std::fmt;

use num_traits::{One, Zero};

use crate::error::{FusionError, Result};
use crate::geometry::laurent::Laurent;
use crate::linalg::{int, Matrix, Scalar};

/// Square matrix of Laurent polynomials in y_0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    entries: Vec<Vec<Laurent>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl LaurentMatrix {
    pub fn zeros(n: usize) -> Self {
        LaurentMatrix {
            entries: vec![vec![Laurent::zero(1); n]; n],
            row_labels: (0..n).map(|i| i.to_string()).collect(),
            col_labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i][i] = Laurent::one(1);
        }
        m
    }

    /// diag(c_i y^{d_i}).
    pub fn diagonal(d: &[(i32, Scalar)]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, (e, c)) in d.iter().enumerate() {
            m.entries[i][i] = Laurent::monomial(1, 0, *e, c.clone());
        }
        m
    }

    pub fn from_entries(entries: Vec<Vec<Laurent>>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n);
        for (i, row) in entries.into_iter().enumerate() {
            assert_eq!(row.len(), n, "square matrix");
            m.entries[i] = row;
        }
        m
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        self.row_labels = rows;
        self.col_labels = cols;
        self
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &Laurent {
        &self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Laurent) {
        self.entries[r][c] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !other.entries[k][j].is_zero() {
                        out.entries[i][j] = &out.entries[i][j] + &(&self.entries[i][k] * &other.entries[k][j]);
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, y: &Scalar) -> Option<Matrix> {
        let n = self.size();
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval1(y)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix::from_rows(rows, n))
    }

    /// Exponent range of column c over its nonzero entries.
    pub fn column_range(&self, c: usize) -> Option<(i32, i32)> {
        self.entries
            .iter()
            .filter_map(|r| r[c].degree_range(0))
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }

    /// Exponent range over all entries.
    pub fn range(&self) -> Option<(i32, i32)> {
        (0..self.size())
            .filter_map(|c| self.column_range(c))
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }

    /// Multiply every column c by y^{shifts[c]}.
    pub fn shift_columns(&self, shifts: &[i32]) -> Self {
        let mut out = self.clone();
        for row in &mut out.entries {
            for (c, e) in row.iter_mut().enumerate() {
                *e = e.shift(0, shifts[c]);
            }
        }
        out
    }

    /// Column scaling that makes every entry polynomial with some column
    /// entry of exponent 0, and the resulting degree bound of any minor.
    fn polynomial_form(&self) -> Option<(Self, Vec<i32>, usize)> {
        let mut lows = Vec::new();
        let mut bound = 0usize;
        for c in 0..self.size() {
            let (lo, hi) = self.column_range(c)?;
            lows.push(lo);
            bound += (hi - lo) as usize;
        }
        let neg: Vec<i32> = lows.iter().map(|l| -l).collect();
        Some((self.shift_columns(&neg), lows, bound))
    }

    /// Determinant, through exact evaluation and interpolation.
    pub fn det(&self) -> Laurent {
        let Some((p, lows, bound)) = self.polynomial_form() else {
            return Laurent::zero(1);
        };
        let pts: Vec<Scalar> = (1..=bound as i64 + 1).map(int).collect();
        let vals: Vec<Scalar> = pts.iter().map(|y| p.eval(y).expect("polynomial").det()).collect();
        let coeffs = interpolate(&pts, &vals);
        let mut out = Laurent::zero(1);
        let s: i32 = lows.iter().sum();
        for (k, c) in coeffs.into_iter().enumerate() {
            out.add_term(vec![k as i32 + s], c);
        }
        out
    }

    /// Inverse when the determinant is a single term c·y^d.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.terms().len() != 1 {
            return Err(FusionError::Hypothesis(format!(
                "determinant {det} is not a unit times a power of y0"
            )));
        }
        let n = self.size();
        let (p, lows, bound) = self.polynomial_form().expect("nonzero determinant");
        let pdet = p.det();
        let (de, dc) = pdet.terms().iter().next().expect("single term");
        let pts: Vec<Scalar> = (1..=bound as i64 + 1).map(int).collect();
        // adj(P)(y) = det P(y) · P(y)^{-1}, interpolated entrywise.
        let adj_vals: Vec<Matrix> = pts
            .iter()
            .map(|y| {
                let m = p.eval(y).expect("polynomial");
                let d = m.det();
                let inv = invert_matrix(&m).expect("nonzero at positive points");
                Matrix::from_rows(
                    inv.rows_vec()
                        .into_iter()
                        .map(|r| r.into_iter().map(|x| x * &d).collect())
                        .collect(),
                    n,
                )
            })
            .collect();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let vals: Vec<Scalar> = adj_vals.iter().map(|m| m.get(i, j).clone()).collect();
                let mut e = Laurent::zero(1);
                for (k, c) in interpolate(&pts, &vals).into_iter().enumerate() {
                    // P^{-1} = adj / (c y^d); M^{-1} = diag(y^{-low}) P^{-1}.
                    e.add_term(vec![k as i32 - de[0] - lows[i]], c / dc);
                }
                out.entries[i][j] = e;
            }
        }
        if self.mul(&out) != Self::identity(n) {
            return Err(FusionError::integrity("interpolated inverse does not invert"));
        }
        Ok(out.with_labels(self.col_labels.clone(), self.row_labels.clone()))
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        let lw = self.row_labels.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.size())
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].len())
                    .chain(std::iter::once(self.col_labels[c].len()))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        write!(f, "{:lw$}", "")?;
        for (c, w) in widths.iter().enumerate() {
            write!(f, "  {:>w$}", self.col_labels[c])?;
        }
        writeln!(f)?;
        for (r, row) in cells.iter().enumerate() {
            write!(f, "{:lw$}", self.row_labels[r])?;
            for (c, w) in widths.iter().enumerate() {
                write!(f, "  {:>w$}", row[c])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Inverse of a square rational matrix, None if singular.
pub fn invert_matrix(m: &Matrix) -> Option<Matrix> {
    let n = m.nrows();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let rref = Matrix::from_rows(rows, 2 * n).rref();
    if rref.pivots.iter().take(n).copied().ne(0..n) {
        return None;
    }
    Some(Matrix::from_rows(
        (0..n).map(|i| rref.reduced.row(i)[n..].to_vec()).collect(),
        n,
    ))
}

/// Coefficients (ascending) of the polynomial through the given points.
pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Vec<Scalar> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut poly = vec![Scalar::zero(); n.max(1)];
    for k in (0..n).rev() {
        // poly = poly * (y - x_k) + dd[k]
        let mut next = vec![Scalar::zero(); n.max(1)];
        for (i, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i + 1 < next.len() {
                next[i + 1] += c;
            }
            next[i] -= c * &xs[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::laurent::y0_power;

    #[test]
    fn interpolation_recovers_polynomial() {
        let xs: Vec<Scalar> = (1..=4).map(int).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| x * x * x - int(2) * x + int(5)).collect();
        assert_eq!(interpolate(&xs, &ys), vec![int(5), int(-2), int(0), int(1)]);
    }

    #[test]
    fn det_and_inverse() {
        let m = LaurentMatrix::from_entries(vec![
            vec![y0_power(2, int(1)), y0_power(1, int(1))],
            vec![Laurent::zero(1), y0_power(-1, int(3))],
        ]);
        assert_eq!(m.det(), y0_power(1, int(3)));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), LaurentMatrix::identity(2));
        let bad = LaurentMatrix::from_entries(vec![
            vec![&y0_power(1, int(1)) + &Laurent::one(1), Laurent::zero(1)],
            vec![Laurent::zero(1), Laurent::one(1)],
        ]);
        assert!(bad.inverse().is_err());
    }
}
