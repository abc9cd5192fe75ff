//! Transition matrix of the fibrewise tangent bundle E_n between the x and
//! y charts, in the primed bases.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{FusionError, Result};
use crate::geometry::fields::{coordinate_series, decompose, primed_basis, primed_delta, Kind, VectorField};
use crate::geometry::laurent::{y0_power, Laurent};
use crate::geometry::lmatrix::LaurentMatrix;
use crate::linalg::{frac, int};

/// (kind, index) in the order e'_1.., h'_1.., L'_1..L'_{n−2}, f'_1...
pub fn basis_labels(n: usize) -> Vec<(Kind, usize)> {
    primed_basis(n).into_iter().map(|f| (f.kind, f.index)).collect()
}

fn names(n: usize, chart: &str) -> Vec<String> {
    basis_labels(n)
        .into_iter()
        .map(|(k, i)| format!("{k}'{chart}_{i}"))
        .collect()
}

/// The matrix as tabulated: columns are x-chart fields, rows the y-chart
/// fields expressing them.
pub fn golden_table(n: usize) -> Result<LaurentMatrix> {
    if n < 2 {
        return Err(FusionError::Hypothesis("needs n >= 2".into()));
    }
    let labels = basis_labels(n);
    let pos = |k: Kind, i: usize| labels.iter().position(|&l| l == (k, i));
    let mut m = LaurentMatrix::zeros(labels.len());
    let mut put = |row: Option<usize>, col: usize, v: Laurent| {
        if let Some(r) = row {
            m.set(r, col, v);
        }
    };
    for (col, &(kind, i)) in labels.iter().enumerate() {
        match kind {
            Kind::E => {
                put(pos(Kind::E, i), col, y0_power(2, int(-1)));
                put(pos(Kind::H, i + 1), col, y0_power(1, int(1)));
                put(pos(Kind::F, i + 2), col, y0_power(0, int(1)));
            }
            Kind::H => {
                put(pos(Kind::H, i), col, y0_power(0, int(1)));
                put(pos(Kind::F, i + 1), col, y0_power(-1, int(-2)));
            }
            Kind::L => {
                put(pos(Kind::L, i), col, y0_power(0, int(1)));
                put(pos(Kind::F, i + 1), col, y0_power(-1, int(1)));
            }
            Kind::F => {
                put(pos(Kind::F, i), col, y0_power(-2, int(-1)));
            }
        }
    }
    Ok(m.with_labels(names(n, "y"), names(n, "x")))
}

/// Rebuild the matrix from scratch: substitute x = 1/y into each x-chart
/// field, push it forward by δy = −y²δx, and expand in the y-chart basis
/// separately for each power of y_0.
pub fn rederive(n: usize) -> Result<LaurentMatrix> {
    if n < 2 {
        return Err(FusionError::Hypothesis("needs n >= 2".into()));
    }
    let labels = basis_labels(n);
    let basis = primed_basis(n);
    let refs: Vec<&VectorField> = basis.iter().map(|f| &f.field).collect();
    let y = coordinate_series(n, n + 2);
    let x = y.invert()?;
    let y_sq = coordinate_series(n, n).mul(&coordinate_series(n, n));
    let mut m = LaurentMatrix::zeros(labels.len());
    for (col, &(kind, i)) in labels.iter().enumerate() {
        let dx = primed_delta(n, &x, kind, i)?;
        let dy = y_sq.mul(&dx).neg();
        let field = VectorField::from_series(n, &dy);
        let mut parts: BTreeMap<i32, VectorField> = BTreeMap::new();
        for (k, c) in field.coeffs().iter().enumerate() {
            for (p, piece) in c.split_by(0) {
                let slot = parts.entry(p).or_insert_with(|| VectorField::zero(n));
                let mut coeffs = slot.coeffs().to_vec();
                coeffs[k] = &coeffs[k] + &piece;
                *slot = VectorField::from_coeffs(coeffs);
            }
        }
        for (p, part) in parts {
            let c = decompose(&refs, &part).ok_or_else(|| {
                FusionError::integrity(format!(
                    "{kind}'x_{i}: y0^{p} component is not in the span of the y-chart fields"
                ))
            })?;
            for (row, v) in c.into_iter().enumerate() {
                if !v.is_zero() {
                    let e = m.get(row, col) + &y0_power(p, v);
                    m.set(row, col, e);
                }
            }
        }
    }
    Ok(m.with_labels(names(n, "y"), names(n, "x")))
}

/// An entry where the tabulated and re-derived matrices differ.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub row: String,
    pub col: String,
    pub golden: Laurent,
    pub derived: Laurent,
}

#[derive(Clone, Debug)]
pub struct TransitionReport {
    pub n: usize,
    pub size: usize,
    pub golden: LaurentMatrix,
    pub derived: LaurentMatrix,
    pub mismatches: Vec<Mismatch>,
    pub det_golden: Laurent,
    pub det_derived: Laurent,
}

impl TransitionReport {
    pub fn table_matches(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Both determinants are a nonzero constant times a power of y_0.
    pub fn det_is_unit(&self) -> bool {
        self.det_golden.terms().len() == 1 && self.det_derived.terms().len() == 1
    }
}

pub fn compare_transition(n: usize) -> Result<TransitionReport> {
    let golden = golden_table(n)?;
    let derived = rederive(n)?;
    let size = golden.size();
    let mut mismatches = Vec::new();
    for r in 0..size {
        for c in 0..size {
            if golden.get(r, c) != derived.get(r, c) {
                mismatches.push(Mismatch {
                    row: golden.row_labels[r].clone(),
                    col: golden.col_labels[c].clone(),
                    golden: golden.get(r, c).clone(),
                    derived: derived.get(r, c).clone(),
                });
            }
        }
    }
    Ok(TransitionReport {
        n,
        size,
        det_golden: golden.det(),
        det_derived: derived.det(),
        golden,
        derived,
        mismatches,
    })
}

/// The transition matrix of E_n used downstream: the re-derived one.
pub fn transition_matrix_en(n: usize) -> Result<LaurentMatrix> {
    rederive(n)
}

/// diag(−y0², 1, −y0^{−2}), the n = 2 matrix.
pub fn e2_expected() -> LaurentMatrix {
    LaurentMatrix::diagonal(&[(2, int(-1)), (0, int(1)), (-2, int(-1))])
}

/// Coefficient 2/y0 as a one-variable Laurent polynomial, for reports.
pub fn corrected_h_entry() -> Laurent {
    y0_power(-1, frac(2, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_is_diagonal() {
        let m = rederive(2).unwrap();
        assert_eq!(m.size(), 3);
        assert_eq!(m, e2_expected().with_labels(m.row_labels.clone(), m.col_labels.clone()));
    }

    #[test]
    fn table_differs_only_in_h_column() {
        for n in 3..=5 {
            let r = compare_transition(n).unwrap();
            assert_eq!(r.size, 4 * n - 5);
            assert!(r.det_is_unit());
            assert_eq!(r.mismatches.len(), n - 2, "{:?}", r.mismatches);
            for m in &r.mismatches {
                assert!(m.col.starts_with("h'x"));
                assert!(m.row.starts_with("f'y"));
                assert_eq!(m.derived, corrected_h_entry());
                assert_eq!(m.golden, y0_power(-1, int(-2)));
            }
        }
    }
}
