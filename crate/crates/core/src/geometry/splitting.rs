//! Splitting type of a vector bundle on P^1 from its transition matrix.

use num_traits::Zero;

use crate::error::{FusionError, Result};
use crate::geometry::laurent::Laurent;
use crate::geometry::lmatrix::LaurentMatrix;
use crate::linalg::{Matrix, Scalar};

pub const DEFAULT_STEP_BOUND: usize = 10_000;

#[derive(Clone, Debug)]
pub struct SplittingReport {
    /// Splitting exponents, descending; None if the step bound ran out.
    pub degrees: Option<Vec<i32>>,
    pub steps: usize,
    /// y-degree of det M.
    pub det_degree: i32,
    /// The factor P(y) left after the column operations is polynomial with
    /// P(0) invertible, so that P^{-1} is the required row operation.
    pub certified: bool,
}

impl SplittingReport {
    pub fn conserves_degree(&self) -> bool {
        self.degrees
            .as_ref()
            .is_some_and(|d| d.iter().sum::<i32>() == self.det_degree)
    }
}

fn lowest(col: &[Laurent]) -> i32 {
    col.iter()
        .filter_map(|e| e.degree_range(0).map(|r| r.0))
        .min()
        .expect("nonzero column")
}

/// Reduce M to diag(y^{d_i}) by column operations over Q[y^{-1}] and row
/// operations over Q[y].
///
/// Columns are reduced in the variable z = 1/y: while the matrix of leading
/// z-coefficients is singular, a kernel vector lowers the z-degree of one
/// column. When it is invertible the matrix factors as P(y)·diag(y^{d_i})
/// with P ∈ GL_n(Q[y]).
pub fn splitting_type(m: &LaurentMatrix, step_bound: usize) -> Result<SplittingReport> {
    let det = m.det();
    if det.terms().len() != 1 {
        return Err(FusionError::Hypothesis(format!(
            "determinant {det} is not a unit times a power of y0"
        )));
    }
    let det_degree = det.terms().keys().next().expect("one term")[0];
    let n = m.size();
    let mut cols: Vec<Vec<Laurent>> = (0..n)
        .map(|c| (0..n).map(|r| m.get(r, c).clone()).collect())
        .collect();
    let mut steps = 0;
    loop {
        let lows: Vec<i32> = cols.iter().map(|c| lowest(c)).collect();
        let lead = Matrix::from_rows(
            (0..n)
                .map(|r| (0..n).map(|c| cols[c][r].coeff(&[lows[c]])).collect())
                .collect(),
            n,
        );
        let kernel = lead.kernel_basis();
        let Some(v) = kernel.first() else {
            let certified = (0..n).all(|c| cols[c].iter().all(|e| e.degree_range(0).is_none_or(|r| r.0 >= lows[c])));
            let mut degrees = lows;
            degrees.sort_unstable_by(|a, b| b.cmp(a));
            return Ok(SplittingReport {
                degrees: Some(degrees),
                steps,
                det_degree,
                certified,
            });
        };
        if steps >= step_bound {
            return Ok(SplittingReport {
                degrees: None,
                steps,
                det_degree,
                certified: false,
            });
        }
        // Column with the highest degree in z (lowest in y) among the support.
        let j = (0..n)
            .filter(|&c| !v[c].is_zero())
            .min_by_key(|&c| lows[c])
            .expect("nonzero kernel vector");
        let mut new = vec![Laurent::zero(1); n];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            // v_c · y^{lows[j] − lows[c]}: a nonnegative power of z.
            let shift = lows[j] - lows[c];
            for r in 0..n {
                new[r] = &new[r] + &cols[c][r].shift(0, shift).scale(x);
            }
        }
        cols[j] = new;
        steps += 1;
    }
}

/// h^0 of the twist by O(m): dim{s ∈ Q[y^{-1}]^n : y^m M s ∈ Q[y]^n}.
pub fn h0(m: &LaurentMatrix, inverse_low: i32, twist: i32) -> u64 {
    let n = m.size();
    // s = y^{-m} M^{-1} p with p polynomial, so s has z-degree at most m − low(M^{-1}).
    let top = twist - inverse_low;
    if top < 0 {
        return 0;
    }
    let k = top as usize + 1;
    let unknowns = n * k;
    let mut rows: std::collections::BTreeMap<(usize, i32), Vec<Scalar>> = Default::default();
    for r in 0..n {
        for c in 0..n {
            for (e, coef) in m.get(r, c).terms() {
                for d in 0..k {
                    let t = twist + e[0] - d as i32;
                    if t < 0 {
                        let row = rows.entry((r, t)).or_insert_with(|| vec![Scalar::zero(); unknowns]);
                        row[c * k + d] += coef;
                    }
                }
            }
        }
    }
    let rank = Matrix::from_rows(rows.into_values().collect(), unknowns).rank();
    (unknowns - rank) as u64
}

/// Splitting type from the second differences of m ↦ h^0(M ⊗ O(m)),
/// which equals Σ max(0, d_i + m + 1).
pub fn splitting_by_sections(m: &LaurentMatrix) -> Result<Vec<i32>> {
    let n = m.size();
    let inv = m.inverse()?;
    let inverse_low = inv.range().map_or(0, |r| r.0);
    let mut lo = 0;
    while h0(m, inverse_low, lo) > 0 {
        lo -= 1;
    }
    let mut out = Vec::new();
    let (mut prev2, mut prev1) = (0u64, 0u64);
    let mut twist = lo;
    while out.len() < n {
        let cur = h0(m, inverse_low, twist);
        let mult = cur as i64 - 2 * prev1 as i64 + prev2 as i64;
        if mult < 0 {
            return Err(FusionError::integrity("negative multiplicity in section count"));
        }
        out.extend(std::iter::repeat_n(-twist, mult as usize));
        prev2 = prev1;
        prev1 = cur;
        twist += 1;
        if twist > lo + 4 * n as i32 + 64 {
            return Err(FusionError::integrity("section counts did not account for every summand"));
        }
    }
    if out.len() != n {
        return Err(FusionError::integrity("too many summands from section counts"));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// {2, 1^{n−1}, 0^{2n−5}, −1^{n−1}, −2} for n > 2 and {2, 0, −2} for n = 2.
pub fn expected_en_type(n: usize) -> Vec<i32> {
    if n == 2 {
        return vec![2, 0, -2];
    }
    let mut v = vec![2];
    v.extend(std::iter::repeat_n(1, n - 1));
    v.extend(std::iter::repeat(0).take(2 * n - 5));
    v.extend(std::iter::repeat(-1).take(n - 1));
    v.push(-2);
    v
}

/// The type the transition matrix actually has: {2, 1, 1, 0^{4n−11}, −1, −1, −2}
/// for n > 3, agreeing with `expected_en_type` only for n ≤ 3.
///
/// The matrix is block diagonal. For 1 ≤ k ≤ n−3 the columns e'_k, h'_{k+1},
/// L'_{k+1}, f'_{k+2} form a block of determinant 1 with no sections of the
/// O(−1) twist, hence O(0)^4; the rest is O(2) (e'_{n−1}), O(1)^2 (e'_{n−2},
/// h'_{n−1}), O(0) + O(−1)^2 (h'_1, L'_1, f'_2) and O(−2) (f'_1).
pub fn block_en_type(n: usize) -> Vec<i32> {
    if n <= 3 {
        return expected_en_type(n);
    }
    let mut v = vec![2, 1, 1];
    v.extend(std::iter::repeat(0).take(4 * n - 11));
    v.extend([-1, -1, -2]);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::laurent::y0_power;
    use crate::geometry::transition::{golden_table, transition_matrix_en};
    use crate::linalg::int;

    #[test]
    fn diagonal_input() {
        let m = LaurentMatrix::diagonal(&[(2, int(1)), (0, int(1)), (-2, int(1))]);
        let r = splitting_type(&m, DEFAULT_STEP_BOUND).unwrap();
        assert_eq!(r.degrees, Some(vec![2, 0, -2]));
        assert_eq!(r.steps, 0);
        assert_eq!(splitting_by_sections(&m).unwrap(), vec![2, 0, -2]);
    }

    #[test]
    fn non_diagonal_input() {
        // [[1, y], [0, y^2]] splits as O(1) + O(1).
        let m = LaurentMatrix::from_entries(vec![
            vec![Laurent::one(1), y0_power(1, int(1))],
            vec![Laurent::zero(1), y0_power(2, int(1))],
        ]);
        let r = splitting_type(&m, DEFAULT_STEP_BOUND).unwrap();
        assert_eq!(r.degrees, Some(vec![1, 1]));
        assert!(r.certified && r.conserves_degree());
        assert_eq!(splitting_by_sections(&m).unwrap(), vec![1, 1]);
    }

    #[test]
    fn en_types() {
        for n in 2..=5 {
            for (name, m) in [("derived", transition_matrix_en(n).unwrap()), ("golden", golden_table(n).unwrap())] {
                let r = splitting_type(&m, DEFAULT_STEP_BOUND).unwrap();
                assert!(r.certified && r.conserves_degree(), "{name} n={n}");
                let sections = splitting_by_sections(&m).unwrap();
                assert_eq!(r.degrees.as_deref(), Some(&sections[..]), "{name} n={n}");
                assert_eq!(sections, block_en_type(n), "{name} n={n}");
            }
        }
        assert_eq!(block_en_type(3), expected_en_type(3));
        assert_ne!(block_en_type(4), expected_en_type(4));
    }

    #[test]
    fn section_count_matches_both_types() {
        // Both multisets give 4n − 4 global sections.
        let count = |d: &[i32]| d.iter().map(|&x| (x + 1).max(0)).sum::<i32>();
        for n in 3..=6 {
            assert_eq!(count(&block_en_type(n)), 4 * n as i32 - 4);
            assert_eq!(count(&expected_en_type(n)), 4 * n as i32 - 4);
        }
    }

    #[test]
    fn singular_rejected() {
        let m = LaurentMatrix::from_entries(vec![
            vec![&Laurent::one(1) + &y0_power(1, int(1)), Laurent::zero(1)],
            vec![Laurent::zero(1), Laurent::one(1)],
        ]);
        assert!(splitting_type(&m, 10).is_err());
    }
}
