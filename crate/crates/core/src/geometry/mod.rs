//! Coordinate computations on the Schubert variety: vector fields on the big
//! cells, the transition matrix of the fibrewise tangent bundle, its
//! splitting type, and the dimension recursion for sections of line bundles.

pub mod cohomology;
pub mod fields;
pub mod laurent;
pub mod lmatrix;
pub mod series;
pub mod splitting;
pub mod transition;

use rand::Rng;

use crate::linalg::{frac, Scalar};

pub use laurent::Laurent;
pub use series::{invert_series, Series, TruncatedSeries};

/// Series with multivariate Laurent coefficients.
pub type SymSeries = Series<Laurent>;

/// Random rational point p/q with |p| ≤ bound, 1 ≤ q ≤ bound, and a nonzero
/// first coordinate.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<Scalar> {
    (0..n)
        .map(|k| loop {
            let p = rng.gen_range(-bound..=bound);
            let q = rng.gen_range(1..=bound);
            if k > 0 || p != 0 {
                break frac(p, q);
            }
        })
        .collect()
}
