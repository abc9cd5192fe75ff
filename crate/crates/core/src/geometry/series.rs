use num_traits::{One, Zero};

use crate::error::{FusionError, Result};
use crate::geometry::laurent::Laurent;
use crate::linalg::Scalar;

/// Ring of series coefficients.
pub trait Coeff: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Scalar) -> Self;
    fn is_nil(&self) -> bool;
    /// Inverse when the element is a unit.
    fn unit_inv(&self) -> Option<Self>;
}

impl Coeff for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self.clone()
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self * c
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn unit_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Coeff for Laurent {
    fn zero_like(&self) -> Self {
        Laurent::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Laurent::one(self.nvars())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn unit_inv(&self) -> Option<Self> {
        self.unit_inverse()
    }
}

/// Element of R[t]/t^n, stored as the n coefficients of t^0..t^{n-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R: Coeff> {
    coeffs: Vec<R>,
}

pub type TruncatedSeries = Series<Scalar>;

impl<R: Coeff> Series<R> {
    /// Precision is the length of `coeffs`, which must be positive.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "series needs precision >= 1");
        Series { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    fn zero_coeff(&self) -> R {
        self.coeffs[0].zero_like()
    }

    pub fn zero_like(&self) -> Self {
        Series::new(vec![self.zero_coeff(); self.precision()])
    }

    /// c · t^k at the same precision.
    pub fn monomial_like(&self, k: usize, c: R) -> Self {
        let mut s = self.zero_like();
        if k < s.precision() {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        Series::new((0..n).map(|k| self.coeffs[k].plus(&other.coeffs[k])).collect())
    }

    pub fn neg(&self) -> Self {
        Series::new(self.coeffs.iter().map(Coeff::negated).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Series::new(self.coeffs.iter().map(|x| x.scaled(c)).collect())
    }

    pub fn scale_by(&self, c: &R) -> Self {
        Series::new(self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let mut out = vec![self.zero_coeff(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_nil() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if !b.is_nil() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Series::new(out)
    }

    /// Multiply by t^k (k may be negative); coefficients pushed below t^0
    /// must vanish.
    pub fn shift(&self, k: isize) -> Result<Self> {
        let n = self.precision() as isize;
        let mut out = vec![self.zero_coeff(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = i as isize + k;
            if j < 0 {
                if !c.is_nil() {
                    return Err(FusionError::integrity(format!(
                        "series not divisible by t^{}",
                        -k
                    )));
                }
            } else if j < n {
                out[j as usize] = c.clone();
            }
        }
        Ok(Series::new(out))
    }

    /// Formal derivative d/dt (the top coefficient becomes 0).
    pub fn derivative(&self) -> Self {
        let n = self.precision();
        let mut out = vec![self.zero_coeff(); n];
        for k in 1..n {
            out[k - 1] = self.coeffs[k].scaled(&Scalar::from_integer((k as i64).into()));
        }
        Series::new(out)
    }

    /// Drop to a lower precision.
    pub fn truncate(&self, n: usize) -> Self {
        Series::new(self.coeffs[..n.min(self.precision())].to_vec())
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .unit_inv()
            .ok_or_else(|| FusionError::Hypothesis("constant term is not invertible".into()))?;
        let n = self.precision();
        let mut y: Vec<R> = Vec::with_capacity(n);
        y.push(inv0.clone());
        for k in 1..n {
            let mut acc = self.zero_coeff();
            for j in 1..=k {
                acc = acc.plus(&self.coeffs[j].times(&y[k - j]));
            }
            y.push(acc.times(&inv0).negated());
        }
        Ok(Series::new(y))
    }
}

/// y with x·y = 1 mod t^n; rejects x_0 = 0.
pub fn invert_series(x: &TruncatedSeries) -> Result<TruncatedSeries> {
    if x.coeff(0).is_zero() {
        return Err(FusionError::Hypothesis("x_0 = 0 lies outside the chart overlap".into()));
    }
    x.invert()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    fn ser(v: &[i64]) -> TruncatedSeries {
        Series::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(invert_series(&ser(&[1])).unwrap(), ser(&[1]));
        assert_eq!(invert_series(&ser(&[1, 1, 0])).unwrap(), ser(&[1, -1, 1]));
        assert_eq!(
            invert_series(&ser(&[2, 0])).unwrap(),
            Series::new(vec![frac(1, 2), int(0)])
        );
        assert!(invert_series(&ser(&[0, 1])).is_err());
    }

    #[test]
    fn shifts_and_derivatives() {
        let s = ser(&[0, 2, 3]);
        assert_eq!(s.shift(-1).unwrap(), ser(&[2, 3, 0]));
        assert!(ser(&[1, 0]).shift(-1).is_err());
        assert_eq!(s.derivative(), ser(&[2, 6, 0]));
    }
}
