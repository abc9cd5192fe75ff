use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::Scalar;

/// Polynomial in n variables with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Scalar>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// c · v_k^e.
    pub fn monomial(nvars: usize, k: usize, e: i32, c: Scalar) -> Self {
        let mut exps = vec![0; nvars];
        exps[k] = e;
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        Self::monomial(nvars, k, 1, Scalar::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, Scalar> {
        &self.terms
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: Scalar) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Laurent {
        let mut out = Self::zero(self.nvars);
        if !c.is_zero() {
            for (e, v) in &self.terms {
                out.terms.insert(e.clone(), v * c);
            }
        }
        out
    }

    /// Multiply by v_k^e.
    pub fn shift(&self, k: usize, e: i32) -> Laurent {
        let mut out = Self::zero(self.nvars);
        for (x, v) in &self.terms {
            let mut x = x.clone();
            x[k] += e;
            out.terms.insert(x, v.clone());
        }
        out
    }

    /// Inverse of a single nonzero term.
    pub fn unit_inverse(&self) -> Option<Laurent> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let mut out = Self::zero(self.nvars);
        out.terms.insert(e.iter().map(|x| -x).collect(), c.recip());
        Some(out)
    }

    pub fn derivative(&self, k: usize) -> Laurent {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] != 0 {
                let mut e2 = e.clone();
                e2[k] -= 1;
                out.add_term(e2, c * Scalar::from_integer(e[k].into()));
            }
        }
        out
    }

    /// Value at a point; None if a variable with a negative exponent is zero.
    pub fn eval(&self, pt: &[Scalar]) -> Option<Scalar> {
        assert_eq!(pt.len(), self.nvars);
        let mut total = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in pt.iter().zip(e) {
                if k < 0 {
                    if x.is_zero() {
                        return None;
                    }
                    t *= num_traits::pow(x.recip(), (-k) as usize);
                } else {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        Some(total)
    }

    /// Exponent range of variable k.
    pub fn degree_range(&self, k: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[k]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Split by the power of variable k; that variable is removed from each part.
    pub fn split_by(&self, k: usize) -> BTreeMap<i32, Laurent> {
        let mut out: BTreeMap<i32, Laurent> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let p = std::mem::replace(&mut e2[k], 0);
            out.entry(p)
                .or_insert_with(|| Laurent::zero(self.nvars))
                .terms
                .insert(e2, c.clone());
        }
        out
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff(&self, exps: &[i32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Single-variable value: a Laurent polynomial in one variable evaluated at y.
    pub fn eval1(&self, y: &Scalar) -> Option<Scalar> {
        self.eval(std::slice::from_ref(y))
    }
}

impl Add for &Laurent {
    type Output = Laurent;

    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero(self.nvars.max(rhs.nvars));
        for (e, c) in self.terms.iter().chain(&rhs.terms) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;

    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;

    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero(self.nvars.max(rhs.nvars));
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;

    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Mul for Laurent {
    type Output = Laurent;

    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = if self.nvars == 1 {
            vec!["y0".into()]
        } else {
            (0..self.nvars).map(|k| format!("v{k}")).collect()
        };
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(&names)
                .filter(|(k, _)| **k != 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let neg = *c < Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Laurent polynomial in the single variable y_0.
pub fn y0_power(e: i32, c: Scalar) -> Laurent {
    Laurent::monomial(1, 0, e, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    #[test]
    fn arithmetic() {
        let x = Laurent::var(2, 0);
        let inv = x.unit_inverse().unwrap();
        assert_eq!(&x * &inv, Laurent::one(2));
        let p = &(&x * &x) + &Laurent::var(2, 1);
        assert_eq!(p.derivative(0), x.scale(&int(2)));
        assert_eq!(inv.derivative(0), x.shift(0, -3).scale(&int(-1)));
        assert_eq!(inv.eval(&[int(2), int(5)]), Some(frac(1, 2)));
        assert_eq!(inv.eval(&[int(0), int(5)]), None);
        assert_eq!(y0_power(-2, int(-1)).to_string(), "-y0^-2");
    }
}
