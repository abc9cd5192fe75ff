use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{int, Scalar};

/// Bidegree (e-degree k, t-weight w).
pub type Bideg = (u32, u32);

/// Monomial in e_0..e_{n-1}; slot i holds the exponent of e_i.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn weight(&self) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| i as u32 * e)
            .sum()
    }

    pub fn bidegree(&self) -> Bideg {
        (self.degree(), self.weight())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "variable count mismatch");
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial { exps }
    }

    /// `self / e_i`, if e_i divides it.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial { exps })
    }

    /// Rename e_j to e_{j+offset} inside `n` variables.
    pub fn shift_vars(&self, offset: usize, n: usize) -> Option<Monomial> {
        let mut exps = vec![0; n];
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if j + offset >= n {
                return None;
            }
            exps[j + offset] = e;
        }
        Some(Monomial { exps })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("e{i}")
                } else {
                    format!("e{i}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// All monomials in `n` variables of bidegree (k, s), in descending
/// lexicographic order of exponent vectors (e_0 most significant).
pub fn enumerate_monomials(n: usize, k: u32, s: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 && s == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut exps = vec![0u32; n];
    fill(n, 0, k, s, &mut exps, &mut out);
    out
}

fn fill(n: usize, slot: usize, k: u32, s: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if slot == n - 1 {
        let w = (n - 1) as u32;
        let ok = if w == 0 { s == 0 } else { s == w * k };
        if ok {
            exps[slot] = k;
            out.push(Monomial::new(exps.clone()));
            exps[slot] = 0;
        }
        return;
    }
    let i = slot as u32;
    for c in (0..=k).rev() {
        let used = i * c;
        if used > s {
            continue;
        }
        let (rk, rs) = (k - c, s - used);
        // remaining slots carry weights i+1..n-1
        if (i + 1) * rk <= rs && rs <= (n as u32 - 1) * rk {
            exps[slot] = c;
            fill(n, slot + 1, rk, rs, exps, out);
            exps[slot] = 0;
        }
    }
}

/// Sparse polynomial in e_0..e_{n-1} with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Monomial::one(n), Scalar::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(n, i), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero(m.n());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert_eq!(m.n(), self.n, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                *acc.entry(a.mul(b)).or_insert_with(Scalar::zero) += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Polynomial {
            n: self.n,
            terms: acc,
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.n);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The common bidegree when all terms share one.
    pub fn bidegree(&self) -> Option<Bideg> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    /// Split into bihomogeneous components.
    pub fn components(&self) -> BTreeMap<Bideg, Polynomial> {
        let mut out: BTreeMap<Bideg, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree())
                .or_insert_with(|| Polynomial::zero(self.n))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Rename e_j to e_{j+offset} inside `n` variables; None if an index overflows.
    pub fn shift_vars(&self, offset: usize, n: usize) -> Option<Polynomial> {
        let mut out = Polynomial::zero(n);
        for (m, c) in &self.terms {
            out.add_term(m.shift_vars(offset, n)?, c.clone());
        }
        Some(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if c.is_one() {
                    m.to_string()
                } else if m.degree() == 0 {
                    c.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_monomials(2, 1, 0), vec![Monomial::new(vec![1, 0])]);
        assert_eq!(enumerate_monomials(2, 2, 1), vec![Monomial::new(vec![1, 1])]);
        assert_eq!(
            enumerate_monomials(3, 2, 2),
            vec![Monomial::new(vec![1, 0, 1]), Monomial::new(vec![0, 2, 0])]
        );
        assert!(enumerate_monomials(3, 1, 3).is_empty());
        assert_eq!(enumerate_monomials(1, 4, 0).len(), 1);
        assert_eq!(enumerate_monomials(0, 0, 0).len(), 1);
        assert!(enumerate_monomials(0, 1, 0).is_empty());
    }

    #[test]
    fn enumeration_is_descending() {
        let ms = enumerate_monomials(4, 6, 9);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert!(ms.iter().all(|m| m.bidegree() == (6, 9)));
    }

    #[test]
    fn polynomial_arithmetic() {
        let e0 = Polynomial::var(2, 0);
        let e1 = Polynomial::var(2, 1);
        let sq = e0.add(&e1).pow(2);
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(sq.coeff(&Monomial::new(vec![1, 1])), int(2));
        assert!(sq.bidegree().is_none());
        assert_eq!(sq.components().len(), 3);
        assert!(sq.sub(&sq).is_zero());
        assert_eq!(e1.to_string(), "e1");
        assert_eq!(e1.shift_vars(1, 2), None);
        assert_eq!(e0.shift_vars(1, 2), Some(e1));
    }
}
