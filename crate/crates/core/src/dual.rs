//! The dual of M^A as symmetric polynomials with vanishing conditions on
//! diagonals, and the shuffle product between such spaces.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::composition::Composition;
use crate::error::Result;
use crate::graded::GradedCharacter;
use crate::linalg::{int, Echelon, Matrix, Scalar};
use crate::poly::Bideg;

/// Partitions of q into exactly s parts (zeros allowed), each part < n,
/// as weakly decreasing vectors, in lex-descending order.
pub fn partitions(s: usize, q: u32, n: u32) -> Vec<Vec<u32>> {
    fn go(s: usize, q: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if s == 0 {
            if q == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if q > max.saturating_mul(s as u32) {
            return;
        }
        for p in (0..=max.min(q)).rev() {
            cur.push(p);
            go(s - 1, q - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if s == 0 && q == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(s, q, n - 1, &mut Vec::with_capacity(s), &mut out);
    out
}

/// Number of distinct orderings of a multiset.
fn arrangements(parts: &[u32]) -> u64 {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    let mut num = 1u64;
    let mut seen = 0u64;
    for c in counts.values() {
        for t in 1..=*c {
            seen += 1;
            num = num * seen / t;
        }
    }
    num
}

/// λ minus the multiset β, when β ⊂ λ.
fn multiset_minus(lambda: &[u32], beta: &[u32]) -> Option<Vec<u32>> {
    let mut rest = lambda.to_vec();
    for b in beta {
        let pos = rest.iter().position(|x| x == b)?;
        rest.remove(pos);
    }
    Some(rest)
}

/// A symmetric polynomial in s variables, in the monomial symmetric basis.
/// Keys are weakly decreasing exponent vectors of length s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    pub s: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl SymPoly {
    pub fn zero(s: usize) -> Self {
        SymPoly {
            s,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(s: usize) -> Self {
        Self::m(vec![0; s])
    }

    /// The monomial symmetric function m_λ.
    pub fn m(mut lambda: Vec<u32>) -> Self {
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        let mut p = Self::zero(lambda.len());
        p.terms.insert(lambda, Scalar::one());
        p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn add_term(&mut self, mut lambda: Vec<u32>, c: Scalar) {
        assert_eq!(lambda.len(), self.s, "partition length");
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        let e = self.terms.entry(lambda).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SymPoly {
        let mut out = Self::zero(self.s);
        if !c.is_zero() {
            for (l, v) in &self.terms {
                out.terms.insert(l.clone(), v * c);
            }
        }
        out
    }

    /// Coefficient of the monomial z^exps (any order).
    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        let mut key = exps.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        self.terms.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest exponent of any single variable.
    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().filter_map(|l| l.first().copied()).max().unwrap_or(0)
    }

    /// Homogeneous components by total degree.
    pub fn components(&self) -> BTreeMap<u32, SymPoly> {
        let mut out: BTreeMap<u32, SymPoly> = BTreeMap::new();
        for (l, c) in &self.terms {
            let q = l.iter().sum();
            out.entry(q)
                .or_insert_with(|| SymPoly::zero(self.s))
                .terms
                .insert(l.clone(), c.clone());
        }
        out
    }

    /// Value at a point, through the expansion into monomials.
    pub fn eval(&self, z: &[Scalar]) -> Scalar {
        assert_eq!(z.len(), self.s);
        let mut total = Scalar::zero();
        for (l, c) in &self.terms {
            let mut perm = l.clone();
            perm.sort_unstable();
            loop {
                let mut t = c.clone();
                for (x, &e) in z.iter().zip(&perm) {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
                total += t;
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        total
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Σ over s_1-subsets S of {1..s_1+s_2} of f(z_S) g(z_{S^c}).
pub fn shuffle_product(f: &SymPoly, g: &SymPoly) -> SymPoly {
    let (s1, s2) = (f.s, g.s);
    let s = s1 + s2;
    let n = f.max_exponent().max(g.max_exponent()) + 1;
    let fq = f.components();
    let gq = g.components();
    let mut out = SymPoly::zero(s);
    let subsets = subsets(s, s1);
    for (q1, fc) in &fq {
        for (q2, gc) in &gq {
            for lambda in partitions(s, q1 + q2, n) {
                let mut c = Scalar::zero();
                for sub in &subsets {
                    let (mut a, mut b) = (Vec::with_capacity(s1), Vec::with_capacity(s2));
                    for (idx, &x) in lambda.iter().enumerate() {
                        if sub & (1 << idx) != 0 {
                            a.push(x);
                        } else {
                            b.push(x);
                        }
                    }
                    if a.iter().sum::<u32>() != *q1 {
                        continue;
                    }
                    let x = fc.coeff(&a);
                    if x.is_zero() {
                        continue;
                    }
                    c += x * gc.coeff(&b);
                }
                if !c.is_zero() {
                    out.add_term(lambda, c);
                }
            }
        }
    }
    out
}

fn subsets(s: usize, k: usize) -> Vec<u64> {
    (0u64..1 << s).filter(|m| m.count_ones() as usize == k).collect()
}

/// Homogeneous piece of degree q of a dual space: the partition basis and
/// a basis of solutions in it.
#[derive(Clone, Debug)]
pub struct DualPiece {
    pub partitions: Vec<Vec<u32>>,
    pub solutions: Vec<Vec<Scalar>>,
}

/// Symmetric polynomials f(z_1..z_s) with deg_{z_i} f < n such that, for each
/// i, f(z,..,z,z_{i+1},..,z_s) is divisible by z^{N_A(i)}.
#[derive(Clone, Debug)]
pub struct SymPolySpace {
    pub a: Composition,
    pub s: usize,
    pub n: usize,
    pieces: BTreeMap<u32, DualPiece>,
}

impl SymPolySpace {
    pub fn dim(&self) -> u64 {
        self.pieces.values().map(|p| p.solutions.len() as u64).sum()
    }

    pub fn dim_at(&self, q: u32) -> u64 {
        self.pieces.get(&q).map_or(0, |p| p.solutions.len() as u64)
    }

    pub fn pieces(&self) -> &BTreeMap<u32, DualPiece> {
        &self.pieces
    }

    /// Basis elements, each homogeneous, tagged by degree.
    pub fn basis(&self) -> Vec<(u32, SymPoly)> {
        let mut out = Vec::new();
        for (&q, p) in &self.pieces {
            for sol in &p.solutions {
                let mut f = SymPoly::zero(self.s);
                for (l, c) in p.partitions.iter().zip(sol) {
                    if !c.is_zero() {
                        f.add_term(l.clone(), c.clone());
                    }
                }
                out.push((q, f));
            }
        }
        out
    }

    /// True if f meets every vanishing condition and the degree bound.
    pub fn contains(&self, f: &SymPoly) -> bool {
        if f.s != self.s || (!f.is_zero() && f.max_exponent() as usize >= self.n.max(1)) {
            return false;
        }
        f.components().iter().all(|(&q, fc)| {
            let parts = partitions(self.s, q, self.n as u32);
            let coords: Vec<Scalar> = parts.iter().map(|l| fc.coeff(l)).collect();
            let m = constraint_matrix(&self.a, self.s, q, &parts);
            m.mul_vec(&coords).iter().all(Zero::is_zero)
        })
    }
}

/// Rows indexed by (i, β, m): coefficient of z^m z_{i+1}^{β_1}..z_s^{β_{s-i}}
/// after z_1 = .. = z_i = z, for every m < N_A(i).
fn constraint_matrix(a: &Composition, s: usize, q: u32, parts: &[Vec<u32>]) -> Matrix {
    let n = a.n() as u32;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 1..=s {
        let bound = a.n_a(i as u32);
        if bound == 0 {
            continue;
        }
        let tail = s - i;
        let lo = q.saturating_sub(bound - 1);
        for tq in lo..=q {
            for beta in partitions(tail, tq, n) {
                let row: Vec<Scalar> = parts
                    .iter()
                    .map(|l| match multiset_minus(l, &beta) {
                        Some(rest) => int(arrangements(&rest) as i64),
                        None => Scalar::zero(),
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Matrix::from_rows(rows, parts.len())
}

/// The degree-s dual space of M^A.
pub fn dual_space(a: &Composition, s: usize) -> SymPolySpace {
    let n = a.n();
    let top = (n as u32).saturating_sub(1) * s as u32;
    let pieces = (0..=top)
        .into_par_iter()
        .filter_map(|q| {
            let parts = partitions(s, q, n as u32);
            if parts.is_empty() {
                return None;
            }
            let m = constraint_matrix(a, s, q, &parts);
            let solutions = m.kernel_basis();
            (!solutions.is_empty()).then_some((q, DualPiece { partitions: parts, solutions }))
        })
        .collect();
    SymPolySpace {
        a: a.clone(),
        s,
        n,
        pieces,
    }
}

/// Bidegree of M^A paired with degree-q polynomials in s variables.
pub fn paired_bidegree(n: usize, s: usize, q: u32) -> Bideg {
    (s as u32, s as u32 * (n as u32).saturating_sub(1) - q)
}

/// Character of M^A computed through the dual side.
pub fn oracle_character(a: &Composition) -> GradedCharacter {
    let n = a.n();
    let mut ch = GradedCharacter::new();
    for s in 0..=a.top_degree() as usize + 1 {
        let space = dual_space(a, s);
        for (&q, p) in space.pieces() {
            ch.add(paired_bidegree(n, s, q), p.solutions.len() as u64);
        }
    }
    ch
}

/// A(k) = (k a_1 - k + 1, .., k a_n - k + 1).
pub fn scaled(a: &Composition, k: u32) -> Result<Composition> {
    Composition::new(a.parts().iter().map(|&x| k * x - k + 1).collect())
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub a: Composition,
    pub k: u32,
    pub scaled: Composition,
    pub dim: u64,
    pub expected_dim: u64,
    /// Every product of a degree k-1 element with a degree 1 element meets
    /// the A(k) conditions.
    pub products_in_space: bool,
    /// Per e-degree s: (rank of the products, dimension of the dual space).
    pub ranks: BTreeMap<usize, (u64, u64)>,
}

impl ComponentReport {
    pub fn generated(&self) -> bool {
        self.products_in_space && self.ranks.values().all(|(r, d)| r == d)
    }

    pub fn holds(&self) -> bool {
        self.dim == self.expected_dim && self.generated()
    }
}

fn full_dual(a: &Composition) -> Vec<SymPolySpace> {
    (0..=a.top_degree() as usize).map(|s| dual_space(a, s)).collect()
}

/// The k-th graded component of F_A and whether shuffle products of lower
/// components fill it.
pub fn coordinate_ring_component(a: &Composition, k: u32) -> Result<ComponentReport> {
    let ak = scaled(a, k)?;
    let expected_dim: u64 = ak.dim();
    let target = full_dual(&ak);
    let dim = target.iter().map(SymPolySpace::dim).sum();
    let mut ranks = BTreeMap::new();
    let mut products_in_space = true;
    if k >= 2 {
        let lower: Vec<(usize, SymPoly)> = full_dual(&scaled(a, k - 1)?)
            .iter()
            .flat_map(|sp| sp.basis().into_iter().map(move |(_, f)| (sp.s, f)))
            .collect();
        let first: Vec<(usize, SymPoly)> = full_dual(a)
            .iter()
            .flat_map(|sp| sp.basis().into_iter().map(move |(_, f)| (sp.s, f)))
            .collect();
        let pairs: Vec<(&(usize, SymPoly), &(usize, SymPoly))> =
            lower.iter().flat_map(|f| first.iter().map(move |g| (f, g))).collect();
        let products: Vec<(usize, SymPoly)> = pairs
            .par_iter()
            .filter(|(f, g)| f.0 + g.0 < target.len())
            .map(|(f, g)| (f.0 + g.0, shuffle_product(&f.1, &g.1)))
            .collect();
        let mut echelons: BTreeMap<(usize, u32), Echelon> = BTreeMap::new();
        for (s, h) in &products {
            if !target[*s].contains(h) {
                products_in_space = false;
            }
            for (q, hc) in h.components() {
                let parts = partitions(*s, q, ak.n() as u32);
                let coords: Vec<Scalar> = parts.iter().map(|l| hc.coeff(l)).collect();
                echelons
                    .entry((*s, q))
                    .or_insert_with(|| Echelon::new(parts.len()))
                    .insert(&coords);
            }
        }
        for sp in &target {
            let r: u64 = echelons
                .iter()
                .filter(|((s, _), _)| *s == sp.s)
                .map(|(_, e)| e.rank() as u64)
                .sum();
            ranks.insert(sp.s, (r, sp.dim()));
        }
    }
    Ok(ComponentReport {
        a: a.clone(),
        k,
        scaled: ak,
        dim,
        expected_dim,
        products_in_space,
        ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::FusionModule;
    use crate::graded::GradedModule;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(2, 2, 3), vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(partitions(0, 0, 3), vec![Vec::<u32>::new()]);
        assert!(partitions(2, 5, 3).is_empty());
        assert_eq!(arrangements(&[1, 1, 0]), 3);
        assert_eq!(arrangements(&[2, 1, 0]), 6);
    }

    #[test]
    fn dual_examples() {
        let a = comp(&[2, 2]);
        assert_eq!(dual_space(&a, 0).dim(), 1);
        assert_eq!(dual_space(&a, 1).dim(), 2);
        let d2 = dual_space(&a, 2);
        assert_eq!(d2.dim(), 1);
        assert_eq!(d2.dim_at(2), 1);
        assert_eq!(oracle_character(&a).to_string(), "1 + u + u*q + u^2");
    }

    #[test]
    fn oracle_agrees_small() {
        for v in [&[1][..], &[2, 3], &[2, 3, 4], &[1, 2, 2], &[3, 3]] {
            let a = comp(v);
            let m = FusionModule::build(&a).unwrap();
            assert_eq!(oracle_character(&a), m.character(), "{a}");
        }
    }

    #[test]
    fn shuffle_examples() {
        let one = SymPoly::one(1);
        let z = SymPoly::m(vec![1]);
        let two = shuffle_product(&one, &one);
        assert_eq!(two, SymPoly::one(2).scale(&int(2)));
        assert_eq!(shuffle_product(&z, &one), SymPoly::m(vec![1, 0]));
        assert_eq!(shuffle_product(&z, &one), shuffle_product(&one, &z));
    }

    #[test]
    fn coordinate_ring_examples() {
        let r = coordinate_ring_component(&comp(&[2, 2]), 1).unwrap();
        assert_eq!(r.dim, 4);
        let r = coordinate_ring_component(&comp(&[2, 2]), 2).unwrap();
        assert_eq!((r.dim, r.expected_dim), (9, 9));
        assert!(r.holds(), "{r:?}");
        let r = coordinate_ring_component(&comp(&[2, 3]), 2).unwrap();
        assert_eq!(r.dim, 15);
        assert!(r.holds(), "{r:?}");
    }
}
