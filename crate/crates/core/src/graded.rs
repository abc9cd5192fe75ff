use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::error::{FusionError, Result};
use crate::linalg::{Echelon, Matrix, Scalar};
use crate::poly::{Bideg, Polynomial};

/// Bigraded dimension table, written as a polynomial in u (e-degree) and q (weight).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedCharacter {
    dims: BTreeMap<Bideg, u64>,
}

impl GradedCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_map(map: impl IntoIterator<Item = (Bideg, u64)>) -> Self {
        let mut c = Self::new();
        for (d, v) in map {
            c.add(d, v);
        }
        c
    }

    pub fn add(&mut self, d: Bideg, v: u64) {
        if v > 0 {
            *self.dims.entry(d).or_insert(0) += v;
        }
    }

    pub fn get(&self, d: Bideg) -> u64 {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Bideg, u64> {
        &self.dims
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn sum(&self, other: &GradedCharacter) -> GradedCharacter {
        let mut out = self.clone();
        for (&d, &v) in &other.dims {
            out.add(d, v);
        }
        out
    }

    /// `self - other`, or None if some coefficient would go negative.
    pub fn difference(&self, other: &GradedCharacter) -> Option<GradedCharacter> {
        let mut out = self.clone();
        for (&d, &v) in &other.dims {
            let cur = out.get(d);
            if cur < v {
                return None;
            }
            if cur == v {
                out.dims.remove(&d);
            } else {
                out.dims.insert(d, cur - v);
            }
        }
        Some(out)
    }

    pub fn product(&self, other: &GradedCharacter) -> GradedCharacter {
        let mut out = GradedCharacter::new();
        for (&(k1, w1), &a) in &self.dims {
            for (&(k2, w2), &b) in &other.dims {
                out.add((k1 + k2, w1 + w2), a * b);
            }
        }
        out
    }

    /// Lowest bidegree in (k, then w) order.
    pub fn lowest(&self) -> Option<Bideg> {
        self.dims.keys().next().copied()
    }

    pub fn apply(&self, s: &Shift) -> BTreeMap<(i64, i64), u64> {
        self.dims
            .iter()
            .map(|(&d, &v)| (s.map(d), v))
            .collect()
    }
}

impl fmt::Display for GradedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|(&(k, w), &c)| {
                let mut factors = Vec::new();
                match k {
                    0 => {}
                    1 => factors.push("u".to_string()),
                    _ => factors.push(format!("u^{k}")),
                }
                match w {
                    0 => {}
                    1 => factors.push("q".to_string()),
                    _ => factors.push(format!("q^{w}")),
                }
                match (c, factors.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => factors.join("*"),
                    _ => format!("{c}*{}", factors.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Regrading (k, w) -> (k + dk, w + slope*k + dq).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Shift {
    pub dk: i64,
    pub dq: i64,
    pub slope: i64,
}

impl Shift {
    pub const IDENTITY: Shift = Shift {
        dk: 0,
        dq: 0,
        slope: 0,
    };

    pub fn map(&self, (k, w): Bideg) -> (i64, i64) {
        let (k, w) = (k as i64, w as i64);
        (k + self.dk, w + self.slope * k + self.dq)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k,w) -> (k{:+}, w{:+}*k{:+})", self.dk, self.slope, self.dq)
    }
}

/// Slopes tried by [`find_shift`], in order of preference.
pub const DEFAULT_SLOPES: [i64; 9] = [0, 1, -1, 2, -2, 3, -3, 4, -4];

/// Find a regrading sending `a` onto `b` exactly. Slopes are tried in the
/// given order; the offsets are fixed by aligning lowest bidegrees.
pub fn find_shift(a: &GradedCharacter, b: &GradedCharacter, slopes: &[i64]) -> Option<Shift> {
    if a.is_zero() || b.is_zero() {
        return (a.is_zero() && b.is_zero()).then_some(Shift::IDENTITY);
    }
    if a.total() != b.total() {
        return None;
    }
    let target: BTreeMap<(i64, i64), u64> = b
        .dims
        .iter()
        .map(|(&(k, w), &v)| ((k as i64, w as i64), v))
        .collect();
    let (bk, bw) = *target.keys().next().unwrap();
    for &slope in slopes {
        let pre = Shift {
            dk: 0,
            dq: 0,
            slope,
        };
        let mapped = a.apply(&pre);
        let (ak, aw) = *mapped.keys().next().unwrap();
        let s = Shift {
            dk: bk - ak,
            dq: bw - aw,
            slope,
        };
        if a.apply(&s) == target {
            return Some(s);
        }
    }
    None
}

/// Operator acting on a graded module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    /// e_j, acting diagonally on tensor products.
    E(usize),
    /// e_j acting on one tensor factor only (e_j^{(factor+1)}).
    Factor { factor: usize, j: usize },
    /// A bihomogeneous polynomial in the diagonal e's.
    Poly(Polynomial),
}

impl Op {
    pub fn shift(&self) -> Result<Bideg> {
        match self {
            Op::E(j) | Op::Factor { j, .. } => Ok((1, *j as u32)),
            Op::Poly(p) => p.bidegree().ok_or(FusionError::NotHomogeneous),
        }
    }

    pub fn target(&self, d: Bideg) -> Result<Bideg> {
        let (dk, dw) = self.shift()?;
        Ok((d.0 + dk, d.1 + dw))
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::E(j) => write!(f, "e{j}"),
            Op::Factor { factor, j } => write!(f, "e{j}^({})", factor + 1),
            Op::Poly(p) => write!(f, "[{p}]"),
        }
    }
}

/// Element of a graded module, stored per bidegree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    parts: BTreeMap<Bideg, Vec<Scalar>>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn homogeneous(d: Bideg, coords: Vec<Scalar>) -> Self {
        let mut e = Self::zero();
        e.add_part(d, &coords);
        e
    }

    pub fn parts(&self) -> &BTreeMap<Bideg, Vec<Scalar>> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add_part(&mut self, d: Bideg, coords: &[Scalar]) {
        if coords.iter().all(|x| x.is_zero()) {
            return;
        }
        match self.parts.get_mut(&d) {
            Some(v) => {
                for (x, y) in v.iter_mut().zip(coords) {
                    *x += y;
                }
                if v.iter().all(|x| x.is_zero()) {
                    self.parts.remove(&d);
                }
            }
            None => {
                self.parts.insert(d, coords.to_vec());
            }
        }
    }

    /// The single bidegree of a nonzero homogeneous element.
    pub fn bidegree(&self) -> Option<Bideg> {
        (self.parts.len() == 1).then(|| *self.parts.keys().next().unwrap())
    }
}

/// A finite-dimensional bigraded module with e-operators.
pub trait GradedModule: Sync {
    /// Number of e-variables acting.
    fn n(&self) -> usize;

    /// Bidegrees of the nonzero pieces, ascending.
    fn bidegrees(&self) -> Vec<Bideg>;

    fn piece_dim(&self, d: Bideg) -> usize;

    /// Image of basis vector `idx` of piece `d` under an `E` or `Factor`
    /// operator, as coordinates in the target piece.
    fn apply_basis(&self, op: &Op, d: Bideg, idx: usize) -> Result<Vec<Scalar>>;

    fn total_dim(&self) -> u64 {
        self.bidegrees()
            .into_iter()
            .map(|d| self.piece_dim(d) as u64)
            .sum()
    }

    fn character(&self) -> GradedCharacter {
        GradedCharacter::from_map(
            self.bidegrees()
                .into_iter()
                .map(|d| (d, self.piece_dim(d) as u64)),
        )
    }

    /// Apply an operator to a homogeneous vector.
    fn apply(&self, op: &Op, d: Bideg, v: &[Scalar]) -> Result<(Bideg, Vec<Scalar>)> {
        let target = op.target(d)?;
        let tdim = self.piece_dim(target);
        match op {
            Op::Poly(p) => {
                let mut out = vec![Scalar::zero(); tdim];
                for (m, c) in p.terms() {
                    if m.n() > self.n() && m.exps()[self.n()..].iter().any(|&e| e > 0) {
                        continue;
                    }
                    let mut cur_d = d;
                    let mut cur = v.to_vec();
                    'outer: for (j, &e) in m.exps().iter().enumerate() {
                        for _ in 0..e {
                            let (nd, nv) = self.apply(&Op::E(j), cur_d, &cur)?;
                            cur_d = nd;
                            cur = nv;
                            if cur.is_empty() {
                                break 'outer;
                            }
                        }
                    }
                    if cur.is_empty() {
                        continue;
                    }
                    for (x, y) in out.iter_mut().zip(&cur) {
                        if !y.is_zero() {
                            *x += c * y;
                        }
                    }
                }
                Ok((target, out))
            }
            _ => {
                let mut out = vec![Scalar::zero(); tdim];
                if tdim == 0 {
                    return Ok((target, out));
                }
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let img = self.apply_basis(op, d, i)?;
                    for (x, y) in out.iter_mut().zip(&img) {
                        if !y.is_zero() {
                            *x += c * y;
                        }
                    }
                }
                Ok((target, out))
            }
        }
    }

    /// Apply an operator to an arbitrary element.
    fn apply_element(&self, op: &Op, v: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (&d, coords) in v.parts() {
            let (t, img) = self.apply(op, d, coords)?;
            out.add_part(t, &img);
        }
        Ok(out)
    }

    /// Matrix of `op` from piece `d` to its target; columns index the source basis.
    fn op_matrix(&self, op: &Op, d: Bideg) -> Result<Matrix> {
        let src = self.piece_dim(d);
        let target = op.target(d)?;
        let tdim = self.piece_dim(target);
        let mut m = Matrix::zeros(tdim, src);
        for i in 0..src {
            let mut unit = vec![Scalar::zero(); src];
            unit[i] = num_traits::One::one();
            let (_, img) = self.apply(op, d, &unit)?;
            for (r, x) in img.into_iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, i, x);
                }
            }
        }
        Ok(m)
    }
}

/// Graded subspace of a graded module, one echelon basis per bidegree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subspace {
    pieces: BTreeMap<Bideg, Echelon>,
}

impl Subspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn whole<M: GradedModule + ?Sized>(m: &M) -> Self {
        let mut s = Self::new();
        for d in m.bidegrees() {
            let dim = m.piece_dim(d);
            let mut e = Echelon::new(dim);
            for i in 0..dim {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = num_traits::One::one();
                e.insert(&v);
            }
            s.pieces.insert(d, e);
        }
        s
    }

    pub fn pieces(&self) -> &BTreeMap<Bideg, Echelon> {
        &self.pieces
    }

    pub fn piece(&self, d: Bideg) -> Option<&Echelon> {
        self.pieces.get(&d)
    }

    pub fn dim(&self) -> u64 {
        self.pieces.values().map(|e| e.rank() as u64).sum()
    }

    pub fn character(&self) -> GradedCharacter {
        GradedCharacter::from_map(self.pieces.iter().map(|(&d, e)| (d, e.rank() as u64)))
    }

    /// Insert a homogeneous vector; returns the new basis row if independent.
    pub fn insert(&mut self, d: Bideg, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.is_empty() {
            return None;
        }
        let e = self.pieces.entry(d).or_insert_with(|| Echelon::new(v.len()));
        let r = e.insert(v);
        if e.rank() == 0 {
            self.pieces.remove(&d);
        }
        r
    }

    pub fn contains(&self, d: Bideg, v: &[Scalar]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        self.pieces.get(&d).is_some_and(|e| e.contains(v))
    }

    pub fn contains_element(&self, v: &Element) -> bool {
        v.parts().iter().all(|(&d, c)| self.contains(d, c))
    }

    pub fn basis(&self) -> Vec<(Bideg, Vec<Scalar>)> {
        self.pieces
            .iter()
            .flat_map(|(&d, e)| e.rows().iter().map(move |r| (d, r.clone())))
            .collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for (d, v) in other.basis() {
            out.insert(d, &v);
        }
        out
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut out = Subspace::new();
        for (d, e) in &self.pieces {
            if let Some(f) = other.pieces.get(d) {
                let i = e.intersect(f);
                if i.rank() > 0 {
                    out.pieces.insert(*d, i);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|(d, v)| other.contains(*d, v))
    }

    /// True if every listed operator maps the subspace into itself.
    pub fn is_closed_under<M: GradedModule + ?Sized>(&self, m: &M, ops: &[Op]) -> Result<bool> {
        for (d, v) in self.basis() {
            for op in ops {
                let (t, img) = m.apply(op, d, &v)?;
                if !self.contains(t, &img) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Smallest graded subspace containing the homogeneous `seeds` and stable under `ops`.
pub fn cyclic_span<M: GradedModule + ?Sized>(
    m: &M,
    ops: &[Op],
    seeds: &[(Bideg, Vec<Scalar>)],
) -> Result<Subspace> {
    let mut span = Subspace::new();
    let mut queue = VecDeque::new();
    for (d, v) in seeds {
        if v.len() != m.piece_dim(*d) {
            return Err(FusionError::BadIndex(format!(
                "seed at ({},{}) has length {} but the piece has dimension {}",
                d.0,
                d.1,
                v.len(),
                m.piece_dim(*d)
            )));
        }
        if let Some(row) = span.insert(*d, v) {
            queue.push_back((*d, row));
        }
    }
    let mut cache: HashMap<(usize, Bideg), Matrix> = HashMap::new();
    while let Some((d, v)) = queue.pop_front() {
        for (oi, op) in ops.iter().enumerate() {
            let t = op.target(d)?;
            if m.piece_dim(t) == 0 {
                continue;
            }
            if !cache.contains_key(&(oi, d)) {
                cache.insert((oi, d), m.op_matrix(op, d)?);
            }
            let img = cache[&(oi, d)].mul_vec(&v);
            if let Some(row) = span.insert(t, &img) {
                queue.push_back((t, row));
            }
        }
    }
    Ok(span)
}

/// Convert an element into homogeneous seeds.
pub fn seeds_of(v: &Element) -> Vec<(Bideg, Vec<Scalar>)> {
    v.parts().iter().map(|(&d, c)| (d, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(entries: &[((u32, u32), u64)]) -> GradedCharacter {
        GradedCharacter::from_map(entries.iter().copied())
    }

    #[test]
    fn display_character() {
        let c = ch(&[((0, 0), 1), ((1, 0), 1), ((1, 1), 1), ((2, 0), 1)]);
        assert_eq!(c.to_string(), "1 + u + u*q + u^2");
        assert_eq!(c.total(), 4);
    }

    #[test]
    fn shift_search() {
        let a = ch(&[((0, 0), 1), ((1, 1), 2)]);
        let b = ch(&[((1, 3), 1), ((2, 5), 2)]);
        let s = find_shift(&a, &b, &DEFAULT_SLOPES).unwrap();
        assert_eq!(s.dk, 1);
        let mapped: BTreeMap<_, _> = a.apply(&s);
        assert_eq!(mapped.len(), 2);
        let c = ch(&[((0, 0), 1), ((1, 1), 1)]);
        assert!(find_shift(&a, &c, &DEFAULT_SLOPES).is_none());
    }

    #[test]
    fn difference_and_product() {
        let a = ch(&[((0, 0), 1), ((1, 0), 1)]);
        let b = ch(&[((0, 0), 1)]);
        assert_eq!(a.difference(&b).unwrap(), ch(&[((1, 0), 1)]));
        assert!(b.difference(&a).is_none());
        assert_eq!(a.product(&a).total(), 4);
    }
}
