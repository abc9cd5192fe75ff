use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::composition::Composition;
use crate::error::{FusionError, Result};
use crate::graded::{Element, GradedCharacter, GradedModule, Op};
use crate::linalg::{Echelon, Scalar};
use crate::poly::{enumerate_monomials, Bideg, Monomial, Polynomial};

/// One defining relation of M^A: the coefficient of z^m in e_(n)(z)^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub k: u32,
    /// Power of z the coefficient is taken at.
    pub z_power: u32,
    /// Actual bidegree (k, k(n-1) - z_power).
    pub bidegree: Bideg,
    pub poly: Polynomial,
}

/// Coefficients (indexed by the power of z) of e_(n)(z)^k, where
/// e_(n)(z) = Σ_i e_i z^{n-1-i}.
pub fn current_power(n: usize, k: u32) -> Vec<Polynomial> {
    let mut coeffs = vec![Polynomial::one(n)];
    for _ in 0..k {
        let len = coeffs.len() + n.saturating_sub(1);
        let mut next = vec![Polynomial::zero(n); len];
        for (m, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let z = m + (n - 1 - i);
                next[z] = next[z].add(&c.mul(&Polynomial::var(n, i)));
            }
        }
        coeffs = next;
    }
    coeffs
}

/// [e_(n)(z)^k]_m, the coefficient of z^m (zero when out of range).
pub fn current_coefficient(n: usize, k: u32, m: u32) -> Polynomial {
    if n == 0 {
        return if k == 0 && m == 0 {
            Polynomial::one(0)
        } else {
            Polynomial::zero(0)
        };
    }
    current_power(n, k)
        .into_iter()
        .nth(m as usize)
        .unwrap_or_else(|| Polynomial::zero(n))
}

/// Generators of I_A for k = 1..=1+Σ(a_j-1) and z-powers below N_A(k).
pub fn ideal_generators(a: &Composition) -> Vec<Generator> {
    let n = a.n();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for k in 1..=a.top_degree() + 1 {
        let coeffs = current_power(n, k);
        for m in 0..a.n_a(k) {
            let Some(poly) = coeffs.get(m as usize) else {
                break;
            };
            if poly.is_zero() {
                continue;
            }
            out.push(Generator {
                k,
                z_power: m,
                bidegree: (k, k * (n as u32 - 1) - m),
                poly: poly.clone(),
            });
        }
    }
    out
}

/// Quotient basis and normal forms for one bidegree.
#[derive(Clone, Debug)]
pub struct Piece {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    nf: Vec<Vec<Scalar>>,
}

impl Piece {
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the class of an ambient monomial of this bidegree.
    pub fn normal_form(&self, m: &Monomial) -> &[Scalar] {
        &self.nf[self.index[m]]
    }

    /// Ambient monomials with their normal forms, in descending monomial order.
    pub fn normal_forms(&self) -> Vec<(&Monomial, &[Scalar])> {
        let mut v: Vec<_> = self
            .index
            .iter()
            .map(|(m, &i)| (m, self.nf[i].as_slice()))
            .collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        v
    }

    pub(crate) fn from_parts(basis: Vec<Monomial>, ambient: Vec<(Monomial, Vec<Scalar>)>) -> Self {
        let mut index = HashMap::new();
        let mut nf = Vec::new();
        for (m, v) in ambient {
            index.insert(m, nf.len());
            nf.push(v);
        }
        Piece { basis, index, nf }
    }
}

/// The fusion product M^A = Q[e_0..e_{n-1}]/I_A with per-bidegree normal forms.
#[derive(Clone, Debug)]
pub struct FusionModule {
    comp: Composition,
    pieces: BTreeMap<Bideg, Piece>,
}

struct Level {
    zero: HashSet<Monomial>,
    rows: Vec<Vec<(Monomial, Scalar)>>,
}

impl FusionModule {
    /// Build M^A by spanning I_A degree by degree and row-reducing each bidegree.
    pub fn build(a: &Composition) -> Result<Self> {
        let n = a.n();
        let mut pieces = BTreeMap::new();
        let unit = Monomial::one(n);
        pieces.insert(
            (0, 0),
            Piece::from_parts(vec![unit.clone()], vec![(unit, vec![Scalar::one()])]),
        );
        if n == 0 {
            return Self::finish(a, pieces);
        }
        let top = a.top_degree();
        let mut gens: HashMap<Bideg, Vec<Polynomial>> = HashMap::new();
        for g in ideal_generators(a) {
            gens.entry(g.bidegree).or_default().push(g.poly);
        }
        let mut prev = vec![Level {
            zero: HashSet::new(),
            rows: Vec::new(),
        }];
        let nw = n as u32 - 1;
        for k in 1..=top + 1 {
            let results: Vec<(Level, Option<Piece>)> = (0..=nw * k)
                .into_par_iter()
                .map(|w| build_piece(n, k, w, &prev, gens.get(&(k, w))))
                .collect();
            let mut level = Vec::with_capacity(results.len());
            for (w, (lv, piece)) in results.into_iter().enumerate() {
                if let Some(p) = piece {
                    if k == top + 1 {
                        return Err(FusionError::integrity_at(
                            (k, w as u32),
                            format!("quotient of {a} is nonzero beyond the top degree {top}"),
                        ));
                    }
                    pieces.insert((k, w as u32), p);
                }
                level.push(lv);
            }
            prev = level;
        }
        Self::finish(a, pieces)
    }

    fn finish(a: &Composition, pieces: BTreeMap<Bideg, Piece>) -> Result<Self> {
        let m = FusionModule {
            comp: a.clone(),
            pieces,
        };
        let dim = m.total_dim();
        if dim != a.dim() {
            let at = m.pieces.keys().last().copied();
            return Err(FusionError::Integrity {
                at,
                detail: format!("dim M^{a} computed as {dim}, expected {}", a.dim()),
            });
        }
        Ok(m)
    }

    /// Reassemble from stored pieces (used by caches); checks the dimension.
    pub fn from_pieces(a: &Composition, pieces: BTreeMap<Bideg, Piece>) -> Result<Self> {
        Self::finish(a, pieces)
    }

    pub fn composition(&self) -> &Composition {
        &self.comp
    }

    pub fn pieces(&self) -> &BTreeMap<Bideg, Piece> {
        &self.pieces
    }

    pub fn piece(&self, d: Bideg) -> Option<&Piece> {
        self.pieces.get(&d)
    }

    /// h_0-eigenvalue of the cyclic vector: -Σ(a_j-1).
    pub fn lowest_h0(&self) -> i64 {
        -(self.comp.top_degree() as i64)
    }

    pub fn h0_eigenvalue(&self, d: Bideg) -> i64 {
        self.lowest_h0() + 2 * d.0 as i64
    }

    /// The cyclic vector v_A (class of 1).
    pub fn cyclic_vector(&self) -> Element {
        Element::homogeneous((0, 0), vec![Scalar::one()])
    }

    /// The class spanning the top piece (top e-degree, largest weight).
    pub fn top_vector(&self) -> (Bideg, Element) {
        let (&d, p) = self
            .pieces
            .iter()
            .filter(|(d, _)| d.0 == self.comp.top_degree())
            .last()
            .expect("top piece exists");
        let mut v = vec![Scalar::zero(); p.dim()];
        v[0] = Scalar::one();
        (d, Element::homogeneous(d, v))
    }

    /// Class of a monomial as (bidegree, coordinates); None when it is zero.
    pub fn class_of_monomial(&self, m: &Monomial) -> Option<(Bideg, &[Scalar])> {
        let d = m.bidegree();
        self.pieces.get(&d).map(|p| (d, p.normal_form(m)))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Element> {
        self.check_vars(p)?;
        let mut out = Element::zero();
        for (m, c) in p.terms() {
            if let Some((d, v)) = self.class_of_monomial(m) {
                let scaled: Vec<Scalar> = v.iter().map(|x| x * c).collect();
                out.add_part(d, &scaled);
            }
        }
        Ok(out)
    }

    /// Class of p times (a representative of) v.
    pub fn act(&self, p: &Polynomial, v: &Element) -> Result<Element> {
        self.check_vars(p)?;
        let mut out = Element::zero();
        for (&d, coords) in v.parts() {
            let piece = self.pieces.get(&d).ok_or_else(|| {
                FusionError::BadIndex(format!("no piece at ({},{})", d.0, d.1))
            })?;
            for (i, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let b = &piece.basis[i];
                for (m, a) in p.terms() {
                    if let Some((t, nf)) = self.class_of_monomial(&b.mul(m)) {
                        let f = c * a;
                        let scaled: Vec<Scalar> = nf.iter().map(|x| x * &f).collect();
                        out.add_part(t, &scaled);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_vars(&self, p: &Polynomial) -> Result<()> {
        if p.n() != self.comp.n() {
            return Err(FusionError::VariableMismatch {
                expected: self.comp.n(),
                got: p.n(),
            });
        }
        Ok(())
    }

    /// Representative polynomial of a homogeneous coordinate vector.
    pub fn representative(&self, d: Bideg, v: &[Scalar]) -> Polynomial {
        let mut p = Polynomial::zero(self.comp.n());
        if let Some(piece) = self.pieces.get(&d) {
            for (m, c) in piece.basis.iter().zip(v) {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }
}

impl GradedModule for FusionModule {
    fn n(&self) -> usize {
        self.comp.n()
    }

    fn bidegrees(&self) -> Vec<Bideg> {
        self.pieces.keys().copied().collect()
    }

    fn piece_dim(&self, d: Bideg) -> usize {
        self.pieces.get(&d).map_or(0, Piece::dim)
    }

    fn apply_basis(&self, op: &Op, d: Bideg, idx: usize) -> Result<Vec<Scalar>> {
        let j = match op {
            Op::E(j) | Op::Factor { factor: 0, j } => *j,
            Op::Factor { factor, .. } => {
                return Err(FusionError::BadIndex(format!(
                    "fusion module has a single factor, got factor {factor}"
                )))
            }
            Op::Poly(_) => unreachable!("polynomial operators are expanded by GradedModule::apply"),
        };
        let t = op.target(d)?;
        let tdim = self.piece_dim(t);
        if j >= self.comp.n() || tdim == 0 {
            return Ok(vec![Scalar::zero(); tdim]);
        }
        let b = &self.pieces[&d].basis[idx];
        Ok(self.pieces[&t].normal_form(&b.times_var(j)).to_vec())
    }
}

fn build_piece(
    n: usize,
    k: u32,
    w: u32,
    prev: &[Level],
    gens: Option<&Vec<Polynomial>>,
) -> (Level, Option<Piece>) {
    let ambient = enumerate_monomials(n, k, w);
    let mut zero = HashSet::new();
    for m in &ambient {
        let in_ideal = (0..n).any(|j| {
            j as u32 <= w
                && m.div_var(j)
                    .is_some_and(|d| prev.get((w - j as u32) as usize).is_some_and(|l| l.zero.contains(&d)))
        });
        if in_ideal {
            zero.insert(m.clone());
        }
    }
    let cols: Vec<Monomial> = ambient.iter().filter(|m| !zero.contains(*m)).cloned().collect();
    let col_index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::new(cols.len());

    let candidate = |terms: &mut dyn Iterator<Item = (Monomial, Scalar)>, ech: &mut Echelon| {
        let mut v = vec![Scalar::zero(); cols.len()];
        let mut any = false;
        for (m, c) in terms {
            if let Some(&i) = col_index.get(&m) {
                v[i] += c;
                any = true;
            }
        }
        if any {
            ech.insert(&v);
        }
    };

    'rows: for j in 0..n {
        if ech.is_full() {
            break;
        }
        if j as u32 > w {
            break;
        }
        let Some(level) = prev.get((w - j as u32) as usize) else {
            continue;
        };
        for row in &level.rows {
            if ech.is_full() {
                break 'rows;
            }
            let mut it = row.iter().map(|(m, c)| (m.times_var(j), c.clone()));
            candidate(&mut it, &mut ech);
        }
    }
    if let Some(gs) = gens {
        for g in gs {
            if ech.is_full() {
                break;
            }
            let mut it = g.terms().iter().map(|(m, c)| (m.clone(), c.clone()));
            candidate(&mut it, &mut ech);
        }
    }

    let mut is_pivot = vec![false; cols.len()];
    let mut rows = Vec::new();
    let mut pivot_row = HashMap::new();
    for (r, (row, &p)) in ech.rows().iter().zip(ech.pivots()).enumerate() {
        is_pivot[p] = true;
        pivot_row.insert(p, r);
        let nz: Vec<(Monomial, Scalar)> = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (cols[i].clone(), x.clone()))
            .collect();
        if nz.len() == 1 {
            zero.insert(nz[0].0.clone());
        } else {
            rows.push(nz);
        }
    }
    let basis_cols: Vec<usize> = (0..cols.len()).filter(|&c| !is_pivot[c]).collect();
    let piece = if basis_cols.is_empty() {
        None
    } else {
        let basis: Vec<Monomial> = basis_cols.iter().map(|&c| cols[c].clone()).collect();
        let pos: HashMap<usize, usize> = basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dim = basis.len();
        let mut nfs = Vec::with_capacity(ambient.len());
        for m in &ambient {
            let mut v = vec![Scalar::zero(); dim];
            if let Some(&c) = col_index.get(m) {
                if let Some(&i) = pos.get(&c) {
                    v[i] = Scalar::one();
                } else {
                    let row = &ech.rows()[pivot_row[&c]];
                    for (&bc, &i) in &pos {
                        if !row[bc].is_zero() {
                            v[i] = -row[bc].clone();
                        }
                    }
                }
            }
            nfs.push((m.clone(), v));
        }
        Some(Piece::from_parts(basis, nfs))
    };
    (Level { zero, rows }, piece)
}

/// Character of M^A read off a built module.
pub fn character(m: &FusionModule) -> GradedCharacter {
    m.character()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn generators_for_2_2() {
        let gens: Vec<_> = ideal_generators(&comp(&[2, 2]))
            .into_iter()
            .filter(|g| g.k == 2)
            .collect();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].poly, Polynomial::var(2, 1).pow(2));
        assert_eq!(gens[0].bidegree, (2, 2));
        assert_eq!(
            gens[1].poly,
            Polynomial::var(2, 0).mul(&Polynomial::var(2, 1)).scale(&int(2))
        );
        assert_eq!(gens[1].bidegree, (2, 1));
    }

    #[test]
    fn generators_trivial_and_single() {
        let g = ideal_generators(&comp(&[1]));
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].poly, Polynomial::var(1, 0));
        let g = ideal_generators(&comp(&[3]));
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].poly, Polynomial::var(1, 0).pow(3));
    }

    #[test]
    fn small_modules() {
        let m = FusionModule::build(&comp(&[2, 2])).unwrap();
        assert_eq!(m.character().to_string(), "1 + u + u*q + u^2");
        let m = FusionModule::build(&comp(&[2])).unwrap();
        assert_eq!(m.character().to_string(), "1 + u");
        let m = FusionModule::build(&comp(&[1, 1, 1])).unwrap();
        assert_eq!(m.total_dim(), 1);
        let m = FusionModule::build(&Composition::empty()).unwrap();
        assert_eq!(m.total_dim(), 1);
        let m = FusionModule::build(&comp(&[2, 3, 4])).unwrap();
        assert_eq!(m.total_dim(), 24);
    }

    #[test]
    fn action_examples() {
        let m = FusionModule::build(&comp(&[2, 2])).unwrap();
        let v = m.cyclic_vector();
        assert_eq!(m.act(&Polynomial::one(2), &v).unwrap(), v);
        assert!(m.act(&Polynomial::var(2, 1).pow(2), &v).unwrap().is_zero());
        assert!(m.act(&Polynomial::var(3, 1), &v).is_err());
        assert_eq!(m.lowest_h0(), -2);
        assert_eq!(m.h0_eigenvalue((2, 0)), 2);
    }
}
