//! The surjections α_{i,j}: M^A → M^{A_{i,j}}, their kernels S_{i,j}(A), and
//! the three descriptions of S_{i,i+1}(A).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::composition::Composition;
use crate::demazure::{nilpotency, CharacterMatch};
use crate::error::{FusionError, Result};
use crate::fusion::{current_coefficient, ideal_generators, FusionModule};
use crate::graded::{cyclic_span, seeds_of, Element, GradedCharacter, GradedModule, Op, Subspace};
use crate::linalg::{Matrix, Scalar};
use crate::poly::Bideg;
use crate::store::ModuleSource;
use crate::tensor::TensorModule;

/// The bidegree-preserving map sending the class of a monomial to its class.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub source: Arc<FusionModule>,
    pub target: Arc<FusionModule>,
    pub i: usize,
    pub j: usize,
    matrices: BTreeMap<Bideg, Matrix>,
}

impl QuotientMap {
    pub fn matrix(&self, d: Bideg) -> Option<&Matrix> {
        self.matrices.get(&d)
    }

    pub fn apply(&self, d: Bideg, v: &[Scalar]) -> Vec<Scalar> {
        self.matrices[&d].mul_vec(v)
    }

    pub fn rank(&self) -> u64 {
        self.matrices.values().map(|m| m.rank() as u64).sum()
    }

    pub fn kernel(&self) -> Subspace {
        let mut s = Subspace::new();
        for (&d, m) in &self.matrices {
            for v in m.kernel_basis() {
                s.insert(d, &v);
            }
        }
        s
    }
}

/// α_{i,j}(A), certified well defined (every generator of I_A dies in the
/// target) and surjective (full rank in every bidegree).
pub fn quotient_map(store: &dyn ModuleSource, a: &Composition, i: usize, j: usize) -> Result<QuotientMap> {
    let b = a.moved(i, j)?;
    let source = store.module(a)?;
    let target = store.module(&b)?;
    for g in ideal_generators(a) {
        if !target.normal_form(&g.poly)?.is_zero() {
            return Err(FusionError::integrity_at(
                g.bidegree,
                format!("generator {} of I_{a} does not vanish in M^{b}", g.poly),
            ));
        }
    }
    let mut matrices = BTreeMap::new();
    for (&d, piece) in source.pieces() {
        let tdim = target.piece_dim(d);
        let mut m = Matrix::zeros(tdim, piece.dim());
        if let Some(tp) = target.piece(d) {
            for (c, mono) in piece.basis().iter().enumerate() {
                for (r, x) in tp.normal_form(mono).iter().enumerate() {
                    if !x.is_zero() {
                        m.set(r, c, x.clone());
                    }
                }
            }
        }
        matrices.insert(d, m);
    }
    for (&d, tp) in target.pieces() {
        let rank = matrices.get(&d).map_or(0, |m| m.rank());
        if rank != tp.dim() {
            return Err(FusionError::integrity_at(
                d,
                format!("map M^{a} -> M^{b} is not surjective"),
            ));
        }
    }
    Ok(QuotientMap {
        source,
        target,
        i,
        j,
        matrices,
    })
}

/// A graded subspace of M^A closed under the e's.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub parent: Arc<FusionModule>,
    pub space: Subspace,
}

impl Submodule {
    pub fn dim(&self) -> u64 {
        self.space.dim()
    }

    pub fn character(&self) -> GradedCharacter {
        self.space.character()
    }

    pub fn is_closed(&self) -> Result<bool> {
        let ops: Vec<Op> = (0..self.parent.n()).map(Op::E).collect();
        self.space.is_closed_under(self.parent.as_ref(), &ops)
    }
}

/// (∏_{l≠i,i+1} a_l)(a_{i+1} - a_i + 1).
pub fn kernel_dim_formula(a: &Composition, i: usize) -> u64 {
    let p = a.parts();
    let rest: u64 = p
        .iter()
        .enumerate()
        .filter(|(l, _)| *l + 1 != i && *l + 1 != i + 1)
        .map(|(_, &x)| x as u64)
        .product();
    rest * (a.a(i + 1) - a.a(i) + 1) as u64
}

/// S_{i,j}(A) = ker α_{i,j}. For j = i+1 the dimension formula is enforced.
pub fn submodule_s(store: &dyn ModuleSource, a: &Composition, i: usize, j: usize) -> Result<Submodule> {
    let map = quotient_map(store, a, i, j)?;
    let space = map.kernel();
    let expected = map.source.total_dim() - map.target.total_dim();
    if space.dim() != expected {
        return Err(FusionError::integrity(format!(
            "rank-nullity fails for S_{{{i},{j}}}{a}: kernel {} vs {expected}",
            space.dim()
        )));
    }
    if j == i + 1 && space.dim() != kernel_dim_formula(a, i) {
        return Err(FusionError::integrity(format!(
            "dim S_{{{i},{j}}}{a} = {} but the product formula gives {}",
            space.dim(),
            kernel_dim_formula(a, i)
        )));
    }
    Ok(Submodule {
        parent: map.source,
        space,
    })
}

/// w_j = [e_(n)(z)^j]_{N_A(j)} v_A for j = a_i - 1, ..., a_{i+1} - 1.
pub fn generators_w(m: &FusionModule, i: usize) -> Result<Vec<(u32, Element)>> {
    let a = m.composition();
    let n = a.n();
    if !(1 <= i && i < n) {
        return Err(FusionError::BadIndex(format!("need 1 <= i < {n}, got {i}")));
    }
    (a.a(i) - 1..=a.a(i + 1) - 1)
        .map(|j| {
            let p = current_coefficient(n, j, a.n_a(j));
            Ok((j, m.normal_form(&p)?))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct GeneratorReport {
    pub a: Composition,
    pub i: usize,
    /// (j, bidegree of w_j or None when w_j = 0, membership in S).
    pub members: Vec<(u32, Option<Bideg>, bool)>,
    pub span: CharacterMatch,
    pub span_equals_kernel: bool,
}

impl GeneratorReport {
    pub fn holds(&self) -> bool {
        self.members.iter().all(|m| m.2) && self.span_equals_kernel
    }
}

/// Each w_j lies in S_{i,i+1}(A) and together they generate it.
pub fn verify_generators(store: &dyn ModuleSource, a: &Composition, i: usize) -> Result<GeneratorReport> {
    let s = submodule_s(store, a, i, i + 1)?;
    let m = s.parent.clone();
    let ws = generators_w(&m, i)?;
    let members = ws
        .iter()
        .map(|(j, w)| (*j, w.bidegree(), s.space.contains_element(w)))
        .collect();
    let seeds: Vec<_> = ws.iter().flat_map(|(_, w)| seeds_of(w)).collect();
    let ops: Vec<Op> = (0..a.n()).map(Op::E).collect();
    let span = cyclic_span(m.as_ref(), &ops, &seeds)?;
    let equal = span == s.space;
    Ok(GeneratorReport {
        a: a.clone(),
        i,
        members,
        span: CharacterMatch::new(span.character(), s.character()),
        span_equals_kernel: equal,
    })
}

#[derive(Clone, Debug)]
pub struct SumReport {
    pub a: Composition,
    pub i: usize,
    pub j: usize,
    pub sum_equals: bool,
    pub sum_dim: u64,
    pub target_dim: u64,
    /// dim(S_{l,l+1} ∩ S_{l+1,l+2}) for consecutive pairs, with the
    /// inclusion-exclusion prediction dim S_{l,l+1} + dim S_{l+1,l+2} - dim S_{l,l+2}.
    pub intersections: Vec<(usize, u64, u64)>,
}

impl SumReport {
    pub fn holds(&self) -> bool {
        self.sum_equals && self.intersections.iter().all(|(_, a, b)| a == b)
    }
}

/// S_{i,j}(A) = S_{i,i+1}(A) + ... + S_{j-1,j}(A).
pub fn verify_sum_decomposition(store: &dyn ModuleSource, a: &Composition, i: usize, j: usize) -> Result<SumReport> {
    let whole = submodule_s(store, a, i, j)?;
    let parts: Vec<Submodule> = (i..j)
        .map(|l| submodule_s(store, a, l, l + 1))
        .collect::<Result<_>>()?;
    let mut sum = Subspace::new();
    for p in &parts {
        sum = sum.sum(&p.space);
    }
    let mut intersections = Vec::new();
    for l in i..j.saturating_sub(1) {
        let (p, q) = (&parts[l - i], &parts[l + 1 - i]);
        let inter = p.space.intersect(&q.space).dim();
        let outer = submodule_s(store, a, l, l + 2)?.dim();
        intersections.push((l, inter, p.dim() + q.dim() - outer));
    }
    Ok(SumReport {
        a: a.clone(),
        i,
        j,
        sum_equals: sum == whole.space,
        sum_dim: sum.dim(),
        target_dim: whole.dim(),
        intersections,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StopRule {
    /// b_j = 1 for all j < i: S_{i,i+1}(B) ≅ M^{(b_{i+1}-b_i+1, b_{i+2}, ..)}.
    LeadingOnes,
    /// b_i = b_{i+1}: S_{i,i+1}(B) ≅ M^{(b_1..b_{i-1}, b_{i+2}..)}.
    EqualPair,
}

#[derive(Clone, Debug)]
pub struct FiltrationStep {
    pub b: Composition,
    /// B_i, the label of the embedded fusion product.
    pub embedded: Composition,
    /// Span of w_{b_i - 1} against M^{B_i}.
    pub embedded_match: CharacterMatch,
    /// s(B): B_{i-1,i} sorted.
    pub next: Composition,
    /// S_{i,i+1}(B) / span against S_{i,i+1}(s(B)).
    pub quotient_match: CharacterMatch,
}

#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub a: Composition,
    pub i: usize,
    pub steps: Vec<FiltrationStep>,
    pub stop_at: Composition,
    pub stop_rule: StopRule,
    pub stop_label: Composition,
    pub stop_match: CharacterMatch,
    pub image: Composition,
    /// Labels of all filtration quotients, ending with M^{A_{i,i+1}}.
    pub quotients: Vec<Composition>,
    pub dims: Vec<u64>,
}

impl FiltrationReport {
    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    pub fn holds(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.embedded_match.holds() && s.quotient_match.holds())
            && self.stop_match.holds()
            && self.total() == self.a.dim()
    }
}

fn stop_rule(b: &Composition, i: usize) -> Option<(StopRule, Composition)> {
    let p = b.parts();
    if p[..i - 1].iter().all(|&x| x == 1) {
        let mut q = vec![b.a(i + 1) - b.a(i) + 1];
        q.extend_from_slice(&p[i + 1..]);
        return Some((StopRule::LeadingOnes, Composition::new(q).ok()?));
    }
    if b.a(i) == b.a(i + 1) {
        let mut q = p[..i - 1].to_vec();
        q.extend_from_slice(&p[i + 1..]);
        return Some((StopRule::EqualPair, Composition::new(q).ok()?));
    }
    None
}

/// B_i = (b_1..b_{i-2}, b_{i-1} - b_i + b_{i+1}, b_{i+2}..).
pub fn embedded_label(b: &Composition, i: usize) -> Result<Composition> {
    let p = b.parts();
    let mut q = p[..i - 2].to_vec();
    q.push(b.a(i - 1) + b.a(i + 1) - b.a(i));
    q.extend_from_slice(&p[i + 1..]);
    Composition::new(q)
}

/// Peel S_{i,i+1}(A) into fusion products.
pub fn verify_filtration(store: &dyn ModuleSource, a: &Composition, i: usize) -> Result<FiltrationReport> {
    let n = a.n();
    if !(1 <= i && i < n) {
        return Err(FusionError::BadIndex(format!("need 1 <= i < {n}, got {i}")));
    }
    let image = a.moved(i, i + 1)?;
    let mut b = a.clone();
    let mut steps = Vec::new();
    let mut quotients = Vec::new();
    let ops: Vec<Op> = (0..n).map(Op::E).collect();
    let (rule, label) = loop {
        if let Some(stop) = stop_rule(&b, i) {
            break stop;
        }
        // Stop rules failing forces i > 1, b_{i-1} > 1, b_i < b_{i+1}.
        let s = submodule_s(store, &b, i, i + 1)?;
        let m = s.parent.clone();
        let w = m.normal_form(&current_coefficient(n, b.a(i) - 1, b.n_a(b.a(i) - 1)))?;
        let span = cyclic_span(m.as_ref(), &ops, &seeds_of(&w))?;
        if !span.is_subspace_of(&s.space) {
            return Err(FusionError::integrity(format!(
                "span of w_{} is not inside S_{{{i},{}}}{b}",
                b.a(i) - 1,
                i + 1
            )));
        }
        let emb = embedded_label(&b, i)?;
        let embedded_match = CharacterMatch::new(span.character(), store.module(&emb)?.character());
        let mut p = b.parts().to_vec();
        p[i - 2] -= 1;
        p[i - 1] += 1;
        let moved = Composition::sorted(p)?;
        let next_s = submodule_s(store, &moved, i, i + 1)?;
        let rest = s
            .character()
            .difference(&span.character())
            .ok_or_else(|| FusionError::integrity("span larger than kernel"))?;
        let quotient_match = CharacterMatch::new(rest, next_s.character());
        quotients.push(emb.clone());
        steps.push(FiltrationStep {
            b: b.clone(),
            embedded: emb,
            embedded_match,
            next: moved.clone(),
            quotient_match,
        });
        b = moved;
    };
    let s = submodule_s(store, &b, i, i + 1)?;
    let stop_match = CharacterMatch::new(s.character(), store.module(&label)?.character());
    quotients.push(label.clone());
    quotients.push(image.clone());
    let dims = quotients.iter().map(Composition::dim).collect();
    Ok(FiltrationReport {
        a: a.clone(),
        i,
        steps,
        stop_at: b,
        stop_rule: rule,
        stop_label: label,
        stop_match,
        image,
        quotients,
        dims,
    })
}

#[derive(Clone, Debug)]
pub struct DescriptionReport {
    pub a: Composition,
    pub i: usize,
    pub first: Composition,
    pub second: Composition,
    pub span_dim: u64,
    pub kernel_dim: u64,
    pub span: CharacterMatch,
    /// Smallest N with (e^{(2)}_{n-i-1})^N (v ⊗ v) = 0, and the predicted bound.
    pub nilpotency: Option<u32>,
    pub nilpotency_bound: u32,
}

impl DescriptionReport {
    pub fn holds(&self) -> bool {
        self.span.holds() && self.nilpotency.is_some_and(|x| x <= self.nilpotency_bound)
    }
}

fn tensor_description(
    store: &dyn ModuleSource,
    a: &Composition,
    i: usize,
    first: Composition,
    second: Composition,
) -> Result<DescriptionReport> {
    let n = a.n();
    let s = submodule_s(store, a, i, i + 1)?;
    let width = first.n().max(second.n());
    let t = TensorModule::padded(vec![store.module(&first)?, store.module(&second)?], width);
    let mut ops: Vec<Op> = (0..n.saturating_sub(2)).map(Op::E).collect();
    let special = Op::Factor {
        factor: 1,
        j: n - i - 1,
    };
    ops.push(special.clone());
    let v = t.cyclic_vector();
    let span = cyclic_span(&t, &ops, &seeds_of(&v))?;
    let bound = a.a(i + 1) - a.a(i) + 1;
    let nil = nilpotency(&t, &special, &v, bound + 1)?;
    Ok(DescriptionReport {
        a: a.clone(),
        i,
        span_dim: span.dim(),
        kernel_dim: s.dim(),
        span: CharacterMatch::new(span.character(), s.character()),
        nilpotency: nil,
        nilpotency_bound: bound,
        first,
        second,
    })
}

/// S_{i,i+1}(A) inside M^{A'} ⊗ M^{A''}, generated by the diagonal
/// e_0..e_{n-3} and e^{(2)}_{n-i-1}.
pub fn verify_second_description(store: &dyn ModuleSource, a: &Composition, i: usize) -> Result<DescriptionReport> {
    let n = a.n();
    if !(1 <= i && i < n) {
        return Err(FusionError::BadIndex(format!("need 1 <= i < {n}, got {i}")));
    }
    if a.a(i) >= a.a(i + 1) {
        return Err(FusionError::Hypothesis(format!("needs a_{i} < a_{}", i + 1)));
    }
    let p = a.parts();
    let mut first = p[..i - 1].to_vec();
    first.extend(std::iter::repeat(a.a(i)).take(n - i - 1));
    let second: Vec<u32> = p[i..].iter().map(|&x| x - a.a(i) + 1).collect();
    tensor_description(store, a, i, Composition::new(first)?, Composition::new(second)?)
}

/// The A_1 ⊗ A_2 embedding, for strictly increasing A with gaps > 1 after position i.
pub fn verify_emb(store: &dyn ModuleSource, a: &Composition, i: usize) -> Result<DescriptionReport> {
    let n = a.n();
    if !(1 <= i && i < n) {
        return Err(FusionError::BadIndex(format!("need 1 <= i < {n}, got {i}")));
    }
    if !a.is_strictly_increasing() {
        return Err(FusionError::Hypothesis(format!("{a} is not strictly increasing")));
    }
    if let Some(j) = (i + 1..n).find(|&j| a.a(j + 1) - a.a(j) <= 1) {
        return Err(FusionError::Hypothesis(format!(
            "gap a_{} - a_{j} = {} must exceed 1",
            j + 1,
            a.a(j + 1) - a.a(j)
        )));
    }
    let p = a.parts();
    let ai = a.a(i);
    let mut first = p[..i - 1].to_vec();
    first.extend((1..n - i).map(|t| ai + t as u32));
    let second: Vec<u32> = (i + 1..=n)
        .map(|l| a.a(l) + i as u32 + 2 - ai - l as u32)
        .collect();
    tensor_description(store, a, i, Composition::new(first)?, Composition::new(second)?)
}

#[derive(Clone, Debug)]
pub struct InductiveReport {
    pub a: Composition,
    pub i: usize,
    /// Shifted generators of I_{(a_1..a_{n-1})} vanish on v_A.
    pub embedding_well_defined: bool,
    /// i < n-1: C[e_0] applied to the embedded S_{i,i+1}(a_1..a_{n-1}) equals S_{i,i+1}(A).
    pub subspace_equal: Option<bool>,
    pub span: CharacterMatch,
}

impl InductiveReport {
    pub fn holds(&self) -> bool {
        self.embedding_well_defined && self.subspace_equal.unwrap_or(true) && self.span.holds()
    }
}

/// Reduction of S_{i,i+1}(A) to the truncated composition (a_1..a_{n-1}).
pub fn verify_inductive_description(store: &dyn ModuleSource, a: &Composition, i: usize) -> Result<InductiveReport> {
    let n = a.n();
    if n < 2 || !(1 <= i && i < n) {
        return Err(FusionError::BadIndex(format!("need n >= 2 and 1 <= i < n, got n={n}, i={i}")));
    }
    let m = store.module(a)?;
    let s = submodule_s(store, a, i, i + 1)?;
    let head = Composition::new(a.parts()[..n - 1].to_vec())?;
    let mut well_defined = true;
    for g in ideal_generators(&head) {
        let shifted = g.poly.shift_vars(1, n).expect("shift stays in range");
        if !m.normal_form(&shifted)?.is_zero() {
            well_defined = false;
        }
    }
    if i < n - 1 {
        let sub = submodule_s(store, &head, i, i + 1)?;
        let mh = sub.parent.clone();
        let mut seeds = Vec::new();
        for (d, v) in sub.space.basis() {
            let p = mh.representative(d, &v).shift_vars(1, n).expect("shift stays in range");
            seeds.extend(seeds_of(&m.normal_form(&p)?));
        }
        let span = cyclic_span(m.as_ref(), &[Op::E(0)], &seeds)?;
        Ok(InductiveReport {
            a: a.clone(),
            i,
            embedding_well_defined: well_defined,
            subspace_equal: Some(span == s.space),
            span: CharacterMatch::new(span.character(), s.character()),
        })
    } else {
        let base = Composition::new(a.parts()[..n - 2].to_vec())?;
        let string = Composition::new(vec![a.a(n) - a.a(n - 1) + 1])?;
        let expected = store
            .module(&base)?
            .character()
            .product(&store.module(&string)?.character());
        Ok(InductiveReport {
            a: a.clone(),
            i,
            embedding_well_defined: well_defined,
            subspace_equal: None,
            span: CharacterMatch::new(s.character(), expected),
        })
    }
}

#[derive(Clone, Debug)]
pub struct E1Report {
    pub a: Composition,
    /// Smallest N with e_1^N v_A = 0.
    pub measured: u32,
    /// a_1 + ... + a_{n-1} - n + 1, as printed.
    pub printed: i64,
    pub formula_holds: bool,
    /// l = e_1^{N-1} v_A spans the top piece of C[e_1..e_{n-1}] v_A.
    pub l_is_top: bool,
    /// l lies in S_{n-1,n}(A) (None when the move is not admissible).
    pub l_in_kernel: Option<bool>,
}

/// Nilpotency order of e_1 on v_A, compared with the printed exponent.
pub fn nilpotency_e1(store: &dyn ModuleSource, a: &Composition) -> Result<E1Report> {
    let n = a.n();
    if n < 2 {
        return Err(FusionError::Hypothesis("needs n >= 2".into()));
    }
    let m = store.module(a)?;
    let v = m.cyclic_vector();
    let measured = nilpotency(m.as_ref(), &Op::E(1), &v, a.top_degree() + 2)?
        .ok_or_else(|| FusionError::integrity("e_1 is not nilpotent on v_A"))?;
    let printed = a.parts()[..n - 1].iter().map(|&x| x as i64).sum::<i64>() - n as i64 + 1;
    let mut l = v.clone();
    for _ in 0..measured - 1 {
        l = m.apply_element(&Op::E(1), &l)?;
    }
    let ops: Vec<Op> = (1..n).map(Op::E).collect();
    let dem = cyclic_span(m.as_ref(), &ops, &seeds_of(&v))?;
    let top_k = dem.pieces().keys().map(|d| d.0).max().unwrap_or(0);
    let top_dim: u64 = dem
        .pieces()
        .iter()
        .filter(|(d, _)| d.0 == top_k)
        .map(|(_, e)| e.rank() as u64)
        .sum();
    let l_is_top = l.bidegree().is_some_and(|d| d.0 == top_k) && top_dim == 1;
    let l_in_kernel = match submodule_s(store, a, n - 1, n) {
        Ok(s) => Some(s.space.contains_element(&l)),
        Err(e) if e.is_integrity() => return Err(e),
        Err(_) => None,
    };
    Ok(E1Report {
        a: a.clone(),
        measured,
        printed,
        formula_holds: measured as i64 == printed,
        l_is_top,
        l_in_kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::store::MemoryStore;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let st = MemoryStore::new();
        assert_eq!(submodule_s(&st, &comp(&[2, 3]), 1, 2).unwrap().dim(), 2);
        assert_eq!(submodule_s(&st, &comp(&[2, 2]), 1, 2).unwrap().dim(), 1);
        let s = submodule_s(&st, &comp(&[4, 5, 6, 9]), 3, 4).unwrap();
        assert_eq!(s.dim(), 80);
        assert!(s.is_closed().unwrap());
        let q = quotient_map(&st, &comp(&[2, 2]), 1, 2).unwrap();
        assert_eq!(q.target.total_dim(), 3);
        assert!(quotient_map(&st, &comp(&[1, 1]), 1, 2).is_err());
    }

    #[test]
    fn generator_w1_for_2_2() {
        let st = MemoryStore::new();
        let m = st.module(&comp(&[2, 2])).unwrap();
        let ws = generators_w(&m, 1).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].0, 1);
        assert_eq!(ws[0].1.bidegree(), Some((1, 1)));
        let r = verify_generators(&st, &comp(&[2, 3]), 1).unwrap();
        assert_eq!(r.members.len(), 2);
        assert!(r.holds());
    }

    #[test]
    fn filtration_worked_example() {
        let st = MemoryStore::new();
        let r = verify_filtration(&st, &comp(&[4, 5, 6, 9]), 3).unwrap();
        let labels: Vec<String> = r.quotients.iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, ["(4,8)", "(4,6)", "(3,5)", "(3,3)", "(4,5,5,10)"]);
        assert_eq!(r.dims, vec![32, 24, 15, 9, 1000]);
        assert!(r.holds(), "{r:#?}");
    }

    #[test]
    fn filtration_stops() {
        let st = MemoryStore::new();
        let r = verify_filtration(&st, &comp(&[1, 2, 3]), 2).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.stop_rule, StopRule::LeadingOnes);
        let r = verify_filtration(&st, &comp(&[2, 2, 3]), 1).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.stop_label, comp(&[1, 3]));
        assert!(r.holds());
    }
}
