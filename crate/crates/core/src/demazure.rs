//! Checks on single fusion modules: the Demazure-type submodule, deletion of
//! unit entries, nilpotency of e_0, and diagonal spans in tensor products.

use std::sync::Arc;

use crate::composition::Composition;
use crate::error::{FusionError, Result};
use crate::fusion::FusionModule;
use crate::graded::{cyclic_span, find_shift, seeds_of, GradedCharacter, GradedModule, Op, Shift, DEFAULT_SLOPES};
use crate::graded::Element;
use crate::tensor::TensorModule;

/// Outcome of comparing a computed character with an expected one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMatch {
    pub got: GradedCharacter,
    pub expected: GradedCharacter,
    /// Regrading taking `got` onto `expected`, if one exists.
    pub shift: Option<Shift>,
}

impl CharacterMatch {
    pub fn new(got: GradedCharacter, expected: GradedCharacter) -> Self {
        let shift = find_shift(&got, &expected, &DEFAULT_SLOPES);
        CharacterMatch { got, expected, shift }
    }

    /// Require one particular regrading.
    pub fn with_shift(got: GradedCharacter, expected: GradedCharacter, s: Shift) -> Self {
        let target: std::collections::BTreeMap<(i64, i64), u64> = expected
            .entries()
            .iter()
            .map(|(&(k, w), &v)| ((k as i64, w as i64), v))
            .collect();
        let ok = got.apply(&s) == target;
        CharacterMatch {
            got,
            expected,
            shift: ok.then_some(s),
        }
    }

    pub fn holds(&self) -> bool {
        self.shift.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct DemazureReport {
    pub a: Composition,
    pub span_dim: u64,
    pub quotient_dim: u64,
    /// Span of C[e_1..e_{n-1}] v_A against M^{(a_1..a_{n-1})} under w -> w - k.
    pub span: CharacterMatch,
    /// M^A / span against M^{(a_1..a_{n-1}, a_n - 1)}.
    pub quotient: CharacterMatch,
}

impl DemazureReport {
    pub fn holds(&self) -> bool {
        self.span.holds() && self.quotient.holds()
    }
}

/// Check C[e_1..e_{n-1}] v_A ≅ M^{(a_1..a_{n-1})} and the quotient ≅ M^{(a_1..a_{n-1}, a_n-1)}.
pub fn verify_demazure(a: &Composition) -> Result<DemazureReport> {
    let n = a.n();
    if n < 2 {
        return Err(FusionError::Hypothesis("needs n >= 2".into()));
    }
    let m = FusionModule::build(a)?;
    let ops: Vec<Op> = (1..n).map(Op::E).collect();
    let span = cyclic_span(&m, &ops, &seeds_of(&m.cyclic_vector()))?;
    let head = Composition::new(a.parts()[..n - 1].to_vec())?;
    let head_char = FusionModule::build(&head)?.character();
    let span_char = span.character();
    let quotient_char = m
        .character()
        .difference(&span_char)
        .ok_or_else(|| FusionError::integrity("span larger than module"))?;
    let last = a.a(n) - 1;
    let expected_quotient = if last == 0 {
        GradedCharacter::new()
    } else {
        let mut p = a.parts()[..n - 1].to_vec();
        p.push(last);
        FusionModule::build(&Composition::sorted(p)?)?.character()
    };
    Ok(DemazureReport {
        a: a.clone(),
        span_dim: span.dim(),
        quotient_dim: quotient_char.total(),
        span: CharacterMatch::with_shift(
            span_char,
            head_char,
            Shift {
                dk: 0,
                dq: 0,
                slope: -1,
            },
        ),
        quotient: CharacterMatch::new(quotient_char, expected_quotient),
    })
}

/// Smallest N with op^N v = 0 (None if not reached within `limit` steps).
pub fn nilpotency<M: GradedModule + ?Sized>(m: &M, op: &Op, v: &Element, limit: u32) -> Result<Option<u32>> {
    let mut cur = v.clone();
    for n in 0..=limit {
        if cur.is_zero() {
            return Ok(Some(n));
        }
        cur = m.apply_element(op, &cur)?;
    }
    Ok(None)
}

/// Smallest N with e_0^N v_A = 0; expected 1 + Σ(a_j - 1).
pub fn e0_nilpotency(m: &FusionModule) -> Result<u32> {
    let limit = m.composition().top_degree() + 2;
    nilpotency(m, &Op::E(0), &m.cyclic_vector(), limit)?
        .ok_or_else(|| FusionError::integrity("e_0 is not nilpotent on v_A"))
}

/// Compare M^{(1, a_2, ..)} with M^{(a_2, ..)}.
pub fn verify_deletion_of_ones(a: &Composition) -> Result<CharacterMatch> {
    if a.n() == 0 || a.a(1) != 1 {
        return Err(FusionError::Hypothesis("first entry must be 1".into()));
    }
    let full = FusionModule::build(a)?.character();
    let tail = Composition::new(a.parts()[1..].to_vec())?;
    let short = FusionModule::build(&tail)?.character();
    Ok(CharacterMatch::new(full, short))
}

/// C = (a_1..a_{n-m}, a_{n-m+1}+b_1-1, .., a_n+b_m-1).
pub fn tensor_target(a: &Composition, b: &Composition) -> Result<Composition> {
    let (n, m) = (a.n(), b.n());
    if m > n {
        return Err(FusionError::Hypothesis(format!("needs len B <= len A, got {m} > {n}")));
    }
    let mut c = a.parts().to_vec();
    for (i, &bi) in b.parts().iter().enumerate() {
        c[n - m + i] += bi - 1;
    }
    Composition::new(c)
}

#[derive(Clone, Debug)]
pub struct TensorSpanReport {
    pub a: Composition,
    pub b: Composition,
    pub c: Composition,
    pub span_dim: u64,
    pub expected_dim: u64,
    pub character: CharacterMatch,
}

impl TensorSpanReport {
    pub fn holds(&self) -> bool {
        self.span_dim == self.expected_dim && self.character.holds()
    }
}

/// Diagonal e-span of v_A ⊗ v_B inside M^A ⊗ M^B, against M^C.
pub fn verify_tensor_span(a: &Composition, b: &Composition) -> Result<TensorSpanReport> {
    let c = tensor_target(a, b)?;
    let ma = Arc::new(FusionModule::build(a)?);
    let mb = Arc::new(FusionModule::build(b)?);
    let t = TensorModule::padded(vec![ma, mb], a.n());
    let ops: Vec<Op> = (0..a.n()).map(Op::E).collect();
    let span = cyclic_span(&t, &ops, &seeds_of(&t.cyclic_vector()))?;
    let mc = FusionModule::build(&c)?;
    Ok(TensorSpanReport {
        a: a.clone(),
        b: b.clone(),
        span_dim: span.dim(),
        expected_dim: c.dim(),
        character: CharacterMatch::new(span.character(), mc.character()),
        c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn demazure_examples() {
        let r = verify_demazure(&comp(&[2, 3])).unwrap();
        assert_eq!((r.span_dim, r.quotient_dim), (2, 4));
        assert!(r.holds(), "{r:?}");
        let r = verify_demazure(&comp(&[1, 1])).unwrap();
        assert_eq!((r.span_dim, r.quotient_dim), (1, 0));
        assert!(r.holds());
        let r = verify_demazure(&comp(&[2, 3, 4])).unwrap();
        assert_eq!((r.span_dim, r.quotient_dim), (6, 18));
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn e0_nilpotency_matches_top_degree() {
        for v in [&[2, 3][..], &[1, 4], &[2, 2, 3]] {
            let a = comp(v);
            let m = FusionModule::build(&a).unwrap();
            assert_eq!(e0_nilpotency(&m).unwrap(), a.top_degree() + 1);
        }
    }

    #[test]
    fn tensor_example() {
        let r = verify_tensor_span(&comp(&[2, 3]), &comp(&[2, 2])).unwrap();
        assert_eq!(r.c, comp(&[3, 4]));
        assert!(r.holds());
    }
}
