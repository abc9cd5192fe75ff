use fusion_core::demazure::{
    e0_nilpotency, verify_deletion_of_ones, verify_demazure, verify_tensor_span, CharacterMatch,
};
use fusion_core::store::{MemoryStore, ModuleSource};
use fusion_core::submodules::{
    kernel_dim_formula, submodule_s, verify_emb, verify_filtration, verify_generators, verify_inductive_description,
    verify_second_description, verify_sum_decomposition,
};
use fusion_core::{Composition, FusionError, FusionModule, GradedModule};
use proptest::prelude::*;
use rayon::prelude::*;

fn comp(v: &[u32]) -> Composition {
    Composition::new(v.to_vec()).unwrap()
}

/// Positions i with a_i > 1, where the move i -> i+1 is admissible.
fn moves(a: &Composition) -> Vec<usize> {
    (1..a.n()).filter(|&i| a.a(i) > 1).collect()
}

#[test]
fn dimension_law_on_the_full_grid() {
    let bad: Vec<String> = Composition::grid(4, 5)
        .par_iter()
        .filter_map(|a| {
            let d = FusionModule::build(a).unwrap().total_dim();
            (d != a.dim()).then(|| format!("{a}: {d}"))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

fn check_exactness(st: &MemoryStore, a: &Composition, i: usize) {
    let s = submodule_s(st, a, i, i + 1).unwrap();
    let image = st.module(&a.moved(i, i + 1).unwrap()).unwrap();
    let whole = st.module(a).unwrap();
    assert_eq!(s.dim() + image.total_dim(), whole.total_dim(), "{a} i={i}");
    assert_eq!(s.dim(), kernel_dim_formula(a, i), "{a} i={i}");
    assert_eq!(s.character().sum(&image.character()), whole.character(), "{a} i={i}");
    assert!(s.is_closed().unwrap(), "{a} i={i}");
}

#[test]
fn exactness_and_kernel_formula() {
    let st = MemoryStore::new();
    let mut grid = Composition::grid(3, 4);
    grid.extend([comp(&[2, 2, 3, 3]), comp(&[2, 3, 4, 4]), comp(&[1, 2, 3, 4])]);
    grid.par_iter().for_each(|a| {
        for i in moves(a) {
            check_exactness(&st, a, i);
        }
    });
}

#[test]
fn zero_entry_moves_are_rejected() {
    let st = MemoryStore::new();
    assert!(matches!(
        submodule_s(&st, &comp(&[1, 3]), 1, 2),
        Err(FusionError::NonPositive(_)) | Err(FusionError::Hypothesis(_)) | Err(FusionError::Unsorted(_))
    ));
}

#[test]
fn remark_stop_cases() {
    let st = MemoryStore::new();
    for a in Composition::grid(3, 4) {
        if a.n() < 2 || a.a(1) < 2 {
            continue;
        }
        let s = submodule_s(&st, &a, 1, 2).unwrap();
        let mut label = vec![a.a(2) - a.a(1) + 1];
        label.extend_from_slice(&a.parts()[2..]);
        let m = FusionModule::build(&comp(&label)).unwrap();
        assert!(CharacterMatch::new(s.character(), m.character()).holds(), "{a}");
        for i in 1..a.n() {
            if a.a(i) == a.a(i + 1) {
                let s = submodule_s(&st, &a, i, i + 1).unwrap();
                let mut rest = a.parts()[..i - 1].to_vec();
                rest.extend_from_slice(&a.parts()[i + 1..]);
                let m = FusionModule::build(&comp(&rest)).unwrap();
                assert!(CharacterMatch::new(s.character(), m.character()).holds(), "{a} i={i}");
            }
        }
    }
}

#[test]
fn generators_and_sums() {
    let st = MemoryStore::new();
    for a in [comp(&[2, 3]), comp(&[2, 2, 3]), comp(&[2, 3, 4]), comp(&[3, 3, 5]), comp(&[2, 3, 5, 6])] {
        for i in moves(&a) {
            assert!(verify_generators(&st, &a, i).unwrap().holds(), "{a} i={i}");
        }
    }
    let r = verify_sum_decomposition(&st, &comp(&[2, 3, 4]), 1, 3).unwrap();
    assert!(r.holds(), "{r:?}");
    let r = verify_sum_decomposition(&st, &comp(&[2, 3, 5, 6]), 1, 4).unwrap();
    assert!(r.holds(), "{r:?}");
}

#[test]
fn single_module_laws() {
    for a in Composition::grid(3, 4) {
        let m = FusionModule::build(&a).unwrap();
        let e0 = e0_nilpotency(&m).unwrap();
        assert_eq!(e0, 1 + a.top_degree(), "{a}");
        if a.n() >= 2 {
            assert!(verify_demazure(&a).unwrap().holds(), "{a}");
        }
        if a.a(1) == 1 {
            assert!(verify_deletion_of_ones(&a).unwrap().holds(), "{a}");
        }
    }
}

#[test]
fn tensor_spans() {
    for n in 1..=3 {
        let labels: Vec<Composition> = Composition::grid(n, 3).into_iter().filter(|c| c.n() == n).collect();
        labels.par_iter().for_each(|a| {
            for b in &labels {
                let r = verify_tensor_span(a, b).unwrap();
                assert!(r.holds(), "{a} {b}: {} vs {}", r.span_dim, r.expected_dim);
            }
        });
    }
}

#[test]
fn worked_filtration() {
    let st = MemoryStore::new();
    let r = verify_filtration(&st, &comp(&[4, 5, 6, 9]), 3).unwrap();
    assert_eq!(r.dims, vec![32, 24, 15, 9, 1000]);
    assert_eq!(r.total(), 1080);
    assert!(r.holds());
}

#[test]
fn filtrations_telescope() {
    let st = MemoryStore::new();
    for a in Composition::grid(3, 5).into_iter().filter(|a| a.n() == 3) {
        for i in moves(&a) {
            match verify_filtration(&st, &a, i) {
                Ok(r) => {
                    assert_eq!(r.total(), a.dim(), "{a} i={i}");
                    assert!(r.holds(), "{a} i={i}");
                }
                Err(e) => assert!(!e.is_integrity(), "{a} i={i}: {e}"),
            }
        }
    }
}

#[test]
fn descriptions_agree_with_kernels() {
    let st = MemoryStore::new();
    let mut checked_emb = 0;
    for a in Composition::grid(3, 5).into_iter().filter(|a| a.n() >= 2 && a.is_strictly_increasing()) {
        for i in moves(&a) {
            let r = verify_second_description(&st, &a, i).unwrap();
            assert!(r.holds(), "{a} i={i}: {r:?}");
            let shift = r.span.shift.unwrap();
            assert_eq!(shift.slope, 0, "{a} i={i}");
            match verify_emb(&st, &a, i) {
                Ok(r) => {
                    assert!(r.holds(), "emb {a} i={i}");
                    checked_emb += 1;
                }
                Err(e) => assert!(matches!(e, FusionError::Hypothesis(_)), "{e}"),
            }
            assert!(verify_inductive_description(&st, &a, i).unwrap().holds(), "ind {a} i={i}");
        }
    }
    assert!(checked_emb > 0);
}

fn small_composition() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1u32..=4, 2..=3).prop_map(|mut v| {
        v.sort_unstable();
        Composition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exactness_on_random_labels(a in small_composition(), pick in 0usize..3) {
        let ms = moves(&a);
        prop_assume!(!ms.is_empty());
        let st = MemoryStore::new();
        check_exactness(&st, &a, ms[pick % ms.len()]);
    }
}
