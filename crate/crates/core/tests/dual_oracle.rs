use fusion_core::composition::sorted_tuples;
use fusion_core::dual::{coordinate_ring_component, dual_space, oracle_character, shuffle_product, SymPoly};
use fusion_core::linalg::int;
use fusion_core::{Composition, FusionModule, GradedModule as _};
use proptest::prelude::*;
use rayon::prelude::*;

fn oracle_grid() -> Vec<Composition> {
    let mut v = Composition::grid(3, 5);
    v.extend(sorted_tuples(4, 1, 3).into_iter().map(|p| Composition::new(p).unwrap()));
    v
}

#[test]
fn quotient_and_symmetric_realization_agree() {
    let failures: Vec<String> = oracle_grid()
        .par_iter()
        .filter_map(|a| {
            let built = FusionModule::build(a).unwrap().character();
            let oracle = oracle_character(a);
            (built != oracle).then(|| format!("{a}: {built} vs {oracle}"))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn shuffles_of_dual_elements_stay_in_the_dual() {
    let a = Composition::new(vec![2, 2]).unwrap();
    let c = Composition::new(vec![3, 3]).unwrap();
    for s1 in 0..=2 {
        for s2 in 0..=2 {
            let target = dual_space(&c, s1 + s2);
            for (_, f) in dual_space(&a, s1).basis() {
                for (_, g) in dual_space(&a, s2).basis() {
                    assert!(target.contains(&shuffle_product(&f, &g)), "s1={s1} s2={s2}");
                }
            }
        }
    }
}

#[test]
fn coordinate_ring_components() {
    let r = coordinate_ring_component(&Composition::new(vec![2, 2]).unwrap(), 2).unwrap();
    assert_eq!((r.dim, r.expected_dim), (9, 9));
    assert!(r.holds());
    let r = coordinate_ring_component(&Composition::new(vec![2, 3]).unwrap(), 2).unwrap();
    assert_eq!(r.dim, 15);
    assert!(r.holds(), "{r:?}");
}

#[test]
fn constants_shuffle_to_binomials() {
    let two = shuffle_product(&SymPoly::one(1), &SymPoly::one(1));
    assert_eq!(two, SymPoly::one(2).scale(&int(2)));
    let six = shuffle_product(&SymPoly::one(2), &SymPoly::one(2));
    assert_eq!(six, SymPoly::one(4).scale(&int(6)));
}

fn sym_poly(s: usize) -> impl Strategy<Value = SymPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, s), -3i64..=3), 0..4).prop_map(move |terms| {
        let mut p = SymPoly::zero(s);
        for (l, c) in terms {
            p.add_term(l, int(c));
        }
        p
    })
}

fn pair() -> impl Strategy<Value = (SymPoly, SymPoly, SymPoly)> {
    (1usize..=2, 1usize..=2).prop_flat_map(|(s1, s2)| (sym_poly(s1), sym_poly(s1), sym_poly(s2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shuffle_is_commutative((f, _, g) in pair()) {
        prop_assert_eq!(shuffle_product(&f, &g), shuffle_product(&g, &f));
    }

    #[test]
    fn shuffle_is_bilinear((f, f2, g) in pair(), c in -3i64..=3) {
        let lhs = shuffle_product(&f.add(&f2.scale(&int(c))), &g);
        let rhs = shuffle_product(&f, &g).add(&shuffle_product(&f2, &g).scale(&int(c)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shuffle_matches_pointwise_sum((f, _, g) in pair(), z in prop::collection::vec(-3i64..=3, 4)) {
        // h(z) = Σ over s1-subsets S of f(z_S) g(z_rest).
        let s = f.s + g.s;
        let z: Vec<_> = z.into_iter().take(s).map(int).collect();
        let mut expected = int(0);
        for mask in 0u32..1 << s {
            if mask.count_ones() as usize != f.s {
                continue;
            }
            let (a, b): (Vec<_>, Vec<_>) = (0..s).partition(|&i| mask & (1 << i) != 0);
            let za: Vec<_> = a.iter().map(|&i| z[i].clone()).collect();
            let zb: Vec<_> = b.iter().map(|&i| z[i].clone()).collect();
            expected += f.eval(&za) * g.eval(&zb);
        }
        prop_assert_eq!(shuffle_product(&f, &g).eval(&z), expected);
    }
}

#[test]
fn dual_total_is_product_of_entries() {
    for a in Composition::grid(3, 4) {
        let total: u64 = (0..=a.top_degree() as usize).map(|s| dual_space(&a, s).dim()).sum();
        assert_eq!(total, a.dim(), "{a}");
    }
}
