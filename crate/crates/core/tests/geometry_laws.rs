use fusion_core::composition::sorted_tuples;
use fusion_core::geometry::cohomology::{cohomology_dim, pullback_degree};
use fusion_core::geometry::fields::{jacobian_identity, pushforward_check, verify_vect_algebra};
use fusion_core::geometry::laurent::{y0_power, Laurent};
use fusion_core::geometry::lmatrix::LaurentMatrix;
use fusion_core::geometry::series::{invert_series, TruncatedSeries};
use fusion_core::geometry::splitting::{
    block_en_type, splitting_by_sections, splitting_type, DEFAULT_STEP_BOUND,
};
use fusion_core::geometry::transition::{compare_transition, e2_expected, transition_matrix_en};
use fusion_core::linalg::{frac, int};
use fusion_core::Composition;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn vector_field_algebra_up_to_six() {
    for n in 1..=6 {
        let r = verify_vect_algebra(n).unwrap();
        assert_eq!((r.count, r.rank), (4 * n - 1, 4 * n - 1));
        assert!(r.holds(), "n={n}: {:?}", r.relation_failures);
    }
}

#[test]
fn inversion_jacobian_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 1..=6 {
        let r = jacobian_identity(n, 20, &mut rng).unwrap();
        assert_eq!(r.samples.len(), 20);
        assert!(r.holds(), "n={n}");
    }
}

#[test]
fn printed_identities_fail_and_corrected_ones_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 3..=5 {
        let r = pushforward_check(n, 8, &mut rng).unwrap();
        assert!(r.holds());
        assert!(r.results.iter().any(|x| x.erratum));
        for x in &r.results {
            assert_eq!(x.holds, !x.erratum, "n={n} {}", x.name);
        }
    }
}

#[test]
fn transition_table_and_splitting() {
    assert_eq!(transition_matrix_en(2).unwrap().size(), 3);
    let e2 = splitting_type(&e2_expected(), DEFAULT_STEP_BOUND).unwrap();
    assert_eq!(e2.degrees, Some(vec![2, 0, -2]));
    for n in 3..=5 {
        let r = compare_transition(n).unwrap();
        assert!(r.det_is_unit());
        // Only the sign of the h'/f' entries differs from the printed table.
        assert_eq!(r.mismatches.len(), n - 2);
        let m = transition_matrix_en(n).unwrap();
        let s = splitting_type(&m, DEFAULT_STEP_BOUND).unwrap();
        assert!(s.conserves_degree() && s.certified);
        assert_eq!(s.degrees, Some(block_en_type(n)));
    }
}

#[test]
fn cohomology_recursion_matches_product() {
    for n in 1..=4 {
        for label in sorted_tuples(n, 0, 4) {
            let r = cohomology_dim(&label).unwrap();
            assert!(r.holds(), "{label:?}: {} vs {}", r.value, r.product);
        }
    }
    let r = cohomology_dim(&[2, 3, 4]).unwrap();
    assert_eq!(r.value, 60);
}

#[test]
fn pullback_sections_match_module_dimensions() {
    for a in Composition::grid(4, 5) {
        let r = pullback_degree(&a).unwrap();
        assert!(r.holds(), "{a}: {:?}", r.label);
    }
}

fn rational() -> impl Strategy<Value = fusion_core::Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = fusion_core::Scalar> {
    ((1i64..=6), any::<bool>(), 1i64..=4).prop_map(|(p, neg, q)| frac(if neg { -p } else { p }, q))
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    (nonzero_rational(), prop::collection::vec(rational(), 0..6)).prop_map(|(x0, rest)| {
        let mut c = vec![x0];
        c.extend(rest);
        TruncatedSeries::new(c)
    })
}

/// Elementary operation: add p times line `from` to line `to`, with p a
/// polynomial in y (rows) or in 1/y (columns).
#[derive(Clone, Debug)]
struct Elementary {
    from: usize,
    to: usize,
    coeffs: Vec<i64>,
}

fn elementary(size: usize) -> impl Strategy<Value = Elementary> {
    (0..size, 0..size, prop::collection::vec(-2i64..=2, 1..=3))
        .prop_filter("distinct lines", |(a, b, _)| a != b)
        .prop_map(|(from, to, coeffs)| Elementary { from, to, coeffs })
}

fn poly(coeffs: &[i64], sign: i32) -> Laurent {
    let mut p = Laurent::zero(1);
    for (k, &c) in coeffs.iter().enumerate() {
        p = &p + &y0_power(sign * k as i32, int(c));
    }
    p
}

fn elementary_matrix(size: usize, e: &Elementary, sign: i32) -> LaurentMatrix {
    let mut m = LaurentMatrix::identity(size);
    m.set(e.to, e.from, poly(&e.coeffs, sign));
    m
}

fn split_case() -> impl Strategy<Value = (Vec<i32>, Vec<Elementary>, Vec<Elementary>)> {
    (2usize..=4).prop_flat_map(|size| {
        (
            prop::collection::vec(-3i32..=3, size),
            prop::collection::vec(elementary(size), 0..4),
            prop::collection::vec(elementary(size), 0..4),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn inversion_is_an_involution(x in series()) {
        let y = invert_series(&x).unwrap();
        prop_assert_eq!(invert_series(&y).unwrap(), x);
    }

    #[test]
    fn splitting_recovers_the_diagonal((degrees, rows, cols) in split_case()) {
        // M = R(y) · diag(y^d) · C(1/y) has splitting type d.
        let size = degrees.len();
        let diag: Vec<_> = degrees.iter().map(|&d| (d, int(1))).collect();
        let mut m = LaurentMatrix::diagonal(&diag);
        for e in &rows {
            m = elementary_matrix(size, e, 1).mul(&m);
        }
        for e in &cols {
            m = m.mul(&elementary_matrix(size, e, -1));
        }
        let mut expected = degrees.clone();
        expected.sort_unstable_by(|a, b| b.cmp(a));
        let r = splitting_type(&m, DEFAULT_STEP_BOUND).unwrap();
        prop_assert!(r.conserves_degree());
        prop_assert!(r.certified);
        prop_assert_eq!(r.degrees.as_ref(), Some(&expected));
        prop_assert_eq!(splitting_by_sections(&m).unwrap(), expected);
    }
}
