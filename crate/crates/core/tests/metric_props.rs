mod common;

use std::collections::BTreeMap;

use csn::metric::{
    find_kalmanson_ordering, four_point_check, kalmanson_check, metric_from_network, recover_split_weights,
    DissimilarityMatrix, Recovery,
};
use csn::{CircularOrdering, Rational, Scalar, Split, WeightedSplitSystem};
use proptest::prelude::*;

use common::tree_metric;

fn tree_case() -> impl Strategy<Value = (usize, Vec<usize>, Vec<(i64, i64)>)> {
    (4usize..=7).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(0usize..1000, n - 3), prop::collection::vec((1i64..20, 1i64..6), 2 * n - 3))
    })
}

/// Start position, length, and weight `p/q` of an arc.
type Arc = (usize, usize, i64, i64);

/// An ordering and weighted arcs of it (trivial splits allowed).
fn circular_case() -> impl Strategy<Value = (Vec<usize>, Vec<Arc>)> {
    (4usize..=8).prop_flat_map(|n| {
        (
            Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec((1usize..n, 1usize..n, 1i64..20, 1i64..6), 0..12),
        )
    })
}

fn circular_system(seq: &[usize], arcs: &[Arc]) -> WeightedSplitSystem<Rational> {
    let n = seq.len();
    let mut weights: BTreeMap<Split, Rational> = BTreeMap::new();
    for &(a, len, p, q) in arcs {
        let side: Vec<usize> = (0..len).map(|k| seq[(a + k) % n]).collect();
        weights.insert(Split::new(n, &side).unwrap(), Rational::from_ratio(p, q));
    }
    WeightedSplitSystem::new(n, weights).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tree_metrics_pass_four_point_and_kalmanson((n, picks, weights) in tree_case()) {
        let d = tree_metric(n, &picks, &weights);
        let zero = Rational::from_int(0);
        prop_assert!(four_point_check(&d, &zero).unwrap().is_pass());
        prop_assert!(find_kalmanson_ordering(&d, &zero, 9).unwrap().is_some());
    }

    #[test]
    fn circular_networks_are_kalmanson_and_recoverable((seq, arcs) in circular_case()) {
        let w = circular_system(&seq, &arcs);
        let d = metric_from_network(&w);
        let ordering = CircularOrdering::new(seq.clone()).unwrap();
        let zero = Rational::from_int(0);
        prop_assert!(kalmanson_check(&d, &ordering, &zero).unwrap().is_pass());
        match recover_split_weights(&d, &ordering, &zero).unwrap() {
            Recovery::Realized { weights, residual } => {
                prop_assert_eq!(weights, w);
                prop_assert_eq!(residual, zero);
            }
            Recovery::Infeasible(report) => prop_assert!(false, "infeasible: {:?}", report),
        }
    }

    #[test]
    fn float_and_exact_verdicts_agree((seq, arcs) in circular_case()) {
        let w = circular_system(&seq, &arcs);
        let exact = metric_from_network(&w);
        let approx = DissimilarityMatrix::from_rows(
            exact.rows().iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect(),
        ).unwrap();
        let ordering = CircularOrdering::new(seq).unwrap();
        prop_assert!(kalmanson_check(&approx, &ordering, &1e-9).unwrap().is_pass());
        prop_assert_eq!(
            four_point_check(&approx, &1e-9).unwrap().is_pass(),
            four_point_check(&exact, &Rational::from_int(0)).unwrap().is_pass()
        );
    }
}

#[test]
fn four_taxa_crossing_pair() {
    // 12|34 and 14|23 with unit weight
    let w = circular_system(&[1, 2, 3, 4], &[(0, 2, 1, 1), (1, 2, 1, 1)]);
    let d = metric_from_network(&w);
    let zero = Rational::from_int(0);
    let verdict = four_point_check(&d, &zero).unwrap();
    assert_eq!(verdict.witness().unwrap().quadruple, [1, 2, 3, 4]);
    assert!(kalmanson_check(&d, &CircularOrdering::identity(4).unwrap(), &zero).unwrap().is_pass());
    assert!(!kalmanson_check(&d, &CircularOrdering::new(vec![1, 3, 2, 4]).unwrap(), &zero).unwrap().is_pass());
}
