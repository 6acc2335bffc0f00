mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use titsform::classify::{self, ClassifyConfig, Verdict};
use titsform::{IntVector, UnitForm};

fn form_strategy(max_n: usize) -> impl Strategy<Value = UnitForm> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-3i64..=2, n * (n - 1) / 2).prop_map(move |cs| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((i, j, cs[k]));
                    k += 1;
                }
            }
            UnitForm::from_edges(n, &edges).unwrap()
        })
    })
}

fn slender_strategy(max_n: usize) -> impl Strategy<Value = UnitForm> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| common::random_slender(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn vec_for(q: &UnitForm) -> impl Strategy<Value = IntVector> {
    proptest::collection::vec(-5i64..=5, q.n()).prop_map(IntVector::new)
}

proptest! {
    #[test]
    fn evaluation_matches_gram(
        (q, x, y) in form_strategy(7).prop_flat_map(|q| (Just(q.clone()), vec_for(&q), vec_for(&q)))
    ) {
        let g = q.gram();
        prop_assert_eq!(q.evaluate(&x).unwrap(), common::value(&g, x.entries()));
        prop_assert_eq!(q.bilinear(&x, &y).unwrap(), common::pairing(&g, x.entries(), y.entries()));
    }

    #[test]
    fn polarization(
        (q, x, y) in form_strategy(7).prop_flat_map(|q| (Just(q.clone()), vec_for(&q), vec_for(&q)))
    ) {
        let sum = IntVector::new(x.entries().iter().zip(y.entries()).map(|(a, b)| a + b).collect());
        let lhs = q.evaluate(&sum).unwrap() - q.evaluate(&x).unwrap() - q.evaluate(&y).unwrap();
        prop_assert_eq!(q.bilinear(&x, &y).unwrap(), lhs);
        prop_assert_eq!(q.bilinear(&x, &y).unwrap(), q.bilinear(&y, &x).unwrap());
        prop_assert_eq!(q.bilinear(&x, &x).unwrap(), 2 * q.evaluate(&x).unwrap());
    }

    #[test]
    fn reflections_are_isometric_involutions(
        (q, x, i) in form_strategy(7).prop_flat_map(|q| { let n = q.n(); (Just(q.clone()), vec_for(&q), 0..n) })
    ) {
        let r = q.reflect(&x, i).unwrap();
        prop_assert_eq!(q.evaluate(&r).unwrap(), q.evaluate(&x).unwrap());
        prop_assert_eq!(q.reflect(&r, i).unwrap(), x.clone());
        for j in 0..q.n() {
            if j != i {
                prop_assert_eq!(r[j], x[j]);
            }
        }
    }

    #[test]
    fn semidefiniteness_matches_minors(q in form_strategy(6)) {
        let g = q.gram();
        let (psd, radical) = classify::is_nonnegative_with_radical(&q);
        prop_assert_eq!(psd, common::is_psd(&g));
        if psd {
            for z in &radical {
                for row in &g {
                    prop_assert_eq!(row.iter().zip(z.entries()).map(|(a, b)| a * b).sum::<i64>(), 0);
                }
            }
            let singular = common::det(&g) == 0;
            prop_assert_eq!(singular, !radical.is_empty());
        }
    }

    #[test]
    fn weak_positivity_matches_criticality(q in slender_strategy(6)) {
        let r = classify::is_weakly_positive(&q, &ClassifyConfig::default()).unwrap();
        let oracle = common::wp_by_criticality(&q.gram());
        prop_assert_eq!(r.verdict == Verdict::WeaklyPositive, oracle);
        if let Some(w) = &r.witness {
            prop_assert!(w.is_positive());
            prop_assert!(common::value(&q.gram(), w.entries()) <= 0);
        }
    }

    #[test]
    fn witnesses_agree_with_box_reference(q in form_strategy(4)) {
        let cfg = ClassifyConfig::default();
        let wp = classify::is_weakly_positive(&q, &cfg).unwrap();
        let wnn = classify::is_weakly_nonnegative(&q, &cfg).unwrap();
        let nonpos = classify::box_search(&q, cfg.wp_bound, |v| v <= 0);
        let neg = classify::box_search(&q, cfg.wnn_bound, |v| v < 0);
        prop_assert_eq!(wp.verdict == Verdict::WeaklyPositive, nonpos.is_none());
        match wnn.verdict {
            Verdict::NotWeaklyNonnegative => {
                let w = wnn.witness.clone().unwrap();
                prop_assert!(q.evaluate(&w).unwrap() < 0);
            }
            Verdict::Inconclusive => {}
            _ => prop_assert!(neg.is_none()),
        }
    }

    #[test]
    fn critical_restrictions_are_critical(q in slender_strategy(6)) {
        let g = q.gram();
        for c in classify::critical_restrictions(&q, &ClassifyConfig::default()).unwrap() {
            let sub = common::principal(&g, &c.subset);
            prop_assert!(!common::wp_by_criticality(&sub));
            for k in 0..c.subset.len() {
                let child: Vec<usize> = (0..c.subset.len()).filter(|&i| i != k).collect();
                prop_assert!(child.is_empty() || common::wp_by_criticality(&common::principal(&sub, &child)));
            }
            prop_assert_eq!(common::value(&sub, c.vector.entries()), 0);
            prop_assert!(c.vector.is_omnipresent());
        }
    }

    #[test]
    fn hypercritical_witness_values(q in slender_strategy(7)) {
        let cfg = ClassifyConfig::default();
        for j in classify::hypercritical_restrictions(&q, &cfg).unwrap() {
            let r = q.restrict(&j).unwrap();
            let h = classify::hypercritical_witnesses(&r, &cfg).unwrap();
            let g = r.gram();
            let expected_v = if h.is_q_m { -2 } else { -1 };
            prop_assert_eq!(common::value(&g, h.v.entries()), expected_v);
            prop_assert_eq!(common::value(&g, h.w.entries()), -3);
            prop_assert!(h.v.is_nonnegative() && h.w.is_nonnegative());
        }
    }
}

#[test]
fn q_m_values() {
    let q = UnitForm::from_edges(4, &[(0, 1, -1), (0, 2, -1), (0, 3, -1), (1, 2, -1), (1, 3, -1), (2, 3, -1)]).unwrap();
    assert!(q.is_q_m());
    assert_eq!(q.evaluate(&IntVector::new(vec![1, 1, 1, 1])).unwrap(), -2);
    assert_eq!(q.evaluate(&IntVector::new(vec![2, 2, 1, 1])).unwrap(), -3);
}

#[test]
fn overflow_is_reported() {
    let q = UnitForm::from_edges(2, &[(0, 1, -1)]).unwrap();
    let big = IntVector::new(vec![i64::MAX / 2, i64::MAX / 2]);
    assert_eq!(q.evaluate(&big), Err(titsform::Error::Overflow));
}
