mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use titsform::classify::{ClassifyConfig, Verdict};
use titsform::fixtures::{self, FIXTURES};
use titsform::roots::{Case, ReflectionChain, RootAnalyzer};
use titsform::{Error, IntVector, UnitForm};

fn cfg() -> ClassifyConfig {
    ClassifyConfig::default()
}

/// Roots to exercise on a fixture: all positive roots when weakly positive,
/// the omnipresent ones with coordinates up to 12 when weakly non-negative,
/// and the named vectors that are roots.
fn fixture_roots(name: &str) -> (RootAnalyzer, Vec<IntVector>) {
    let doc = fixtures::load(name).unwrap();
    let a = RootAnalyzer::new(doc.form(), cfg()).unwrap();
    let mut roots: BTreeSet<IntVector> = doc.vectors.into_iter().map(|(_, v)| v).filter(|v| a.form().is_root(v)).collect();
    match a.verdict() {
        Verdict::WeaklyPositive => roots.extend(a.positive_roots().unwrap()),
        Verdict::WeaklyNonnegativeNotWp => roots.extend(a.omnipresent_roots().unwrap().roots),
        _ => {}
    }
    (a, roots.into_iter().collect())
}

/// Independent check of the four chain properties.
fn chain_violation(q: &UnitForm, v: &IntVector, c: &ReflectionChain) -> Option<String> {
    let g = q.gram();
    let n = q.n();
    let y = c.root.entries();
    if (0..n).any(|i| y[i] < 0 || y[i] > v[i]) {
        return Some("y is not between 0 and v".into());
    }
    let mut x = vec![0i64; n];
    x[c.start] = 1;
    for &i in &c.sequence {
        let ei: Vec<i64> = (0..n).map(|k| i64::from(k == i)).collect();
        let p = common::pairing(&g, &x, &ei);
        if p != -1 {
            return Some(format!("reflection at {i} changes x by {} e_i", -p));
        }
        x[i] += 1;
    }
    if x != y {
        return Some("sequence does not end at y".into());
    }
    let mut bad = None;
    let mut u = vec![0i64; n];
    'outer: loop {
        let mut k = 0;
        while k < n {
            if u[k] < y[k] {
                u[k] += 1;
                break;
            }
            u[k] = 0;
            k += 1;
        }
        if k == n {
            break 'outer;
        }
        if common::value(&g, &u) < 1 {
            bad = Some(format!("q({u:?}) < 1 inside the interval"));
            break;
        }
    }
    if bad.is_some() {
        return bad;
    }
    let d: Vec<i64> = (0..n).map(|i| v[i] - y[i]).collect();
    (common::value(&g, &d) != 0).then(|| "q(v - y) is not 0".into())
}

#[test]
fn reflection_chain_postconditions_on_fixtures() {
    let mut missing = BTreeSet::new();
    let mut checked = 0;
    for (name, _) in FIXTURES {
        let (a, roots) = fixture_roots(name);
        for v in &roots {
            match a.reflection_chain(v) {
                Ok(c) => {
                    assert_eq!(chain_violation(a.form(), v, &c), None, "{name} {v}");
                    a.check_chain(v, &c).unwrap();
                    checked += 1;
                }
                Err(Error::NoReflectionChain(_)) => {
                    missing.insert((name.to_string(), v.to_string()));
                }
                Err(e) => panic!("{name} {v}: {e}"),
            }
        }
    }
    println!("{checked} chains verified, no chain for {missing:?}");
    let expected: BTreeSet<(String, String)> = [
        ("maximal_twelve.form", "(1,1,4,6,8,10,12,8,4,6)"),
        ("two_exceptional_chain.form", "(1,1,1,2,1,1,2,1,1,1)"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert_eq!(missing, expected);
}

#[test]
fn a3_chain_starts_at_first_vertex() {
    let doc = fixtures::load("a3.form").unwrap();
    let (_, v) = doc.vectors.iter().find(|(n, _)| n == "v").unwrap().clone();
    let a = RootAnalyzer::new(doc.form(), cfg()).unwrap();
    let c = a.reflection_chain(&v).unwrap();
    assert_eq!(c.start, 0);
    assert_eq!(c.sequence, vec![1, 2]);
    assert_eq!(c.root, v);
}

/// Maximality among the listed roots, which are all positive roots here.
fn brute_maximal(roots: &[IntVector], v: &IntVector) -> bool {
    !roots.iter().any(|w| w != v && v.le(w))
}

#[test]
fn weakly_positive_fixtures_locally_maximal_is_maximal() {
    for (name, _) in FIXTURES {
        let (a, roots) = fixture_roots(name);
        if a.verdict() != Verdict::WeaklyPositive {
            continue;
        }
        for v in &roots {
            let lm = a.is_locally_maximal(v).unwrap();
            assert_eq!(lm, a.is_maximal(v).unwrap(), "{name} {v}");
            assert_eq!(lm, brute_maximal(&roots, v), "{name} {v}");
            assert!(v.max_entry() <= 6, "{name} {v}");
        }
    }
}

fn assert_not_case_three(a: &RootAnalyzer, v: &IntVector) -> Result<(), TestCaseError> {
    if v.is_omnipresent() && a.is_maximal(v).unwrap() {
        let e = a.exceptional(v).unwrap();
        prop_assert_ne!(e.case, Case::III, "{}", v);
        let rest: Vec<usize> = (0..v.len()).filter(|i| !e.indices.contains(i)).collect();
        if !rest.is_empty() {
            let r = a.form().restrict(&rest).unwrap();
            let g = r.gram();
            prop_assert!(common::wp_by_criticality(&g) || rest.len() > 10, "{}", v);
        }
    }
    Ok(())
}

#[test]
fn maximal_roots_of_fixtures_are_never_case_three() {
    for (name, _) in FIXTURES {
        let (a, roots) = fixture_roots(name);
        if !matches!(a.verdict(), Verdict::WeaklyPositive | Verdict::WeaklyNonnegativeNotWp) {
            continue;
        }
        for v in &roots {
            assert_not_case_three(&a, v).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn positive_roots_match_brute_force(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = common::random_sparse(&mut rng, n);
        let a = RootAnalyzer::new(q.clone(), cfg()).unwrap();
        if a.verdict() == Verdict::WeaklyPositive {
            let got = a.positive_roots().unwrap();
            prop_assert_eq!(got, common::brute_roots(&q.gram(), 6));
        }
    }

    #[test]
    fn maximal_omnipresent_roots_are_never_case_three(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = common::random_sparse(&mut rng, n);
        let a = RootAnalyzer::new(q, cfg()).unwrap();
        let roots = match a.verdict() {
            Verdict::WeaklyPositive => a.positive_roots().unwrap(),
            Verdict::WeaklyNonnegativeNotWp => a.omnipresent_roots_within(8).unwrap().roots,
            _ => Vec::new(),
        };
        for v in &roots {
            assert_not_case_three(&a, v)?;
        }
    }

    #[test]
    fn chains_exist_on_small_weakly_positive_forms(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = common::random_sparse(&mut rng, n);
        let a = RootAnalyzer::new(q, cfg()).unwrap();
        if a.verdict() == Verdict::WeaklyPositive {
            for v in a.positive_roots().unwrap() {
                let c = a.reflection_chain(&v).unwrap();
                prop_assert_eq!(chain_violation(a.form(), &v, &c), None);
            }
        }
    }
}
