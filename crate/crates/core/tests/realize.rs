use std::sync::Arc;

use titsform::fixtures;
use titsform::realize::{
    hom_space, is_indecomposable, isomorphic, search_all, search_realization, FiniteRep, Indecomposability, Mat,
    RepJson, SearchConfig, SearchMode,
};
use titsform::roots::RootAnalyzer;
use titsform::{IntVector, Presentation};

fn setting(name: &str, vec: &str) -> (Arc<Presentation>, IntVector) {
    let doc = fixtures::load(name).unwrap();
    let v = doc.vectors.iter().find(|(n, _)| n == vec).unwrap().1.clone();
    (Arc::new(doc.presentation().unwrap().clone()), v)
}

fn b01_family() -> Vec<FiniteRep> {
    let (p, y) = setting("b01.quiver", "y");
    search_all(p, &y, 2, 16).unwrap()
}

/// Counts vertex-map tuples `φ` with `φ_j X(α) = Y(α) φ_i` by enumerating every tuple.
fn brute_hom_count(x: &FiniteRep, y: &FiniteRep) -> u64 {
    let p = x.p();
    let shapes: Vec<(usize, usize)> = x.dims().iter().zip(y.dims()).map(|(&a, &b)| (b, a)).collect();
    let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let arrows = x.presentation().quiver().arrows().to_vec();
    let mut digits = vec![0u8; total];
    let mut count = 0;
    loop {
        let mut off = 0;
        let phi: Vec<Mat> = shapes
            .iter()
            .map(|&(r, c)| {
                let m = Mat::from_data(r, c, digits[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        let ok = arrows.iter().enumerate().all(|(k, a)| {
            phi[a.target].mul(x.matrix(k), p) == y.matrix(k).mul(&phi[a.source], p)
        });
        count += u64::from(ok);
        let mut k = 0;
        while k < total && u32::from(digits[k]) + 1 == p {
            digits[k] = 0;
            k += 1;
        }
        if k == total {
            return count;
        }
        digits[k] += 1;
    }
}

#[test]
fn b01_family_is_six_pairwise_distinct_indecomposables() {
    let reps = b01_family();
    assert_eq!(reps.len(), 6);
    for (i, x) in reps.iter().enumerate() {
        assert!(x.check_rep().unwrap());
        assert_eq!(is_indecomposable(x).unwrap(), Indecomposability::Indecomposable);
        for y in &reps[i + 1..] {
            assert!(!isomorphic(x, y).unwrap());
        }
    }
}

#[test]
fn hom_dimensions_match_enumeration() {
    let reps = b01_family();
    for x in &reps[..3] {
        for y in &reps[..3] {
            let h = hom_space(x, y).unwrap();
            assert_eq!(2u64.pow(h.dim() as u32), brute_hom_count(x, y));
        }
    }
}

#[test]
fn hom_of_sum_is_additive() {
    let reps = b01_family();
    let (x, y) = (&reps[0], &reps[1]);
    let s = x.direct_sum(y).unwrap();
    let parts: usize = [(x, x), (x, y), (y, x), (y, y)].iter().map(|(a, b)| hom_space(a, b).unwrap().dim()).sum();
    assert_eq!(hom_space(&s, &s).unwrap().dim(), parts);
    assert!(hom_space(x, x).unwrap().dim() >= 1);
}

#[test]
fn direct_sums_split_with_certificate() {
    let reps = b01_family();
    let s = reps[0].direct_sum(&reps[2]).unwrap();
    let Indecomposability::Decomposable(split) = is_indecomposable(&s).unwrap() else {
        panic!("direct sum reported indecomposable");
    };
    let p = s.p();
    for (k, a) in s.presentation().quiver().arrows().iter().enumerate() {
        let lhs = split.endomorphism[a.target].mul(s.matrix(k), p);
        let rhs = s.matrix(k).mul(&split.endomorphism[a.source], p);
        assert_eq!(lhs, rhs, "endomorphism does not commute with arrow {k}");
    }
    let sums: Vec<usize> = split.image_dims.iter().zip(&split.kernel_dims).map(|(a, b)| a + b).collect();
    assert_eq!(sums, s.dims());
    assert!(split.image_dims.iter().sum::<usize>() > 0);
    assert!(split.kernel_dims.iter().sum::<usize>() > 0);
}

#[test]
fn transport_gives_isomorphic_representation() {
    let reps = b01_family();
    let x = &reps[3];
    let p = x.p();
    let g: Vec<Mat> = x
        .dims()
        .iter()
        .map(|&d| {
            let mut m = Mat::identity(d);
            if d == 2 {
                m.set(0, 1, 1);
            }
            m
        })
        .collect();
    // Over F_2 each g_v squares to the identity.
    assert!(g.iter().all(|m| m.mul(m, p) == Mat::identity(m.rows())));
    let g_inv = g.clone();
    let t = x.transport(&g, &g_inv).unwrap();
    assert!(isomorphic(x, &t).unwrap());
}

#[test]
fn json_round_trip() {
    for x in b01_family() {
        let text = serde_json::to_string(&x.to_json()).unwrap();
        let back: RepJson = serde_json::from_str(&text).unwrap();
        let y = FiniteRep::from_json(x.presentation().clone(), &back).unwrap();
        assert_eq!(x, y);
    }
}

#[test]
fn thread_count_does_not_change_the_result() {
    let (p, y) = setting("b01.quiver", "y");
    let outs: Vec<_> = [1, 2, 4]
        .iter()
        .map(|&threads| search_realization(p.clone(), &y, &SearchConfig { threads, ..Default::default() }).unwrap())
        .collect();
    assert!(outs[0].realization.is_some());
    assert!(outs.windows(2).all(|w| w[0].realization == w[1].realization && w[0].exhausted == w[1].exhausted));
}

#[test]
fn random_mode_is_reproducible() {
    let (p, y) = setting("b01.quiver", "y");
    let cfg = SearchConfig { mode: SearchMode::Random { samples: 500, seed: 7 }, ..Default::default() };
    let a = search_realization(p.clone(), &y, &cfg).unwrap();
    let b = search_realization(p, &y, &cfg).unwrap();
    assert_eq!(a, b);
    assert!(!a.exhausted);
}

#[test]
fn chain_endpoints_are_realized_on_quiver_fixtures() {
    let mut realized = 0;
    for name in ["b01.quiver", "b10.quiver", "b11.quiver", "commutative_eleven.quiver", "single_exceptional.quiver"] {
        let doc = fixtures::load(name).unwrap();
        let pres = Arc::new(doc.presentation().unwrap().clone());
        let a = RootAnalyzer::new(doc.form(), Default::default()).unwrap();
        for (vname, v) in &doc.vectors {
            if !a.form().is_root(v) {
                continue;
            }
            let Ok(c) = a.reflection_chain(v) else { continue };
            let dims: u32 = c.root.entries().iter().map(|&d| (d * d) as u32).sum();
            if dims > 16 {
                continue;
            }
            let out = search_realization(pres.clone(), &c.root, &SearchConfig::default()).unwrap();
            assert!(out.realization.is_some(), "{name} {vname}: chain endpoint {} not realized", c.root);
            realized += 1;
        }
    }
    assert!(realized >= 3, "only {realized} endpoints checked");
}
