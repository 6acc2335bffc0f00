//! Reference implementations used as oracles. They work directly on the Gram
//! matrix and share no code with the library beyond `UnitForm::gram`.
#![allow(dead_code)]

use rand::Rng;
use titsform::{IntVector, UnitForm};

/// `q(x) = ½ xᵀ G x`.
pub fn value(g: &[Vec<i64>], x: &[i64]) -> i64 {
    let n = x.len();
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            s += g[i][j] * x[i] * x[j];
        }
    }
    s / 2
}

/// `q(x, y) = xᵀ G y`.
pub fn pairing(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| g[i][j] * x[i] * y[j]).sum::<i64>()).sum()
}

/// Exact determinant by fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn principal(g: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter().map(|&i| idx.iter().map(|&j| g[i][j]).collect()).collect()
}

/// Positive semidefinite iff every principal minor is non-negative.
pub fn is_psd(g: &[Vec<i64>]) -> bool {
    let n = g.len();
    (1u32..1 << n).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        det(&principal(g, &idx)) >= 0
    })
}

/// A generator of the kernel of a corank-one matrix: a nonzero row of the adjugate.
pub fn corank_one_kernel(g: &[Vec<i64>]) -> Option<Vec<i128>> {
    let n = g.len();
    for r in 0..n {
        let row: Vec<i128> = (0..n)
            .map(|c| {
                let rows: Vec<usize> = (0..n).filter(|&i| i != c).collect();
                let cols: Vec<usize> = (0..n).filter(|&j| j != r).collect();
                let minor: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| g[i][j]).collect()).collect();
                let s = if (r + c) % 2 == 0 { 1 } else { -1 };
                s * det(&minor)
            })
            .collect();
        if row.iter().any(|&x| x != 0) {
            return Some(row);
        }
    }
    None
}

/// Weak positivity of a slender form by recursion over restrictions: a form
/// all of whose proper restrictions are weakly positive fails to be weakly
/// positive exactly when it is singular positive semidefinite with a sincere
/// one-signed kernel generator.
pub fn wp_by_criticality(g: &[Vec<i64>]) -> bool {
    let n = g.len();
    let mut wp = vec![true; 1 << n];
    for mask in 1usize..1 << n {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if idx.iter().any(|&i| !wp[mask & !(1 << i)]) {
            wp[mask] = false;
            continue;
        }
        if idx.len() == 1 {
            continue;
        }
        let sub = principal(g, &idx);
        if det(&sub) != 0 || !is_psd(&sub) {
            continue;
        }
        let critical = match corank_one_kernel(&sub) {
            Some(k) => k.iter().all(|&x| x > 0) || k.iter().all(|&x| x < 0),
            None => false,
        };
        wp[mask] = !critical;
    }
    wp[(1 << n) - 1]
}

/// Calls `f` on every vector of `[0, bound]^n` except zero.
pub fn for_box(n: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let mut x = vec![0i64; n];
    loop {
        let mut k = 0;
        while k < n {
            if x[k] < bound {
                x[k] += 1;
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == n {
            return;
        }
        f(&x);
    }
}

pub fn brute_roots(g: &[Vec<i64>], bound: i64) -> Vec<IntVector> {
    let mut out = Vec::new();
    for_box(g.len(), bound, |x| {
        if value(g, x) == 1 {
            out.push(IntVector::new(x.to_vec()));
        }
    });
    out.sort();
    out
}

/// Random slender form: off-diagonal coefficients in {−1, 0, 1, 2}, mostly −1 and 0.
pub fn random_slender(rng: &mut impl Rng, n: usize) -> UnitForm {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = match rng.gen_range(0..20) {
                0..=8 => -1,
                9..=15 => 0,
                16..=18 => 1,
                _ => 2,
            };
            if c != 0 {
                edges.push((i, j, c));
            }
        }
    }
    UnitForm::from_edges(n, &edges).expect("valid form")
}

/// Random connected slender form, mostly tree-like, to reach weakly positive
/// and weakly non-negative forms often.
pub fn random_sparse(rng: &mut impl Rng, n: usize) -> UnitForm {
    let mut edges = Vec::new();
    for j in 1..n {
        edges.push((rng.gen_range(0..j), j, -1));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !edges.iter().any(|&(a, b, _)| (a, b) == (i, j)) && rng.gen_range(0..10) == 0 {
                edges.push((i, j, if rng.gen_bool(0.5) { 1 } else { -1 }));
            }
        }
    }
    UnitForm::from_edges(n, &edges).expect("valid form")
}
