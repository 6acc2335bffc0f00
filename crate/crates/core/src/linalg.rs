//! Exact rational linear algebra: rank, independent-row selection, LDLᵀ
//! with symmetric pivoting and integral nullspace bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Indices of rows that increase the rank when scanned in order
/// (the earliest row wins every tie).
pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new(); // (pivot column, reduced row)
    let mut kept = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut x = row.clone();
        for (pc, b) in &basis {
            if !x[*pc].is_zero() {
                let f = x[*pc].clone() / b[*pc].clone();
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= f.clone() * bi;
                }
            }
        }
        if let Some(pc) = x.iter().position(|c| !c.is_zero()) {
            basis.push((pc, x));
            kept.push(r);
        }
    }
    kept
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    independent_rows(rows).len()
}

/// Outcome of a symmetric LDLᵀ factorisation attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definiteness {
    pub nonnegative: bool,
    pub rank: usize,
}

/// Decides positive semidefiniteness of a symmetric integer matrix by LDLᵀ
/// with symmetric (diagonal) pivoting over the rationals.
pub fn semidefinite(m: &[Vec<i64>]) -> Definiteness {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while !alive.is_empty() {
        // Largest positive remaining diagonal entry.
        let mut piv: Option<usize> = None;
        for &i in &alive {
            if a[i][i].is_positive() && piv.is_none_or(|p| a[i][i] > a[p][p]) {
                piv = Some(i);
            }
        }
        let Some(p) = piv else {
            let negative_diag = alive.iter().any(|&i| a[i][i].is_negative());
            let off = alive
                .iter()
                .any(|&i| alive.iter().any(|&j| i != j && !a[i][j].is_zero()));
            return Definiteness {
                nonnegative: !negative_diag && !off,
                rank,
            };
        };
        alive.retain(|&i| i != p);
        let d = a[p][p].clone();
        for &i in &alive {
            if a[i][p].is_zero() {
                continue;
            }
            let f = a[i][p].clone() / d.clone();
            for &j in &alive {
                if !a[p][j].is_zero() {
                    let t = f.clone() * a[p][j].clone();
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    Definiteness {
        nonnegative: true,
        rank,
    }
}

/// Basis of the right nullspace of an integer matrix, each vector scaled to a
/// primitive integer vector whose first nonzero entry is positive.
pub fn integral_nullspace(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone().recip();
        for x in a[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = f.clone() * a[r][j].clone();
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[k][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector with positive first nonzero entry.
pub fn primitive(v: &[Rational]) -> Vec<i64> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return vec![0; v.len()];
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map(|x| x.signum()).unwrap_or_else(BigInt::one);
    ints.iter()
        .map(|x| (x / &g * &sign).to_i64().expect("radical vector fits in i64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Vec<Vec<i64>> {
        vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
    }

    #[test]
    fn semidefinite_cases() {
        assert_eq!(
            semidefinite(&triangle()),
            Definiteness {
                nonnegative: true,
                rank: 2
            }
        );
        let a2 = vec![vec![2, -1], vec![-1, 2]];
        assert_eq!(semidefinite(&a2).rank, 2);
        assert!(semidefinite(&a2).nonnegative);
        let qm: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 2 } else { -1 }).collect()).collect();
        assert!(!semidefinite(&qm).nonnegative);
        // zero diagonal with nonzero off-diagonal
        assert!(!semidefinite(&[vec![0, 1], vec![1, 0]]).nonnegative);
        assert!(semidefinite(&[vec![0, 0], vec![0, 0]]).nonnegative);
    }

    #[test]
    fn nullspace_of_triangle() {
        assert_eq!(integral_nullspace(&triangle()), vec![vec![1, 1, 1]]);
        assert!(integral_nullspace(&[vec![2, -1], vec![-1, 2]]).is_empty());
        let ns = integral_nullspace(&[vec![2, 4, 0]]);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(2 * v[0] + 4 * v[1], 0);
        }
    }

    #[test]
    fn earliest_row_wins() {
        let rows = vec![
            vec![rat(1), rat(1)],
            vec![rat(2), rat(2)],
            vec![rat(0), rat(1)],
            vec![rat(3), rat(1)],
        ];
        assert_eq!(independent_rows(&rows), vec![0, 2]);
        assert_eq!(rank(&rows), 2);
    }
}
