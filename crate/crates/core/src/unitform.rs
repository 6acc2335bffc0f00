//! Integral unit forms `q(x) = Σ x_i² + Σ_{i<j} q_ij x_i x_j`.
//!
//! The symmetric bilinear form is `q(x, y) = q(x + y) − q(x) − q(y)`, so that
//! `q(e_i, e_i) = 2` and `q(e_i, e_j) = q_ij`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::IntVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitForm {
    n: usize,
    // Dense n×n, symmetric, zero diagonal.
    coeffs: Vec<i64>,
}

/// Root predicates of a vector with respect to a form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootStatus {
    pub value: i64,
    pub is_root: bool,
    pub is_positive: bool,
    pub is_omnipresent: bool,
    pub support: Vec<usize>,
}

impl UnitForm {
    /// The form `Σ x_i²` on `n` variables.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySubset);
        }
        Ok(UnitForm {
            n,
            coeffs: vec![0; n * n],
        })
    }

    /// Builds a form from 0-based `(i, j, q_ij)` triples. Repeated pairs accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        let mut q = UnitForm::new(n)?;
        for &(i, j, c) in edges {
            let cur = q.coeff(i, j);
            q.set(i, j, cur + c)?;
        }
        Ok(q)
    }

    /// Builds a form from a symmetric matrix of off-diagonal coefficients; the diagonal is ignored.
    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut q = UnitForm::new(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for j in 0..n {
                if i != j && rows[j][i] != row[j] {
                    return Err(Error::Precondition(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                q.set(i, j, rows[i][j])?;
            }
        }
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q_ij` for `i != j`; zero on the diagonal.
    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        self.coeffs[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: i64) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidIndex {
                index: i.max(j),
                n: self.n,
            });
        }
        if i == j {
            return Err(Error::Precondition("diagonal coefficients are fixed".into()));
        }
        self.coeffs[i * self.n + j] = c;
        self.coeffs[j * self.n + i] = c;
        Ok(())
    }

    /// Nonzero off-diagonal coefficients `(i, j, q_ij)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let c = self.coeff(i, j);
                if c != 0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    /// Symmetric matrix `M` with `q(x) = ½ x M xᵗ` (diagonal 2).
    pub fn gram(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { 2 } else { self.coeff(i, j) })
                    .collect()
            })
            .collect()
    }

    fn check_len(&self, v: &IntVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `q(v)`, with overflow reported as an error.
    pub fn evaluate(&self, v: &IntVector) -> Result<i64> {
        self.check_len(v)?;
        let x = v.entries();
        let mut acc: i64 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let sq = x[i].checked_mul(x[i]).ok_or(Error::Overflow)?;
            acc = acc.checked_add(sq).ok_or(Error::Overflow)?;
            for j in i + 1..self.n {
                let c = self.coeff(i, j);
                if c == 0 || x[j] == 0 {
                    continue;
                }
                let t = c
                    .checked_mul(x[i])
                    .and_then(|t| t.checked_mul(x[j]))
                    .ok_or(Error::Overflow)?;
                acc = acc.checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(acc)
    }

    /// `q(v, w) = Σ_i 2 v_i w_i + Σ_{i≠j} q_ij v_i w_j`.
    pub fn bilinear(&self, v: &IntVector, w: &IntVector) -> Result<i64> {
        self.check_len(v)?;
        self.check_len(w)?;
        let (x, y) = (v.entries(), w.entries());
        let mut acc: i64 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                let c = if i == j { 2 } else { self.coeff(i, j) };
                if c == 0 || y[j] == 0 {
                    continue;
                }
                let t = c
                    .checked_mul(x[i])
                    .and_then(|t| t.checked_mul(y[j]))
                    .ok_or(Error::Overflow)?;
                acc = acc.checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(acc)
    }

    /// `q(x)` on a raw slice; lengths are the caller's responsibility.
    #[inline]
    pub(crate) fn value_of(&self, x: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.n {
            let xi = x[i];
            if xi == 0 {
                continue;
            }
            acc += xi * xi;
            let row = &self.coeffs[i * self.n..(i + 1) * self.n];
            for j in i + 1..self.n {
                acc += row[j] * xi * x[j];
            }
        }
        acc
    }

    /// `q(x, e_i)` on a raw slice.
    #[inline]
    pub(crate) fn pairing_of(&self, x: &[i64], i: usize) -> i64 {
        let row = &self.coeffs[i * self.n..(i + 1) * self.n];
        let mut acc = 2 * x[i];
        for j in 0..self.n {
            if j != i {
                acc += row[j] * x[j];
            }
        }
        acc
    }

    /// `q(v, e_i)`.
    pub fn pairing(&self, v: &IntVector, i: usize) -> Result<i64> {
        self.check_len(v)?;
        if i >= self.n {
            return Err(Error::InvalidIndex { index: i, n: self.n });
        }
        Ok(self.pairing_of(v.entries(), i))
    }

    /// All pairings `q(v, e_i)`.
    pub fn pairings(&self, v: &IntVector) -> Result<Vec<i64>> {
        self.check_len(v)?;
        Ok((0..self.n).map(|i| self.pairing_of(v.entries(), i)).collect())
    }

    /// The reflection `σ_i(v) = v − q(v, e_i) e_i`.
    pub fn reflect(&self, v: &IntVector, i: usize) -> Result<IntVector> {
        let c = self.pairing(v, i)?;
        let mut out = v.clone();
        out[i] = out[i].checked_sub(c).ok_or(Error::Overflow)?;
        Ok(out)
    }

    pub fn root_status(&self, v: &IntVector) -> Result<RootStatus> {
        let value = self.evaluate(v)?;
        let is_positive = v.is_positive();
        Ok(RootStatus {
            value,
            is_root: is_positive && value == 1,
            is_positive,
            is_omnipresent: v.is_omnipresent(),
            support: v.support(),
        })
    }

    pub fn is_root(&self, v: &IntVector) -> bool {
        v.len() == self.n && v.is_positive() && self.value_of(v.entries()) == 1
    }

    /// All off-diagonal coefficients are at least −1.
    pub fn is_slender(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= -1)
    }

    /// Restriction to the coordinates in `subset` (kept in the given order).
    pub fn restrict(&self, subset: &[usize]) -> Result<UnitForm> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        for (k, &i) in subset.iter().enumerate() {
            if i >= self.n {
                return Err(Error::InvalidIndex { index: i, n: self.n });
            }
            if subset[..k].contains(&i) {
                return Err(Error::Precondition(format!("index {i} repeated in subset")));
            }
        }
        let m = subset.len();
        let mut coeffs = vec![0; m * m];
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                if a != b {
                    coeffs[a * m + b] = self.coeff(i, j);
                }
            }
        }
        Ok(UnitForm { n: m, coeffs })
    }

    /// Restriction to the coordinates whose bits are set in `mask`.
    pub(crate) fn restrict_mask(&self, mask: u64) -> (Vec<usize>, UnitForm) {
        let idx: Vec<usize> = (0..self.n).filter(|&i| mask >> i & 1 == 1).collect();
        let q = self.restrict(&idx).expect("nonempty mask");
        (idx, q)
    }

    /// Whether the form coincides with the all-pairs `−1` form on four vertices
    /// under some simultaneous permutation of the indices.
    pub fn is_q_m(&self) -> bool {
        if self.n != 4 {
            return false;
        }
        let mut perm = [0usize, 1, 2, 3];
        loop {
            let matches = (0..4).all(|i| (0..4).all(|j| i == j || self.coeff(perm[i], perm[j]) == -1));
            if matches {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    n: usize,
    gram: Vec<Vec<i64>>,
}

impl Serialize for UnitForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            n: self.n,
            gram: self.gram(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FormRepr::deserialize(d)?;
        if r.gram.len() != r.n {
            return Err(serde::de::Error::custom("gram size does not match n"));
        }
        UnitForm::from_matrix(&r.gram).map_err(serde::de::Error::custom)
    }
}
