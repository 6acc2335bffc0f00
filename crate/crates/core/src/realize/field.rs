//! Dense matrices over a small prime field.

use crate::error::{Error, Result};

/// Primes supported by the representation search.
pub const PRIMES: [u32; 3] = [2, 3, 5];

pub fn check_prime(p: u32) -> Result<()> {
    if PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("field size {p} is not one of 2, 3, 5")))
    }
}

const fn products() -> [[u8; 25]; 6] {
    let mut t = [[0u8; 25]; 6];
    let mut p = 2;
    while p <= 5 {
        let mut a = 0;
        while a < 5 {
            let mut b = 0;
            while b < 5 {
                t[p][a * 5 + b] = ((a * b) % p) as u8;
                b += 1;
            }
            a += 1;
        }
        p += 1;
    }
    t
}

static PRODUCTS: [[u8; 25]; 6] = products();

#[inline]
fn fmul(a: u8, b: u8, p: u32) -> u8 {
    PRODUCTS[p as usize][a as usize * 5 + b as usize]
}

#[inline]
fn fadd(a: u8, b: u8, p: u32) -> u8 {
    let s = a + b;
    if s as u32 >= p {
        s - p as u8
    } else {
        s
    }
}

#[inline]
fn fsub(a: u8, b: u8, p: u32) -> u8 {
    if a >= b {
        a - b
    } else {
        a + p as u8 - b
    }
}

pub fn inv(a: u8, p: u32) -> u8 {
    debug_assert!(a != 0);
    (1..p as u8).find(|&b| (a as u32 * b as u32) % p == 1).expect("prime field")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Self {
        let mut m = Mat::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[r * cols..(r + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.cols + c] = x;
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = fadd(out.data[idx], fmul(a, other.get(k, c), p), p);
                }
            }
        }
        out
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Mat, c: u8, p: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (x, &y) in self.data.iter_mut().zip(&other.data) {
            *x = fadd(*x, fmul(c, y, p), p);
        }
    }

    pub fn pow(&self, e: usize, p: u32) -> Mat {
        let mut out = Mat::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base, p);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, p);
            }
        }
        out
    }

    pub fn rank(&self, p: u32) -> usize {
        rref(&mut self.to_rows(), self.cols, p).len()
    }

    /// Columns placed side by side.
    pub fn hstack(parts: &[&Mat], rows: usize) -> Mat {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for r in 0..rows {
                for c in 0..m.cols {
                    out.set(r, off + c, m.get(r, c));
                }
            }
            off += m.cols;
        }
        out
    }

    /// Rows stacked on top of each other.
    pub fn vstack(parts: &[&Mat], cols: usize) -> Mat {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Mat { rows, cols, data }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Basis of `{x : self · x = 0}`, as columns.
    pub fn kernel(&self, p: u32) -> Vec<Vec<u8>> {
        nullspace(&self.to_rows(), self.cols, p)
    }
}

/// Row-reduces in place and returns the pivot columns; nonzero rows come first.
pub fn rref(rows: &mut Vec<Vec<u8>>, ncols: usize, p: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let iv = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = fmul(*x, iv, p);
        }
        let pivot = std::mem::take(&mut rows[r]);
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row[c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                    *x = fsub(*x, fmul(f, y, p), p);
                }
            }
        }
        rows[r] = pivot;
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the solutions of a homogeneous system given by its rows.
pub fn nullspace(rows: &[Vec<u8>], ncols: usize, p: u32) -> Vec<Vec<u8>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u8; ncols];
            x[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = ((p - m[r][f] as u32) % p) as u8;
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_rank() {
        let a = Mat::from_rows(&[vec![1, 1], vec![0, 1]], 2);
        let b = a.mul(&a, 2);
        assert_eq!(b, Mat::identity(2));
        assert_eq!(a.pow(3, 3).get(0, 1), 0);
        assert_eq!(Mat::from_rows(&[vec![1, 2], vec![2, 4]], 2).rank(5), 1);
        assert_eq!(Mat::from_rows(&[vec![1, 1], vec![1, 1]], 2).rank(2), 1);
        assert_eq!(Mat::from_rows(&[vec![1, 2], vec![2, 1]], 2).rank(3), 1);
    }

    #[test]
    fn kernels() {
        let m = Mat::from_rows(&[vec![1, 1, 0]], 3);
        let k = m.kernel(2);
        assert_eq!(k.len(), 2);
        for x in &k {
            let col = Mat::from_data(3, 1, x.clone());
            assert!(m.mul(&col, 2).is_zero());
        }
        assert_eq!(inv(2, 5), 3);
    }

    #[test]
    fn stacking() {
        let a = Mat::identity(2);
        let b = Mat::zeros(2, 1);
        assert_eq!(Mat::hstack(&[&a, &b], 2).cols(), 3);
        assert_eq!(Mat::vstack(&[&a, &a], 2).rows(), 4);
        assert_eq!(Mat::from_rows(&[vec![1, 2, 3]], 3).transpose().rows(), 3);
    }
}
