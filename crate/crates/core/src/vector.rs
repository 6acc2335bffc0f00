use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer vector indexed by vertex declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(Vec<i64>);

impl IntVector {
    pub fn new(entries: Vec<i64>) -> Self {
        IntVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        IntVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        IntVector(v)
    }

    /// Parses a comma separated list such as `1,2,0`.
    pub fn parse_csv(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|e| Error::Syntax {
                    line: 1,
                    column: 1,
                    message: format!("bad vector entry `{}`: {e}", t.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Non-negative and nonzero.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    /// Every coordinate strictly positive.
    pub fn is_omnipresent(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&x| x > 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// `|v|`, the coordinate sum.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn max_entry(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Coordinate-wise `self <= other`.
    pub fn le(&self, other: &IntVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: i64) -> IntVector {
        IntVector(self.0.iter().map(|&x| x * k).collect())
    }

    pub fn with_added_unit(&self, i: usize, k: i64) -> IntVector {
        let mut v = self.clone();
        v.0[i] += k;
        v
    }

    /// Restriction to the given coordinates, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> IntVector {
        IntVector(indices.iter().map(|&i| self.0[i]).collect())
    }

    /// Inverse of [`IntVector::restrict`]: places entries at `indices` inside a zero vector.
    pub fn embed(&self, indices: &[usize], n: usize) -> IntVector {
        let mut v = vec![0; n];
        for (k, &i) in indices.iter().enumerate() {
            v[i] = self.0[k];
        }
        IntVector(v)
    }

    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl From<&[i64]> for IntVector {
    fn from(v: &[i64]) -> Self {
        IntVector(v.to_vec())
    }
}

impl Index<usize> for IntVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for IntVector {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicates() {
        let v = IntVector::new(vec![1, 0, 2]);
        assert!(v.is_positive());
        assert!(!v.is_omnipresent());
        assert_eq!(v.support(), vec![0, 2]);
        assert_eq!(v.total(), 3);
        assert!(IntVector::new(vec![1, 1, 1]).is_omnipresent());
        assert!(!IntVector::zero(3).is_positive());
        assert!(!IntVector::new(vec![1, -1]).is_nonnegative());
    }

    #[test]
    fn restrict_embed() {
        let v = IntVector::new(vec![4, 5, 6, 7]);
        let r = v.restrict(&[1, 3]);
        assert_eq!(r.entries(), &[5, 7]);
        assert_eq!(r.embed(&[1, 3], 4).entries(), &[0, 5, 0, 7]);
    }

    #[test]
    fn csv() {
        assert_eq!(IntVector::parse_csv("1, 2,3").unwrap().entries(), &[1, 2, 3]);
        assert!(IntVector::parse_csv("1,x").is_err());
        assert_eq!(IntVector::new(vec![2, 0]).to_csv(), "2,0");
    }
}
