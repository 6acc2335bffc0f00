//! Representations of a bound quiver over `F_p` for `p ∈ {2, 3, 5}`.
//!
//! A representation assigns to each arrow `α: i → j` a `d(j) × d(i)` matrix.
//! A path `l1.l2…lk` acts by `M(lk) ⋯ M(l1)`.

mod field;
mod search;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::vector::IntVector;

pub use field::{check_prime, Mat, PRIMES};
pub use search::{search_all, search_realization, SearchConfig, SearchMode, SearchOutcome};

/// Exhaustive enumeration limit for End and Hom spaces.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
const RANDOM_TRIALS: usize = 256;

/// Relation coefficients reduced modulo `p`, one list per relation.
pub(crate) fn reduced_coefficients(pres: &Presentation, p: u32) -> Result<Vec<Vec<u8>>> {
    let pb = num_bigint::BigInt::from(p);
    pres.relations()
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|(c, _)| {
                    let den = c.denom().mod_floor(&pb);
                    if den.is_zero() {
                        return Err(Error::BadPrime { prime: p });
                    }
                    let num = c.numer().mod_floor(&pb).to_u32().expect("small residue");
                    let den = den.to_u32().expect("small residue");
                    Ok(((num * field::inv(den as u8, p) as u32) % p) as u8)
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct FiniteRep {
    pres: Arc<Presentation>,
    p: u32,
    dims: Vec<usize>,
    mats: Vec<Mat>,
}

impl PartialEq for FiniteRep {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres)
            && self.p == other.p
            && self.dims == other.dims
            && self.mats == other.mats
    }
}

impl Eq for FiniteRep {}

/// JSON form `{p, dim, matrices: {label: rows}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub p: u32,
    pub dim: IntVector,
    pub matrices: BTreeMap<String, Vec<Vec<u8>>>,
}

pub(crate) fn dims_of(pres: &Presentation, d: &IntVector) -> Result<Vec<usize>> {
    if d.len() != pres.n() {
        return Err(Error::DimensionMismatch {
            expected: pres.n(),
            got: d.len(),
        });
    }
    d.entries()
        .iter()
        .map(|&x| usize::try_from(x).map_err(|_| Error::Precondition(format!("negative dimension in {d}"))))
        .collect()
}

impl FiniteRep {
    /// Checks field, shapes and entry ranges; relations are checked by [`FiniteRep::check_rep`].
    pub fn new(pres: Arc<Presentation>, p: u32, dims: &IntVector, mats: Vec<Mat>) -> Result<Self> {
        check_prime(p)?;
        let dims = dims_of(&pres, dims)?;
        let arrows = pres.quiver().arrows();
        if mats.len() != arrows.len() {
            return Err(Error::RepMismatch(format!(
                "{} matrices for {} arrows",
                mats.len(),
                arrows.len()
            )));
        }
        for (a, m) in arrows.iter().zip(&mats) {
            if (m.rows(), m.cols()) != (dims[a.target], dims[a.source]) {
                return Err(Error::RepMismatch(format!(
                    "arrow `{}` needs a {}×{} matrix, got {}×{}",
                    a.label,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.data().iter().any(|&x| x as u32 >= p) {
                return Err(Error::RepMismatch(format!("entry of `{}` not reduced mod {p}", a.label)));
            }
        }
        Ok(FiniteRep { pres, p, dims, mats })
    }

    /// The representation with all matrices zero.
    pub fn zero_maps(pres: Arc<Presentation>, p: u32, dims: &IntVector) -> Result<Self> {
        let d = dims_of(&pres, dims)?;
        let mats = pres
            .quiver()
            .arrows()
            .iter()
            .map(|a| Mat::zeros(d[a.target], d[a.source]))
            .collect();
        FiniteRep::new(pres, p, dims, mats)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> IntVector {
        self.dims.iter().map(|&x| x as i64).collect::<Vec<_>>().into()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn matrix(&self, arrow: usize) -> &Mat {
        &self.mats[arrow]
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.mats
    }

    /// Matrix of a path: `M(lk) ⋯ M(l1)`.
    pub fn path_matrix(&self, path: &[usize]) -> Mat {
        let mut m = self.mats[path[0]].clone();
        for &a in &path[1..] {
            m = self.mats[a].mul(&m, self.p);
        }
        m
    }

    /// Whether every relation acts as the zero matrix.
    pub fn check_rep(&self) -> Result<bool> {
        let coeffs = reduced_coefficients(&self.pres, self.p)?;
        Ok(self
            .pres
            .relations()
            .iter()
            .zip(&coeffs)
            .all(|(r, cs)| relation_vanishes(&self.mats, r, cs, &self.dims, self.p)))
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            p: self.p,
            dim: self.dim_vector(),
            matrices: self
                .pres
                .quiver()
                .arrows()
                .iter()
                .zip(&self.mats)
                .map(|(a, m)| (a.label.clone(), m.to_rows()))
                .collect(),
        }
    }

    pub fn from_json(pres: Arc<Presentation>, j: &RepJson) -> Result<Self> {
        let dims = dims_of(&pres, &j.dim)?;
        let mut mats = Vec::new();
        for a in pres.quiver().arrows() {
            let rows = j
                .matrices
                .get(&a.label)
                .ok_or_else(|| Error::RepMismatch(format!("missing matrix for `{}`", a.label)))?;
            let (r, c) = (dims[a.target], dims[a.source]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::RepMismatch(format!("matrix for `{}` has the wrong shape", a.label)));
            }
            mats.push(Mat::from_rows(rows, c));
        }
        FiniteRep::new(pres, j.p, &j.dim, mats)
    }

    /// Direct sum with another representation of the same presentation.
    pub fn direct_sum(&self, other: &FiniteRep) -> Result<FiniteRep> {
        same_setting(self, other)?;
        let dims: Vec<i64> = self.dims.iter().zip(&other.dims).map(|(a, b)| (a + b) as i64).collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let mut m = Mat::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m.set(r, c, a.get(r, c));
                    }
                }
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(a.rows() + r, a.cols() + c, b.get(r, c));
                    }
                }
                m
            })
            .collect();
        FiniteRep::new(self.pres.clone(), self.p, &dims.into(), mats)
    }

    /// The representation transported along invertible vertex maps `g`:
    /// `M'(α) = g_j M(α) g_i⁻¹`, given `g` and its inverse.
    pub fn transport(&self, g: &[Mat], g_inv: &[Mat]) -> Result<FiniteRep> {
        let arrows = self.pres.quiver().arrows();
        let mats = arrows
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| g[a.target].mul(m, self.p).mul(&g_inv[a.source], self.p))
            .collect();
        FiniteRep::new(self.pres.clone(), self.p, &self.dim_vector(), mats)
    }
}

pub(crate) fn relation_vanishes(
    mats: &[Mat],
    r: &crate::presentation::Relation,
    coeffs: &[u8],
    dims: &[usize],
    p: u32,
) -> bool {
    let mut acc = Mat::zeros(dims[r.target], dims[r.source]);
    for ((_, path), &c) in r.terms.iter().zip(coeffs) {
        let mut m = mats[path[0]].clone();
        for &a in &path[1..] {
            m = mats[a].mul(&m, p);
        }
        acc.add_scaled(&m, c, p);
    }
    acc.is_zero()
}

fn same_setting(x: &FiniteRep, y: &FiniteRep) -> Result<()> {
    if !(Arc::ptr_eq(&x.pres, &y.pres) || x.pres == y.pres) {
        return Err(Error::RepMismatch("representations of different presentations".into()));
    }
    if x.p != y.p {
        return Err(Error::RepMismatch(format!("fields F_{} and F_{}", x.p, y.p)));
    }
    Ok(())
}

/// `Hom(X, Y)` as a list of vertex-indexed matrix tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub basis: Vec<Vec<Mat>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_k b_k`.
    pub fn combination(&self, coeffs: &[u8], p: u32) -> Vec<Mat> {
        let mut out: Vec<Mat> = self.basis[0].iter().map(|m| Mat::zeros(m.rows(), m.cols())).collect();
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                for (o, m) in out.iter_mut().zip(b) {
                    o.add_scaled(m, c, p);
                }
            }
        }
        out
    }
}

/// Solves `φ_j X(α) = Y(α) φ_i` for all arrows `α: i → j`.
pub fn hom_space(x: &FiniteRep, y: &FiniteRep) -> Result<HomSpace> {
    same_setting(x, y)?;
    let p = x.p;
    let n = x.dims.len();
    let mut offset = vec![0usize; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + y.dims[i] * x.dims[i];
    }
    let unknowns = offset[n];
    // Unknown φ_i[r][c] lives at offset[i] + r * dX(i) + c.
    let var = |i: usize, r: usize, c: usize| offset[i] + r * x.dims[i] + c;
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (k, a) in x.pres.quiver().arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (xm, ym) = (&x.mats[k], &y.mats[k]);
        for r in 0..y.dims[j] {
            for c in 0..x.dims[i] {
                let mut row = vec![0u8; unknowns];
                for t in 0..x.dims[j] {
                    let v = xm.get(t, c);
                    if v != 0 {
                        let idx = var(j, r, t);
                        row[idx] = ((row[idx] as u32 + v as u32) % p) as u8;
                    }
                }
                for t in 0..y.dims[i] {
                    let v = ym.get(r, t);
                    if v != 0 {
                        let idx = var(i, t, c);
                        row[idx] = ((row[idx] as u32 + p - v as u32) % p) as u8;
                    }
                }
                if row.iter().any(|&e| e != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = field::nullspace(&rows, unknowns, p)
        .into_iter()
        .map(|sol| {
            (0..n)
                .map(|i| Mat::from_data(y.dims[i], x.dims[i], sol[offset[i]..offset[i + 1]].to_vec()))
                .collect()
        })
        .collect();
    Ok(HomSpace { basis })
}

/// Certificate of decomposability: an endomorphism `φ` with
/// `X = ker φ^N ⊕ im φ^N` and both summands nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingSplit {
    pub endomorphism: Vec<Mat>,
    /// Per-vertex dimension of `im φ^N`.
    pub image_dims: Vec<usize>,
    /// Per-vertex dimension of `ker φ^N`.
    pub kernel_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    Indecomposable,
    Decomposable(FittingSplit),
    /// `End(X)` is too large to enumerate and random probing found no split.
    Undecided { end_dim: usize },
}

/// Per-vertex ranks of `φ^N` for large `N`; at a vertex of dimension `d` the rank is stable from `φ^d` on.
fn fitting_ranks(phi: &[Mat], p: u32) -> Vec<usize> {
    phi.iter().map(|m| m.pow(m.rows(), p).rank(p)).collect()
}

fn try_split(x: &FiniteRep, phi: Vec<Mat>) -> Option<FittingSplit> {
    let total = x.total_dim();
    let ranks = fitting_ranks(&phi, x.p);
    let r: usize = ranks.iter().sum();
    (r > 0 && r < total).then(|| FittingSplit {
        kernel_dims: x.dims.iter().zip(&ranks).map(|(d, r)| d - r).collect(),
        image_dims: ranks,
        endomorphism: phi,
    })
}

/// Iterates all coefficient vectors in `F_p^dim` in lexicographic order.
fn for_each_coeffs(dim: usize, p: u32, mut f: impl FnMut(&[u8]) -> bool) {
    let mut c = vec![0u8; dim];
    loop {
        if !f(&c) {
            return;
        }
        let mut k = dim;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if (c[k] as u32) + 1 < p {
                c[k] += 1;
                break;
            }
            c[k] = 0;
        }
    }
}

fn space_size(p: u32, dim: usize) -> Option<u64> {
    (p as u64).checked_pow(dim as u32)
}

/// Decides whether `End(X)` is local.
pub fn is_indecomposable(x: &FiniteRep) -> Result<Indecomposability> {
    if x.total_dim() == 0 {
        return Err(Error::Precondition("zero representation".into()));
    }
    let end = hom_space(x, x)?;
    if end.dim() == 1 {
        return Ok(Indecomposability::Indecomposable);
    }
    for b in &end.basis {
        if let Some(s) = try_split(x, b.clone()) {
            return Ok(Indecomposability::Decomposable(s));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_TRIALS {
        let c: Vec<u8> = (0..end.dim()).map(|_| rng.gen_range(0..x.p) as u8).collect();
        if let Some(s) = try_split(x, end.combination(&c, x.p)) {
            return Ok(Indecomposability::Decomposable(s));
        }
    }
    if space_size(x.p, end.dim()).is_none_or(|s| s > EXHAUSTIVE_LIMIT) {
        return Ok(Indecomposability::Undecided { end_dim: end.dim() });
    }
    let mut split = None;
    for_each_coeffs(end.dim(), x.p, |c| {
        split = try_split(x, end.combination(c, x.p));
        split.is_none()
    });
    Ok(match split {
        Some(s) => Indecomposability::Decomposable(s),
        None => Indecomposability::Indecomposable,
    })
}

fn invertible_everywhere(phi: &[Mat], p: u32) -> bool {
    phi.iter().all(|m| m.rows() == m.cols() && m.rank(p) == m.rows())
}

/// Whether some element of `Hom(X, Y)` is invertible at every vertex.
pub fn isomorphic(x: &FiniteRep, y: &FiniteRep) -> Result<bool> {
    same_setting(x, y)?;
    if x.dims != y.dims {
        return Ok(false);
    }
    if x.total_dim() == 0 {
        return Ok(true);
    }
    let hom = hom_space(x, y)?;
    if hom.dim() == 0 {
        return Ok(false);
    }
    if hom.basis.iter().any(|b| invertible_everywhere(b, x.p)) {
        return Ok(true);
    }
    if space_size(x.p, hom.dim()).is_some_and(|s| s <= EXHAUSTIVE_LIMIT) {
        let mut found = false;
        for_each_coeffs(hom.dim(), x.p, |c| {
            found = invertible_everywhere(&hom.combination(c, x.p), x.p);
            !found
        });
        return Ok(found);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..RANDOM_TRIALS {
        let c: Vec<u8> = (0..hom.dim()).map(|_| rng.gen_range(0..x.p) as u8).collect();
        if invertible_everywhere(&hom.combination(&c, x.p), x.p) {
            return Ok(true);
        }
    }
    Err(Error::Undecided(format!("Hom space of dimension {} is too large", hom.dim())))
}
