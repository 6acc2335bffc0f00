//! Search for indecomposable representations with a prescribed dimension vector.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{check_prime, Mat};
use super::{dims_of, is_indecomposable, isomorphic, reduced_coefficients, relation_vanishes, FiniteRep, Indecomposability};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::vector::IntVector;

/// Largest number of matrix assignments the exhaustive mode will enumerate.
pub const EXHAUSTIVE_SPACE: u64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Every assignment, in lexicographic order of the arrow matrices.
    Exhaustive,
    /// Uniform random assignments from a seeded generator.
    Random { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub p: u32,
    pub mode: SearchMode,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            p: 2,
            mode: SearchMode::Exhaustive,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub realization: Option<FiniteRep>,
    /// True when the whole space was searched and every candidate was decided.
    pub exhausted: bool,
    /// Candidates that satisfied the relations and reached the indecomposability test.
    pub examined: u64,
    /// Candidates whose indecomposability could not be decided.
    pub undecided: u64,
}

/// Precomputed shape data shared by all search modes.
struct Plan {
    pres: Arc<Presentation>,
    p: u32,
    dims: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    counts: Vec<u64>,
    coeffs: Vec<Vec<u8>>,
    /// Relations to check once arrow `k` has been assigned.
    relations_at: Vec<Vec<usize>>,
    /// Vertices to filter once arrow `k` has been assigned.
    vertices_at: Vec<Vec<usize>>,
    /// Vertices with no incident arrow.
    isolated: Vec<usize>,
    filter: bool,
}

impl Plan {
    fn new(pres: Arc<Presentation>, dim: &IntVector, p: u32) -> Result<Plan> {
        check_prime(p)?;
        let dims = dims_of(&pres, dim)?;
        let total: usize = dims.iter().sum();
        if total == 0 {
            return Err(Error::Precondition("zero dimension vector".into()));
        }
        let coeffs = reduced_coefficients(&pres, p)?;
        let arrows = pres.quiver().arrows();
        let shapes: Vec<(usize, usize)> = arrows.iter().map(|a| (dims[a.target], dims[a.source])).collect();
        let counts = shapes
            .iter()
            .map(|&(r, c)| (p as u64).checked_pow((r * c) as u32).ok_or(Error::Overflow))
            .collect::<Result<Vec<u64>>>()?;
        let mut relations_at = vec![Vec::new(); arrows.len()];
        for (i, r) in pres.relations().iter().enumerate() {
            let last = r.terms.iter().flat_map(|(_, path)| path.iter().copied()).max().expect("nonempty relation");
            relations_at[last].push(i);
        }
        let mut vertices_at = vec![Vec::new(); arrows.len()];
        let mut isolated = Vec::new();
        for v in 0..dims.len() {
            let last = arrows.iter().rposition(|a| a.source == v || a.target == v);
            match last {
                Some(k) => vertices_at[k].push(v),
                None => isolated.push(v),
            }
        }
        Ok(Plan {
            pres,
            p,
            dims,
            shapes,
            counts,
            coeffs,
            relations_at,
            vertices_at,
            isolated,
            filter: total > 1,
        })
    }

    fn space(&self) -> Option<u64> {
        self.counts.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c))
    }

    /// Matrix whose row-major entries are the base-`p` digits of `code`, last entry fastest.
    fn decode(&self, k: usize, mut code: u64) -> Mat {
        let (r, c) = self.shapes[k];
        let mut data = vec![0u8; r * c];
        for slot in data.iter_mut().rev() {
            *slot = (code % self.p as u64) as u8;
            code /= self.p as u64;
        }
        Mat::from_data(r, c, data)
    }

    fn random(&self, k: usize, rng: &mut ChaCha8Rng) -> Mat {
        let (r, c) = self.shapes[k];
        Mat::from_data(r, c, (0..r * c).map(|_| rng.gen_range(0..self.p) as u8).collect())
    }

    fn relations_hold(&self, mats: &[Mat], k: usize) -> bool {
        let rels = self.pres.relations();
        self.relations_at[k]
            .iter()
            .all(|&i| relation_vanishes(mats, &rels[i], &self.coeffs[i], &self.dims, self.p))
    }

    /// Whether `ker(out_v) ⊆ im(in_v)`; failure splits off the simple at `v`.
    fn vertex_ok(&self, mats: &[Mat], v: usize) -> bool {
        let d = self.dims[v];
        if !self.filter || d == 0 {
            return true;
        }
        let arrows = self.pres.quiver().arrows();
        let outs: Vec<&Mat> = arrows.iter().zip(mats).filter(|(a, _)| a.source == v).map(|(_, m)| m).collect();
        let ins: Vec<&Mat> = arrows.iter().zip(mats).filter(|(a, _)| a.target == v).map(|(_, m)| m).collect();
        let out = Mat::vstack(&outs, d);
        let kernel = out.kernel(self.p);
        if kernel.is_empty() {
            return true;
        }
        let incoming = Mat::hstack(&ins, d);
        let k = Mat::from_rows(&kernel, d).transpose();
        Mat::hstack(&[&incoming, &k], d).rank(self.p) == incoming.rank(self.p)
    }

    fn partial_ok(&self, mats: &[Mat], k: usize) -> bool {
        self.relations_hold(mats, k) && self.vertices_at[k].iter().all(|&v| self.vertex_ok(mats, v))
    }

    fn isolated_ok(&self) -> bool {
        !self.filter || self.isolated.iter().all(|&v| self.dims[v] == 0)
    }

    /// Whether the arrows with nonzero matrices connect the support; otherwise the
    /// representation is the direct sum of its restrictions to the components.
    fn support_connected(&self, mats: &[Mat]) -> bool {
        let n = self.dims.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (a, m) in self.pres.quiver().arrows().iter().zip(mats) {
            if !m.is_zero() {
                let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
                parent[x] = y;
            }
        }
        let mut roots = (0..n).filter(|&v| self.dims[v] > 0).map(|v| find(&mut parent, v));
        let first = roots.next();
        roots.all(|r| Some(r) == first)
    }

    fn rep(&self, mats: Vec<Mat>) -> FiniteRep {
        FiniteRep {
            pres: self.pres.clone(),
            p: self.p,
            dims: self.dims.clone(),
            mats,
        }
    }
}

#[derive(Default)]
struct Tally {
    examined: u64,
    undecided: u64,
}

/// Depth-first enumeration below arrow `k`; `visit` returns false to stop.
fn dfs(
    plan: &Plan,
    mats: &mut Vec<Mat>,
    k: usize,
    stop: &dyn Fn() -> bool,
    visit: &mut dyn FnMut(&[Mat]) -> Result<bool>,
) -> Result<bool> {
    if k == plan.shapes.len() {
        return visit(mats);
    }
    for code in 0..plan.counts[k] {
        if stop() {
            return Ok(false);
        }
        mats.push(plan.decode(k, code));
        let go = if plan.partial_ok(mats, k) { dfs(plan, mats, k + 1, stop, visit)? } else { true };
        mats.pop();
        if !go {
            return Ok(false);
        }
    }
    Ok(true)
}

fn classify_leaf(plan: &Plan, mats: &[Mat], tally: &mut Tally) -> Result<Option<FiniteRep>> {
    tally.examined += 1;
    if !plan.support_connected(mats) {
        return Ok(None);
    }
    let rep = plan.rep(mats.to_vec());
    Ok(match is_indecomposable(&rep)? {
        Indecomposability::Indecomposable => Some(rep),
        Indecomposability::Decomposable(_) => None,
        Indecomposability::Undecided { .. } => {
            tally.undecided += 1;
            None
        }
    })
}

/// Subtree of the first arrow fixed to `first`; returns the least realization in it.
fn search_subtree(plan: &Plan, first: u64, stop: &dyn Fn() -> bool, tally: &mut Tally) -> Result<Option<FiniteRep>> {
    let mut mats = vec![plan.decode(0, first)];
    if !plan.partial_ok(&mats, 0) {
        return Ok(None);
    }
    let mut found = None;
    dfs(plan, &mut mats, 1, stop, &mut |m| {
        found = classify_leaf(plan, m, tally)?;
        Ok(found.is_none())
    })?;
    Ok(found)
}

fn exhaustive(plan: &Plan, threads: usize) -> Result<SearchOutcome> {
    match plan.space() {
        Some(s) if s <= EXHAUSTIVE_SPACE => {}
        _ => {
            return Err(Error::Precondition(format!(
                "exhaustive search space exceeds {EXHAUSTIVE_SPACE} assignments; use random mode"
            )))
        }
    }
    if !plan.isolated_ok() {
        return Ok(SearchOutcome {
            realization: None,
            exhausted: true,
            examined: 0,
            undecided: 0,
        });
    }
    if plan.shapes.is_empty() {
        let mut tally = Tally::default();
        let found = classify_leaf(plan, &[], &mut tally)?;
        return Ok(outcome(found, tally));
    }

    let best = AtomicU64::new(u64::MAX);
    let results: Mutex<BTreeMap<u64, FiniteRep>> = Mutex::new(BTreeMap::new());
    let tallies: Mutex<Tally> = Mutex::new(Tally::default());
    let first_count = plan.counts[0];
    let threads = threads.max(1).min(first_count as usize);

    let worker = |t: usize| -> Result<()> {
        let mut tally = Tally::default();
        let mut code = t as u64;
        while code < first_count && code < best.load(Ordering::Relaxed) {
            let stop = || best.load(Ordering::Relaxed) < code;
            if let Some(rep) = search_subtree(plan, code, &stop, &mut tally)? {
                best.fetch_min(code, Ordering::Relaxed);
                results.lock().expect("poisoned").insert(code, rep);
                break;
            }
            code += threads as u64;
        }
        let mut all = tallies.lock().expect("poisoned");
        all.examined += tally.examined;
        all.undecided += tally.undecided;
        Ok(())
    };

    if threads == 1 {
        worker(0)?;
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads).map(|t| s.spawn(move || worker(t))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search thread panicked"))
                .collect::<Result<Vec<()>>>()
        })?;
    }
    let found = results.into_inner().expect("poisoned").into_values().next();
    Ok(outcome(found, tallies.into_inner().expect("poisoned")))
}

fn outcome(found: Option<FiniteRep>, tally: Tally) -> SearchOutcome {
    SearchOutcome {
        exhausted: found.is_none() && tally.undecided == 0,
        realization: found,
        examined: tally.examined,
        undecided: tally.undecided,
    }
}

fn random(plan: &Plan, samples: u64, seed: u64) -> Result<SearchOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    if plan.isolated_ok() {
        for _ in 0..samples {
            let mut mats = Vec::with_capacity(plan.shapes.len());
            let mut ok = true;
            for k in 0..plan.shapes.len() {
                mats.push(plan.random(k, &mut rng));
                if !plan.partial_ok(&mats, k) {
                    ok = false;
                    break;
                }
            }
            if ok {
                if let Some(rep) = classify_leaf(plan, &mats, &mut tally)? {
                    return Ok(SearchOutcome {
                        realization: Some(rep),
                        exhausted: false,
                        examined: tally.examined,
                        undecided: tally.undecided,
                    });
                }
            }
        }
    }
    Ok(SearchOutcome {
        realization: None,
        exhausted: false,
        examined: tally.examined,
        undecided: tally.undecided,
    })
}

/// Looks for an indecomposable representation of dimension vector `dim` over `F_p`.
///
/// In exhaustive mode the result is the lexicographically least realization, independent of
/// the thread count.
pub fn search_realization(pres: Arc<Presentation>, dim: &IntVector, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let plan = Plan::new(pres, dim, cfg.p)?;
    match cfg.mode {
        SearchMode::Exhaustive => exhaustive(&plan, cfg.threads),
        SearchMode::Random { samples, seed } => random(&plan, samples, seed),
    }
}

/// Up to `limit` pairwise non-isomorphic indecomposables of dimension vector `dim`,
/// in lexicographic order of first occurrence.
pub fn search_all(pres: Arc<Presentation>, dim: &IntVector, p: u32, limit: usize) -> Result<Vec<FiniteRep>> {
    let plan = Plan::new(pres, dim, p)?;
    match plan.space() {
        Some(s) if s <= EXHAUSTIVE_SPACE => {}
        _ => return Err(Error::Precondition("search space too large for enumeration".into())),
    }
    let mut found: Vec<FiniteRep> = Vec::new();
    if limit == 0 || !plan.isolated_ok() {
        return Ok(found);
    }
    let mut tally = Tally::default();
    let mut mats = Vec::new();
    dfs(&plan, &mut mats, 0, &|| false, &mut |m| {
        if let Some(rep) = classify_leaf(&plan, m, &mut tally)? {
            let mut new = true;
            for f in &found {
                if isomorphic(f, &rep)? {
                    new = false;
                    break;
                }
            }
            if new {
                found.push(rep);
            }
        }
        Ok(found.len() < limit)
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn kronecker() -> Arc<Presentation> {
        Arc::new(parse_presentation("[quiver]\nvertex a\nvertex b\narrow x: a -> b\narrow y: a -> b\n").unwrap())
    }

    #[test]
    fn least_realization_is_thread_independent() {
        let pres = kronecker();
        let dim: IntVector = vec![1, 1].into();
        let one = search_realization(pres.clone(), &dim, &SearchConfig { p: 3, ..Default::default() }).unwrap();
        let four = search_realization(
            pres,
            &dim,
            &SearchConfig {
                p: 3,
                threads: 4,
                ..Default::default()
            },
        )
        .unwrap();
        let r = one.realization.clone().unwrap();
        assert_eq!(one.realization, four.realization);
        assert_eq!(r.matrix(0).data(), &[0]);
        assert_eq!(r.matrix(1).data(), &[1]);
        assert!(r.check_rep().unwrap());
    }

    #[test]
    fn no_indecomposable_outside_roots() {
        let pres = kronecker();
        let out = search_realization(pres, &vec![1, 3].into(), &SearchConfig::default()).unwrap();
        assert!(out.realization.is_none());
        assert!(out.exhausted);
    }

    #[test]
    fn kronecker_family_over_f2() {
        // Regular (1,1) modules: three points of P^1(F_2).
        let reps = search_all(kronecker(), &vec![1, 1].into(), 2, 10).unwrap();
        assert_eq!(reps.len(), 3);
    }

    #[test]
    fn random_mode_is_seeded() {
        let cfg = SearchConfig {
            p: 5,
            mode: SearchMode::Random { samples: 200, seed: 7 },
            threads: 1,
        };
        let a = search_realization(kronecker(), &vec![2, 1].into(), &cfg).unwrap();
        let b = search_realization(kronecker(), &vec![2, 1].into(), &cfg).unwrap();
        assert!(a.realization.is_some());
        assert_eq!(a, b);
        assert!(!a.exhausted);
    }
}
