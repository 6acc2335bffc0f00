//! Roots of weakly non-negative unit forms: enumeration, maximality, the
//! exceptional-index trichotomy and reflection chains.

use serde::{Deserialize, Serialize};

use crate::classify::{self, level_search, ClassifyConfig, Verdict};
use crate::error::{Error, Result};
use crate::unitform::UnitForm;
use crate::vector::IntVector;

/// Coordinate bound for omnipresent root enumeration.
pub const OMNIPRESENT_BOUND: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// One exceptional index `i` with `q(v, e_i) = 1` and `v(i) = 2`.
    I,
    /// Two exceptional indices `a`, `b` with pairings 1 and `v(a) = v(b) = 1`.
    II,
    /// One exceptional index `j` with `q(v, e_j) = 2` and `v(j) = 1`.
    III,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exceptional {
    pub case: Case,
    pub indices: Vec<usize>,
    pub pairings: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootAnalysis {
    pub root: IntVector,
    pub locally_maximal: bool,
    pub maximal: bool,
    /// Present for locally maximal omnipresent roots.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<Exceptional>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionChain {
    pub start: usize,
    pub sequence: Vec<usize>,
    pub root: IntVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmnipresentRoots {
    pub roots: Vec<IntVector>,
    /// Some listed root is maximal, so no omnipresent root was missed.
    pub complete: bool,
}

/// A form together with its weak non-negativity verdict.
#[derive(Clone, Debug)]
pub struct RootAnalyzer {
    q: UnitForm,
    cfg: ClassifyConfig,
    verdict: Verdict,
}

impl RootAnalyzer {
    pub fn new(q: UnitForm, cfg: ClassifyConfig) -> Result<Self> {
        let verdict = classify::is_weakly_nonnegative(&q, &cfg)?.verdict;
        Ok(RootAnalyzer { q, cfg, verdict })
    }

    pub fn form(&self) -> &UnitForm {
        &self.q
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    fn require_wnn(&self) -> Result<()> {
        match self.verdict {
            Verdict::WeaklyPositive | Verdict::WeaklyNonnegativeNotWp => Ok(()),
            Verdict::NotWeaklyNonnegative => Err(Error::Precondition("form is not weakly non-negative".into())),
            Verdict::Inconclusive => Err(Error::Undecided("weak non-negativity is undecided".into())),
        }
    }

    fn require_root(&self, v: &IntVector) -> Result<()> {
        if v.len() != self.q.n() {
            return Err(Error::DimensionMismatch {
                expected: self.q.n(),
                got: v.len(),
            });
        }
        if !v.is_positive() || self.q.evaluate(v)? != 1 {
            return Err(Error::Precondition(format!("{v} is not a positive root")));
        }
        Ok(())
    }

    /// All positive roots, sorted lexicographically.
    pub fn positive_roots(&self) -> Result<Vec<IntVector>> {
        if self.verdict != Verdict::WeaklyPositive {
            return Err(Error::Precondition("form is not weakly positive".into()));
        }
        let s = level_search(
            &self.q,
            &vec![self.cfg.wp_bound; self.q.n()],
            |x| x == 1,
            |x| x <= 0,
            true,
            self.cfg.node_cap,
        );
        if s.witness.is_some() || s.truncated {
            return Err(Error::Invariant("root closure left the weak-positivity box".into()));
        }
        let mut roots = s.visited;
        roots.sort();
        Ok(roots)
    }

    /// Omnipresent roots with coordinates at most [`OMNIPRESENT_BOUND`].
    pub fn omnipresent_roots(&self) -> Result<OmnipresentRoots> {
        self.omnipresent_roots_within(OMNIPRESENT_BOUND)
    }

    pub fn omnipresent_roots_within(&self, bound: i64) -> Result<OmnipresentRoots> {
        self.require_wnn()?;
        let s = level_search(
            &self.q,
            &vec![bound; self.q.n()],
            |x| x == 0 || x == 1,
            |x| x < 0,
            true,
            self.cfg.node_cap,
        );
        if s.witness.is_some() {
            return Err(Error::Invariant("negative vector below the enumeration bound".into()));
        }
        if s.capped {
            return Err(Error::Undecided(format!(
                "more than {} vectors below the bound",
                self.cfg.node_cap
            )));
        }
        let mut roots: Vec<IntVector> = s
            .visited
            .into_iter()
            .filter(|v| v.is_omnipresent() && self.q.value_of(v.entries()) == 1)
            .collect();
        roots.sort();
        let mut complete = false;
        for v in &roots {
            if self.is_maximal(v)? {
                complete = true;
                break;
            }
        }
        Ok(OmnipresentRoots { roots, complete })
    }

    /// `q(v, e_i) ≥ 0` for every `i`.
    pub fn is_locally_maximal(&self, v: &IntVector) -> Result<bool> {
        self.require_root(v)?;
        Ok(self.q.pairings(v)?.iter().all(|&p| p >= 0))
    }

    /// Indices `j` with `q(v, e_j) = 0`.
    pub fn zero_pairing_set(&self, v: &IntVector) -> Result<Vec<usize>> {
        Ok(self
            .q
            .pairings(v)?
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p == 0)
            .map(|(j, _)| j)
            .collect())
    }

    /// A root `v` is maximal iff it is locally maximal and `q` restricted to
    /// the zero-pairing set is weakly positive: a root `v + d` with `d > 0`
    /// forces `q(d) = q(v, d) = 0`, so `d` lives on that set, and any
    /// isotropic `d ≥ 0` there gives the root `v + d`.
    pub fn is_maximal(&self, v: &IntVector) -> Result<bool> {
        self.require_wnn()?;
        if !self.is_locally_maximal(v)? {
            return Ok(false);
        }
        let zero = self.zero_pairing_set(v)?;
        if zero.is_empty() {
            return Ok(true);
        }
        let r = self.q.restrict(&zero)?;
        match classify::is_weakly_positive(&r, &self.cfg)?.verdict {
            Verdict::WeaklyPositive => Ok(true),
            Verdict::Inconclusive => Err(Error::Undecided("weak positivity of the zero-pairing restriction".into())),
            _ => Ok(false),
        }
    }

    /// The exceptional indices `E = {i : q(v, e_i) > 0}` of a locally maximal
    /// omnipresent root. Since `Σ v(i) q(v, e_i) = 2`, the pattern is always one
    /// of the three cases, for any unit form.
    pub fn exceptional(&self, v: &IntVector) -> Result<Exceptional> {
        if !self.is_locally_maximal(v)? {
            return Err(Error::Precondition(format!("{v} is not locally maximal")));
        }
        if !v.is_omnipresent() {
            return Err(Error::Precondition(format!("{v} is not omnipresent")));
        }
        let p = self.q.pairings(v)?;
        let total: i64 = v.entries().iter().zip(&p).map(|(a, b)| a * b).sum();
        if total != 2 {
            return Err(Error::Invariant(format!("pairing sum {total} differs from 2")));
        }
        let indices: Vec<usize> = (0..p.len()).filter(|&i| p[i] > 0).collect();
        let pairings: Vec<i64> = indices.iter().map(|&i| p[i]).collect();
        let vals: Vec<i64> = indices.iter().map(|&i| v[i]).collect();
        let case = match (pairings.as_slice(), vals.as_slice()) {
            ([1], [2]) => Case::I,
            ([1, 1], [1, 1]) => Case::II,
            ([2], [1]) => Case::III,
            _ => {
                return Err(Error::Invariant(format!(
                    "exceptional pattern pairings {pairings:?} values {vals:?}"
                )))
            }
        };
        Ok(Exceptional {
            case,
            indices,
            pairings,
        })
    }

    /// Full analysis of a root. For maximal roots the exceptional case must be
    /// I or II and the restriction away from `E` must be weakly positive;
    /// violations are reported as [`Error::Invariant`].
    pub fn analyze(&self, v: &IntVector) -> Result<RootAnalysis> {
        self.require_wnn()?;
        let locally_maximal = self.is_locally_maximal(v)?;
        let maximal = self.is_maximal(v)?;
        let exceptional = if locally_maximal && v.is_omnipresent() {
            Some(self.exceptional(v)?)
        } else {
            None
        };
        if let (true, Some(e)) = (maximal, &exceptional) {
            if e.case == Case::III {
                return Err(Error::Invariant(format!("maximal root {v} has exceptional case III")));
            }
            let rest: Vec<usize> = (0..self.q.n()).filter(|i| !e.indices.contains(i)).collect();
            if !rest.is_empty() {
                let r = self.q.restrict(&rest)?;
                let verdict = classify::is_weakly_positive(&r, &self.cfg)?.verdict;
                if verdict != Verdict::WeaklyPositive {
                    return Err(Error::Invariant(format!(
                        "restriction away from the exceptional indices is {verdict}"
                    )));
                }
            }
        }
        Ok(RootAnalysis {
            root: v.clone(),
            locally_maximal,
            maximal,
            exceptional,
        })
    }

    /// A reflection chain for the positive root `v`: a start vertex `j` and
    /// indices `i_1, …, i_s` such that each partial product of reflections
    /// applied to `e_j` adds one unit vector, the result `y ≤ v` has an
    /// anisotropic interval below it and `q(v − y) = 0`.
    ///
    /// `y` is the root of least `|y|` (then lexicographically least) with
    /// these properties. Such a `y` need not exist; for weakly non-negative
    /// forms that outcome is [`Error::NoReflectionChain`]. Other forms are
    /// searched too, since every returned chain is verified, but a failed
    /// search there is reported as a precondition violation.
    pub fn reflection_chain(&self, v: &IntVector) -> Result<ReflectionChain> {
        self.require_root(v)?;
        let y = match self.anisotropic_complement(v) {
            Err(Error::NoReflectionChain(_)) if !self.verdict.is_weakly_nonnegative() => {
                return Err(self.require_wnn().expect_err("verdict is not weakly non-negative"));
            }
            other => other?,
        };
        let chain = self.ascend(&y)?;
        self.check_chain(v, &chain)?;
        Ok(chain)
    }

    /// Candidates are `y = v − d` with `d = 0` or `d ≤ v` isotropic. The
    /// vectors `0 < x ≤ v` with `q(x) ∈ {0, 1}` are closed under removing a
    /// suitable unit vector, so a level search from the unit vectors finds
    /// every such `d`.
    fn anisotropic_complement(&self, v: &IntVector) -> Result<IntVector> {
        let q = &self.q;
        let s = level_search(q, v.entries(), |x| x == 0 || x == 1, |_| false, true, self.cfg.node_cap);
        if s.capped {
            return Err(Error::Undecided("isotropic search exceeded the node cap".into()));
        }
        let mut candidates: Vec<IntVector> = std::iter::once(v.clone())
            .chain(
                s.visited
                    .iter()
                    .filter(|d| q.value_of(d.entries()) == 0)
                    .map(|d| v - d),
            )
            .filter(|y| !y.is_zero() && q.value_of(y.entries()) == 1)
            .collect();
        candidates.sort_by(|a, b| (a.total(), a).cmp(&(b.total(), b)));
        for y in candidates {
            if interval_is_anisotropic(q, &y, self.cfg.node_cap)? {
                return Ok(y);
            }
        }
        Err(Error::NoReflectionChain(v.to_string()))
    }

    /// Builds a root with anisotropic interval upward from its least
    /// supported index; each step adds the least `i` with `q(x, e_i) = −1`.
    fn ascend(&self, v: &IntVector) -> Result<ReflectionChain> {
        let q = &self.q;
        let n = q.n();
        let start = *v.support().first().ok_or(Error::Precondition("zero vector".into()))?;
        let mut x = IntVector::unit(n, start);
        let mut sequence = Vec::new();
        while x != *v {
            let i = (0..n)
                .find(|&i| x[i] < v[i] && q.pairing_of(x.entries(), i) == -1)
                .ok_or_else(|| Error::Invariant(format!("no ascent from {x} towards {v}")))?;
            x[i] += 1;
            sequence.push(i);
        }
        Ok(ReflectionChain {
            start,
            sequence,
            root: x,
        })
    }

    /// Verifies the four chain properties for `v`.
    pub fn check_chain(&self, v: &IntVector, c: &ReflectionChain) -> Result<()> {
        let q = &self.q;
        let n = q.n();
        let fail = |m: String| Err(Error::Invariant(m));
        if c.start >= n {
            return fail(format!("start index {} out of range", c.start));
        }
        let mut x = IntVector::unit(n, c.start);
        let mut expected = x.clone();
        for &i in &c.sequence {
            x = q.reflect(&x, i)?;
            expected = expected.with_added_unit(i, 1);
            if x != expected {
                return fail(format!("reflection at {i} gave {x}, expected {expected}"));
            }
        }
        if x != c.root {
            return fail(format!("chain ends at {x}, not {}", c.root));
        }
        if !c.root.le(v) {
            return fail(format!("{} is not below {v}", c.root));
        }
        if q.value_of((v - &c.root).entries()) != 0 {
            return fail(format!("q({v} − {}) ≠ 0", c.root));
        }
        if !interval_is_anisotropic(q, &c.root, self.cfg.node_cap)? {
            return fail(format!("some 0 < u ≤ {} has q(u) ≤ 0", c.root));
        }
        Ok(())
    }
}

/// Whether every `0 < u ≤ y` has `q(u) ≥ 1`. Small boxes are scanned
/// exhaustively; larger ones by a root search inside the box.
pub fn interval_is_anisotropic(q: &UnitForm, y: &IntVector, cap: usize) -> Result<bool> {
    let size = y
        .entries()
        .iter()
        .try_fold(1u64, |acc, &b| acc.checked_mul(b as u64 + 1));
    if size.is_some_and(|s| s <= 1 << 20) {
        let n = y.len();
        let mut u = vec![0i64; n];
        loop {
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(true);
                }
                k -= 1;
                if u[k] < y[k] {
                    u[k] += 1;
                    break;
                }
                u[k] = 0;
            }
            if q.value_of(&u) <= 0 {
                return Ok(false);
            }
        }
    }
    let s = level_search(q, y.entries(), |x| x == 1, |x| x <= 0, false, cap);
    if s.capped {
        return Err(Error::Undecided("anisotropy check exceeded the node cap".into()));
    }
    Ok(s.witness.is_none())
}

pub fn enumerate_positive_roots(q: &UnitForm, cfg: &ClassifyConfig) -> Result<Vec<IntVector>> {
    RootAnalyzer::new(q.clone(), *cfg)?.positive_roots()
}

pub fn enumerate_omnipresent_roots(q: &UnitForm, cfg: &ClassifyConfig) -> Result<OmnipresentRoots> {
    RootAnalyzer::new(q.clone(), *cfg)?.omnipresent_roots()
}

pub fn reflection_chain(q: &UnitForm, v: &IntVector, cfg: &ClassifyConfig) -> Result<ReflectionChain> {
    RootAnalyzer::new(q.clone(), *cfg)?.reflection_chain(v)
}
