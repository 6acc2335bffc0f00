//! Weak positivity and weak non-negativity of unit forms.
//!
//! Two independent procedures are combined:
//!
//! * a level search over positive vectors ordered by `|v|`, starting from the
//!   unit vectors and adding one `e_i` at a time, which finds a minimal
//!   witness whenever one exists inside the coordinate box;
//! * a scan over all index subsets (as bitmasks) that detects critical and
//!   hypercritical restrictions from exact semidefiniteness tests.
//!
//! When both run, their verdicts must agree; a disagreement is reported as
//! [`Error::Invariant`].

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{integral_nullspace, semidefinite};
use crate::unitform::UnitForm;
use crate::vector::IntVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    WeaklyPositive,
    WeaklyNonnegativeNotWp,
    NotWeaklyNonnegative,
    Inconclusive,
}

impl Verdict {
    pub fn is_weakly_nonnegative(self) -> bool {
        matches!(self, Verdict::WeaklyPositive | Verdict::WeaklyNonnegativeNotWp)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::WeaklyPositive => "WEAKLY_POSITIVE",
            Verdict::WeaklyNonnegativeNotWp => "WEAKLY_NONNEGATIVE_NOT_WP",
            Verdict::NotWeaklyNonnegative => "NOT_WEAKLY_NONNEGATIVE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    /// Coordinate bound for weak-positivity witnesses.
    pub wp_bound: i64,
    /// Coordinate bound for negative witnesses.
    pub wnn_bound: i64,
    /// Largest `n` for which the subset scan runs.
    pub ceiling: usize,
    /// Largest number of vectors a level search may visit.
    pub node_cap: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            wp_bound: 6,
            wnn_bound: 13,
            ceiling: 20,
            node_cap: 4_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalWitness {
    /// Indices of `J` in increasing order.
    #[serde(rename = "J")]
    pub subset: Vec<usize>,
    /// Critical vector in the coordinates of `J`.
    #[serde(rename = "z")]
    pub vector: IntVector,
    pub radical_rank: usize,
}

impl CriticalWitness {
    /// The critical vector as an element of `Z^n`.
    pub fn embedded(&self, n: usize) -> IntVector {
        self.vector.embed(&self.subset, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<IntVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_value: Option<i64>,
    pub critical: Vec<CriticalWitness>,
    pub hypercritical: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Positive semidefiniteness of the Gram matrix together with a basis of the
/// radical made of primitive integer vectors.
pub fn is_nonnegative_with_radical(q: &UnitForm) -> (bool, Vec<IntVector>) {
    let gram = q.gram();
    let d = semidefinite(&gram);
    let basis = integral_nullspace(&gram).into_iter().map(IntVector::from).collect();
    (d.nonnegative, basis)
}

/// Result of a level search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSearch {
    /// Least `|w|`, then lexicographically least, vector hitting the target.
    pub witness: Option<IntVector>,
    /// Every kept vector, in level order (only when requested).
    pub visited: Vec<IntVector>,
    /// Some kept vector had a successor outside the box.
    pub truncated: bool,
    /// The node cap stopped the search.
    pub capped: bool,
}

/// Breadth-first search by `|v|` from the unit vectors. A vector is kept when
/// `keep(q(v))` holds and extended by `+e_i` inside the box `v ≤ upper`;
/// a successor with `hit(q(v + e_i))` is a witness and ends the search at the
/// current level.
pub fn level_search(
    q: &UnitForm,
    upper: &[i64],
    keep: impl Fn(i64) -> bool,
    hit: impl Fn(i64) -> bool,
    collect: bool,
    cap: usize,
) -> LevelSearch {
    let n = q.n();
    let mut level: Vec<Vec<i64>> = (0..n)
        .filter(|&i| upper[i] >= 1)
        .map(|i| IntVector::unit(n, i).into_inner())
        .filter(|v| keep(q.value_of(v)))
        .collect();
    let mut out = LevelSearch {
        witness: None,
        visited: Vec::new(),
        truncated: false,
        capped: false,
    };
    let mut count = level.len();
    while !level.is_empty() {
        let mut next: HashSet<Vec<i64>> = HashSet::new();
        let mut best: Option<Vec<i64>> = None;
        for v in &level {
            let base = q.value_of(v);
            for i in 0..n {
                let val = base + q.pairing_of(v, i) + 1;
                let is_hit = hit(val);
                if !is_hit && !keep(val) {
                    continue;
                }
                if v[i] >= upper[i] {
                    out.truncated = true;
                    continue;
                }
                let mut w = v.clone();
                w[i] += 1;
                if is_hit {
                    if best.as_ref().is_none_or(|b| w < *b) {
                        best = Some(w);
                    }
                } else if best.is_none() {
                    next.insert(w);
                }
            }
        }
        if collect {
            out.visited.extend(level.iter().cloned().map(IntVector::from));
        }
        if let Some(w) = best {
            out.witness = Some(w.into());
            return out;
        }
        count += next.len();
        if count > cap {
            out.capped = true;
            out.truncated = true;
            return out;
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    out
}

/// Weak-positivity search: roots are kept, `q ≤ 0` is a witness.
pub fn wp_search(q: &UnitForm, bound: i64, cap: usize) -> LevelSearch {
    level_search(q, &vec![bound; q.n()], |v| v == 1, |v| v <= 0, false, cap)
}

/// Weak-non-negativity search: vectors with `q ∈ {0, 1}` are kept, `q < 0` is a witness.
pub fn wnn_search(q: &UnitForm, bound: i64, cap: usize) -> LevelSearch {
    level_search(q, &vec![bound; q.n()], |v| v == 0 || v == 1, |v| v < 0, false, cap)
}

/// Lexicographically first positive vector in the box `[0, bound]^n` whose
/// value satisfies `pred`. Exponential; intended as a reference for small `n`.
pub fn box_search(q: &UnitForm, bound: i64, pred: impl Fn(i64) -> bool) -> Option<IntVector> {
    let n = q.n();
    let mut v = vec![0i64; n];
    loop {
        // Odometer increment, last coordinate fastest.
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if v[k] < bound {
                v[k] += 1;
                break;
            }
            v[k] = 0;
        }
        if pred(q.value_of(&v)) {
            return Some(v.into());
        }
    }
}

const P61: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P61 as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Whether the determinant of an integer matrix vanishes modulo `2^61 − 1`.
fn det_vanishes_mod_p(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(P61 as i64) as u64).collect())
        .collect();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
            return true;
        };
        a.swap(c, p);
        let inv = powmod(a[c][c], P61 - 2);
        for r in c + 1..n {
            if a[r][c] == 0 {
                continue;
            }
            let f = mulmod(a[r][c], inv);
            for k in c..n {
                let sub = mulmod(f, a[c][k]);
                a[r][k] = (a[r][k] + P61 - sub) % P61;
            }
        }
    }
    false
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

/// Critical and hypercritical restrictions of a form, computed over all
/// nonempty index subsets in increasing bitmask order.
#[derive(Clone, Debug)]
pub struct SubsetScan {
    n: usize,
    wp: Vec<bool>,
    wnn: Vec<bool>,
    critical: BTreeMap<u64, CriticalWitness>,
    hypercritical: BTreeMap<u64, IntVector>,
}

impl SubsetScan {
    pub fn new(q: &UnitForm, ceiling: usize) -> Result<Self> {
        let n = q.n();
        if n > ceiling || n > 30 {
            return Err(Error::CeilingExceeded { n, ceiling });
        }
        let size = 1usize << n;
        let mut adj = vec![0u64; n];
        for (i, j, _) in q.edges() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        let mut scan = SubsetScan {
            n,
            wp: vec![true; size],
            wnn: vec![true; size],
            critical: BTreeMap::new(),
            hypercritical: BTreeMap::new(),
        };
        for mask in 1..size as u64 {
            let count = mask.count_ones();
            if count == 1 {
                continue;
            }
            let children_wp = bits(mask).all(|i| scan.wp[(mask ^ (1 << i)) as usize]);
            let children_wnn = bits(mask).all(|i| scan.wnn[(mask ^ (1 << i)) as usize]);
            if children_wp {
                if count == 2 {
                    let mut it = bits(mask);
                    let (i, j) = (it.next().unwrap(), it.next().unwrap());
                    let c = q.coeff(i, j);
                    if c <= -2 {
                        scan.wp[mask as usize] = false;
                    }
                    if c == -2 {
                        scan.critical.insert(
                            mask,
                            CriticalWitness {
                                subset: vec![i, j],
                                vector: vec![1, 1].into(),
                                radical_rank: 1,
                            },
                        );
                    }
                } else if connected(&adj, mask) {
                    if let Some(w) = critical_vector(q, mask)? {
                        scan.wp[mask as usize] = false;
                        scan.critical.insert(mask, w);
                    }
                }
            } else {
                scan.wp[mask as usize] = false;
            }
            if !children_wnn {
                scan.wnn[mask as usize] = false;
                continue;
            }
            if let Some(w) = scan.hypercritical_witness(q, mask) {
                scan.wnn[mask as usize] = false;
                scan.hypercritical.insert(mask, w);
            }
        }
        Ok(scan)
    }

    fn hypercritical_witness(&self, q: &UnitForm, mask: u64) -> Option<IntVector> {
        let n = self.n;
        let mut best: Option<IntVector> = None;
        let mut offer = |w: IntVector| {
            let better = match &best {
                None => true,
                Some(b) => (w.total(), &w) < (b.total(), b),
            };
            if better {
                best = Some(w);
            }
        };
        if mask.count_ones() == 2 {
            let mut it = bits(mask);
            let (i, j) = (it.next().unwrap(), it.next().unwrap());
            if q.coeff(i, j) <= -3 {
                offer(IntVector::unit(n, i).with_added_unit(j, 1));
            }
        }
        for i in bits(mask) {
            let Some(cw) = self.critical.get(&(mask ^ (1 << i))) else {
                continue;
            };
            let z = cw.embedded(n);
            let m = -q.pairing_of(z.entries(), i);
            if m >= 2 {
                offer(z.with_added_unit(i, 1));
            } else if m == 1 {
                offer(z.scaled(2).with_added_unit(i, 1));
            }
        }
        best
    }

    pub fn is_weakly_positive(&self) -> bool {
        self.wp[(1usize << self.n) - 1]
    }

    pub fn is_weakly_nonnegative(&self) -> bool {
        self.wnn[(1usize << self.n) - 1]
    }

    pub fn subset_is_weakly_positive(&self, subset: &[usize]) -> bool {
        self.wp[to_mask(subset)]
    }

    pub fn subset_is_weakly_nonnegative(&self, subset: &[usize]) -> bool {
        self.wnn[to_mask(subset)]
    }

    /// Critical restrictions ordered by size, then lexicographically.
    pub fn critical(&self) -> Vec<CriticalWitness> {
        let mut v: Vec<CriticalWitness> = self.critical.values().cloned().collect();
        v.sort_by(|a, b| (a.subset.len(), &a.subset).cmp(&(b.subset.len(), &b.subset)));
        v
    }

    pub fn critical_of(&self, subset: &[usize]) -> Option<&CriticalWitness> {
        self.critical.get(&(to_mask(subset) as u64))
    }

    /// Hypercritical restrictions with a negative witness in `Z^n`, ordered by
    /// size, then lexicographically.
    pub fn hypercritical(&self) -> Vec<(Vec<usize>, IntVector)> {
        let mut v: Vec<(Vec<usize>, IntVector)> = self
            .hypercritical
            .iter()
            .map(|(&m, w)| (bits(m).collect(), w.clone()))
            .collect();
        v.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        v
    }
}

fn to_mask(subset: &[usize]) -> usize {
    subset.iter().fold(0usize, |m, &i| m | 1 << i)
}

fn connected(adj: &[u64], mask: u64) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for i in bits(frontier) {
            next |= adj[i] & mask;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == mask
}

/// Critical vector of `q|J` assuming every proper restriction is weakly positive.
fn critical_vector(q: &UnitForm, mask: u64) -> Result<Option<CriticalWitness>> {
    let (subset, r) = q.restrict_mask(mask);
    let gram = r.gram();
    if !det_vanishes_mod_p(&gram) {
        return Ok(None);
    }
    let d = semidefinite(&gram);
    if !d.nonnegative || d.rank + 1 != subset.len() {
        return Ok(None);
    }
    let mut basis = integral_nullspace(&gram);
    let mut z = basis.pop().expect("corank one");
    if z.iter().any(|&x| x < 0) {
        z.iter_mut().for_each(|x| *x = -*x);
    }
    if z.iter().any(|&x| x <= 0) {
        return Ok(None);
    }
    if !z.contains(&1) {
        return Err(Error::Invariant(format!(
            "critical vector {:?} on {:?} has no coordinate equal to 1",
            z, subset
        )));
    }
    Ok(Some(CriticalWitness {
        subset,
        vector: z.into(),
        radical_rank: 1,
    }))
}

/// Subsets `J` with `q|J` critical.
pub fn critical_restrictions(q: &UnitForm, cfg: &ClassifyConfig) -> Result<Vec<CriticalWitness>> {
    Ok(SubsetScan::new(q, cfg.ceiling)?.critical())
}

/// Subsets `J` with `q|J` hypercritical.
pub fn hypercritical_restrictions(q: &UnitForm, cfg: &ClassifyConfig) -> Result<Vec<Vec<usize>>> {
    Ok(SubsetScan::new(q, cfg.ceiling)?
        .hypercritical()
        .into_iter()
        .map(|(j, _)| j)
        .collect())
}

struct Analysis {
    wp: LevelSearch,
    wnn: Option<LevelSearch>,
    scan: Option<SubsetScan>,
    verdict: Verdict,
    note: Option<String>,
}

fn analyse(q: &UnitForm, cfg: &ClassifyConfig) -> Result<Analysis> {
    let wp = wp_search(q, cfg.wp_bound, cfg.node_cap);
    let scan = if q.n() <= cfg.ceiling {
        Some(SubsetScan::new(q, cfg.ceiling)?)
    } else {
        None
    };
    let mut notes: Vec<String> = Vec::new();

    if wp.witness.is_none() {
        if let Some(s) = &scan {
            if !s.is_weakly_positive() {
                return Err(Error::Invariant(
                    "subset scan found a critical restriction but the root search found no witness".into(),
                ));
            }
        }
        let verdict = if wp.truncated || scan.is_none() {
            if wp.truncated {
                notes.push(format!("root search left the box of bound {}", cfg.wp_bound));
            }
            if scan.is_none() {
                notes.push(format!("subset scan skipped: n = {} exceeds ceiling {}", q.n(), cfg.ceiling));
            }
            Verdict::Inconclusive
        } else {
            Verdict::WeaklyPositive
        };
        return Ok(Analysis {
            wp,
            wnn: None,
            scan,
            verdict,
            note: (!notes.is_empty()).then(|| notes.join("; ")),
        });
    }
    if let Some(s) = &scan {
        if s.is_weakly_positive() {
            return Err(Error::Invariant(
                "root search found a witness but the subset scan found no critical restriction".into(),
            ));
        }
    }

    let wnn = wnn_search(q, cfg.wnn_bound, cfg.node_cap);
    let verdict = if wnn.witness.is_some() {
        if let Some(s) = &scan {
            if s.is_weakly_nonnegative() && q.is_slender() {
                return Err(Error::Invariant(
                    "negative vector found but the subset scan found no hypercritical restriction".into(),
                ));
            }
        }
        Verdict::NotWeaklyNonnegative
    } else if scan.as_ref().is_some_and(|s| !s.is_weakly_nonnegative()) {
        notes.push(format!("negative witness exceeds bound {}", cfg.wnn_bound));
        Verdict::NotWeaklyNonnegative
    } else if !wnn.truncated {
        Verdict::WeaklyNonnegativeNotWp
    } else if wnn.capped {
        notes.push(format!("search stopped after {} vectors", cfg.node_cap));
        Verdict::Inconclusive
    } else if (scan.is_some() && q.is_slender()) || semidefinite(&q.gram()).nonnegative {
        Verdict::WeaklyNonnegativeNotWp
    } else {
        if scan.is_none() {
            notes.push(format!("subset scan skipped: n = {} exceeds ceiling {}", q.n(), cfg.ceiling));
        } else {
            notes.push("form is not slender and not positive semidefinite".into());
        }
        Verdict::Inconclusive
    };
    Ok(Analysis {
        wp,
        wnn: Some(wnn),
        scan,
        verdict,
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

fn report(q: &UnitForm, a: Analysis, prefer_negative: bool) -> ClassificationReport {
    let negative = a.wnn.as_ref().and_then(|s| s.witness.clone()).or_else(|| {
        a.scan
            .as_ref()
            .and_then(|s| s.hypercritical().into_iter().map(|(_, w)| w).min_by_key(|w| (w.total(), w.clone())))
    });
    let witness = match (prefer_negative, a.verdict) {
        (true, Verdict::NotWeaklyNonnegative) => negative,
        _ => a.wp.witness.clone(),
    };
    let witness_value = witness.as_ref().map(|w| q.value_of(w.entries()));
    let (critical, hypercritical) = match &a.scan {
        Some(s) => (s.critical(), s.hypercritical().into_iter().map(|(j, _)| j).collect()),
        None => (Vec::new(), Vec::new()),
    };
    ClassificationReport {
        verdict: a.verdict,
        witness,
        witness_value,
        critical,
        hypercritical,
        note: a.note,
    }
}

/// Classification whose witness, if any, is a positive vector with `q ≤ 0`.
pub fn is_weakly_positive(q: &UnitForm, cfg: &ClassifyConfig) -> Result<ClassificationReport> {
    Ok(report(q, analyse(q, cfg)?, false))
}

/// Classification whose witness is a positive vector with `q < 0` when the
/// form is not weakly non-negative.
pub fn is_weakly_nonnegative(q: &UnitForm, cfg: &ClassifyConfig) -> Result<ClassificationReport> {
    Ok(report(q, analyse(q, cfg)?, true))
}

/// The pair of vectors attached to a slender hypercritical form: `q(v) = −1`
/// and `q(w) = −3`, or `q(v) = −2` and `q(w) = −3` for the all-pairs form on
/// four vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypercriticalWitnesses {
    pub v: IntVector,
    pub w: IntVector,
    pub is_q_m: bool,
}

pub fn hypercritical_witnesses(q: &UnitForm, cfg: &ClassifyConfig) -> Result<HypercriticalWitnesses> {
    if !q.is_slender() {
        return Err(Error::Precondition("form is not slender".into()));
    }
    let n = q.n();
    let scan = SubsetScan::new(q, cfg.ceiling)?;
    let all: Vec<usize> = (0..n).collect();
    if !scan.hypercritical().iter().any(|(j, _)| *j == all) {
        return Err(Error::Precondition("form is not hypercritical".into()));
    }
    if q.is_q_m() {
        return Ok(HypercriticalWitnesses {
            v: vec![1, 1, 1, 1].into(),
            w: vec![2, 2, 1, 1].into(),
            is_q_m: true,
        });
    }
    let without = |k: usize| -> Vec<usize> { (0..n).filter(|&i| i != k).collect() };
    let (mut k, mut z) = (0..n)
        .filter_map(|k| {
            let z = scan.critical_of(&without(k))?.embedded(n);
            (q.pairing_of(z.entries(), k) < 0).then_some((k, z))
        })
        .next()
        .ok_or_else(|| Error::Invariant("no critical restriction with negative pairing".into()))?;

    for _ in 0..4 * n {
        let is_radical = q.value_of(z.entries()) == 0
            && (0..n).filter(|&j| j != k).all(|j| q.pairing_of(z.entries(), j) == 0)
            && z[k] == 0
            && z.is_nonnegative();
        if !is_radical {
            return Err(Error::Invariant(format!("{z} is not a critical vector off index {k}")));
        }
        let m = -q.pairing_of(z.entries(), k);
        let (v, w) = match m {
            1 => (z.scaled(2).with_added_unit(k, 1), z.scaled(4).with_added_unit(k, 1)),
            2 => (z.with_added_unit(k, 1), z.scaled(2).with_added_unit(k, 1)),
            3 => {
                let i = (0..n)
                    .find(|&i| z[i] == 1)
                    .ok_or_else(|| Error::Invariant(format!("{z} has no coordinate 1")))?;
                z = z.with_added_unit(i, -1).with_added_unit(k, 1);
                k = i;
                continue;
            }
            _ => return Err(Error::Invariant(format!("pairing −{m} outside 1..=3"))),
        };
        if q.value_of(v.entries()) != -1 || q.value_of(w.entries()) != -3 {
            return Err(Error::Invariant("witness values differ from −1 and −3".into()));
        }
        return Ok(HypercriticalWitnesses { v, w, is_q_m: false });
    }
    Err(Error::Invariant("witness construction did not terminate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(n: usize, edges: &[(usize, usize, i64)]) -> UnitForm {
        UnitForm::from_edges(n, edges).unwrap()
    }

    fn a3() -> UnitForm {
        form(3, &[(0, 1, -1), (1, 2, -1)])
    }

    fn triangle() -> UnitForm {
        form(3, &[(0, 1, -1), (1, 2, -1), (0, 2, -1)])
    }

    fn q_m() -> UnitForm {
        form(4, &[(0, 1, -1), (0, 2, -1), (0, 3, -1), (1, 2, -1), (1, 3, -1), (2, 3, -1)])
    }

    #[test]
    fn radical() {
        let (nn, basis) = is_nonnegative_with_radical(&triangle());
        assert!(nn);
        assert_eq!(basis, vec![IntVector::from(vec![1, 1, 1])]);
        assert!(!is_nonnegative_with_radical(&q_m()).0);
        let (nn, basis) = is_nonnegative_with_radical(&form(2, &[(0, 1, -1)]));
        assert!(nn && basis.is_empty());
    }

    #[test]
    fn verdicts() {
        let cfg = ClassifyConfig::default();
        let r = is_weakly_positive(&a3(), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::WeaklyPositive);
        assert!(r.witness.is_none());

        let r = is_weakly_positive(&triangle(), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::WeaklyNonnegativeNotWp);
        assert_eq!(r.witness, Some(vec![1, 1, 1].into()));
        assert_eq!(r.witness_value, Some(0));

        let r = is_weakly_nonnegative(&q_m(), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::NotWeaklyNonnegative);
        assert_eq!(r.witness, Some(vec![1, 1, 1, 1].into()));
        assert_eq!(r.witness_value, Some(-2));
        assert_eq!(r.hypercritical, vec![vec![0, 1, 2, 3]]);
        assert_eq!(r.critical.len(), 4);
    }

    #[test]
    fn kronecker_pairs() {
        let cfg = ClassifyConfig::default();
        let k2 = form(2, &[(0, 1, -2)]);
        let r = is_weakly_nonnegative(&k2, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::WeaklyNonnegativeNotWp);
        assert_eq!(r.critical[0].vector, vec![1, 1].into());
        let k3 = form(2, &[(0, 1, -3)]);
        let r = is_weakly_nonnegative(&k3, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::NotWeaklyNonnegative);
        assert!(r.critical.is_empty());
        assert_eq!(r.hypercritical, vec![vec![0, 1]]);
    }

    #[test]
    fn critical_lists() {
        let cfg = ClassifyConfig::default();
        assert!(critical_restrictions(&a3(), &cfg).unwrap().is_empty());
        let c = critical_restrictions(&triangle(), &cfg).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].subset, vec![0, 1, 2]);
        let c = critical_restrictions(&q_m(), &cfg).unwrap();
        assert!(c.iter().all(|w| w.vector == vec![1, 1, 1].into() && w.subset.len() == 3));
        let q5 = form(5, &q_m().edges());
        assert_eq!(hypercritical_restrictions(&q5, &cfg).unwrap(), vec![vec![0, 1, 2, 3]]);
        let big = UnitForm::new(21).unwrap();
        assert!(matches!(critical_restrictions(&big, &cfg), Err(Error::CeilingExceeded { .. })));
    }

    #[test]
    fn witnesses_for_hypercritical_forms() {
        let cfg = ClassifyConfig::default();
        let h = hypercritical_witnesses(&q_m(), &cfg).unwrap();
        assert!(h.is_q_m);
        assert_eq!(h.w, vec![2, 2, 1, 1].into());

        let t1 = form(4, &[(0, 1, -1), (1, 2, -1), (0, 2, -1), (0, 3, -1)]);
        let h = hypercritical_witnesses(&t1, &cfg).unwrap();
        assert!(!h.is_q_m);
        assert_eq!(h.v, vec![2, 2, 2, 1].into());
        assert_eq!(h.w, vec![4, 4, 4, 1].into());

        assert!(matches!(hypercritical_witnesses(&a3(), &cfg), Err(Error::Precondition(_))));
    }

    #[test]
    fn box_search_reference() {
        assert_eq!(box_search(&triangle(), 3, |v| v <= 0), Some(vec![1, 1, 1].into()));
        assert_eq!(box_search(&a3(), 3, |v| v <= 0), None);
    }
}
