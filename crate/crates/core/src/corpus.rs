//! Expected outcomes for the bundled fixtures, run as a pass/fail stream.

use std::sync::Arc;

use crate::classify::{self, ClassifyConfig, Verdict};
use crate::fixtures;
use crate::presentation::InputDocument;
use crate::realize::{self, SearchConfig};
use crate::report::AnalysisReport;
use crate::roots::{Case, RootAnalyzer};
use crate::vector::IntVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub outcome: Result<(), String>,
}

type Outcome = Result<(), String>;

const VERDICTS: &[(&str, Verdict)] = &[
    ("a3.form", Verdict::WeaklyPositive),
    ("a_tilde_2.form", Verdict::WeaklyNonnegativeNotWp),
    ("b01.quiver", Verdict::WeaklyNonnegativeNotWp),
    ("b10.quiver", Verdict::WeaklyNonnegativeNotWp),
    ("b11.quiver", Verdict::WeaklyNonnegativeNotWp),
    ("commutative_eleven.quiver", Verdict::NotWeaklyNonnegative),
    ("exceptional_pair.quiver", Verdict::WeaklyNonnegativeNotWp),
    ("kronecker2.form", Verdict::WeaklyNonnegativeNotWp),
    ("kronecker3.form", Verdict::NotWeaklyNonnegative),
    ("locally_maximal.quiver", Verdict::WeaklyNonnegativeNotWp),
    ("maximal_twelve.form", Verdict::WeaklyNonnegativeNotWp),
    ("pairing_two.form", Verdict::NotWeaklyNonnegative),
    ("q_m.quiver", Verdict::NotWeaklyNonnegative),
    ("single_exceptional.quiver", Verdict::WeaklyNonnegativeNotWp),
    ("two_exceptional_chain.form", Verdict::WeaklyNonnegativeNotWp),
    ("two_exceptional_crown.form", Verdict::WeaklyNonnegativeNotWp),
    ("two_maximal.form", Verdict::WeaklyPositive),
];

/// Maximal roots and their exceptional data: fixture, vector name, case, indices.
const MAXIMAL: &[(&str, &str, Case, &[usize])] = &[
    ("a3.form", "v", Case::II, &[0, 2]),
    ("exceptional_pair.quiver", "v", Case::II, &[8, 12]),
    ("maximal_twelve.form", "v", Case::II, &[0, 1]),
    ("single_exceptional.quiver", "v", Case::I, &[9]),
    ("two_exceptional_chain.form", "v", Case::II, &[4, 5]),
    ("two_exceptional_crown.form", "v", Case::II, &[0, 1]),
    ("two_maximal.form", "v1", Case::I, &[4]),
    ("two_maximal.form", "v2", Case::I, &[0]),
];

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn doc(name: &str) -> Result<InputDocument, String> {
    fixtures::load(name).map_err(err)
}

fn named(d: &InputDocument, name: &str) -> Result<IntVector, String> {
    d.vector(name).cloned().ok_or_else(|| format!("no vector `{name}`"))
}

fn analyzer(d: &InputDocument, cfg: &ClassifyConfig) -> Result<RootAnalyzer, String> {
    RootAnalyzer::new(d.form(), *cfg).map_err(err)
}

fn check_verdict(name: &str, expected: Verdict, cfg: &ClassifyConfig) -> Outcome {
    let d = doc(name)?;
    let r = AnalysisReport::build(&d, cfg).map_err(err)?;
    ensure(r.classification.verdict == expected, || {
        format!("verdict {} instead of {expected}", r.classification.verdict)
    })?;
    let text = serde_json::to_string(&r).map_err(err)?;
    let back: AnalysisReport = serde_json::from_str(&text).map_err(err)?;
    ensure(back == r, || "JSON round trip changed the report".into())?;
    back.verify(cfg).map_err(err)
}

fn check_maximal(name: &str, vec: &str, case: Case, indices: &[usize], cfg: &ClassifyConfig) -> Outcome {
    let d = doc(name)?;
    let a = analyzer(&d, cfg)?;
    let v = named(&d, vec)?;
    let r = a.analyze(&v).map_err(err)?;
    ensure(r.maximal, || format!("{v} is not maximal"))?;
    let e = r.exceptional.ok_or("no exceptional data")?;
    ensure(e.case == case && e.indices == indices, || {
        format!("case {:?} at {:?}", e.case, e.indices)
    })
}

fn check_twelve(cfg: &ClassifyConfig) -> Outcome {
    let d = doc("maximal_twelve.form")?;
    let r = AnalysisReport::build(&d, cfg).map_err(err)?;
    let found = r.maximal_roots().any(|a| a.root.max_entry() == 12);
    ensure(found, || "no listed maximal omnipresent root has a coordinate 12".into())
}

fn check_locally_maximal(cfg: &ClassifyConfig) -> Outcome {
    let d = doc("locally_maximal.quiver")?;
    let a = analyzer(&d, cfg)?;
    let (v, u) = (named(&d, "v")?, named(&d, "u")?);
    ensure(a.is_locally_maximal(&v).map_err(err)?, || "v is not locally maximal".into())?;
    ensure(!a.is_maximal(&v).map_err(err)?, || "v is maximal".into())?;
    ensure(a.form().is_root(&u) && v.le(&u) && u != v, || "u is not a root above v".into())
}

fn check_pairing_two(cfg: &ClassifyConfig) -> Outcome {
    let d = doc("pairing_two.form")?;
    let a = analyzer(&d, cfg)?;
    let v = named(&d, "v")?;
    ensure(a.is_locally_maximal(&v).map_err(err)?, || "v is not locally maximal".into())?;
    let e = a.exceptional(&v).map_err(err)?;
    ensure(e.case == Case::III && v[e.indices[0]] == 1, || format!("case {:?}", e.case))?;
    let j = e.indices[0];
    let rest: Vec<usize> = (0..v.len()).filter(|&i| i != j).collect();
    let r = a.form().restrict(&rest).map_err(err)?;
    let verdict = classify::is_weakly_positive(&r, cfg).map_err(err)?.verdict;
    ensure(verdict != Verdict::WeaklyPositive, || "restriction omitting j is weakly positive".into())
}

fn check_q_m(cfg: &ClassifyConfig) -> Outcome {
    let d = doc("q_m.quiver")?;
    let q = d.form();
    let h = classify::hypercritical_witnesses(&q, cfg).map_err(err)?;
    ensure(h.is_q_m, || "not recognised as q_M".into())?;
    let (v, w) = (named(&d, "v")?, named(&d, "w")?);
    ensure(q.evaluate(&v) == Ok(-2) && q.evaluate(&w) == Ok(-3), || "q(v), q(w) differ from -2, -3".into())
}

fn check_eleven_value() -> Outcome {
    let d = doc("commutative_eleven.quiver")?;
    let v = named(&d, "v")?;
    ensure(d.form().evaluate(&v) == Ok(1), || "q(v) differs from 1".into())
}

fn check_quotient() -> Outcome {
    let d = doc("b10.quiver")?;
    let p = d.presentation().ok_or("not a presentation")?;
    let m = p.quiver().vertex_index("m").ok_or("no vertex m")?;
    let bar = p.quotient_by_vertex("m").map_err(err)?.tits_form();
    let rest: Vec<usize> = (0..p.n()).filter(|&i| i != m).collect();
    let prime = p.tits_form().restrict(&rest).map_err(err)?;
    let labels: Vec<&str> = rest.iter().map(|&i| p.quiver().vertices()[i].as_str()).collect();
    let mut diff = Vec::new();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if bar.coeff(i, j) > prime.coeff(i, j) {
                return Err(format!("quotient exceeds restriction at ({}, {})", labels[i], labels[j]));
            }
            if bar.coeff(i, j) != prime.coeff(i, j) {
                diff.push((labels[i], labels[j]));
            }
        }
    }
    ensure(diff == [("s", "t")], || format!("differences at {diff:?}"))
}

fn rep_setting(name: &str, vec: Option<&str>) -> Result<(Arc<crate::presentation::Presentation>, IntVector), String> {
    let d = doc(name)?;
    let p = Arc::new(d.presentation().ok_or("not a presentation")?.clone());
    let v = match vec {
        Some(n) => named(&d, n)?,
        None => IntVector::new(vec![1; p.n()]),
    };
    Ok((p, v))
}

fn check_eleven_realization(threads: usize) -> Outcome {
    let (p, v) = rep_setting("commutative_eleven.quiver", Some("v"))?;
    let cfg = SearchConfig { threads, ..Default::default() };
    let out = realize::search_realization(p, &v, &cfg).map_err(err)?;
    ensure(out.realization.is_none() && out.exhausted, || "search over F_2 was not an exhausted none".into())
}

fn check_b11_realization(threads: usize) -> Outcome {
    let (p, v) = rep_setting("b11.quiver", None)?;
    let cfg = SearchConfig { threads, ..Default::default() };
    let out = realize::search_realization(p, &v, &cfg).map_err(err)?;
    let rep = out.realization.ok_or("no realization of the all-ones vector")?;
    ensure(rep.matrices().iter().all(|m| m.data() == [1]), || "least realization is not all ones".into())
}

fn check_b01_family() -> Outcome {
    let (p, y) = rep_setting("b01.quiver", Some("y"))?;
    let reps = realize::search_all(p, &y, 2, 8).map_err(err)?;
    ensure(reps.len() >= 2, || format!("{} isomorphism classes", reps.len()))
}

/// Runs every corpus check in a fixed order.
pub fn run(cfg: &ClassifyConfig, threads: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut push = |name: String, outcome: Outcome| out.push(CheckResult { name, outcome });
    for &(name, verdict) in VERDICTS {
        push(format!("{name}: verdict {verdict}, report re-verifies"), check_verdict(name, verdict, cfg));
    }
    for &(name, vec, case, indices) in MAXIMAL {
        push(
            format!("{name}: {vec} maximal, case {case:?} at {indices:?}"),
            check_maximal(name, vec, case, indices, cfg),
        );
    }
    push("maximal_twelve.form: maximal root with coordinate 12".into(), check_twelve(cfg));
    push("locally_maximal.quiver: v locally maximal, u ≥ v root".into(), check_locally_maximal(cfg));
    push("pairing_two.form: case III, restriction off j not WP".into(), check_pairing_two(cfg));
    push("q_m.quiver: hypercritical witnesses of q_M".into(), check_q_m(cfg));
    push("commutative_eleven.quiver: q(v) = 1".into(), check_eleven_value());
    push("b10.quiver: quotient by m lowers only (s, t)".into(), check_quotient());
    push("b11.quiver: all-ones realization over F_2".into(), check_b11_realization(threads));
    push("b01.quiver: two non-isomorphic realizations of y over F_2".into(), check_b01_family());
    push(
        "commutative_eleven.quiver: no indecomposable of dimension v over F_2".into(),
        check_eleven_realization(threads),
    );
    out
}

/// TAP text for a list of results.
pub fn tap(results: &[CheckResult]) -> String {
    let mut s = format!("1..{}\n", results.len());
    for (i, r) in results.iter().enumerate() {
        match &r.outcome {
            Ok(()) => s.push_str(&format!("ok {} - {}\n", i + 1, r.name)),
            Err(e) => s.push_str(&format!("not ok {} - {}\n  # {}\n", i + 1, r.name, e)),
        }
    }
    s
}
