use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use titsform::classify::{ClassifyConfig, Verdict};
use titsform::realize::{self, FiniteRep, Indecomposability, RepJson, SearchConfig, SearchMode};
use titsform::report::AnalysisReport;
use titsform::roots::{RootAnalysis, RootAnalyzer};
use titsform::{corpus, fixtures, parse_document, Error, InputDocument, IntVector};

#[derive(Parser)]
#[command(name = "titsform", version, about = "Tits forms of bound quivers")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for exhaustive realization search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Coordinate bound of the weak-positivity search.
    #[arg(long, global = true, default_value_t = 6)]
    wp_bound: i64,
    /// Coordinate bound of the negative-vector search.
    #[arg(long, global = true, default_value_t = 13)]
    wnn_bound: i64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the Tits form and analyse its roots.
    Analyze { file: PathBuf },
    /// List positive roots, or omnipresent roots with their analyses.
    Roots {
        file: PathBuf,
        #[arg(long)]
        omnipresent: bool,
        #[arg(long)]
        maximal_only: bool,
    },
    /// Reflection chain reaching a root below the given one.
    Chain {
        file: PathBuf,
        /// Comma-separated vector or the name of a vector in the file.
        #[arg(long)]
        root: String,
    },
    /// Compare the Tits form of the quotient by a vertex with the restriction.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Search for an indecomposable representation over F_p, or test a given one.
    Realize {
        file: PathBuf,
        /// Comma-separated dimension vector or the name of a vector in the file.
        #[arg(long, required_unless_present = "rep")]
        dim: Option<String>,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON representation to test instead of searching.
        #[arg(long, conflicts_with = "dim")]
        rep: Option<PathBuf>,
    },
    /// List the bundled fixtures or run the fixture corpus.
    Fixtures {
        #[arg(long)]
        run_all: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const UNDECIDED: u8 = 3;

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Undecided(_) | Error::CeilingExceeded { .. } => UNDECIDED,
        Error::NoReflectionChain(_) => NEGATIVE,
        _ => USAGE,
    }
}

fn load(path: &PathBuf) -> Result<InputDocument, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

fn vector_arg(doc: &InputDocument, arg: &str) -> Result<IntVector, Error> {
    match doc.vector(arg) {
        Some(v) => Ok(v.clone()),
        None => IntVector::parse_csv(arg),
    }
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{text}");
    }
}

fn labelled(labels: &[String], idx: &[usize]) -> String {
    idx.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(", ")
}

fn describe(a: &RootAnalysis, labels: &[String]) -> String {
    let mut s = format!("{}", a.root);
    s += if a.maximal {
        " maximal"
    } else if a.locally_maximal {
        " locally maximal, not maximal"
    } else {
        ""
    };
    if let Some(e) = &a.exceptional {
        s += &format!(", case {:?} at {}", e.case, labelled(labels, &e.indices));
    }
    s
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::NotWeaklyNonnegative => NEGATIVE,
        Verdict::Inconclusive => UNDECIDED,
        _ => 0,
    }
}

fn analyze(cli: &Cli, cfg: &ClassifyConfig, file: &PathBuf) -> Result<u8, Error> {
    let doc = load(file)?;
    let r = AnalysisReport::build(&doc, cfg)?;
    let labels = &r.input.labels;
    let c = &r.classification;
    let mut t = format!("vertices: {}\nslender: {}\nverdict: {}\n", labels.join(" "), r.slender, c.verdict);
    if let (Some(w), Some(val)) = (&c.witness, c.witness_value) {
        t += &format!("witness: {w} with q = {val}\n");
    }
    t += &format!("critical restrictions: {}\nhypercritical restrictions: {}\n", c.critical.len(), c.hypercritical.len());
    if let Some(roots) = &r.positive_roots {
        t += &format!("positive roots: {}\n", roots.len());
    }
    if let Some(o) = &r.omnipresent {
        t += &format!("omnipresent roots: {}{}\n", o.roots.len(), if o.complete { "" } else { " (incomplete)" });
    }
    for a in r.maximal_roots() {
        t += &format!("maximal omnipresent root: {}, max coordinate {}\n", describe(a, labels), a.root.max_entry());
    }
    for v in &r.vectors {
        t += &format!("vector {} = {}: q = {}", v.name, v.vector, v.value);
        if let Some(a) = &v.analysis {
            t += &format!(", {}", describe(a, labels).trim_start_matches(&v.vector.to_string()).trim_start());
        }
        t += "\n";
    }
    for n in &r.notes {
        t += &format!("note: {n}\n");
    }
    emit(cli.json, serde_json::to_value(&r).expect("serializable"), t);
    Ok(verdict_code(c.verdict))
}

fn roots(cli: &Cli, cfg: &ClassifyConfig, file: &PathBuf, omnipresent: bool, maximal_only: bool) -> Result<u8, Error> {
    let doc = load(file)?;
    let labels = doc.labels();
    let a = RootAnalyzer::new(doc.form(), *cfg)?;
    let (list, complete) = if omnipresent {
        let o = match a.omnipresent_roots() {
            Err(Error::Precondition(m)) => {
                eprintln!("{m}");
                return Ok(NEGATIVE);
            }
            other => other?,
        };
        (o.roots, o.complete)
    } else {
        match a.positive_roots() {
            Ok(r) => (r, true),
            Err(Error::Precondition(m)) => {
                eprintln!("{m}; positive roots are listed only for weakly positive forms (try --omnipresent)");
                return Ok(if a.verdict() == Verdict::Inconclusive { UNDECIDED } else { NEGATIVE });
            }
            Err(e) => return Err(e),
        }
    };
    let mut analyses = Vec::new();
    for v in &list {
        let r = a.analyze(v)?;
        if !maximal_only || r.maximal {
            analyses.push(r);
        }
    }
    let mut t = String::new();
    for r in &analyses {
        t += &describe(r, &labels);
        t += "\n";
    }
    if !complete {
        t += "note: no listed root is maximal; larger omnipresent roots may exist\n";
    }
    emit(cli.json, json!({ "roots": analyses, "complete": complete }), t);
    Ok(0)
}

fn chain(cli: &Cli, cfg: &ClassifyConfig, file: &PathBuf, root: &str) -> Result<u8, Error> {
    let doc = load(file)?;
    let labels = doc.labels();
    let v = vector_arg(&doc, root)?;
    let a = RootAnalyzer::new(doc.form(), *cfg)?;
    let c = a.reflection_chain(&v)?;
    a.check_chain(&v, &c)?;
    let t = format!(
        "start: {}\nsequence: {}\nroot y: {}\nv - y: {}\n",
        labels[c.start],
        labelled(&labels, &c.sequence),
        c.root,
        IntVector::new(v.entries().iter().zip(c.root.entries()).map(|(a, b)| a - b).collect())
    );
    emit(cli.json, serde_json::to_value(&c).expect("serializable"), t);
    Ok(0)
}

fn quotient(cli: &Cli, file: &PathBuf, vertex: &str) -> Result<u8, Error> {
    let doc = load(file)?;
    let p = doc.presentation().ok_or_else(|| Error::Precondition("quotient needs a quiver presentation".into()))?;
    let a = p.quiver().vertex_index(vertex).ok_or_else(|| Error::UnknownVertex(vertex.into()))?;
    let bar = p.quotient_by_vertex(vertex)?;
    let rest: Vec<usize> = (0..p.n()).filter(|&i| i != a).collect();
    let prime = p.tits_form().restrict(&rest)?;
    let qbar = bar.tits_form();
    let names = bar.quiver().vertices();
    let mut diffs = Vec::new();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if qbar.coeff(i, j) != prime.coeff(i, j) {
                diffs.push(json!({"i": names[i], "j": names[j], "restriction": prime.coeff(i, j), "quotient": qbar.coeff(i, j)}));
            }
        }
    }
    let below = (0..rest.len()).all(|i| (i + 1..rest.len()).all(|j| qbar.coeff(i, j) <= prime.coeff(i, j)));
    let mut t = format!("quotient relations: {}\nquotient form below restriction: {below}\n", bar.relations().len());
    for d in &diffs {
        t += &format!("differs at ({}, {}): restriction {}, quotient {}\n", d["i"].as_str().unwrap(), d["j"].as_str().unwrap(), d["restriction"], d["quotient"]);
    }
    emit(cli.json, json!({"quotient": bar.to_json(), "below_restriction": below, "differences": diffs}), t);
    Ok(0)
}

fn matrices_text(rep: &FiniteRep) -> String {
    let j = rep.to_json();
    j.matrices.iter().map(|(k, m)| format!("  {k}: {m:?}\n")).collect()
}

fn test_rep(cli: &Cli, pres: Arc<titsform::Presentation>, path: &PathBuf) -> Result<u8, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    let j: RepJson = serde_json::from_str(&text).map_err(|e| Error::Precondition(format!("bad representation JSON: {e}")))?;
    let rep = FiniteRep::from_json(pres, &j)?;
    if !rep.check_rep()? {
        emit(cli.json, json!({"relations_hold": false}), "relations do not hold\n".into());
        return Ok(NEGATIVE);
    }
    let (value, t, code) = match realize::is_indecomposable(&rep)? {
        Indecomposability::Indecomposable => (json!({"relations_hold": true, "indecomposable": true}), format!("indecomposable over F_{} (End is local)\n", rep.p()), 0),
        Indecomposability::Decomposable(s) => {
            let phi: Vec<Vec<Vec<u8>>> = s.endomorphism.iter().map(|m| m.to_rows()).collect();
            let t = format!(
                "decomposable: Fitting splitter with image dimensions {:?} and kernel dimensions {:?}\n",
                s.image_dims, s.kernel_dims
            );
            (json!({"relations_hold": true, "indecomposable": false, "fitting_splitter": phi, "image_dims": s.image_dims, "kernel_dims": s.kernel_dims}), t, NEGATIVE)
        }
        Indecomposability::Undecided { end_dim } => (json!({"relations_hold": true, "indecomposable": null, "end_dim": end_dim}), format!("undecided: End has dimension {end_dim}\n"), UNDECIDED),
    };
    emit(cli.json, value, t);
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn realize_cmd(cli: &Cli, file: &PathBuf, dim: Option<&str>, p: u32, mode: Mode, samples: u64, seed: u64, rep: Option<&PathBuf>) -> Result<u8, Error> {
    let doc = load(file)?;
    let pres = Arc::new(doc.presentation().ok_or_else(|| Error::Precondition("realize needs a quiver presentation".into()))?.clone());
    if let Some(path) = rep {
        return test_rep(cli, pres, path);
    }
    let d = vector_arg(&doc, dim.expect("clap requires --dim"))?;
    let mode = match mode {
        Mode::Exhaustive => SearchMode::Exhaustive,
        Mode::Random => SearchMode::Random { samples, seed },
    };
    let out = realize::search_realization(pres, &d, &SearchConfig { p, mode, threads: cli.threads })?;
    let (value, t, code) = match &out.realization {
        Some(r) => (
            json!({"found": true, "representation": r.to_json()}),
            format!("found an indecomposable of dimension {d} over F_{p}:\n{}", matrices_text(r)),
            0,
        ),
        None if out.exhausted => (
            json!({"found": false, "exhausted": true, "examined": out.examined}),
            format!("none over F_{p}: search exhausted ({} candidates examined)\n", out.examined),
            NEGATIVE,
        ),
        None => (
            json!({"found": false, "exhausted": false, "examined": out.examined, "undecided": out.undecided}),
            format!("none found over F_{p}, not exhausted ({} examined, {} undecided)\n", out.examined, out.undecided),
            UNDECIDED,
        ),
    };
    emit(cli.json, value, t);
    Ok(code)
}

fn fixtures_cmd(cli: &Cli, cfg: &ClassifyConfig, run_all: bool) -> u8 {
    if !run_all {
        let names: Vec<&str> = fixtures::FIXTURES.iter().map(|(n, _)| *n).collect();
        emit(cli.json, json!(names), names.iter().map(|n| format!("{n}\n")).collect());
        return 0;
    }
    let results = corpus::run(cfg, cli.threads);
    let value = json!(results
        .iter()
        .map(|r| json!({"name": r.name, "ok": r.outcome.is_ok(), "detail": r.outcome.as_ref().err()}))
        .collect::<Vec<_>>());
    emit(cli.json, value, corpus::tap(&results));
    if results.iter().all(|r| r.outcome.is_ok()) {
        0
    } else {
        NEGATIVE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = ClassifyConfig {
        wp_bound: cli.wp_bound,
        wnn_bound: cli.wnn_bound,
        ..ClassifyConfig::default()
    };
    let result = match &cli.command {
        Command::Analyze { file } => analyze(&cli, &cfg, file),
        Command::Roots { file, omnipresent, maximal_only } => roots(&cli, &cfg, file, *omnipresent, *maximal_only),
        Command::Chain { file, root } => chain(&cli, &cfg, file, root),
        Command::Quotient { file, vertex } => quotient(&cli, file, vertex),
        Command::Realize { file, dim, p, mode, samples, seed, rep } => {
            realize_cmd(&cli, file, dim.as_deref(), *p, *mode, *samples, *seed, rep.as_ref())
        }
        Command::Fixtures { run_all } => Ok(fixtures_cmd(&cli, &cfg, *run_all)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
