//! Line-oriented text format.
//!
//! ```text
//! # comment
//! [quiver]
//! vertex a
//! vertex b
//! vertex c
//! arrow x: a -> b
//! arrow y: b -> c
//! [relations]
//! rel: x.y
//! [vectors]
//! v = 1,1,1
//! ```
//!
//! A `[form]` section (`n = <int>` then `edge <i> <j> <q_ij>` with 1-based
//! indices) may replace `[quiver]`/`[relations]`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Arrow, Presentation, Quiver, Relation};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::unitform::UnitForm;
use crate::vector::IntVector;

/// What an input document describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Presentation(Presentation),
    Form(UnitForm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub source: Source,
    /// Named vectors from an optional `[vectors]` section, in declaration order.
    pub vectors: Vec<(String, IntVector)>,
}

impl InputDocument {
    pub fn form(&self) -> UnitForm {
        match &self.source {
            Source::Presentation(p) => p.tits_form(),
            Source::Form(q) => q.clone(),
        }
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match &self.source {
            Source::Presentation(p) => Some(p),
            Source::Form(_) => None,
        }
    }

    pub fn vector(&self, name: &str) -> Option<&IntVector> {
        self.vectors.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    /// Names of the variables, either vertex ids or `1..=n`.
    pub fn labels(&self) -> Vec<String> {
        match &self.source {
            Source::Presentation(p) => p.quiver().vertices().to_vec(),
            Source::Form(q) => (1..=q.n()).map(|i| i.to_string()).collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    None,
    Quiver,
    Relations,
    Form,
    Vectors,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Column (1-based) of `part` inside `line`, assuming `part` is a subslice of it.
fn col(line: &str, part: &str) -> usize {
    let off = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..off].chars().count() + 1
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    match parse_document(text)?.source {
        Source::Presentation(p) => Ok(p),
        Source::Form(_) => Err(syntax(1, 1, "expected a [quiver] section, found [form]")),
    }
}

pub fn parse_document(text: &str) -> Result<InputDocument> {
    let mut section = Section::None;
    let mut seen_quiver = false;
    let mut seen_form = false;

    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut rel_lines: Vec<(usize, &str, &str)> = Vec::new();
    let mut form_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    let mut vec_lines: Vec<(usize, &str, String, &str)> = Vec::new();

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let body = line.trim();
        if body.is_empty() {
            continue;
        }
        if body.starts_with('[') {
            section = match body {
                "[quiver]" => {
                    if seen_form {
                        return Err(syntax(ln, 1, "[quiver] and [form] are mutually exclusive"));
                    }
                    seen_quiver = true;
                    Section::Quiver
                }
                "[relations]" => {
                    if seen_form {
                        return Err(syntax(ln, 1, "[relations] requires a [quiver] section"));
                    }
                    Section::Relations
                }
                "[form]" => {
                    if seen_quiver {
                        return Err(syntax(ln, 1, "[quiver] and [form] are mutually exclusive"));
                    }
                    seen_form = true;
                    Section::Form
                }
                "[vectors]" => Section::Vectors,
                _ => return Err(syntax(ln, col(raw, body), format!("unknown section `{body}`"))),
            };
            continue;
        }
        match section {
            Section::None => return Err(syntax(ln, col(raw, body), "content before any section header")),
            Section::Quiver => {
                if let Some(rest) = body.strip_prefix("vertex") {
                    let id = rest.trim();
                    if !rest.starts_with(char::is_whitespace) || !is_ident(id) {
                        return Err(syntax(ln, col(raw, body), "expected `vertex <id>`"));
                    }
                    if vertices.iter().any(|v| v == id) {
                        return Err(syntax(ln, col(raw, id), format!("vertex `{id}` declared twice")));
                    }
                    vertices.push(id.to_string());
                } else if let Some(rest) = body.strip_prefix("arrow") {
                    arrows.push(parse_arrow(ln, raw, rest, &vertices, &arrows)?);
                } else {
                    return Err(syntax(ln, col(raw, body), "expected `vertex` or `arrow`"));
                }
            }
            Section::Relations => {
                let Some(rest) = body.strip_prefix("rel") else {
                    return Err(syntax(ln, col(raw, body), "expected `rel: ...`"));
                };
                let Some((name, expr)) = rest.split_once(':') else {
                    return Err(syntax(ln, col(raw, body), "missing `:` after `rel`"));
                };
                let name = name.trim();
                if !name.is_empty() && !is_ident(name) {
                    return Err(syntax(ln, col(raw, name), "bad relation name"));
                }
                rel_lines.push((ln, raw, expr));
            }
            Section::Form => {
                if let Some((k, v)) = body.split_once('=') {
                    if k.trim() != "n" {
                        return Err(syntax(ln, col(raw, body), "expected `n = <int>`"));
                    }
                    if form_n.is_some() {
                        return Err(syntax(ln, col(raw, body), "`n` given twice"));
                    }
                    let v = v.trim();
                    let n: usize = v.parse().map_err(|_| syntax(ln, col(raw, v), "expected a positive integer"))?;
                    if n == 0 {
                        return Err(syntax(ln, col(raw, v), "n must be positive"));
                    }
                    form_n = Some(n);
                } else if let Some(rest) = body.strip_prefix("edge") {
                    let n = form_n.ok_or_else(|| syntax(ln, col(raw, body), "`edge` before `n = ...`"))?;
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks.len() != 3 {
                        return Err(syntax(ln, col(raw, body), "expected `edge <i> <j> <q_ij>`"));
                    }
                    let idx = |t: &str| -> Result<usize> {
                        match t.parse::<usize>() {
                            Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
                            _ => Err(syntax(ln, col(raw, t), format!("index must lie in 1..={n}"))),
                        }
                    };
                    let (i, j) = (idx(toks[0])?, idx(toks[1])?);
                    if i == j {
                        return Err(syntax(ln, col(raw, toks[1]), "edge endpoints must differ"));
                    }
                    let c: i64 = toks[2]
                        .parse()
                        .map_err(|_| syntax(ln, col(raw, toks[2]), "expected an integer coefficient"))?;
                    if edges.iter().any(|&(a, b, _)| (a, b) == (i, j) || (a, b) == (j, i)) {
                        return Err(syntax(ln, col(raw, body), "edge declared twice"));
                    }
                    edges.push((i, j, c));
                } else {
                    return Err(syntax(ln, col(raw, body), "expected `n = ...` or `edge ...`"));
                }
            }
            Section::Vectors => {
                let Some((name, csv)) = body.split_once('=') else {
                    return Err(syntax(ln, col(raw, body), "expected `<name> = <csv>`"));
                };
                let name = name.trim();
                if !is_ident(name) {
                    return Err(syntax(ln, col(raw, body), "bad vector name"));
                }
                if vec_lines.iter().any(|(_, _, k, _)| k == name) {
                    return Err(syntax(ln, col(raw, body), format!("vector `{name}` declared twice")));
                }
                vec_lines.push((ln, raw, name.to_string(), csv.trim()));
            }
        }
    }

    let source = if seen_form {
        let n = form_n.ok_or_else(|| syntax(1, 1, "[form] section lacks `n = ...`"))?;
        Source::Form(UnitForm::from_edges(n, &edges)?)
    } else if seen_quiver {
        let quiver = Quiver::new(vertices, arrows)?;
        let relations = rel_lines
            .into_iter()
            .map(|(ln, raw, expr)| parse_relation(ln, raw, expr, &quiver))
            .collect::<Result<Vec<_>>>()?;
        Source::Presentation(Presentation::new(quiver, relations)?)
    } else {
        return Err(syntax(1, 1, "document needs a [quiver] or [form] section"));
    };

    let n = match &source {
        Source::Presentation(p) => p.n(),
        Source::Form(q) => q.n(),
    };
    let mut vectors = Vec::new();
    for (ln, raw, name, csv) in vec_lines {
        let v = IntVector::parse_csv(csv).map_err(|_| syntax(ln, col(raw, csv), "expected comma-separated integers"))?;
        if v.len() != n {
            return Err(syntax(ln, col(raw, csv), format!("vector has {} entries, expected {n}", v.len())));
        }
        vectors.push((name, v));
    }
    Ok(InputDocument { source, vectors })
}

fn parse_arrow(ln: usize, raw: &str, rest: &str, vertices: &[String], arrows: &[Arrow]) -> Result<Arrow> {
    let bad = || syntax(ln, col(raw, rest), "expected `arrow <label>: <src> -> <tgt>`");
    if !rest.starts_with(char::is_whitespace) {
        return Err(bad());
    }
    let (label, ends) = rest.split_once(':').ok_or_else(bad)?;
    let (s, t) = ends.split_once("->").ok_or_else(bad)?;
    let (label, s, t) = (label.trim(), s.trim(), t.trim());
    for part in [label, s, t] {
        if !is_ident(part) {
            return Err(syntax(ln, col(raw, if part.is_empty() { rest } else { part }), "bad identifier"));
        }
    }
    if arrows.iter().any(|a| a.label == label) {
        return Err(syntax(ln, col(raw, label), format!("arrow label `{label}` used twice")));
    }
    let lookup = |id: &str| {
        vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    };
    Ok(Arrow {
        label: label.to_string(),
        source: lookup(s)?,
        target: lookup(t)?,
    })
}

fn parse_rational(ln: usize, raw: &str, s: &str) -> Result<Rational> {
    let bad = || syntax(ln, col(raw, s), format!("bad coefficient `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn parse_relation(ln: usize, raw: &str, expr: &str, quiver: &Quiver) -> Result<Relation> {
    // Split into signed terms at top-level `+`/`-`.
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut negative = false;
    let mut start: Option<usize> = None;
    for (k, ch) in expr.char_indices() {
        if ch == '+' || ch == '-' {
            if let Some(s) = start.take() {
                terms.push((negative, &expr[s..k]));
            } else if !expr[..k].trim().is_empty() && terms.is_empty() {
                return Err(syntax(ln, col(raw, &expr[k..]), "dangling sign"));
            }
            negative = ch == '-';
        } else if !ch.is_whitespace() && start.is_none() {
            start = Some(k);
        }
    }
    match start {
        Some(s) => terms.push((negative, &expr[s..])),
        None => return Err(syntax(ln, col(raw, expr.trim_end()) + expr.trim_end().len(), "missing term")),
    }

    let mut out = Vec::new();
    for (neg, term) in terms {
        let term = term.trim();
        let (coef, path) = match term.split_once('*') {
            Some((c, p)) => (parse_rational(ln, raw, c.trim())?, p.trim()),
            None => (Rational::one(), term),
        };
        let coef = if neg { -coef } else { coef };
        let mut arrows = Vec::new();
        for label in path.split('.') {
            let label = label.trim();
            if !is_ident(label) {
                return Err(syntax(ln, col(raw, path), format!("bad path `{path}`")));
            }
            arrows.push(quiver.arrow_index(label).ok_or_else(|| Error::UnknownArrow(label.to_string()))?);
        }
        for w in arrows.windows(2) {
            if quiver.arrows()[w[0]].target != quiver.arrows()[w[1]].source {
                return Err(Error::NotComposable(path.to_string()));
            }
        }
        out.push((coef, arrows));
    }
    let first = &out[0].1;
    Ok(Relation {
        source: quiver.path_source(first),
        target: quiver.path_target(first),
        terms: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let p = parse_presentation("[quiver]\nvertex a\n").unwrap();
        assert_eq!(p.n(), 1);
        assert!(p.relations().is_empty());
    }

    #[test]
    fn non_composable_path() {
        let text = "[quiver]\nvertex a\nvertex b\nvertex c\narrow alpha: a -> b\narrow beta: b -> c\n[relations]\nrel: beta.alpha\n";
        assert!(matches!(parse_presentation(text), Err(Error::NotComposable(_))));
    }

    #[test]
    fn unknown_arrow_and_cycle() {
        let text = "[quiver]\nvertex a\nvertex b\narrow x: a -> b\n[relations]\nrel: x.y\n";
        assert_eq!(parse_presentation(text), Err(Error::UnknownArrow("y".into())));
        let cyc = "[quiver]\nvertex a\nvertex b\narrow x: a -> b\narrow y: b -> a\n";
        assert!(matches!(parse_presentation(cyc), Err(Error::Cycle(_))));
        let lp = "[quiver]\nvertex a\narrow x: a -> a\n";
        assert!(matches!(parse_presentation(lp), Err(Error::Cycle(_))));
    }

    #[test]
    fn syntax_positions() {
        let err = parse_presentation("[quiver]\nvertex a\n  bogus line\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 3,
                column: 3,
                message: "expected `vertex` or `arrow`".into()
            }
        );
        let err = parse_document("[form]\nn = 3\nedge 1 4 -1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, column: 8, .. }));
    }

    #[test]
    fn coefficients() {
        let text = "[quiver]
vertex a
vertex b
vertex c
vertex d
arrow x: a -> b
arrow y: b -> d
arrow z: a -> c
arrow w: c -> d
[relations]
rel: 2/3*x.y - 1/3 * z.w
";
        let p = parse_presentation(text).unwrap();
        let r = &p.relations()[0];
        assert_eq!(r.terms[0].0, Rational::new(2.into(), 3.into()));
        assert_eq!(r.terms[1].0, Rational::new((-1).into(), 3.into()));
        assert_eq!((r.source, r.target), (0, 3));
    }

    #[test]
    fn dependent_block() {
        let text = "[quiver]
vertex a
vertex b
vertex c
vertex d
arrow x: a -> b
arrow y: b -> d
arrow z: a -> c
arrow w: c -> d
[relations]
rel: x.y - z.w
rel: -2*x.y + 2*z.w
";
        assert!(matches!(parse_presentation(text), Err(Error::DependentRelations { .. })));
    }

    #[test]
    fn form_and_vectors() {
        let doc = parse_document("[form]\nn = 2\nedge 1 2 -2\n[vectors]\nz = 1,1\n").unwrap();
        let q = doc.form();
        assert_eq!(q.coeff(0, 1), -2);
        assert_eq!(doc.vector("z").unwrap().entries(), &[1, 1]);
        assert!(parse_document("[form]\nn = 2\nedge 1 2 -1\nedge 2 1 -1\n").is_err());
        assert!(parse_document("[form]\nn = 2\n[quiver]\nvertex a\n").is_err());
        assert!(parse_document("[form]\nn = 2\n[vectors]\nz = 1,1,1\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let doc = parse_document("# header\n\n[quiver]  \nvertex a # first\nvertex b\narrow x: a -> b\n").unwrap();
        assert_eq!(doc.labels(), vec!["a".to_string(), "b".to_string()]);
    }
}
