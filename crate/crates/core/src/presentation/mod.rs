//! Bound-quiver presentations `A = kQ/I` given by a triangular quiver and a
//! list of relations, together with the Tits form and the Euler bilinear form
//! they determine.

mod parse;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{independent_rows, Rational};
use crate::unitform::UnitForm;
use crate::vector::IntVector;

pub use parse::{parse_document, parse_presentation, InputDocument, Source};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Validates labels, loops and acyclicity.
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("vertex `{v}` declared twice")));
            }
        }
        for (k, a) in arrows.iter().enumerate() {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!("arrow `{}` has an unknown endpoint", a.label)));
            }
            if a.source == a.target {
                return Err(Error::Cycle(vertices[a.source].clone()));
            }
            if arrows[..k].iter().any(|b| b.label == a.label) {
                return Err(Error::InvalidQuiver(format!("arrow label `{}` used twice", a.label)));
            }
        }
        let q = Quiver { vertices, arrows };
        if let Some(v) = q.find_cycle() {
            return Err(Error::Cycle(q.vertices[v].clone()));
        }
        Ok(q)
    }

    fn find_cycle(&self) -> Option<usize> {
        // Kahn's algorithm; any vertex left over lies on or behind a cycle.
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        if seen == n {
            None
        } else {
            (0..n).find(|&i| indeg[i] > 0)
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// True iff two arrows share the same (source, target) pair.
    pub fn has_double_arrows(&self) -> bool {
        self.arrows.iter().enumerate().any(|(k, a)| {
            self.arrows[..k]
                .iter()
                .any(|b| b.source == a.source && b.target == a.target)
        })
    }

    /// Number of arrows `i → j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == i && a.target == j).count()
    }

    pub fn path_source(&self, path: &[usize]) -> usize {
        self.arrows[path[0]].source
    }

    pub fn path_target(&self, path: &[usize]) -> usize {
        self.arrows[*path.last().expect("nonempty path")].target
    }

    /// Vertices visited by a path, endpoints included.
    pub fn path_vertices(&self, path: &[usize]) -> Vec<usize> {
        let mut out = vec![self.arrows[path[0]].source];
        out.extend(path.iter().map(|&a| self.arrows[a].target));
        out
    }

    pub fn path_label(&self, path: &[usize]) -> String {
        path.iter()
            .map(|&a| self.arrows[a].label.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// A linear combination of parallel paths of length at least two.
/// Paths are lists of arrow indices, traversed first to last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(Rational, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<Relation>,
}

impl Presentation {
    /// Validates every relation and the per-block linear independence of the relation list.
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        let relations = relations
            .into_iter()
            .map(|r| normalize_relation(&quiver, r))
            .collect::<Result<Vec<_>>>()?;
        let p = Presentation { quiver, relations };
        for ((s, t), idx) in p.blocks() {
            if p.independent_in_block(&idx).len() != idx.len() {
                return Err(Error::DependentRelations {
                    source_vertex: p.quiver.vertices[s].clone(),
                    target_vertex: p.quiver.vertices[t].clone(),
                });
            }
        }
        Ok(p)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    /// Relation indices grouped by (source, target), in declaration order.
    fn blocks(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut m: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, r) in self.relations.iter().enumerate() {
            m.entry((r.source, r.target)).or_default().push(k);
        }
        m
    }

    /// Earliest-wins maximal independent subset of the given relations (same block).
    fn independent_in_block(&self, idx: &[usize]) -> Vec<usize> {
        let mut paths: Vec<&Vec<usize>> = Vec::new();
        for &k in idx {
            for (_, p) in &self.relations[k].terms {
                if !paths.contains(&p) {
                    paths.push(p);
                }
            }
        }
        let rows: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&k| {
                paths
                    .iter()
                    .map(|p| {
                        self.relations[k]
                            .terms
                            .iter()
                            .find(|(_, q)| q == *p)
                            .map(|(c, _)| c.clone())
                            .unwrap_or_else(Rational::zero)
                    })
                    .collect()
            })
            .collect();
        independent_rows(&rows).into_iter().map(|r| idx[r]).collect()
    }

    /// `r(i, j)`: number of relations from `i` to `j`.
    pub fn relation_count(&self, i: usize, j: usize) -> usize {
        self.relations.iter().filter(|r| r.source == i && r.target == j).count()
    }

    /// The Tits form: `q_ij = −#(i→j) − #(j→i) + r(i,j) + r(j,i)`.
    pub fn tits_form(&self) -> UnitForm {
        let n = self.n();
        let mut q = UnitForm::new(n).expect("quiver has vertices");
        for i in 0..n {
            for j in i + 1..n {
                let c = -(self.quiver.arrow_count(i, j) as i64) - self.quiver.arrow_count(j, i) as i64
                    + self.relation_count(i, j) as i64
                    + self.relation_count(j, i) as i64;
                if c != 0 {
                    q.set(i, j, c).expect("indices in range");
                }
            }
        }
        q
    }

    /// The non-symmetric Euler form
    /// `⟨v,w⟩ = Σ v(i)w(i) − Σ_{i→j} v(i)w(j) + Σ r(i,j) v(i)w(j)`.
    pub fn euler_bilinear(&self, v: &IntVector, w: &IntVector) -> Result<i64> {
        let n = self.n();
        for x in [v, w] {
            if x.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: x.len() });
            }
        }
        let mut acc: i64 = 0;
        let mut add = |t: Option<i64>| -> Result<()> {
            acc = acc.checked_add(t.ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            Ok(())
        };
        for i in 0..n {
            add(v[i].checked_mul(w[i]))?;
        }
        for a in self.quiver.arrows() {
            add(v[a.source].checked_mul(w[a.target]).map(|x| -x))?;
        }
        for r in &self.relations {
            add(v[r.source].checked_mul(w[r.target]))?;
        }
        Ok(acc)
    }

    /// Presentation of `A / A e_a A`: the vertex and its arrows are removed, terms
    /// through `a` are deleted, and each (i, j) block is re-reduced to an
    /// independent set keeping the earliest relations.
    pub fn quotient_by_vertex(&self, a: &str) -> Result<Presentation> {
        let q = &self.quiver;
        let av = q.vertex_index(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
        if q.n() == 1 {
            return Err(Error::Precondition("cannot remove the only vertex".into()));
        }
        let vmap: Vec<Option<usize>> = (0..q.n())
            .map(|i| match i.cmp(&av) {
                std::cmp::Ordering::Less => Some(i),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(i - 1),
            })
            .collect();
        let mut amap = vec![None; q.arrows.len()];
        let mut arrows = Vec::new();
        for (k, arr) in q.arrows.iter().enumerate() {
            if let (Some(s), Some(t)) = (vmap[arr.source], vmap[arr.target]) {
                amap[k] = Some(arrows.len());
                arrows.push(Arrow {
                    label: arr.label.clone(),
                    source: s,
                    target: t,
                });
            }
        }
        let vertices: Vec<String> = q
            .vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != av)
            .map(|(_, v)| v.clone())
            .collect();
        let quiver = Quiver::new(vertices, arrows)?;

        let mut truncated = Vec::new();
        for r in &self.relations {
            let (Some(s), Some(t)) = (vmap[r.source], vmap[r.target]) else {
                continue;
            };
            let terms: Vec<(Rational, Vec<usize>)> = r
                .terms
                .iter()
                .filter(|(_, p)| !q.path_vertices(p).contains(&av))
                .map(|(c, p)| (c.clone(), p.iter().map(|&x| amap[x].expect("arrow kept")).collect()))
                .collect();
            if !terms.is_empty() {
                truncated.push(Relation { source: s, target: t, terms });
            }
        }
        let draft = Presentation {
            quiver,
            relations: truncated,
        };
        let mut keep: Vec<usize> = draft
            .blocks()
            .values()
            .flat_map(|idx| draft.independent_in_block(idx))
            .collect();
        keep.sort_unstable();
        let relations = keep.into_iter().map(|k| draft.relations[k].clone()).collect();
        Presentation::new(draft.quiver, relations)
    }

    pub fn to_json(&self) -> PresentationJson {
        let q = &self.quiver;
        PresentationJson {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    label: a.label.clone(),
                    source: q.vertices[a.source].clone(),
                    target: q.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationJson {
                    source: q.vertices[r.source].clone(),
                    target: q.vertices[r.target].clone(),
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, p)| TermJson {
                            coefficient: c.to_string(),
                            path: p.iter().map(|&a| q.arrows[a].label.clone()).collect(),
                        })
                        .collect(),
                })
                .collect(),
            tits_matrix: self.tits_form().gram(),
        }
    }
}

fn normalize_relation(q: &Quiver, r: Relation) -> Result<Relation> {
    let mut terms: Vec<(Rational, Vec<usize>)> = Vec::new();
    for (c, p) in r.terms {
        if p.len() < 2 {
            return Err(Error::InvalidRelation(format!(
                "path `{}` has length {} (at least 2 required)",
                if p.is_empty() { String::new() } else { q.path_label(&p) },
                p.len()
            )));
        }
        if p.iter().any(|&a| a >= q.arrows.len()) {
            return Err(Error::InvalidRelation("arrow index out of range".into()));
        }
        for w in p.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::NotComposable(q.path_label(&p)));
            }
        }
        if q.path_source(&p) != r.source || q.path_target(&p) != r.target {
            return Err(Error::InvalidRelation(format!(
                "path `{}` does not run from `{}` to `{}`",
                q.path_label(&p),
                q.vertices[r.source],
                q.vertices[r.target]
            )));
        }
        match terms.iter_mut().find(|(_, x)| *x == p) {
            Some(t) => t.0 += c,
            None => terms.push((c, p)),
        }
    }
    terms.retain(|(c, _)| !c.is_zero());
    if terms.is_empty() {
        return Err(Error::InvalidRelation("all coefficients vanish".into()));
    }
    // Scale so the first coefficient is positive; keeps output stable.
    if terms[0].0.is_negative() {
        for t in terms.iter_mut() {
            t.0 = -t.0.clone();
        }
    }
    Ok(Relation {
        source: r.source,
        target: r.target,
        terms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub source: String,
    pub target: String,
    pub terms: Vec<TermJson>,
}

/// `{vertices, arrows, relations, tits_matrix}`; the matrix is the symmetric
/// Gram matrix of the Tits form (diagonal 2) in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub relations: Vec<RelationJson>,
    pub tits_matrix: Vec<Vec<i64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    const B10: &str = "[quiver]
vertex u
vertex x
vertex m
vertex s
vertex t
vertex p
vertex r
arrow e1: u -> m
arrow e2: m -> x
arrow beta1: m -> t
arrow alpha1: s -> m
arrow alpha2: s -> p
arrow gamma: p -> r
arrow beta2: r -> t
[relations]
rel: alpha1.beta1
";

    const B11: &str = "[quiver]
vertex u
vertex x
vertex m
vertex s
vertex t
vertex p
vertex r
arrow e1: u -> m
arrow e2: m -> x
arrow beta1: m -> t
arrow alpha1: s -> m
arrow alpha2: s -> p
arrow gamma: p -> r
arrow beta2: r -> t
[relations]
rel: alpha1.beta1 + alpha2.gamma.beta2
";

    #[test]
    fn single_arrow() {
        let p = pres("[quiver]\nvertex a\nvertex b\narrow x: a -> b\n");
        let q = p.tits_form();
        assert_eq!(q.coeff(0, 1), -1);
        let ea = IntVector::unit(2, 0);
        let eb = IntVector::unit(2, 1);
        assert_eq!(p.euler_bilinear(&ea, &ea).unwrap(), 1);
        assert_eq!(p.euler_bilinear(&ea, &eb).unwrap(), -1);
        assert_eq!(p.euler_bilinear(&eb, &ea).unwrap(), 0);
        assert!(p.euler_bilinear(&ea, &IntVector::zero(3)).is_err());
    }

    #[test]
    fn zero_relation_counts() {
        let p = pres(B10);
        let s = p.quiver().vertex_index("s").unwrap();
        let t = p.quiver().vertex_index("t").unwrap();
        assert_eq!(p.relation_count(s, t), 1);
        assert_eq!(p.tits_form().coeff(s, t), 1);
    }

    #[test]
    fn euler_form_symmetrizes_to_tits_form() {
        let p = pres(B11);
        let q = p.tits_form();
        let vs: Vec<IntVector> = vec![
            vec![1, 0, 2, 1, 3, 0, 1].into(),
            vec![0, 1, 1, 1, 1, 1, 1].into(),
            vec![2, 2, 0, 1, 0, 5, 1].into(),
        ];
        for v in &vs {
            assert_eq!(p.euler_bilinear(v, v).unwrap(), q.evaluate(v).unwrap());
            for w in &vs {
                let sym = p.euler_bilinear(v, w).unwrap() + p.euler_bilinear(w, v).unwrap();
                assert_eq!(sym, q.bilinear(v, w).unwrap());
            }
        }
    }

    #[test]
    fn quotient_breaks_path() {
        let p = pres("[quiver]\nvertex a\nvertex b\nvertex c\narrow x: a -> b\narrow y: b -> c\n");
        let r = p.quotient_by_vertex("b").unwrap();
        assert_eq!(r.quiver().vertices(), &["a".to_string(), "c".to_string()]);
        assert!(r.quiver().arrows().is_empty());
        assert!(p.quotient_by_vertex("zz").is_err());
    }

    #[test]
    fn quotient_of_zero_relation_drops_it() {
        let p = pres(B10);
        let m = p.quiver().vertex_index("m").unwrap();
        let bar = p.quotient_by_vertex("m").unwrap();
        assert!(bar.relations().is_empty());
        let rest: Vec<usize> = (0..7).filter(|&i| i != m).collect();
        let restricted = p.tits_form().restrict(&rest).unwrap();
        let qbar = bar.tits_form();
        let (s, t) = (
            bar.quiver().vertex_index("s").unwrap(),
            bar.quiver().vertex_index("t").unwrap(),
        );
        assert_eq!(qbar.coeff(s, t), 0);
        assert_eq!(restricted.coeff(s, t), 1);
    }

    #[test]
    fn quotient_of_commutativity_truncates() {
        let p = pres(B11);
        let bar = p.quotient_by_vertex("m").unwrap();
        assert_eq!(bar.relations().len(), 1);
        assert_eq!(bar.relations()[0].terms.len(), 1);
        let m = p.quiver().vertex_index("m").unwrap();
        let rest: Vec<usize> = (0..7).filter(|&i| i != m).collect();
        assert_eq!(bar.tits_form(), p.tits_form().restrict(&rest).unwrap());
    }

    #[test]
    fn quotient_reduces_dependent_truncations() {
        // Two relations a->d which become proportional once paths through b vanish.
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
rel: x.y + z.w
rel: x.y + 2*z.w
";
        let p = pres(text);
        assert_eq!(p.relation_count(0, 3), 2);
        let bar = p.quotient_by_vertex("b").unwrap();
        assert_eq!(bar.relations().len(), 1);
        assert_eq!(bar.relations()[0].terms[0].0, crate::linalg::rat(1));
    }

    #[test]
    fn double_arrows() {
        let p = pres("[quiver]\nvertex a\nvertex b\narrow x: a -> b\narrow y: a -> b\n");
        assert!(p.quiver().has_double_arrows());
        assert_eq!(p.tits_form().coeff(0, 1), -2);
        assert!(!pres(B10).quiver().has_double_arrows());
    }

    #[test]
    fn json_shape() {
        let p = pres(B10);
        let j = serde_json::to_value(p.to_json()).unwrap();
        assert_eq!(j["vertices"].as_array().unwrap().len(), 7);
        assert_eq!(j["relations"][0]["terms"][0]["path"][0], "alpha1");
        assert_eq!(j["tits_matrix"][3][4], 1);
        assert_eq!(j["tits_matrix"][0][0], 2);
    }
}
