//! Reports that tie a parsed input to the outputs of the classification and
//! root modules. Every numeric field comes from a module call, and
//! [`AnalysisReport::verify`] recomputes each one from the echoed Gram matrix.

use serde::{Deserialize, Serialize};

use crate::classify::{self, ClassificationReport, ClassifyConfig, Verdict};
use crate::error::{Error, Result};
use crate::presentation::{InputDocument, PresentationJson, Source};
use crate::roots::{OmnipresentRoots, RootAnalysis, RootAnalyzer};
use crate::unitform::UnitForm;
use crate::vector::IntVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Presentation,
    Form,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub kind: InputKind,
    pub labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub presentation: Option<PresentationJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedVector {
    pub name: String,
    pub vector: IntVector,
    pub value: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub analysis: Option<RootAnalysis>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub tits_matrix: Vec<Vec<i64>>,
    pub slender: bool,
    pub classification: ClassificationReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub positive_roots: Option<Vec<IntVector>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub omnipresent: Option<OmnipresentRoots>,
    /// Analyses of the locally maximal omnipresent roots.
    pub root_analyses: Vec<RootAnalysis>,
    pub vectors: Vec<NamedVector>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Root data derived from a form, shared by [`AnalysisReport::build`] and
/// [`AnalysisReport::verify`].
struct RootPart {
    positive_roots: Option<Vec<IntVector>>,
    omnipresent: Option<OmnipresentRoots>,
    root_analyses: Vec<RootAnalysis>,
    notes: Vec<String>,
}

fn root_part(analyzer: &RootAnalyzer) -> Result<RootPart> {
    let mut part = RootPart {
        positive_roots: None,
        omnipresent: None,
        root_analyses: Vec::new(),
        notes: Vec::new(),
    };
    if analyzer.verdict() == Verdict::WeaklyPositive {
        part.positive_roots = Some(analyzer.positive_roots()?);
    }
    if analyzer.verdict().is_weakly_nonnegative() {
        match analyzer.omnipresent_roots() {
            Ok(o) => {
                for v in &o.roots {
                    if analyzer.is_locally_maximal(v)? {
                        part.root_analyses.push(analyzer.analyze(v)?);
                    }
                }
                if !o.complete {
                    part.notes.push("no listed omnipresent root is maximal; larger ones may exist".into());
                }
                part.omnipresent = Some(o);
            }
            Err(Error::Undecided(msg)) => part.notes.push(format!("omnipresent roots not listed: {msg}")),
            Err(e) => return Err(e),
        }
    }
    Ok(part)
}

fn named_vectors(analyzer: &RootAnalyzer, vectors: &[(String, IntVector)]) -> Result<Vec<NamedVector>> {
    let q = analyzer.form();
    vectors
        .iter()
        .map(|(name, v)| {
            let value = q.evaluate(v)?;
            let analysis = if value == 1 && v.is_positive() && analyzer.verdict().is_weakly_nonnegative() {
                Some(analyzer.analyze(v)?)
            } else {
                None
            };
            Ok(NamedVector {
                name: name.clone(),
                vector: v.clone(),
                value,
                analysis,
            })
        })
        .collect()
}

impl AnalysisReport {
    pub fn build(doc: &InputDocument, cfg: &ClassifyConfig) -> Result<AnalysisReport> {
        let q = doc.form();
        let input = InputEcho {
            kind: match doc.source {
                Source::Presentation(_) => InputKind::Presentation,
                Source::Form(_) => InputKind::Form,
            },
            labels: doc.labels(),
            presentation: doc.presentation().map(|p| p.to_json()),
        };
        let classification = classify::is_weakly_nonnegative(&q, cfg)?;
        let analyzer = RootAnalyzer::new(q.clone(), *cfg)?;
        let roots = root_part(&analyzer)?;
        let mut notes = roots.notes;
        if let Some(n) = &classification.note {
            notes.insert(0, n.clone());
        }
        Ok(AnalysisReport {
            input,
            tits_matrix: q.gram(),
            slender: q.is_slender(),
            vectors: named_vectors(&analyzer, &doc.vectors)?,
            classification,
            positive_roots: roots.positive_roots,
            omnipresent: roots.omnipresent,
            root_analyses: roots.root_analyses,
            notes,
        })
    }

    pub fn form(&self) -> Result<UnitForm> {
        UnitForm::from_matrix(&self.tits_matrix)
    }

    /// Recomputes every claim from the Gram matrix and named vectors.
    pub fn verify(&self, cfg: &ClassifyConfig) -> Result<()> {
        let q = self.form()?;
        let mismatch = |what: &str| Err(Error::Invariant(format!("report field `{what}` does not re-verify")));
        if self.tits_matrix.iter().enumerate().any(|(i, r)| r[i] != 2) {
            return mismatch("tits_matrix");
        }
        if self.input.labels.len() != q.n() {
            return mismatch("input.labels");
        }
        if let Some(p) = &self.input.presentation {
            if p.tits_matrix != self.tits_matrix {
                return mismatch("input.presentation.tits_matrix");
            }
        }
        if self.slender != q.is_slender() {
            return mismatch("slender");
        }
        if classify::is_weakly_nonnegative(&q, cfg)? != self.classification {
            return mismatch("classification");
        }
        if let (Some(w), Some(val)) = (&self.classification.witness, self.classification.witness_value) {
            if q.evaluate(w)? != val {
                return mismatch("classification.witness_value");
            }
        }
        let analyzer = RootAnalyzer::new(q.clone(), *cfg)?;
        let roots = root_part(&analyzer)?;
        if roots.positive_roots != self.positive_roots {
            return mismatch("positive_roots");
        }
        if roots.omnipresent != self.omnipresent {
            return mismatch("omnipresent");
        }
        if roots.root_analyses != self.root_analyses {
            return mismatch("root_analyses");
        }
        for r in self.positive_roots.iter().flatten().chain(self.omnipresent.iter().flat_map(|o| &o.roots)) {
            if q.evaluate(r)? != 1 {
                return mismatch("roots");
            }
        }
        let pairs: Vec<(String, IntVector)> = self.vectors.iter().map(|v| (v.name.clone(), v.vector.clone())).collect();
        if named_vectors(&analyzer, &pairs)? != self.vectors {
            return mismatch("vectors");
        }
        Ok(())
    }

    /// Maximal roots among the analysed ones.
    pub fn maximal_roots(&self) -> impl Iterator<Item = &RootAnalysis> {
        self.root_analyses.iter().filter(|a| a.maximal)
    }
}
