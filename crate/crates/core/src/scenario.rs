//! Scenario files: one decision problem, runnable under any methodology.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::codebook::Codebook;
use crate::engine::{aggregate, decode_rank, decode_word, Aggregate, Operand, Operator, DEFAULT_ALPHA_LEVELS};
use crate::error::{Error, Result};
use crate::it2::{centroid_bounds, centroid_mean, It2Fou, TypeReducer, DEFAULT_GRID};
use crate::linguistic::{Interval, TermSet, TriTuple};
use crate::ordinal::{rscm_partition, rscm_weights, smcm_run, NumericWeights};
use crate::t1_methods::{aepcm_run_with, epcm_run, ifscm_run_with, PreferenceVector, RetranslationWeights, WeightVector};
use crate::two_tuple::{delta, delta_inv, twotuple_aggregate, TwoTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Methodology {
    #[serde(rename = "EPCM")]
    Epcm,
    #[serde(rename = "AEPCM")]
    Aepcm,
    #[serde(rename = "IFSCM")]
    Ifscm,
    #[serde(rename = "SMCM")]
    Smcm,
    #[serde(rename = "RSCM")]
    Rscm,
    #[serde(rename = "TWOTUPLE", alias = "2TPCM")]
    TwoTuple,
    #[serde(rename = "PERC")]
    Perc,
}

impl Methodology {
    /// Report order.
    pub const ALL: [Methodology; 7] = [
        Methodology::Epcm,
        Methodology::Aepcm,
        Methodology::Ifscm,
        Methodology::Smcm,
        Methodology::Rscm,
        Methodology::TwoTuple,
        Methodology::Perc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Methodology::Epcm => "EPCM",
            Methodology::Aepcm => "AEPCM",
            Methodology::Ifscm => "IFSCM",
            Methodology::Smcm => "SMCM",
            Methodology::Rscm => "RSCM",
            Methodology::TwoTuple => "2TPCM",
            Methodology::Perc => "Perceptual Computing",
        }
    }
}

impl fmt::Display for Methodology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A preference or weight entry: a number, a term label, or a 2-tuple literal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Number(f64),
    Text(String),
}

impl Entry {
    fn index(&self, ts: &TermSet, path: &str) -> Result<usize> {
        let idx = match self {
            Entry::Number(v) if *v >= 0.0 && v.fract() == 0.0 => *v as usize,
            Entry::Number(v) => return Err(Error::validation(path, format!("{v} is not a term index"))),
            Entry::Text(s) => match ts.labels().iter().position(|l| l == s) {
                Some(i) => i,
                None => {
                    let t: TwoTuple = s.parse().map_err(|e: Error| Error::validation(path, e.to_string()))?;
                    if t.alpha() != 0.0 {
                        return Err(Error::validation(path, format!("`{s}` has a symbolic translation; a plain term is required")));
                    }
                    t.term_index()
                }
            },
        };
        ts.check_index(idx).map_err(|e| Error::validation(path, e.to_string()))
    }

    fn two_tuple(&self, ts: &TermSet, path: &str) -> Result<TwoTuple> {
        let t = match self {
            Entry::Number(v) => delta(*v, ts),
            Entry::Text(s) => match ts.labels().iter().position(|l| l == s) {
                Some(i) => Ok(TwoTuple::term(i)),
                None => s.parse(),
            },
        };
        let t = t.map_err(|e| Error::validation(path, e.to_string()))?;
        t.check(ts).map_err(|e| Error::validation(path, e.to_string()))?;
        Ok(t)
    }

    fn real(&self, path: &str) -> Result<f64> {
        match self {
            Entry::Number(v) => Ok(*v),
            Entry::Text(s) => Err(Error::validation(path, format!("expected a number, found `{s}`"))),
        }
    }
}

/// A perceptual-computing operand: a codebook word or an inline operand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PercOperand {
    Word(String),
    Inline(Operand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PercMode {
    #[default]
    Word,
    Rank,
}

fn default_grid() -> usize {
    DEFAULT_GRID
}

fn default_levels() -> usize {
    DEFAULT_ALPHA_LEVELS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PercInputs {
    /// Codebook JSON path, relative to the scenario file.
    pub codebook: String,
    pub values: Vec<PercOperand>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<PercOperand>>,
    #[serde(default)]
    pub mode: PercMode,
    #[serde(default = "default_grid")]
    pub n_grid: usize,
    #[serde(default = "default_levels")]
    pub alpha_levels: usize,
    #[serde(default)]
    pub reducer: TypeReducer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub methodology: Methodology,
    pub term_set: TermSet,
    #[serde(default)]
    pub preferences: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Entry>>,
    /// Term set for linguistic weights; defaults to `term_set`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_term_set: Option<TermSet>,
    #[serde(default)]
    pub retranslation_weights: RetranslationWeights,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perc: Option<PercInputs>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedItem {
    pub label: String,
    pub centroid_mean: f64,
}

/// What a methodology recommends, with its intermediate artifacts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Term {
        index: usize,
        label: String,
        tuples: Vec<TriTuple>,
        collective: TriTuple,
    },
    Ifs {
        index: usize,
        label: String,
        non_membership_index: usize,
        non_membership_label: String,
        membership: TriTuple,
        non_membership: TriTuple,
    },
    Ordinal {
        index: usize,
        label: String,
        weights: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        classes: Option<Vec<(usize, usize)>>,
    },
    TwoTuple {
        result: TwoTuple,
        label: String,
        beta: f64,
    },
    Word {
        operator: Operator,
        word: String,
        score: f64,
        low_confidence: bool,
        scores: Vec<(String, f64)>,
        centroid: [f64; 2],
        aggregate: Aggregate,
    },
    Ranking {
        order: Vec<RankedItem>,
    },
}

impl Outcome {
    /// One-line recommendation.
    pub fn recommendation(&self) -> String {
        match self {
            Outcome::Term { index, label, .. } | Outcome::Ordinal { index, label, .. } => format!("{label} (t{index})"),
            Outcome::Ifs { index, label, non_membership_index, non_membership_label, .. } => {
                format!("({label} (t{index}), {non_membership_label} (t{non_membership_index}))")
            }
            Outcome::TwoTuple { result, label, .. } => format!("{result} ({label})"),
            Outcome::Word { word, score, low_confidence, .. } => {
                let flag = if *low_confidence { ", low confidence" } else { "" };
                format!("{word} (similarity {score:.4}{flag})")
            }
            Outcome::Ranking { order } => order.iter().map(|r| r.label.as_str()).collect::<Vec<_>>().join(" > "),
        }
    }

    /// Short description of the intermediate result.
    pub fn summary(&self) -> String {
        let tri = |t: &TriTuple| format!("({}, {}, {})", fmt_num(t.l), fmt_num(t.m), fmt_num(t.r));
        match self {
            Outcome::Term { collective, .. } => format!("collective vector {}", tri(collective)),
            Outcome::Ifs { membership, non_membership, .. } => {
                format!("membership {}, non-membership {}", tri(membership), tri(non_membership))
            }
            Outcome::Ordinal { weights, classes, .. } => {
                let w: Vec<String> = weights.iter().map(|w| fmt_num(*w)).collect();
                match classes {
                    Some(c) => format!("{} classes, weights [{}]", c.len(), w.join(", ")),
                    None => format!("weights [{}]", w.join(", ")),
                }
            }
            Outcome::TwoTuple { beta, .. } => format!("beta {}", fmt_num(*beta)),
            Outcome::Word { operator, centroid, .. } => {
                format!("{operator} output, centroid [{}, {}]", fmt_num(centroid[0]), fmt_num(centroid[1]))
            }
            Outcome::Ranking { order } => {
                let m: Vec<String> = order.iter().map(|r| fmt_num(r.centroid_mean)).collect();
                format!("centroid means [{}]", m.join(", "))
            }
        }
    }
}

fn fmt_num(v: f64) -> String {
    let r = (v * 1e6).round() / 1e6;
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub methodology: Methodology,
    pub outcome: Outcome,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    NotApplicable,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub methodology: Methodology,
    pub status: RowStatus,
    pub recommendation: String,
    pub summary: String,
    pub wall_time_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<RunReport>,
}

/// Missing inputs for a methodology, reported as not applicable.
fn missing(path: &str, message: &str) -> Error {
    Error::validation(path, message)
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| {
            Error::validation(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialises")
    }

    fn weight_term_set(&self) -> &TermSet {
        self.weight_term_set.as_ref().unwrap_or(&self.term_set)
    }

    /// Checks the inputs the selected methodology needs.
    pub fn validate(&self) -> Result<()> {
        self.check(self.methodology)
    }

    fn check(&self, m: Methodology) -> Result<()> {
        if m != Methodology::Perc && self.preferences.is_empty() {
            return Err(missing("preferences", "at least one preference is required"));
        }
        if let Some(w) = &self.weights {
            if m != Methodology::Perc && m != Methodology::Rscm && w.len() != self.preferences.len() {
                return Err(missing(
                    "weights",
                    &format!("{} weights for {} preferences", w.len(), self.preferences.len()),
                ));
            }
        }
        match m {
            Methodology::Aepcm | Methodology::Ifscm if self.weights.is_none() => {
                Err(missing("weights", "linguistic weights are required"))
            }
            Methodology::Perc => match &self.perc {
                None => Err(missing("perc", "a codebook and values are required")),
                Some(p) if p.values.is_empty() => Err(missing("perc.values", "at least one value is required")),
                Some(p) => match &p.weights {
                    Some(w) if p.mode == PercMode::Word && w.len() != p.values.len() => Err(missing(
                        "perc.weights",
                        &format!("{} weights for {} values", w.len(), p.values.len()),
                    )),
                    _ => Ok(()),
                },
            },
            _ => Ok(()),
        }
    }

    fn indices(&self) -> Result<Vec<usize>> {
        self.preferences
            .iter()
            .enumerate()
            .map(|(i, e)| e.index(&self.term_set, &format!("preferences[{i}]")))
            .collect()
    }

    fn weight_indices(&self) -> Result<Vec<usize>> {
        let ws = self.weight_term_set();
        self.weights
            .as_ref()
            .ok_or_else(|| missing("weights", "linguistic weights are required"))?
            .iter()
            .enumerate()
            .map(|(i, e)| e.index(ws, &format!("weights[{i}]")))
            .collect()
    }

    fn label(&self, index: usize) -> String {
        self.term_set.label(index).unwrap_or("?").to_string()
    }

    /// Runs the scenario's own methodology.
    pub fn run(&self, codebook: Option<&Codebook>) -> Result<RunReport> {
        self.run_as(self.methodology, codebook)
    }

    pub fn run_as(&self, m: Methodology, codebook: Option<&Codebook>) -> Result<RunReport> {
        self.check(m)?;
        let ts = &self.term_set;
        let rw = &self.retranslation_weights;
        let mut warnings = Vec::new();
        let outcome = match m {
            Methodology::Epcm => {
                let prefs = PreferenceVector::new(self.indices()?, ts)?;
                let out = epcm_run(&prefs, ts, rw)?;
                Outcome::Term {
                    index: out.recommended,
                    label: self.label(out.recommended),
                    tuples: out.tuples,
                    collective: out.collective,
                }
            }
            Methodology::Aepcm => {
                let prefs = PreferenceVector::new(self.indices()?, ts)?;
                let weights = WeightVector::new(self.weight_indices()?, &prefs, self.weight_term_set())?;
                let out = aepcm_run_with(&prefs, &weights, ts, self.weight_term_set(), rw)?;
                if out.leaves_scale(ts) {
                    warnings.push("collective vector leaves the term-set scale".to_string());
                }
                Outcome::Term {
                    index: out.recommended,
                    label: self.label(out.recommended),
                    tuples: out.tuples,
                    collective: out.collective,
                }
            }
            Methodology::Ifscm => {
                let prefs = PreferenceVector::new(self.indices()?, ts)?;
                let weights = WeightVector::new(self.weight_indices()?, &prefs, self.weight_term_set())?;
                let out = ifscm_run_with(&prefs, &weights, ts, self.weight_term_set(), rw)?;
                Outcome::Ifs {
                    index: out.recommended,
                    label: self.label(out.recommended),
                    non_membership_index: out.recommended_non_membership,
                    non_membership_label: self.label(out.recommended_non_membership),
                    membership: out.membership,
                    non_membership: out.non_membership,
                }
            }
            Methodology::Smcm => {
                let prefs = self.indices()?;
                let weights = match &self.weights {
                    None => NumericWeights::uniform(prefs.len())?,
                    Some(ws) => NumericWeights::new(
                        ws.iter()
                            .enumerate()
                            .map(|(i, e)| e.real(&format!("weights[{i}]")))
                            .collect::<Result<_>>()?,
                    )
                    .map_err(|e| Error::validation("weights", e.to_string()))?,
                };
                let index = smcm_run(&prefs, &weights, ts)?;
                Outcome::Ordinal {
                    index,
                    label: self.label(index),
                    weights: weights.entries().to_vec(),
                    classes: None,
                }
            }
            Methodology::Rscm => {
                let prefs = self.indices()?;
                let classes = rscm_partition(&prefs)?;
                let weights = rscm_weights(&classes, &prefs)?;
                let index = smcm_run(&prefs, &weights, ts)?;
                Outcome::Ordinal {
                    index,
                    label: self.label(index),
                    weights: weights.entries().to_vec(),
                    classes: Some(classes.classes().to_vec()),
                }
            }
            Methodology::TwoTuple => {
                let prefs = self
                    .preferences
                    .iter()
                    .enumerate()
                    .map(|(i, e)| e.two_tuple(ts, &format!("preferences[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let weights = match &self.weights {
                    None => vec![TwoTuple::term(1); prefs.len()],
                    Some(ws) => ws
                        .iter()
                        .enumerate()
                        .map(|(i, e)| e.two_tuple(self.weight_term_set(), &format!("weights[{i}]")))
                        .collect::<Result<Vec<_>>>()?,
                };
                let result = twotuple_aggregate(&prefs, &weights, ts)?;
                Outcome::TwoTuple {
                    label: self.label(result.term_index()),
                    beta: delta_inv(&result),
                    result,
                }
            }
            Methodology::Perc => {
                let cb = codebook.ok_or_else(|| missing("perc.codebook", "codebook not loaded"))?;
                self.run_perc(self.perc.as_ref().expect("checked"), cb)?
            }
        };
        Ok(RunReport { methodology: m, outcome, warnings })
    }

    fn run_perc(&self, p: &PercInputs, cb: &Codebook) -> Result<Outcome> {
        let resolve = |ops: &[PercOperand], field: &str| {
            ops.iter()
                .enumerate()
                .map(|(i, o)| match o {
                    PercOperand::Word(w) => cb
                        .lookup(w)
                        .map(|f| (w.clone(), Operand::Fou(*f)))
                        .map_err(|e| Error::validation(format!("{field}[{i}]"), e.to_string())),
                    PercOperand::Inline(op) => Ok((format!("{field}[{i}]"), *op)),
                })
                .collect::<Result<Vec<_>>>()
        };
        let values = resolve(&p.values, "perc.values")?;
        if p.mode == PercMode::Rank {
            let fous = values.iter().map(|(_, o)| o.to_fou()).collect::<Result<Vec<It2Fou>>>()?;
            let order = decode_rank(&fous, p.n_grid, p.reducer)?;
            let order = order
                .into_iter()
                .map(|i| {
                    let ci = centroid_bounds(&fous[i], p.n_grid, p.reducer)?;
                    Ok(RankedItem { label: values[i].0.clone(), centroid_mean: centroid_mean(&ci) })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Outcome::Ranking { order });
        }
        let weights = match &p.weights {
            Some(w) => resolve(w, "perc.weights")?.into_iter().map(|(_, o)| o).collect(),
            None => vec![Operand::Interval(Interval { lo: 1.0, hi: 1.0 }); values.len()],
        };
        let values: Vec<Operand> = values.into_iter().map(|(_, o)| o).collect();
        let (operator, agg) = aggregate(&values, &weights, p.alpha_levels)?;
        let y = agg.to_fou()?;
        let d = decode_word(&y, cb, p.n_grid)?;
        let ci = centroid_bounds(&y, p.n_grid, p.reducer)?;
        Ok(Outcome::Word {
            operator,
            word: d.word,
            score: d.score,
            low_confidence: d.low_confidence,
            scores: d.scores,
            centroid: [ci.c_l, ci.c_r],
            aggregate: agg,
        })
    }

    /// Runs every methodology in report order. Methodologies whose inputs
    /// are missing are marked not applicable rather than failing the report.
    pub fn compare(&self, codebook: Option<&Codebook>) -> Vec<CompareRow> {
        Methodology::ALL
            .iter()
            .map(|&m| {
                let start = Instant::now();
                let res = self.check(m).and_then(|_| self.run_as(m, codebook));
                let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
                match res {
                    Ok(report) => CompareRow {
                        methodology: m,
                        status: RowStatus::Ok,
                        recommendation: report.outcome.recommendation(),
                        summary: report.outcome.summary(),
                        wall_time_ms,
                        report: Some(report),
                    },
                    Err(e) => {
                        let status = match (&e, m) {
                            (Error::Validation { .. }, _) => RowStatus::NotApplicable,
                            _ => RowStatus::Error,
                        };
                        CompareRow {
                            methodology: m,
                            status,
                            recommendation: "N/A".to_string(),
                            summary: e.to_string(),
                            wall_time_ms,
                            report: None,
                        }
                    }
                }
            })
            .collect()
    }
}
