//! Codebooks: words paired with their FOUs, built from survey data.

use std::collections::HashSet;
use std::io::Read;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoder::{encode_word, person_fou_expand, DataInterval, EncoderConfig, SurvivorTrace};
use crate::error::{Error, Result};
use crate::it2::It2Fou;
use crate::linguistic::Interval;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodebookEntry {
    pub word: String,
    #[serde(flatten)]
    pub fou: It2Fou,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<SurvivorTrace>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodebookFailure {
    pub word: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Codebook {
    entries: Vec<CodebookEntry>,
    #[serde(default)]
    failures: Vec<CodebookFailure>,
}

impl Codebook {
    pub fn new(entries: Vec<CodebookEntry>) -> Result<Self> {
        let cb = Codebook {
            entries,
            failures: Vec::new(),
        };
        cb.validate()?;
        Ok(cb)
    }

    pub fn from_words<S: Into<String>>(words: impl IntoIterator<Item = (S, It2Fou)>) -> Result<Self> {
        Codebook::new(
            words
                .into_iter()
                .map(|(w, fou)| CodebookEntry {
                    word: w.into(),
                    fou,
                    trace: None,
                })
                .collect(),
        )
    }

    /// Checks that words are distinct and at least one entry is usable.
    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::InvalidCodebook("no entries".into()));
        }
        let mut seen = HashSet::new();
        for e in &self.entries {
            if !seen.insert(e.word.as_str()) {
                return Err(Error::InvalidCodebook(format!("duplicate word `{}`", e.word)));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cb: Codebook =
            serde_json::from_str(text).map_err(|e| Error::InvalidCodebook(e.to_string()))?;
        cb.validate()?;
        Ok(cb)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("codebook serialises")
    }

    pub fn entries(&self) -> &[CodebookEntry] {
        &self.entries
    }

    pub fn failures(&self) -> &[CodebookFailure] {
        &self.failures
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&It2Fou> {
        self.entries.iter().find(|e| e.word == word).map(|e| &e.fou)
    }

    pub fn lookup(&self, word: &str) -> Result<&It2Fou> {
        self.get(word).ok_or_else(|| Error::UnknownWord(word.to_string()))
    }
}

/// Survey responses grouped by word, in order of first appearance.
pub type Survey = Vec<(String, Vec<DataInterval>)>;

/// Encodes every word independently (in parallel); words that fail are
/// listed with their error instead of being dropped.
pub fn build_codebook(survey: &Survey, cfg: &EncoderConfig) -> Result<Codebook> {
    cfg.validate()?;
    if survey.is_empty() {
        return Err(Error::EmptyInput);
    }
    let results: Vec<_> = survey
        .par_iter()
        .map(|(word, intervals)| (word, encode_word(intervals, cfg)))
        .collect();
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for (word, res) in results {
        match res {
            Ok(enc) => entries.push(CodebookEntry {
                word: word.clone(),
                fou: enc.fou,
                trace: Some(enc.trace),
            }),
            Err(e) => failures.push(CodebookFailure {
                word: word.clone(),
                error: e.to_string(),
            }),
        }
    }
    Ok(Codebook { entries, failures })
}

fn group(rows: impl IntoIterator<Item = (String, DataInterval)>) -> Survey {
    let mut survey: Survey = Vec::new();
    for (word, iv) in rows {
        match survey.iter_mut().find(|(w, _)| *w == word) {
            Some((_, ivs)) => ivs.push(iv),
            None => survey.push((word, vec![iv])),
        }
    }
    survey
}

fn csv_error(e: csv::Error) -> Error {
    let path = match e.position() {
        Some(p) => format!("line {}", p.line()),
        None => "csv".to_string(),
    };
    let message = match e.kind() {
        csv::ErrorKind::Deserialize { err, .. } => match err.field() {
            Some(f) => format!("column {}: {}", f + 1, err.kind()),
            None => err.kind().to_string(),
        },
        _ => e.to_string(),
    };
    Error::Validation { path, message }
}

#[derive(Deserialize)]
struct SurveyRow {
    word: String,
    subject: String,
    left: f64,
    right: f64,
}

/// Reads `word,subject,left,right` rows.
pub fn read_survey_csv<R: Read>(reader: R) -> Result<Survey> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    check_headers(&mut rdr, &["word", "subject", "left", "right"])?;
    let rows = rdr
        .deserialize::<SurveyRow>()
        .map(|r| {
            r.map(|row| (row.word, DataInterval::tagged(row.left, row.right, row.subject)))
                .map_err(csv_error)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(group(rows))
}

#[derive(Deserialize)]
struct PersonRow {
    word: String,
    left_min: f64,
    left_max: f64,
    right_min: f64,
    right_max: f64,
}

/// Reads `word,left_min,left_max,right_min,right_max` rows and expands each
/// into `cfg.person_samples` synthetic subject intervals.
pub fn read_person_csv<R: Read>(reader: R, cfg: &EncoderConfig) -> Result<Survey> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    check_headers(&mut rdr, &["word", "left_min", "left_max", "right_min", "right_max"])?;
    let mut survey: Survey = Vec::new();
    for row in rdr.deserialize::<PersonRow>() {
        let row = row.map_err(csv_error)?;
        let left = Interval::new(row.left_min, row.left_max)?;
        let right = Interval::new(row.right_min, row.right_max)?;
        let ivs = person_fou_expand(&row.word, left, right, cfg.person_samples, cfg.rng_seed)?;
        match survey.iter_mut().find(|(w, _)| *w == row.word) {
            Some((_, existing)) => existing.extend(ivs),
            None => survey.push((row.word, ivs)),
        }
    }
    Ok(survey)
}

fn check_headers<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let headers = rdr.headers().map_err(csv_error)?;
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(Error::Validation {
            path: "line 1".into(),
            message: format!("expected header `{}`, found `{}`", expected.join(","), got.join(",")),
        });
    }
    Ok(())
}
