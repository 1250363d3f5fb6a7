//! Word-model elicitation: turns endpoint intervals collected for a word into
//! an interval type-2 FOU.

mod data;
mod fs;
mod person;
pub mod stats;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::it2::It2Fou;

pub use data::{classify, eia_data_part, epsilon_star, ia_data_part, DataPart, IntervalStats, SurvivorStats};
pub use fs::{eia_fs_part, embedded_t1, hma_fs_part, hma_overlap, ia_fs_part, EmbeddedT1, FsPart};
pub use person::{person_fou_expand, word_seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EncoderMethod {
    Ia,
    Eia,
    #[default]
    Hma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EncoderConfig {
    pub method: EncoderMethod,
    pub tolerance_gamma: f64,
    pub tolerance_alpha: f64,
    pub outlier_lower_factor: f64,
    pub outlier_upper_factor: f64,
    pub rng_seed: u64,
    pub scale_max: f64,
    pub person_samples: usize,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        EncoderConfig {
            method: EncoderMethod::default(),
            tolerance_gamma: 0.05,
            tolerance_alpha: 0.05,
            outlier_lower_factor: 1.25,
            outlier_upper_factor: 1.5,
            rng_seed: 0,
            scale_max: 10.0,
            person_samples: 50,
        }
    }
}

impl EncoderConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| v > 0.0 && v < 1.0;
        if !unit(self.tolerance_gamma) || !unit(self.tolerance_alpha) {
            return Err(Error::InvalidConfig("tolerance gamma and alpha must lie in (0, 1)".into()));
        }
        if !(self.outlier_lower_factor > 0.0 && self.outlier_upper_factor > 0.0) {
            return Err(Error::InvalidConfig("outlier factors must be positive".into()));
        }
        if !(self.scale_max.is_finite() && self.scale_max > 0.0) {
            return Err(Error::InvalidConfig("scale_max must be positive".into()));
        }
        if self.person_samples == 0 {
            return Err(Error::InvalidConfig("person_samples must be at least 1".into()));
        }
        Ok(())
    }
}

/// One subject's interval for a word.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataInterval {
    pub a: f64,
    pub b: f64,
    #[serde(default)]
    pub subject: String,
}

impl DataInterval {
    pub fn new(a: f64, b: f64) -> Self {
        DataInterval { a, b, subject: String::new() }
    }

    pub fn tagged(a: f64, b: f64, subject: impl Into<String>) -> Self {
        DataInterval { a, b, subject: subject.into() }
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }
}

/// Interval counts after each stage: `[n, n', m', m'', m, m*]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorTrace(pub [usize; 6]);

impl SurvivorTrace {
    pub fn counts(&self) -> &[usize; 6] {
        &self.0
    }

    pub fn is_non_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncodedWord {
    pub fou: It2Fou,
    pub trace: SurvivorTrace,
}

pub fn encode_word(intervals: &[DataInterval], cfg: &EncoderConfig) -> Result<EncodedWord> {
    cfg.validate()?;
    let data = match cfg.method {
        EncoderMethod::Ia => ia_data_part(intervals, cfg)?,
        EncoderMethod::Eia | EncoderMethod::Hma => eia_data_part(intervals, cfg)?,
    };
    let fs = match cfg.method {
        EncoderMethod::Ia => ia_fs_part(&data.survivors, cfg)?,
        EncoderMethod::Eia => eia_fs_part(&data.survivors, cfg)?,
        EncoderMethod::Hma => hma_fs_part(&data.survivors, cfg)?,
    };
    let mut counts = data.counts;
    counts[5] = fs.used;
    Ok(EncodedWord {
        fou: fs.fou,
        trace: SurvivorTrace(counts),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spread() -> Vec<DataInterval> {
        (0..30)
            .map(|i| {
                let t = i as f64 / 29.0;
                DataInterval::new(2.5 + 1.5 * t, 6.0 + 2.0 * (1.0 - t) * t + t)
            })
            .collect()
    }

    #[test]
    fn config_validation() {
        assert!(EncoderConfig::default().validate().is_ok());
        let bad = EncoderConfig { tolerance_gamma: 1.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = EncoderConfig { outlier_lower_factor: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let js: EncoderConfig = serde_json::from_str(r#"{"method": "EIA"}"#).unwrap();
        assert_eq!(js.method, EncoderMethod::Eia);
        assert_eq!(js.outlier_lower_factor, 1.25);
    }

    #[test]
    fn deterministic() {
        for method in [EncoderMethod::Ia, EncoderMethod::Eia, EncoderMethod::Hma] {
            let cfg = EncoderConfig { method, ..Default::default() };
            let a = encode_word(&spread(), &cfg).unwrap();
            let b = encode_word(&spread(), &cfg).unwrap();
            assert_eq!(a, b);
            assert!(a.trace.is_non_increasing(), "{method:?} {:?}", a.trace);
        }
    }

    #[test]
    fn full_length_interval_only_survives_ia() {
        let mut data = spread();
        data.push(DataInterval::new(0.0, 10.0));
        let ia = ia_data_part(&data, &EncoderConfig::default()).unwrap();
        let eia = eia_data_part(&data, &EncoderConfig::default()).unwrap();
        assert_eq!(ia.counts[1], data.len());
        assert_eq!(eia.counts[1], data.len() - 1);
    }
}
