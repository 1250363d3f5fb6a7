//! 2-tuple linguistic representation: a term plus a symbolic translation.
//!
//! A 2-tuple is stored by its numeric value `beta`; the term index and the
//! translation are derived from it, so converting back and forth never loses
//! precision.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linguistic::TermSet;
use crate::ordinal::round_half_up;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTuple {
    beta: f64,
}

impl TwoTuple {
    /// Builds `(s_index, alpha)`; `alpha` must lie in `[-0.5, 0.5)` and keep
    /// `index` as the rounded value.
    pub fn new(index: usize, alpha: f64) -> Result<Self> {
        if !(-0.5..0.5).contains(&alpha) {
            return Err(Error::InvalidTwoTuple(format!("alpha {alpha} outside [-0.5, 0.5)")));
        }
        let beta = index as f64 + alpha;
        if round_half_up(beta) != index as f64 {
            return Err(Error::InvalidTwoTuple(format!(
                "s{index} with alpha {alpha} does not round back to s{index}"
            )));
        }
        Ok(TwoTuple { beta })
    }

    pub fn term(index: usize) -> Self {
        TwoTuple { beta: index as f64 }
    }

    pub fn term_index(&self) -> usize {
        round_half_up(self.beta) as usize
    }

    pub fn alpha(&self) -> f64 {
        self.beta - round_half_up(self.beta)
    }

    pub fn check(&self, ts: &TermSet) -> Result<()> {
        ts.check_index(self.term_index()).map(|_| ())
    }
}

/// `beta -> (s_round(beta), beta - round(beta))`.
pub fn delta(beta: f64, ts: &TermSet) -> Result<TwoTuple> {
    let upper = ts.max_index() as f64 + 0.5;
    if !(-0.5..upper).contains(&beta) {
        return Err(Error::BetaOutOfRange { beta, upper });
    }
    Ok(TwoTuple { beta })
}

pub fn delta_inv(t: &TwoTuple) -> f64 {
    t.beta
}

/// Weighted mean of the preference values, weights taken at their numeric value.
pub fn twotuple_beta(prefs: &[TwoTuple], weights: &[TwoTuple]) -> Result<f64> {
    if prefs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if prefs.len() != weights.len() {
        return Err(Error::LengthMismatch {
            left: prefs.len(),
            right: weights.len(),
        });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (p, w) in prefs.iter().zip(weights) {
        let wv = delta_inv(w);
        if wv < 0.0 {
            return Err(Error::InvalidWeights(format!("negative weight magnitude {wv}")));
        }
        num += wv * delta_inv(p);
        den += wv;
    }
    if den == 0.0 {
        return Err(Error::ZeroWeightMass);
    }
    Ok(num / den)
}

pub fn twotuple_aggregate(prefs: &[TwoTuple], weights: &[TwoTuple], ts: &TermSet) -> Result<TwoTuple> {
    // Weights may live on their own term set; only their magnitude matters.
    for t in prefs {
        t.check(ts)?;
    }
    let beta = twotuple_beta(prefs, weights)?;
    // Clamp rounding noise at the ends of the scale back into range.
    let lo = prefs.iter().map(delta_inv).fold(f64::INFINITY, f64::min);
    let hi = prefs.iter().map(delta_inv).fold(f64::NEG_INFINITY, f64::max);
    delta(beta.clamp(lo, hi), ts)
}

impl fmt::Display for TwoTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha = (self.alpha() * 1e10).round() / 1e10;
        if alpha == 0.0 {
            write!(f, "s{}", self.term_index())
        } else if alpha > 0.0 {
            write!(f, "s{}+{}", self.term_index(), alpha)
        } else {
            write!(f, "s{}-{}", self.term_index(), -alpha)
        }
    }
}

impl FromStr for TwoTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidTwoTuple(format!("cannot parse `{s}`, expected e.g. s3, s3+0.2, s4-0.2"));
        let body = s.trim().strip_prefix('s').ok_or_else(bad)?;
        let split = body.find(['+', '-']);
        let (idx, alpha) = match split {
            None => (body, 0.0),
            Some(pos) => {
                let magnitude: f64 = body[pos + 1..].parse().map_err(|_| bad())?;
                let sign = if body.as_bytes()[pos] == b'-' { -1.0 } else { 1.0 };
                (&body[..pos], sign * magnitude)
            }
        };
        let idx: usize = idx.parse().map_err(|_| bad())?;
        TwoTuple::new(idx, alpha)
    }
}

impl Serialize for TwoTuple {
    /// Uses the display form when it parses back to the same value, else the
    /// full-precision translation.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let short = self.to_string();
        if short.parse::<TwoTuple>().ok() == Some(*self) {
            return serializer.serialize_str(&short);
        }
        let alpha = self.alpha();
        let sign = if alpha < 0.0 { '-' } else { '+' };
        serializer.collect_str(&format_args!("s{}{}{}", self.term_index(), sign, alpha.abs()))
    }
}

impl<'de> Deserialize<'de> for TwoTuple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
