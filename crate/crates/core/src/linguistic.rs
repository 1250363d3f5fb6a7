//! Term sets, triangular type-1 membership functions and the interval
//! arithmetic shared by every type-1 based method.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered set of linguistic labels `t_0..t_g` laid over the scale `[p, q]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTermSet", into = "RawTermSet")]
pub struct TermSet {
    labels: Vec<String>,
    scale_min: f64,
    scale_max: f64,
}

#[derive(Serialize, Deserialize)]
struct RawTermSet {
    labels: Vec<String>,
    scale: [f64; 2],
}

impl TryFrom<RawTermSet> for TermSet {
    type Error = Error;

    fn try_from(raw: RawTermSet) -> Result<Self> {
        TermSet::new(raw.labels, raw.scale[0], raw.scale[1])
    }
}

impl From<TermSet> for RawTermSet {
    fn from(ts: TermSet) -> Self {
        RawTermSet {
            labels: ts.labels,
            scale: [ts.scale_min, ts.scale_max],
        }
    }
}

impl TermSet {
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        scale_min: f64,
        scale_max: f64,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::InvalidTermSet(format!(
                "need at least 2 labels, got {}",
                labels.len()
            )));
        }
        if labels.iter().any(|l| l.is_empty()) {
            return Err(Error::InvalidTermSet("labels must be non-empty".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidTermSet(format!("duplicate label `{l}`")));
            }
        }
        if !(scale_min.is_finite() && scale_max.is_finite() && scale_min < scale_max) {
            return Err(Error::InvalidTermSet(format!(
                "scale [{scale_min}, {scale_max}] must satisfy p < q"
            )));
        }
        Ok(TermSet {
            labels,
            scale_min,
            scale_max,
        })
    }

    /// A term set with generated labels `t0..t{n-1}`.
    pub fn with_cardinality(n: usize, scale_min: f64, scale_max: f64) -> Result<Self> {
        TermSet::new((0..n).map(|i| format!("t{i}")), scale_min, scale_max)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest term index `g`.
    pub fn max_index(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn scale(&self) -> (f64, f64) {
        (self.scale_min, self.scale_max)
    }

    pub fn check_index(&self, index: usize) -> Result<usize> {
        if index > self.max_index() {
            Err(Error::IndexOutOfTermSet {
                index,
                max: self.max_index(),
            })
        } else {
            Ok(index)
        }
    }

    /// Tri-tuple of a single term under [`uniform_partition`].
    pub fn tri_tuple(&self, index: usize) -> Result<TriTuple> {
        self.check_index(index)?;
        Ok(uniform_partition(self)[index])
    }
}

/// The defining points `(l, m, r)` of a triangular membership function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriTuple {
    pub l: f64,
    pub m: f64,
    pub r: f64,
}

impl TriTuple {
    pub fn new(l: f64, m: f64, r: f64) -> Result<Self> {
        if !(l.is_finite() && m.is_finite() && r.is_finite()) || l > m || m > r {
            return Err(Error::Validation {
                path: "tri_tuple".into(),
                message: format!("({l}, {m}, {r}) must be finite with l <= m <= r"),
            });
        }
        Ok(TriTuple { l, m, r })
    }

    pub const fn crisp(x: f64) -> Self {
        TriTuple { l: x, m: x, r: x }
    }

    pub fn is_non_negative(&self) -> bool {
        self.l >= 0.0 && self.m >= 0.0 && self.r >= 0.0
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.l, self.m, self.r]
    }
}

/// A closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub const fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

/// Uniformly spaced triangles over the term-set scale.
///
/// Apexes sit at `p + j (q - p) / g`; each triangle's feet are the apexes of its
/// neighbours, so adjacent terms cross at membership 0.5. The end terms are
/// shoulders with a vertical outer leg (`l = m` for `t_0`, `m = r` for `t_g`).
pub fn uniform_partition(term_set: &TermSet) -> Vec<TriTuple> {
    let (p, q) = term_set.scale();
    let g = term_set.max_index();
    let step = (q - p) / g as f64;
    let apex = |j: usize| if j == g { q } else { p + step * j as f64 };
    (0..=g)
        .map(|j| TriTuple {
            l: if j == 0 { p } else { apex(j - 1) },
            m: apex(j),
            r: if j == g { q } else { apex(j + 1) },
        })
        .collect()
}

/// Triangular membership grade of `x`.
pub fn membership(mf: &TriTuple, x: f64) -> f64 {
    if x < mf.l || x > mf.r {
        0.0
    } else if x == mf.m {
        1.0
    } else if x < mf.m {
        (x - mf.l) / (mf.m - mf.l)
    } else {
        (mf.r - x) / (mf.r - mf.m)
    }
}

/// The crisp interval on which `mf` is at least `alpha`.
pub fn alpha_cut(mf: &TriTuple, alpha: f64) -> Interval {
    debug_assert!((0.0..=1.0).contains(&alpha));
    Interval {
        lo: mf.l + alpha * (mf.m - mf.l),
        hi: mf.r - alpha * (mf.r - mf.m),
    }
}

/// Component-wise product of two non-negative tri-tuples.
pub fn tri_product(a: &TriTuple, b: &TriTuple) -> Result<TriTuple> {
    if !a.is_non_negative() || !b.is_non_negative() {
        return Err(Error::NegativeOperand);
    }
    Ok(TriTuple {
        l: a.l * b.l,
        m: a.m * b.m,
        r: a.r * b.r,
    })
}
