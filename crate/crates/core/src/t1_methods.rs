//! Type-1 pipelines over tri-tuples: the plain extension-principle model
//! (unweighted mean), its weighted augmentation, and the intuitionistic
//! variant that carries a separate non-membership channel.
//!
//! All three retranslate by a weighted Euclidean distance on `(l, m, r)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linguistic::{tri_product, uniform_partition, TermSet, TriTuple};

/// Weights `P1, P2, P3` of the retranslation distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct RetranslationWeights {
    p1: f64,
    p2: f64,
    p3: f64,
}

impl RetranslationWeights {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let all = [p1, p2, p3];
        if all.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidWeights(
                "retranslation weights must be finite and non-negative".into(),
            ));
        }
        if all.iter().all(|p| *p == 0.0) {
            return Err(Error::InvalidWeights(
                "retranslation weights cannot all be zero".into(),
            ));
        }
        Ok(RetranslationWeights { p1, p2, p3 })
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        RetranslationWeights::new(self.p1 * factor, self.p2 * factor, self.p3 * factor)
    }

    pub fn distance(&self, term: &TriTuple, c: &TriTuple) -> f64 {
        (self.p1 * (term.l - c.l).powi(2)
            + self.p2 * (term.m - c.m).powi(2)
            + self.p3 * (term.r - c.r).powi(2))
        .sqrt()
    }
}

impl Default for RetranslationWeights {
    fn default() -> Self {
        RetranslationWeights {
            p1: 0.2,
            p2: 0.6,
            p3: 0.2,
        }
    }
}

impl TryFrom<[f64; 3]> for RetranslationWeights {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        RetranslationWeights::new(v[0], v[1], v[2])
    }
}

impl From<RetranslationWeights> for [f64; 3] {
    fn from(w: RetranslationWeights) -> Self {
        [w.p1, w.p2, w.p3]
    }
}

/// Term indices chosen by the users, validated against a term set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreferenceVector(Vec<usize>);

impl PreferenceVector {
    pub fn new(entries: Vec<usize>, ts: &TermSet) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyInput);
        }
        for &e in &entries {
            ts.check_index(e)?;
        }
        Ok(PreferenceVector(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Linguistic weights, one term index per preference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightVector(Vec<usize>);

impl WeightVector {
    pub fn new(entries: Vec<usize>, prefs: &PreferenceVector, ts: &TermSet) -> Result<Self> {
        if entries.len() != prefs.len() {
            return Err(Error::LengthMismatch {
                left: prefs.len(),
                right: entries.len(),
            });
        }
        for &e in &entries {
            ts.check_index(e)?;
        }
        Ok(WeightVector(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

/// Membership and non-membership tri-tuples of one intuitionistic term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IfsTriPair {
    pub membership: TriTuple,
    pub non_membership: TriTuple,
}

/// Collective vector and recommendation of a type-1 pipeline run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct T1Outcome {
    pub tuples: Vec<TriTuple>,
    pub collective: TriTuple,
    pub recommended: usize,
}

impl T1Outcome {
    /// True when the collective vector leaves `[p, q]`.
    pub fn leaves_scale(&self, ts: &TermSet) -> bool {
        let (p, q) = ts.scale();
        self.collective.l < p || self.collective.r > q
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IfsOutcome {
    pub pairs: Vec<IfsTriPair>,
    pub membership: TriTuple,
    pub non_membership: TriTuple,
    pub recommended: usize,
    pub recommended_non_membership: usize,
}

pub fn epcm_translate(prefs: &PreferenceVector, ts: &TermSet) -> Result<Vec<TriTuple>> {
    if prefs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let parts = uniform_partition(ts);
    prefs
        .entries()
        .iter()
        .map(|&i| ts.check_index(i).map(|i| parts[i]))
        .collect()
}

/// Component-wise arithmetic mean.
pub fn epcm_manipulate(tuples: &[TriTuple]) -> Result<TriTuple> {
    if tuples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = tuples.len() as f64;
    let (l, m, r) = tuples
        .iter()
        .fold((0.0, 0.0, 0.0), |(l, m, r), t| (l + t.l, m + t.m, r + t.r));
    Ok(TriTuple {
        l: l / n,
        m: m / n,
        r: r / n,
    })
}

/// Index of the term nearest to `c`; the lowest index wins a tie.
pub fn euclidean_retranslate(c: &TriTuple, ts: &TermSet, w: &RetranslationWeights) -> usize {
    let mut best = (0, f64::INFINITY);
    for (j, term) in uniform_partition(ts).iter().enumerate() {
        let d = w.distance(term, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best.0
}

pub fn epcm_run(
    prefs: &PreferenceVector,
    ts: &TermSet,
    w: &RetranslationWeights,
) -> Result<T1Outcome> {
    let tuples = epcm_translate(prefs, ts)?;
    let collective = epcm_manipulate(&tuples)?;
    let recommended = euclidean_retranslate(&collective, ts, w);
    Ok(T1Outcome {
        tuples,
        collective,
        recommended,
    })
}

fn check_lengths(prefs: &PreferenceVector, weights: &WeightVector) -> Result<()> {
    if prefs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if prefs.len() != weights.entries().len() {
        return Err(Error::LengthMismatch {
            left: prefs.len(),
            right: weights.entries().len(),
        });
    }
    Ok(())
}

/// Weighted pipeline with weights drawn from the preference term set.
pub fn aepcm_run(
    prefs: &PreferenceVector,
    weights: &WeightVector,
    ts: &TermSet,
    w: &RetranslationWeights,
) -> Result<T1Outcome> {
    aepcm_run_with(prefs, weights, ts, ts, w)
}

/// Weighted pipeline whose linguistic weights live on their own term set.
///
/// Each preference tri-tuple is multiplied component-wise by its weight
/// tri-tuple and the products are averaged over the number of preferences
/// (not over the weight mass).
pub fn aepcm_run_with(
    prefs: &PreferenceVector,
    weights: &WeightVector,
    ts: &TermSet,
    weight_ts: &TermSet,
    w: &RetranslationWeights,
) -> Result<T1Outcome> {
    check_lengths(prefs, weights)?;
    let pref_parts = uniform_partition(ts);
    let weight_parts = uniform_partition(weight_ts);
    let mut tuples = Vec::with_capacity(prefs.len());
    for (&p, &wi) in prefs.entries().iter().zip(weights.entries()) {
        let pt = pref_parts[ts.check_index(p)?];
        let wt = weight_parts[weight_ts.check_index(wi)?];
        tuples.push(tri_product(&pt, &wt)?);
    }
    let collective = epcm_manipulate(&tuples)?;
    let recommended = euclidean_retranslate(&collective, ts, w);
    Ok(T1Outcome {
        tuples,
        collective,
        recommended,
    })
}

/// Non-membership tri-tuple of term `idx`: the mean of every other term.
pub fn ifs_nonmembership(idx: usize, ts: &TermSet) -> Result<TriTuple> {
    if ts.max_index() == 0 {
        return Err(Error::SingletonTermSet);
    }
    ts.check_index(idx)?;
    let others: Vec<TriTuple> = uniform_partition(ts)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| *k != idx)
        .map(|(_, t)| t)
        .collect();
    epcm_manipulate(&others)
}

pub fn ifs_pair(idx: usize, ts: &TermSet) -> Result<IfsTriPair> {
    Ok(IfsTriPair {
        membership: ts.tri_tuple(idx)?,
        non_membership: ifs_nonmembership(idx, ts)?,
    })
}

pub fn ifscm_run(
    prefs: &PreferenceVector,
    weights: &WeightVector,
    ts: &TermSet,
    w: &RetranslationWeights,
) -> Result<IfsOutcome> {
    ifscm_run_with(prefs, weights, ts, ts, w)
}

/// Both channels are weighted, averaged and retranslated independently.
pub fn ifscm_run_with(
    prefs: &PreferenceVector,
    weights: &WeightVector,
    ts: &TermSet,
    weight_ts: &TermSet,
    w: &RetranslationWeights,
) -> Result<IfsOutcome> {
    check_lengths(prefs, weights)?;
    let mut pairs = Vec::with_capacity(prefs.len());
    for (&p, &wi) in prefs.entries().iter().zip(weights.entries()) {
        let pp = ifs_pair(p, ts)?;
        let wp = ifs_pair(wi, weight_ts)?;
        pairs.push(IfsTriPair {
            membership: tri_product(&pp.membership, &wp.membership)?,
            non_membership: tri_product(&pp.non_membership, &wp.non_membership)?,
        });
    }
    let mem: Vec<TriTuple> = pairs.iter().map(|p| p.membership).collect();
    let non: Vec<TriTuple> = pairs.iter().map(|p| p.non_membership).collect();
    let membership = epcm_manipulate(&mem)?;
    let non_membership = epcm_manipulate(&non)?;
    Ok(IfsOutcome {
        recommended: euclidean_retranslate(&membership, ts, w),
        recommended_non_membership: euclidean_retranslate(&non_membership, ts, w),
        pairs,
        membership,
        non_membership,
    })
}
