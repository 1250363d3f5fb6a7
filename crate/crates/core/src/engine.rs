//! Perceptual-computing engine: interval, fuzzy and linguistic weighted
//! averages, and decoding of the result back into a codebook word.

use serde::{Deserialize, Serialize};

use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::it2::centroid::{switch_points, Sampled};
use crate::it2::{jaccard_similarity, rank_by_centroid, FouClass, It2Fou, Trapezoid, TypeReducer};
use crate::linguistic::{Interval, TriTuple};

pub const DEFAULT_ALPHA_LEVELS: usize = 11;

/// A value or weight fed to the engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operand {
    Interval(Interval),
    Tri(TriTuple),
    Fou(It2Fou),
}

impl Operand {
    fn validate(&self) -> Result<()> {
        if let Operand::Tri(t) = self {
            TriTuple::new(t.l, t.m, t.r)?;
        }
        Ok(())
    }

    /// Type-1 view; `None` for interval type-2 operands.
    pub fn as_type1(&self) -> Option<Trapezoid> {
        match *self {
            Operand::Interval(iv) => Some(Trapezoid { a: iv.lo, b: iv.lo, c: iv.hi, d: iv.hi, height: 1.0 }),
            Operand::Tri(t) => Some(Trapezoid { a: t.l, b: t.m, c: t.m, d: t.r, height: 1.0 }),
            Operand::Fou(_) => None,
        }
    }

    /// Interval type-2 view; type-1 operands become FOUs without uncertainty.
    pub fn to_fou(&self) -> Result<It2Fou> {
        match self {
            Operand::Fou(f) => Ok(*f),
            other => {
                let t = other.as_type1().expect("type-1 operand");
                It2Fou::type1([t.a, t.b, t.c, t.d], FouClass::Interior)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Operator {
    Iwa,
    Fwa,
    Lwa,
}

impl std::fmt::Display for Operator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Operator::Iwa => "IWA",
            Operator::Fwa => "FWA",
            Operator::Lwa => "LWA",
        })
    }
}

pub fn select_operator(values: &[Operand], weights: &[Operand]) -> Operator {
    let all = || values.iter().chain(weights);
    if all().any(|o| matches!(o, Operand::Fou(_))) {
        Operator::Lwa
    } else if all().any(|o| matches!(o, Operand::Tri(_))) {
        Operator::Fwa
    } else {
        Operator::Iwa
    }
}

fn check_lengths(values: usize, weights: usize) -> Result<()> {
    if values == 0 {
        return Err(Error::EmptyInput);
    }
    if values != weights {
        return Err(Error::LengthMismatch { left: values, right: weights });
    }
    Ok(())
}

/// Weighted mean of `x` under weights `w`, summed in operand order.
fn weighted_mean(x: &[f64], w: &[f64]) -> Option<f64> {
    let mut num = 0.0;
    let mut den = 0.0;
    for (xi, wi) in x.iter().zip(w) {
        num += xi * wi;
        den += wi;
    }
    (den > 0.0).then(|| num / den)
}

/// Extreme weighted mean of `x` over weights in `[w_lo, w_hi]`: the minimum
/// when `lower`, else the maximum. The switch point comes from the centroid
/// machinery on sorted `x`; neighbouring switch points are re-evaluated in
/// operand order so the result equals a direct enumeration bit for bit.
fn iwa_bound(x: &[f64], weights: &[Interval], lower: bool) -> Result<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[i].total_cmp(&x[j]));
    let sampled = Sampled {
        x: order.iter().map(|&i| x[i]).collect(),
        lower: order.iter().map(|&i| weights[i].lo).collect(),
        upper: order.iter().map(|&i| weights[i].hi).collect(),
    };
    let (kl, kr) = switch_points(&sampled, TypeReducer::Eiasc).map_err(|_| Error::ZeroWeightMass)?;
    let k = if lower { kl } else { kr };
    let mut best: Option<f64> = None;
    for cand in k.saturating_sub(1)..=(k + 1).min(x.len()) {
        let mut w = vec![0.0; x.len()];
        for (rank, &i) in order.iter().enumerate() {
            let head = rank < cand;
            w[i] = match (lower, head) {
                (true, true) | (false, false) => weights[i].hi,
                _ => weights[i].lo,
            };
        }
        if let Some(v) = weighted_mean(x, &w) {
            best = Some(match best {
                None => v,
                Some(b) if lower => b.min(v),
                Some(b) => b.max(v),
            });
        }
    }
    best.ok_or(Error::ZeroWeightMass)
}

/// Interval weighted average: the range of `sum x_i w_i / sum w_i` as each
/// `x_i` and `w_i` vary over their intervals.
pub fn iwa(values: &[Interval], weights: &[Interval]) -> Result<Interval> {
    check_lengths(values.len(), weights.len())?;
    if let Some(w) = weights.iter().find(|w| w.lo < 0.0) {
        return Err(Error::InvalidWeights(format!("negative weight interval [{}, {}]", w.lo, w.hi)));
    }
    if weights.iter().all(|w| w.hi == 0.0) {
        return Err(Error::ZeroWeightMass);
    }
    let lo: Vec<f64> = values.iter().map(|v| v.lo).collect();
    let hi: Vec<f64> = values.iter().map(|v| v.hi).collect();
    let y_lo = iwa_bound(&lo, weights, true)?;
    let y_hi = iwa_bound(&hi, weights, false)?;
    Ok(Interval { lo: y_lo, hi: y_hi.max(y_lo) })
}

/// α-cut of a trapezoid with apex height `h`, for `alpha <= h`.
fn cut(t: &Trapezoid, alpha: f64) -> Interval {
    let r = (alpha / t.height).min(1.0);
    let lo = t.a + r * (t.b - t.a);
    let hi = t.d - r * (t.d - t.c);
    Interval { lo, hi: hi.max(lo) }
}

/// Result of a fuzzy weighted average as α-level intervals, α ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaLevels {
    pub levels: Vec<(f64, Interval)>,
}

impl AlphaLevels {
    pub fn at(&self, k: usize) -> Interval {
        self.levels[k].1
    }
}

fn alpha_grid(top: f64, n_levels: usize) -> Vec<f64> {
    (0..n_levels)
        .map(|j| if j + 1 == n_levels { top } else { top * j as f64 / (n_levels - 1) as f64 })
        .collect()
}

fn fwa_levels(values: &[Trapezoid], weights: &[Trapezoid], alphas: &[f64]) -> Result<Vec<(f64, Interval)>> {
    let mut out: Vec<(f64, Interval)> = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let xv: Vec<Interval> = values.iter().map(|t| cut(t, alpha)).collect();
        let wv: Vec<Interval> = weights.iter().map(|t| cut(t, alpha)).collect();
        let mut y = iwa(&xv, &wv)?;
        // Keep levels nested against rounding.
        if let Some(&(_, prev)) = out.last() {
            y.lo = y.lo.max(prev.lo).min(prev.hi);
            y.hi = y.hi.min(prev.hi).max(y.lo);
        }
        out.push((alpha, y));
    }
    Ok(out)
}

fn check_levels(n_levels: usize) -> Result<()> {
    if n_levels < 2 {
        return Err(Error::InvalidConfig(format!("need at least 2 alpha levels, got {n_levels}")));
    }
    Ok(())
}

/// Fuzzy weighted average of type-1 operands, computed level by level.
pub fn fwa(values: &[Operand], weights: &[Operand], n_levels: usize) -> Result<AlphaLevels> {
    check_lengths(values.len(), weights.len())?;
    check_levels(n_levels)?;
    let to_t1 = |ops: &[Operand]| {
        ops.iter()
            .map(|o| {
                o.validate()?;
                o.as_type1()
                    .ok_or_else(|| Error::validation("operands", "interval type-2 operand given to the fuzzy weighted average"))
            })
            .collect::<Result<Vec<_>>>()
    };
    let xv = to_t1(values)?;
    let wv = to_t1(weights)?;
    if let Some(w) = wv.iter().find(|w| w.a < 0.0) {
        return Err(Error::InvalidWeights(format!("weight support starts below zero at {}", w.a)));
    }
    Ok(AlphaLevels {
        levels: fwa_levels(&xv, &wv, &alpha_grid(1.0, n_levels))?,
    })
}

/// Least-squares line `x = p + q alpha` through the points.
fn fit_line(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let ma = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mx = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - ma).powi(2)).sum();
    if sxx == 0.0 {
        return (mx, 0.0);
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - ma) * (p.1 - mx)).sum();
    let q = sxy / sxx;
    (mx - q * ma, q)
}

/// Trapezoid `(a, b, c, d)` fitted to α-level intervals spanning `[0, top]`.
fn fit_trapezoid(levels: &[(f64, Interval)], top: f64) -> [f64; 4] {
    let left: Vec<(f64, f64)> = levels.iter().map(|(a, iv)| (*a, iv.lo)).collect();
    let right: Vec<(f64, f64)> = levels.iter().map(|(a, iv)| (*a, iv.hi)).collect();
    let (pl, ql) = fit_line(&left);
    let (pr, qr) = fit_line(&right);
    let base = levels[0].1;
    let mut a = (pl).max(base.lo);
    let mut b = pl + ql * top;
    let mut c = pr + qr * top;
    let mut d = (pr).min(base.hi);
    if b > c {
        let m = 0.5 * (b + c);
        b = m;
        c = m;
    }
    b = b.clamp(base.lo, base.hi);
    c = c.clamp(b, base.hi);
    a = a.min(b);
    d = d.max(c);
    [a, b, c, d]
}

/// Output of the linguistic weighted average: the refitted FOU plus the raw
/// α-level envelopes it was fitted to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LwaOutput {
    pub fou: It2Fou,
    pub umf_levels: Vec<(f64, Interval)>,
    pub lmf_levels: Vec<(f64, Interval)>,
}

/// Linguistic weighted average of FOUs. The upper function is the fuzzy
/// weighted average of the operands' upper functions; the lower function
/// that of the lower functions, up to the smallest lower height involved.
pub fn lwa(values: &[It2Fou], weights: &[It2Fou], n_levels: usize) -> Result<LwaOutput> {
    check_lengths(values.len(), weights.len())?;
    check_levels(n_levels)?;
    if let Some(w) = weights.iter().find(|w| w.umf().a < 0.0) {
        return Err(Error::InvalidWeights(format!("weight support starts below zero at {}", w.umf().a)));
    }
    let umf = |fs: &[It2Fou]| fs.iter().map(|f| *f.umf()).collect::<Vec<_>>();
    let lmf = |fs: &[It2Fou]| fs.iter().map(|f| *f.lmf()).collect::<Vec<_>>();
    let h_min = values
        .iter()
        .chain(weights)
        .map(|f| f.lmf().height)
        .fold(1.0, f64::min);

    let umf_levels = fwa_levels(&umf(values), &umf(weights), &alpha_grid(1.0, n_levels))?;
    let lmf_levels = fwa_levels(&lmf(values), &lmf(weights), &alpha_grid(h_min, n_levels))?;

    let [a, b, c, d] = fit_trapezoid(&umf_levels, 1.0);
    let [mut e, mut f, mut g, mut h] = fit_trapezoid(&lmf_levels, h_min);
    // Nest the lower function inside the upper one.
    let f_min = a + h_min * (b - a);
    let g_max = d - h_min * (d - c);
    e = e.max(a);
    h = h.min(d);
    f = f.max(f_min).max(e);
    g = g.min(g_max).min(h);
    if f > g {
        let m = (0.5 * (f + g)).clamp(f_min, g_max);
        f = m;
        g = m;
        e = e.min(m);
        h = h.max(m);
    }
    let class = match values[0].class() {
        c if values.iter().all(|v| v.class() == c) => c,
        _ => FouClass::Interior,
    };
    let fou = It2Fou::new([a, b, c, d], [e, f, g, h, h_min], class)?;
    Ok(LwaOutput { fou, umf_levels, lmf_levels })
}

/// Engine output, by operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregate {
    Interval(Interval),
    Fuzzy(AlphaLevels),
    Linguistic(LwaOutput),
}

impl Aggregate {
    /// FOU view used for decoding.
    pub fn to_fou(&self) -> Result<It2Fou> {
        match self {
            Aggregate::Interval(iv) => It2Fou::type1([iv.lo, iv.lo, iv.hi, iv.hi], FouClass::Interior),
            Aggregate::Fuzzy(levels) => It2Fou::type1(fit_trapezoid(&levels.levels, 1.0), FouClass::Interior),
            Aggregate::Linguistic(out) => Ok(out.fou),
        }
    }
}

/// Picks the operator from the operand kinds and applies it.
pub fn aggregate(values: &[Operand], weights: &[Operand], n_levels: usize) -> Result<(Operator, Aggregate)> {
    check_lengths(values.len(), weights.len())?;
    for o in values.iter().chain(weights) {
        o.validate()?;
    }
    let op = select_operator(values, weights);
    let out = match op {
        Operator::Iwa => {
            let iv = |ops: &[Operand]| {
                ops.iter()
                    .map(|o| match o {
                        Operand::Interval(iv) => *iv,
                        _ => unreachable!("interval operator only sees intervals"),
                    })
                    .collect::<Vec<_>>()
            };
            Aggregate::Interval(iwa(&iv(values), &iv(weights))?)
        }
        Operator::Fwa => Aggregate::Fuzzy(fwa(values, weights, n_levels)?),
        Operator::Lwa => {
            let fous = |ops: &[Operand]| ops.iter().map(Operand::to_fou).collect::<Result<Vec<_>>>();
            Aggregate::Linguistic(lwa(&fous(values)?, &fous(weights)?, n_levels)?)
        }
    };
    Ok((op, out))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decoded {
    pub word: String,
    pub index: usize,
    pub score: f64,
    pub scores: Vec<(String, f64)>,
    /// Set when nothing in the codebook overlaps the result.
    pub low_confidence: bool,
}

/// Codebook word most similar to `y`; ties go to the earlier entry.
pub fn decode_word(y: &It2Fou, cb: &Codebook, n_grid: usize) -> Result<Decoded> {
    cb.validate()?;
    let scores: Vec<(String, f64)> = cb
        .entries()
        .iter()
        .map(|e| (e.word.clone(), jaccard_similarity(y, &e.fou, n_grid).unwrap_or(0.0)))
        .collect();
    let mut index = 0;
    for (i, (_, s)) in scores.iter().enumerate() {
        if *s > scores[index].1 {
            index = i;
        }
    }
    let score = scores[index].1;
    Ok(Decoded {
        word: scores[index].0.clone(),
        index,
        score,
        scores,
        low_confidence: score == 0.0,
    })
}

pub fn decode_rank(fous: &[It2Fou], n_grid: usize, reducer: TypeReducer) -> Result<Vec<usize>> {
    rank_by_centroid(fous, n_grid, reducer)
}
