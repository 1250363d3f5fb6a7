use serde::{Deserialize, Serialize};

use super::stats::{mean, one_sided_k, quantile, std_dev, two_sided_k};
use super::{DataInterval, EncoderConfig};
use crate::error::{Error, Result};
use crate::it2::FouClass;

/// Slack on closed acceptance bands so that spreads collapsing to zero do not
/// reject values that differ from their own mean by rounding only.
const BAND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalStats {
    pub m_a: f64,
    pub s_a: f64,
    pub m_b: f64,
    pub s_b: f64,
    pub m_l: f64,
    pub s_l: f64,
}

impl IntervalStats {
    pub fn of(intervals: &[DataInterval]) -> Self {
        let (a, b, l) = columns(intervals);
        IntervalStats {
            m_a: mean(&a),
            s_a: std_dev(&a),
            m_b: mean(&b),
            s_b: std_dev(&b),
            m_l: mean(&l),
            s_l: std_dev(&l),
        }
    }
}

/// Mean and standard deviation of a survivor under a uniform distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurvivorStats {
    pub mean: f64,
    pub std: f64,
}

impl SurvivorStats {
    fn of(iv: &DataInterval) -> Self {
        SurvivorStats {
            mean: (iv.a + iv.b) / 2.0,
            std: (iv.b - iv.a) / 12f64.sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DataPart {
    pub survivors: Vec<DataInterval>,
    pub stats: Vec<SurvivorStats>,
    pub summary: IntervalStats,
    /// `[n, n', m', m'', m, m]`; the FS part fills in the last slot.
    pub counts: [usize; 6],
}

fn columns(intervals: &[DataInterval]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let a = intervals.iter().map(|i| i.a).collect();
    let b = intervals.iter().map(|i| i.b).collect();
    let l = intervals.iter().map(|i| i.length()).collect();
    (a, b, l)
}

fn within(x: f64, lo: f64, hi: f64) -> bool {
    x >= lo - BAND_SLACK && x <= hi + BAND_SLACK
}

fn nonempty(v: Vec<DataInterval>, stage: &'static str) -> Result<Vec<DataInterval>> {
    if v.is_empty() {
        Err(Error::AllIntervalsEliminated { stage })
    } else {
        Ok(v)
    }
}

fn bad_data(intervals: &[DataInterval], cfg: &EncoderConfig, check_length: bool) -> Result<Vec<DataInterval>> {
    let m = cfg.scale_max;
    let kept = intervals
        .iter()
        .filter(|i| 0.0 <= i.a && i.a < i.b && i.b <= m && (!check_length || i.length() < m))
        .cloned()
        .collect();
    nonempty(kept, "bad data")
}

fn whisker(values: &[f64], cfg: &EncoderConfig) -> (f64, f64) {
    let q1 = quantile(values, 0.25);
    let q3 = quantile(values, 0.75);
    let iqr = q3 - q1;
    (q1 - cfg.outlier_lower_factor * iqr, q3 + cfg.outlier_upper_factor * iqr)
}

type Selector = fn(&DataInterval) -> f64;

const LEFT: Selector = |i| i.a;
const RIGHT: Selector = |i| i.b;
const LENGTH: Selector = |i| i.length();

/// Keeps intervals whose selected quantities all pass the box-and-whisker test.
fn box_whisker(intervals: Vec<DataInterval>, selectors: &[Selector], cfg: &EncoderConfig) -> Result<Vec<DataInterval>> {
    let bands: Vec<(f64, f64)> = selectors
        .iter()
        .map(|sel| whisker(&intervals.iter().map(sel).collect::<Vec<_>>(), cfg))
        .collect();
    let kept = intervals
        .into_iter()
        .filter(|iv| selectors.iter().zip(&bands).all(|(sel, &(lo, hi))| within(sel(iv), lo, hi)))
        .collect();
    nonempty(kept, "outliers")
}

fn band(values: &[f64], k: f64) -> (f64, f64) {
    let m = mean(values);
    let s = std_dev(values);
    let half = if s == 0.0 { 0.0 } else { k * s };
    (m - half, m + half)
}

/// Keeps intervals whose selected quantities all lie within `mean ± k s`.
fn tolerance(intervals: Vec<DataInterval>, selectors: &[Selector], k: f64) -> Result<Vec<DataInterval>> {
    let bands: Vec<(f64, f64)> = selectors
        .iter()
        .map(|sel| band(&intervals.iter().map(sel).collect::<Vec<_>>(), k))
        .collect();
    let kept = intervals
        .into_iter()
        .filter(|iv| selectors.iter().zip(&bands).all(|(sel, &(lo, hi))| within(sel(iv), lo, hi)))
        .collect();
    nonempty(kept, "tolerance limits")
}

/// Threshold separating the left-end and right-end distributions.
///
/// Of the two roots, the one lying between the means wins; otherwise the one
/// closest to their midpoint. Equal or vanishing spreads give the midpoint.
pub fn epsilon_star(m_a: f64, s_a: f64, m_b: f64, s_b: f64) -> f64 {
    let mid = (m_a + m_b) / 2.0;
    let (va, vb) = (s_a * s_a, s_b * s_b);
    if s_a == 0.0 || s_b == 0.0 || (s_a - s_b).abs() <= 1e-12 * s_a.max(s_b) {
        return mid;
    }
    let disc = (m_a - m_b).powi(2) + 2.0 * (va - vb) * (s_a / s_b).ln();
    let base = m_b * va - m_a * vb;
    let spread = s_a * s_b * disc.max(0.0).sqrt();
    let roots = [(base + spread) / (va - vb), (base - spread) / (va - vb)];
    if roots.iter().any(|r| !r.is_finite()) {
        return mid;
    }
    let (lo, hi) = (m_a.min(m_b), m_a.max(m_b));
    let inside: Vec<f64> = roots.iter().copied().filter(|r| (lo..=hi).contains(r)).collect();
    if inside.len() == 1 {
        return inside[0];
    }
    if (roots[0] - mid).abs() <= (roots[1] - mid).abs() {
        roots[0]
    } else {
        roots[1]
    }
}

fn reasonable(intervals: Vec<DataInterval>, tightened: bool) -> Result<Vec<DataInterval>> {
    let st = IntervalStats::of(&intervals);
    let eps = epsilon_star(st.m_a, st.s_a, st.m_b, st.s_b);
    let kept = intervals
        .into_iter()
        .filter(|iv| {
            iv.a < eps
                && eps < iv.b
                && (!tightened
                    || (2.0 * st.m_a - eps <= iv.a + BAND_SLACK && iv.b <= 2.0 * st.m_b - eps + BAND_SLACK))
        })
        .collect();
    nonempty(kept, "reasonable interval")
}

fn finish(n: usize, stages: [usize; 3], survivors: Vec<DataInterval>) -> DataPart {
    let m = survivors.len();
    DataPart {
        stats: survivors.iter().map(SurvivorStats::of).collect(),
        summary: IntervalStats::of(&survivors),
        survivors,
        counts: [n, stages[0], stages[1], stages[2], m, m],
    }
}

/// Bad data, outlier, tolerance and reasonable-interval filtering as in the
/// original interval approach.
pub fn ia_data_part(intervals: &[DataInterval], cfg: &EncoderConfig) -> Result<DataPart> {
    if intervals.is_empty() {
        return Err(Error::EmptyInput);
    }
    let s1 = bad_data(intervals, cfg, false)?;
    let n1 = s1.len();
    let s2 = box_whisker(s1, &[LEFT, RIGHT, LENGTH], cfg)?;
    let n2 = s2.len();
    let k = two_sided_k(n2, cfg.tolerance_gamma, cfg.tolerance_alpha);
    let s3 = tolerance(s2, &[LEFT, RIGHT, LENGTH], k)?;
    let n3 = s3.len();
    let s4 = reasonable(s3, false)?;
    Ok(finish(intervals.len(), [n1, n2, n3], s4))
}

/// Enhanced filtering: length-aware bad data test, endpoint tests before
/// length tests, a bounded length tolerance factor and a tightened
/// reasonable-interval test.
pub fn eia_data_part(intervals: &[DataInterval], cfg: &EncoderConfig) -> Result<DataPart> {
    if intervals.is_empty() {
        return Err(Error::EmptyInput);
    }
    let s1 = bad_data(intervals, cfg, true)?;
    let n1 = s1.len();
    let s2 = box_whisker(s1, &[LEFT, RIGHT], cfg)?;
    let s2 = box_whisker(s2, &[LENGTH], cfg)?;
    let n2 = s2.len();
    let k = two_sided_k(n2, cfg.tolerance_gamma, cfg.tolerance_alpha);
    let s3 = tolerance(s2, &[LEFT, RIGHT], k)?;
    let lengths: Vec<f64> = s3.iter().map(|i| i.length()).collect();
    let (m_l, s_l) = (mean(&lengths), std_dev(&lengths));
    let s3 = if s_l == 0.0 {
        s3
    } else {
        let k1 = two_sided_k(s3.len(), cfg.tolerance_gamma, cfg.tolerance_alpha);
        let k_prime = k1.min(m_l / s_l).min((cfg.scale_max - m_l) / s_l);
        tolerance(s3, &[LENGTH], k_prime)?
    };
    let n3 = s3.len();
    let s4 = reasonable(s3, true)?;
    Ok(finish(intervals.len(), [n1, n2, n3], s4))
}

/// FOU class from one-sided tolerance limits on the endpoints.
pub fn classify(survivors: &[DataInterval], cfg: &EncoderConfig) -> FouClass {
    let st = IntervalStats::of(survivors);
    let k = one_sided_k(survivors.len(), cfg.tolerance_gamma, cfg.tolerance_alpha);
    let a_lower = if st.s_a == 0.0 { st.m_a } else { st.m_a - k * st.s_a };
    let b_upper = if st.s_b == 0.0 { st.m_b } else { st.m_b + k * st.s_b };
    if a_lower <= 0.0 {
        FouClass::LeftShoulder
    } else if b_upper >= cfg.scale_max {
        FouClass::RightShoulder
    } else {
        FouClass::Interior
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EncoderConfig {
        EncoderConfig::default()
    }

    fn iv(a: f64, b: f64) -> DataInterval {
        DataInterval::new(a, b)
    }

    #[test]
    fn reversed_interval_is_bad_data() {
        let out = ia_data_part(&[iv(3.0, 2.0), iv(2.0, 6.0)], &cfg()).unwrap();
        assert_eq!(out.counts[1], 1);
        assert_eq!(
            ia_data_part(&[iv(3.0, 2.0)], &cfg()),
            Err(Error::AllIntervalsEliminated { stage: "bad data" })
        );
    }

    #[test]
    fn single_interval_statistics() {
        let out = ia_data_part(&[iv(2.0, 6.0)], &cfg()).unwrap();
        assert_eq!(out.survivors, vec![iv(2.0, 6.0)]);
        assert_eq!(out.stats[0].mean, 4.0);
        assert!((out.stats[0].std - 1.1547).abs() < 1e-4);
        assert_eq!(out.counts, [1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn identical_intervals_all_survive() {
        let data = vec![iv(0.1, 0.7); 20];
        for part in [ia_data_part, eia_data_part] {
            let out = part(&data, &cfg()).unwrap();
            assert_eq!(out.counts, [20; 6]);
        }
    }

    #[test]
    fn eia_bad_data() {
        let out = eia_data_part(&[iv(0.0, 10.0), iv(-1.0, 3.0), iv(2.0, 5.0)], &cfg()).unwrap();
        assert_eq!(out.counts[1], 1);
        assert_eq!(
            eia_data_part(&[iv(0.0, 10.0)], &cfg()),
            Err(Error::AllIntervalsEliminated { stage: "bad data" })
        );
    }

    #[test]
    fn extreme_outlier_removed_by_box_whisker() {
        let mut data: Vec<DataInterval> = (0..29)
            .map(|i| {
                let t = i as f64 / 28.0;
                iv(3.8 + 0.4 * t, 5.8 + 0.4 * (1.0 - t))
            })
            .collect();
        data.push(iv(0.1, 9.9));
        let s1 = bad_data(&data, &cfg(), true).unwrap();
        let s2 = box_whisker(s1, &[LEFT, RIGHT], &cfg()).unwrap();
        assert_eq!(s2.len(), 29);
        assert!(!s2.contains(&iv(0.1, 9.9)));
        let out = eia_data_part(&data, &cfg()).unwrap();
        assert!(!out.survivors.contains(&iv(0.1, 9.9)));
        assert!(out.counts[2] <= 29);
    }

    #[test]
    fn whisker_band_uses_asymmetric_factors() {
        let (lo, hi) = whisker(&[1.0, 2.0, 3.0, 4.0], &cfg());
        // q1 = 1.75, q3 = 3.25, iqr = 1.5
        assert!((lo - (1.75 - 1.25 * 1.5)).abs() < 1e-12);
        assert!((hi - (3.25 + 1.5 * 1.5)).abs() < 1e-12);
    }

    #[test]
    fn epsilon_star_cases() {
        assert_eq!(epsilon_star(2.0, 1.0, 6.0, 1.0), 4.0);
        assert_eq!(epsilon_star(2.0, 0.0, 6.0, 0.5), 4.0);
        // Unequal spreads: root between the means where the two normal
        // densities cross.
        let (ma, sa, mb, sb) = (2.0, 0.5, 7.0, 1.5);
        let e = epsilon_star(ma, sa, mb, sb);
        assert!(ma < e && e < mb);
        let pdf = |x: f64, m: f64, s: f64| (-(x - m).powi(2) / (2.0 * s * s)).exp() / s;
        assert!((pdf(e, ma, sa) - pdf(e, mb, sb)).abs() < 1e-12);
    }

    #[test]
    fn survivors_respect_bad_data_rule() {
        let data: Vec<DataInterval> = (0..40)
            .map(|i| iv(i as f64 * 0.37 % 11.0 - 0.5, (i as f64 * 0.53) % 11.0))
            .collect();
        if let Ok(out) = ia_data_part(&data, &cfg()) {
            for s in &out.survivors {
                assert!(0.0 <= s.a && s.a < s.b && s.b <= 10.0);
            }
            assert!(out.counts.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn classification() {
        let c = cfg();
        assert_eq!(classify(&[iv(0.0, 2.0), iv(0.0, 3.0), iv(0.5, 2.5)], &c), FouClass::LeftShoulder);
        assert_eq!(classify(&[iv(8.0, 10.0), iv(7.5, 10.0), iv(8.5, 9.5)], &c), FouClass::RightShoulder);
        assert_eq!(classify(&[iv(4.0, 6.0), iv(4.1, 6.1), iv(3.9, 5.9)], &c), FouClass::Interior);
        assert_eq!(classify(&[iv(3.0, 7.0)], &c), FouClass::Interior);
    }
}
