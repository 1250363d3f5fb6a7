use serde::{Deserialize, Serialize};

use super::fou::It2Fou;
use crate::error::{Error, Result};

pub const DEFAULT_GRID: usize = 200;
pub const MIN_GRID: usize = 16;
const KM_MAX_ITER: usize = 1000;

/// Switch-point search used for type reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeReducer {
    Km,
    Ekm,
    #[default]
    Eiasc,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentroidInterval {
    pub c_l: f64,
    pub c_r: f64,
    pub grid_size: usize,
}

pub fn centroid_mean(ci: &CentroidInterval) -> f64 {
    (ci.c_l + ci.c_r) / 2.0
}

/// Sampled FOU: grid points with lower and upper memberships.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    pub x: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Sampled {
    pub fn of(fou: &It2Fou, n_grid: usize) -> Self {
        let (a, d) = fou.support();
        let x: Vec<f64> = (0..n_grid)
            .map(|i| a + i as f64 * (d - a) / (n_grid - 1) as f64)
            .collect();
        let lower = x.iter().map(|&v| fou.lmf().membership(v).min(fou.umf().membership(v))).collect();
        let upper = x.iter().map(|&v| fou.umf().membership(v)).collect();
        Sampled { x, lower, upper }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Weighted mean with the first `k` points on the upper function and the
    /// rest on the lower one. `None` when the weights vanish.
    pub fn left_value(&self, k: usize) -> Option<f64> {
        self.mixed(k, &self.upper, &self.lower)
    }

    /// Weighted mean with the first `k` points on the lower function and the
    /// rest on the upper one.
    pub fn right_value(&self, k: usize) -> Option<f64> {
        self.mixed(k, &self.lower, &self.upper)
    }

    fn mixed(&self, k: usize, head: &[f64], tail: &[f64]) -> Option<f64> {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..self.len() {
            let w = if i < k { head[i] } else { tail[i] };
            num += self.x[i] * w;
            den += w;
        }
        (den > 0.0).then(|| num / den)
    }

    fn count_at_or_below(&self, c: f64) -> usize {
        self.x.partition_point(|&v| v <= c)
    }
}

/// Centroid interval `[c_l, c_r]` of a FOU over an `n_grid` point grid.
pub fn centroid_bounds(fou: &It2Fou, n_grid: usize, reducer: TypeReducer) -> Result<CentroidInterval> {
    if n_grid < MIN_GRID {
        return Err(Error::InvalidConfig(format!("grid size {n_grid} below {MIN_GRID}")));
    }
    let s = Sampled::of(fou, n_grid);
    let (c_l, c_r) = reduce(&s, reducer)?;
    Ok(CentroidInterval {
        c_l,
        c_r: c_r.max(c_l),
        grid_size: n_grid,
    })
}

/// `(c_l, c_r)` of sampled memberships.
pub fn reduce(s: &Sampled, reducer: TypeReducer) -> Result<(f64, f64)> {
    let (kl, kr) = switch_points(s, reducer)?;
    let c_l = s.left_value(kl).ok_or_else(degenerate)?;
    let c_r = s.right_value(kr).ok_or_else(degenerate)?;
    Ok((c_l, c_r))
}

/// Switch points `(L, R)` for sampled memberships over ascending `x`:
/// `c_l` puts the first `L` points on the upper function, `c_r` puts the
/// first `R` points on the lower one.
pub fn switch_points(s: &Sampled, reducer: TypeReducer) -> Result<(usize, usize)> {
    if s.upper.iter().sum::<f64>() <= 0.0 {
        return Err(Error::DegenerateFou("zero upper membership mass on the grid".into()));
    }
    let (kl, kr) = match reducer {
        TypeReducer::Km => (km_left(s), km_right(s)),
        TypeReducer::Ekm => (ekm_left(s), ekm_right(s)),
        TypeReducer::Eiasc => (eiasc_left(s), eiasc_right(s)),
    };
    Ok((kl.unwrap_or_else(|| scan(s, true)), kr.unwrap_or_else(|| scan(s, false))))
}

fn degenerate() -> Error {
    Error::DegenerateFou("zero membership mass at the switch point".into())
}

/// Exhaustive switch-point scan; used when an iterative search stalls on a
/// zero-mass configuration.
fn scan(s: &Sampled, left: bool) -> usize {
    let value = |k| if left { s.left_value(k) } else { s.right_value(k) };
    let mut best = None::<(usize, f64)>;
    for k in 0..=s.len() {
        if let Some(v) = value(k) {
            let better = match best {
                None => true,
                Some((_, b)) => (left && v < b) || (!left && v > b),
            };
            if better {
                best = Some((k, v));
            }
        }
    }
    best.map(|b| b.0).unwrap_or(s.len())
}

fn km_left(s: &Sampled) -> Option<usize> {
    km(s, true)
}

fn km_right(s: &Sampled) -> Option<usize> {
    km(s, false)
}

fn km(s: &Sampled, left: bool) -> Option<usize> {
    let theta: Vec<f64> = s.lower.iter().zip(&s.upper).map(|(l, u)| (l + u) / 2.0).collect();
    let den: f64 = theta.iter().sum();
    if den <= 0.0 {
        return None;
    }
    let mut c = s.x.iter().zip(&theta).map(|(x, t)| x * t).sum::<f64>() / den;
    let mut k = usize::MAX;
    for _ in 0..KM_MAX_ITER {
        let k_new = s.count_at_or_below(c);
        if k_new == k {
            return Some(k);
        }
        k = k_new;
        c = if left { s.left_value(k)? } else { s.right_value(k)? };
    }
    None
}

fn ekm_left(s: &Sampled) -> Option<usize> {
    ekm(s, true, (s.len() as f64 / 2.4).round() as usize)
}

fn ekm_right(s: &Sampled) -> Option<usize> {
    ekm(s, false, (s.len() as f64 / 1.7).round() as usize)
}

fn ekm(s: &Sampled, left: bool, k0: usize) -> Option<usize> {
    let (head, tail) = if left { (&s.upper, &s.lower) } else { (&s.lower, &s.upper) };
    let start = |k: usize| {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..s.len() {
            let w = if i < k { head[i] } else { tail[i] };
            num += s.x[i] * w;
            den += w;
        }
        (num, den)
    };
    let mut k = k0.min(s.len());
    let (mut num, mut den) = start(k);
    if den <= 0.0 {
        k = if left { s.len() } else { 0 };
        (num, den) = start(k);
        if den <= 0.0 {
            return None;
        }
    }
    for _ in 0..KM_MAX_ITER {
        let c = num / den;
        let k_new = s.count_at_or_below(c);
        if k_new == k {
            return Some(k);
        }
        // Points moving between the head and tail regions swap weights.
        let (lo, hi, sign) = if k_new > k { (k, k_new, 1.0) } else { (k_new, k, -1.0) };
        for i in lo..hi {
            let dw = sign * (head[i] - tail[i]);
            num += s.x[i] * dw;
            den += dw;
        }
        k = k_new;
        if den <= 0.0 {
            return None;
        }
    }
    None
}

fn eiasc_left(s: &Sampled) -> Option<usize> {
    let n = s.len();
    let mut num: f64 = s.x.iter().zip(&s.lower).map(|(x, l)| x * l).sum();
    let mut den: f64 = s.lower.iter().sum();
    let mut k = 0;
    while k < n {
        let dw = s.upper[k] - s.lower[k];
        num += s.x[k] * dw;
        den += dw;
        k += 1;
        if den > 0.0 && (k == n || num / den <= s.x[k]) {
            return Some(k);
        }
    }
    None
}

fn eiasc_right(s: &Sampled) -> Option<usize> {
    let n = s.len();
    let mut num: f64 = s.x.iter().zip(&s.lower).map(|(x, l)| x * l).sum();
    let mut den: f64 = s.lower.iter().sum();
    let mut k = n;
    while k > 0 {
        k -= 1;
        let dw = s.upper[k] - s.lower[k];
        num += s.x[k] * dw;
        den += dw;
        if den > 0.0 && (k == 0 || num / den >= s.x[k - 1]) {
            return Some(k);
        }
    }
    None
}
