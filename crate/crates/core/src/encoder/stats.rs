use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};
use statrs::function::gamma::ln_gamma;

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator); zero for a single value.
pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m).powi(2)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// Linearly interpolated sample quantile (Hyndman-Fan type 7).
pub fn quantile(xs: &[f64], p: f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let h = (v.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(v.len() - 1);
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal")
}

/// Two-sided normal tolerance factor (Howe's approximation): with confidence
/// `1 - gamma` the interval `mean ± k s` covers at least `1 - alpha` of the
/// population. Infinite below two observations.
pub fn two_sided_k(n: usize, gamma: f64, alpha: f64) -> f64 {
    if n < 2 {
        return f64::INFINITY;
    }
    let nu = (n - 1) as f64;
    let z = std_normal().inverse_cdf(1.0 - alpha / 2.0);
    let chi = ChiSquared::new(nu).expect("positive dof").inverse_cdf(gamma);
    (nu * (1.0 + 1.0 / n as f64) * z * z / chi).sqrt()
}

/// One-sided normal tolerance factor from the noncentral t distribution:
/// `k = t'_{1-gamma}(n - 1, z_{1-alpha} sqrt(n)) / sqrt(n)`.
pub fn one_sided_k(n: usize, gamma: f64, alpha: f64) -> f64 {
    if n < 2 {
        return f64::INFINITY;
    }
    let nf = n as f64;
    let nu = nf - 1.0;
    let delta = std_normal().inverse_cdf(1.0 - alpha) * nf.sqrt();
    let target = 1.0 - gamma;
    let (mut lo, mut hi) = (delta, delta.max(1.0));
    while noncentral_t_cdf(hi, nu, delta) < target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if noncentral_t_cdf(mid, nu, delta) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi) / nf.sqrt()
}

/// `P(T <= t)` for `T = (Z + delta) / sqrt(V / nu)`, integrating over the
/// chi-distributed `sqrt(V)` with composite Simpson's rule.
fn noncentral_t_cdf(t: f64, nu: f64, delta: f64) -> f64 {
    const STEPS: usize = 4000;
    let norm = std_normal();
    let ln_c = (nu / 2.0 - 1.0) * std::f64::consts::LN_2 + ln_gamma(nu / 2.0);
    let chi_pdf = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        ((nu - 1.0) * u.ln() - u * u / 2.0 - ln_c).exp()
    };
    let upper = nu.sqrt() + 12.0;
    let h = upper / STEPS as f64;
    let f = |u: f64| norm.cdf(t * u / nu.sqrt() - delta) * chi_pdf(u);
    let mut acc = f(0.0) + f(upper);
    for i in 1..STEPS {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    acc * h / 3.0
}
