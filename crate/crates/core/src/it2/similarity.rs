use super::centroid::{centroid_bounds, centroid_mean, TypeReducer};
use super::fou::It2Fou;
use crate::error::{Error, Result};

/// Jaccard similarity of two FOUs sampled on a common grid spanning both supports.
pub fn jaccard_similarity(a: &It2Fou, b: &It2Fou, n_grid: usize) -> Result<f64> {
    if n_grid < 2 {
        return Err(Error::InvalidConfig(format!("grid size {n_grid} below 2")));
    }
    let lo = a.support().0.min(b.support().0);
    let hi = a.support().1.max(b.support().1);
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n_grid {
        let x = lo + i as f64 * (hi - lo) / (n_grid - 1) as f64;
        let (la, ua) = super::fou_membership_bounds(a, x);
        let (lb, ub) = super::fou_membership_bounds(b, x);
        num += ua.min(ub) + la.min(lb);
        den += ua.max(ub) + la.max(lb);
    }
    if den <= 0.0 {
        return Err(Error::DegenerateFou("no membership mass on the similarity grid".into()));
    }
    Ok((num / den).clamp(0.0, 1.0))
}

/// Indices ordered by descending centroid mean; ties keep input order.
pub fn rank_by_centroid(fous: &[It2Fou], n_grid: usize, reducer: TypeReducer) -> Result<Vec<usize>> {
    if fous.is_empty() {
        return Err(Error::EmptyInput);
    }
    let means = fous
        .iter()
        .map(|f| centroid_bounds(f, n_grid, reducer).map(|c| centroid_mean(&c)))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..fous.len()).collect();
    order.sort_by(|&i, &j| means[j].total_cmp(&means[i]));
    Ok(order)
}
