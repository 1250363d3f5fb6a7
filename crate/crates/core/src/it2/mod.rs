//! Interval type-2 word models and the operations on them.

pub mod centroid;
pub mod fou;
pub mod similarity;

pub use centroid::{centroid_bounds, centroid_mean, CentroidInterval, TypeReducer, DEFAULT_GRID};
pub use fou::{fou_membership_bounds, FouClass, It2Fou, Trapezoid};
pub use similarity::{jaccard_similarity, rank_by_centroid};
