pub mod codebook;
pub mod encoder;
pub mod engine;
pub mod error;
pub mod it2;
pub mod linguistic;
pub mod ordinal;
pub mod scenario;
pub mod t1_methods;
pub mod two_tuple;

pub use error::{Error, Result};
