//! Words in the generators `t_ij^(r)`, the straightening engine, and
//! truncated series over it.

mod engine;
mod series;
mod word;

pub use engine::{Engine, EngineStats};
pub use series::{apply_mu_f, apply_mu_f_series, apply_tau, Bivar, BivarSeries, SeriesError, SeriesRing, TruncSeries};
pub use word::{raw_product, Gen, NcPoly, PolyAcc, Word};
