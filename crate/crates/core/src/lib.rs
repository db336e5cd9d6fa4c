//! Exact computer algebra for the extended orthosymplectic Yangian
//! `X(osp(N|2m))`: the R-matrix, a straightening engine for the RTT
//! generators, truncated series, Gauss decomposition and Drinfeld currents,
//! and a harness that checks the known relations both symbolically and in
//! the evaluation representation.

pub mod evalrep;
pub mod gauss;
pub mod matrix;
pub mod ncseries;
pub mod poly;
pub mod rational;
pub mod relcheck;
pub mod ring;
pub mod sample;
pub mod superspace;

pub use rational::Q;
pub use superspace::{SpaceError, SuperSpace};
