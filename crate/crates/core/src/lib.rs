//! Square-difference-free sets and the exponential-sum machinery used to count
//! square differences.
//!
//! The crate is organised by subsystem:
//!
//! - [`sets`]: bitset-backed subsets of `{1..N}` and physical-side counting of
//!   pairs `(x, x - n^2)`.
//! - [`solver`]: exact and bounded values of `D(N)`, the largest
//!   square-difference-free subset of `{1..N}`, plus certificates and a
//!   persistent cache.
//! - [`fourier`]: the Weyl sum over squares, set transforms, and the
//!   transform-side counting identity.
//! - [`arcs`]: Dirichlet approximation, major/minor arc classification, Gauss
//!   sums, the Fresnel-type integral and the estimates built on them.
//! - [`construction`]: the doubled set `A' ∪ (A' + q^2)` with `q = lcm{1..m}`.
//! - [`varnavides`]: square-gap progressions and the averaging lower bound.
//! - [`suites`]: verification sweeps that produce reports.
//! - [`cli`]: the `sqdiff` command-line surface and report pipelines.

pub mod arcs;
pub mod cli;
pub mod construction;
pub mod error;
pub mod fourier;
pub mod numeric;
pub mod report;
pub mod rng;
pub mod sets;
pub mod solver;
pub mod suites;
pub mod varnavides;

pub use error::{Error, Result};
pub use report::EstimateReport;
pub use sets::IndicatorSet;
