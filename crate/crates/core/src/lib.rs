//! Exact-arithmetic toolkit for gaps in product sequences `B = A·A`.
//!
//! * [`sets`]: finite integer sets, windows, density estimators and dense
//!   window extraction.
//! * [`sidon`]: Erdős–Turán Sidon sets and their verification.
//! * [`constructions`]: block sequences `⋃ (x_n + A_n)` whose products are
//!   far apart, with an exhaustive cross-block separation check.
//! * [`products`]: product sets, windowed enumeration and gap statistics.
//! * [`gap_finders`]: pigeonhole certificates forcing products close together.
//! * [`quotients`]: quotient sets, gcd classes and the `α⁴N²/9` bound.
//! * [`scan`]: seeded empirical scans driven by an [`scan::ExperimentConfig`].

pub mod constructions;
pub mod error;
pub mod gap_finders;
mod json;
pub mod products;
pub mod quotients;
pub mod rng;
pub mod scan;
pub mod sets;
pub mod sidon;

pub use error::{Error, Result};
pub use sets::{DensityValue, FiniteIntegerSet, Window};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
