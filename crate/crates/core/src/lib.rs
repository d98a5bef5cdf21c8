//! Exact arithmetic for truncated t-adic symmetric multiple zeta values.
//!
//! Indices, words over `{x, y}` and their harmonic and shuffle products live in
//! [`index`], [`word`] and [`lincomb`]. Truncated values and their t-adic
//! symmetric versions are in [`truncated`], regularized limits in
//! [`regularization`] and [`numeric`], colored rooted trees in [`trees`],
//! Mordell-Tornheim sums in [`mt`] and finite values modulo prime powers in
//! [`finite`]. Named evaluators and verification suites are collected in
//! [`registry`].

pub mod error;
pub mod finite;
pub mod index;
pub mod lincomb;
pub mod mt;
pub mod numeric;
pub mod registry;
pub mod regularization;
pub mod scalar;
pub mod trees;
pub mod series;
pub mod suites;
pub mod truncated;
pub mod verdict;
pub mod word;

pub use error::{Error, Result};
pub use index::Index;
pub use lincomb::{Bullet, LinComb};
pub use series::{Series, TruncatedSeries};
pub use truncated::{TruncatedValues, TruncationParams};
pub use verdict::{DsrVerdict, Mismatch, Verdict};
pub use word::{Letter, Word};
