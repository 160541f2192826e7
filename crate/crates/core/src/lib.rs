//! Exact-arithmetic certification of symmetric-binomial approximation
//! bounds, via the exchangeable-pair (Stein-method) machinery.
//!
//! The crate constructs integer-supported laws with exact rational
//! probabilities (Narayana, Poisson-binomial, hypergeometric, and the
//! translated almost-symmetric binomial target written Bi-hat(mu, sigma^2)),
//! represents each exchangeable pair as a reversible birth-death kernel,
//! and certifies total-variation bounds of the shape
//! `sqrt(Var S)/(2 lambda sigma^2) + 1.4/sigma^2` against exactly computed
//! distances. Every inequality that matters is decided in rational
//! arithmetic; floats only enter through the normal CDF/density and the
//! truncated-Poisson comparison, both with documented accuracy.
//!
//! Module map:
//! - [`dist`]: exact distributions and moments.
//! - [`binhat`]: the Bi-hat rounding construction (n_hat, delta, t, shift).
//! - [`floatdist`]: float-backed laws (truncated translated Poisson).
//! - [`normal`]: high-accuracy normal CDF and density.
//! - [`metrics`]: total variation, Kolmogorov and local-limit statistics.
//! - [`stein`]: kernels, pair diagnostics, the abstract bound, the Stein
//!   operator and its characterization / identity / estimate checks.
//! - [`narayana`]: the Narayana chain, moment ladder, Var S closed form,
//!   and the 12/n certification.
//! - [`pb`]: Poisson-binomial certification and the translated-Poisson
//!   comparison.
//! - [`hyp`]: hypergeometric certification and its variance expansion.

pub mod binhat;
pub mod dist;
mod error;
pub mod floatdist;
pub mod hyp;
pub mod metrics;
pub mod narayana;
pub mod normal;
pub mod pb;
mod poly;
pub mod rat;
pub mod report;
pub mod stein;

pub use binhat::{binhat_dist, binhat_params, BinHatParams};
pub use dist::{ExactDist, MomentSet};
pub use error::Error;
pub use floatdist::FloatDist;
pub use rat::Rat;
pub use stein::{BirthDeathKernel, BoundReport, CertStatus, PairDiagnostics, SqrtBound, TestFn};
