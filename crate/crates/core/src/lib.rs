//! Exact singular elliptic genus of normal surfaces.
//!
//! The crate computes the elliptic genus of a pair `(X, C)` given by a smooth
//! surface with a curve configuration, adds the combinatorial correction for
//! `-1` discrepancies, and cross-checks the result against independent
//! oracles: the stringy chi_y formula, P^1 localization, perturbation limits
//! and numeric theta identities.

pub mod coeff;
pub mod graph;
pub mod qseries;
pub mod surface;
pub mod theta;
pub mod genus;
pub mod cli;
