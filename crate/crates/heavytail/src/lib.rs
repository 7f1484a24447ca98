// SPDX-License-Identifier: MIT

//! Simulation and numerical verification of heavy-tailed linear processes.
//!
//! The crate builds the objects that appear in the classical limit theory for
//! moving averages with regularly varying innovations, and verifies their
//! advertised behavior numerically:
//!
//! * [`dist`] — two-sided Pareto laws in the domain of attraction of an
//!   α-stable distribution, with exact quantiles and truncated moments.
//! * [`kernels`] — step/interpolated simulation kernels, limit kernels, and
//!   their moduli of continuity.
//! * [`gfp`] — coefficient engine for (g,F)- and FARIMA processes: series
//!   expansion, partial sums, regular-variation diagnostics, and the
//!   gamma-ratio expansion oracle.
//! * [`simulate`] — path simulation, the exact middle/extreme truncation
//!   decomposition, and LePage-series fractional Lévy limits.
//! * [`pointproc`] — point patterns of rescaled exceedances and their Poisson
//!   limit, plus the extreme-value CDF.
//! * [`harness`] — seeded, replicable Monte Carlo experiments,
//!   Kolmogorov–Smirnov statistics, and the acceptance suite.
//! * [`cli`] — the command-line front end used by the `heavytail` binary.
//!
//! Everything is deterministic given a seed: replicate streams are derived by
//! hashing `(base_seed, replicate_index)`, so results do not depend on thread
//! count or completion order. The environment variable `HEAVYTAIL_THREADS`
//! caps the worker pool used by replicated experiments.

pub mod cli;
pub mod dist;
pub mod error;
pub mod gfp;
pub mod harness;
pub mod kernels;
pub mod numerics;
pub mod pointproc;
pub mod rng;
pub mod simulate;

pub use error::{Error, Result};
