//! Squeezed and coherent states of the su(1,1) discrete series.
//!
//! The crate solves the ladder-operator eigenvalue problem
//! `(mu J- + nu J+) |beta> = beta |beta>` on truncated discrete-series
//! representations, builds the associated exponential, Laguerre cut-off and
//! displacement-operator coherent states, applies them to the two-particle
//! Calogero-Sutherland model, embeds them in four bosonic realizations, and
//! numerically certifies the convergence radii of the displacement-operator
//! power series.
//!
//! Entry points by topic:
//!
//! * [`algebra`]: the truncated representation and factorial brackets.
//! * [`squeezed`]: ladder eigenstates, exponential and Laguerre forms,
//!   displacement operators, uncertainty reports.
//! * [`cs`]: Calogero-Sutherland wavefunctions, densities, peaks and the
//!   classical trajectory.
//! * [`realizations`]: Holstein-Primakoff, amplitude-squared, two-mode and
//!   four-mode (Clebsch-Gordan) bosonic embeddings.
//! * [`convergence`]: power-series radius estimates and the disentangling
//!   identity checks.
//! * [`cli`]: the implementations behind the `su11` binary.
//!
//! The `examples/` directory contains one runnable program per topic; the
//! `su11` binary exposes the same functionality as subcommands.

pub mod algebra;
pub mod cli;
pub mod convergence;
pub mod cs;
pub mod dense;
pub mod error;
pub mod quad;
pub mod realizations;
pub mod squeezed;

pub use algebra::{RepLabel, StateVector};
pub use error::{Result, Su11Error};
pub use squeezed::SqueezeParams;
