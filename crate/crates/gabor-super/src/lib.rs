//! Discrete time-frequency analysis for vector-valued signals on a
//! cyclic group.
//!
//! Signals live on `Z_L` with values in `C^n`. The crate builds Gabor
//! systems on separable lattices, applies their frame operators through
//! the structured correlation form (a short sum of matrix-weighted
//! translates instead of a dense matrix), computes dual windows by
//! matrix-free solvers or in closed form, and verifies duality through
//! bracket biorthogonality. Around that core sit mixed-norm amalgam
//! spaces with submultiplicative weights and the algebra of weighted
//! shift operators, whose inverses can be extracted shift-by-shift.
//!
//! Entry points:
//! - [`signal::VectorSignal`], [`gabor::GaborLattice`]: the data model.
//! - [`gabor::analyze`] / [`gabor::synthesize`]: coefficient maps.
//! - [`walnut::correlations`] / [`walnut::walnut_apply`]: structured
//!   frame-operator application.
//! - [`duality::dual_window`], [`duality::painless_dual`],
//!   [`duality::frame_bounds`]: inversion and bounds.
//! - [`walnut::wexler_raz_check`]: duality verification.
//! - [`amalgam::amalgam_norm`]: weighted mixed norms.
//! - [`shiftalg::ShiftOperator`], [`shiftalg::spectral_invert`]: the
//!   shift-operator algebra.
//!
//! The `examples/` directory walks through each capability; the
//! `gabor-super` binary wraps them for batch use with JSON and CSV
//! input/output.

pub mod amalgam;
pub mod dense;
pub mod duality;
pub mod error;
pub mod gabor;
pub mod json;
pub mod shiftalg;
pub mod signal;
pub mod walnut;

pub use amalgam::{amalgam_norm, AmalgamParams, Exponent, Weight};
pub use duality::{dual_window, frame_bounds, painless_dual, FrameBounds};
pub use error::{Error, Result};
pub use gabor::{analyze, synthesize, GaborCoefficients, GaborLattice};
pub use shiftalg::{spectral_invert, ShiftOperator};
pub use signal::VectorSignal;
pub use walnut::{correlations, walnut_apply, wexler_raz_check};
