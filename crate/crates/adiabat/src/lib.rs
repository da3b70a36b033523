//! Transformability of finite-dimensional spectra under majorization-based
//! operations, with and without error tolerance.
//!
//! The crate decides four families of questions about a pair of spectra:
//!
//! - **exact**: does one spectrum majorize the other?
//! - **smooth**: does majorization hold after moving each endpoint by at
//!   most a total trace distance `eps` (input, output, or split smoothing
//!   — all equivalent, all implemented)?
//! - **probabilistic**: can the source majorize the target mixed with
//!   weight `eps` of some arbitrary state?
//! - **catalytic**: does tensoring a catalyst onto both sides make the
//!   smooth relation hold?
//!
//! Alongside the decisions it computes the entropies that characterise
//! them — min/max entropy, their smoothed versions from the
//! hypothesis-testing program, von Neumann entropy, meter-derived and
//! battery variants — plus embezzling-catalyst construction, entropy-rate
//! scans of tensor-power families, and exact brute-force oracles that gate
//! every heuristic construction.
//!
//! Two numeric modes share one generic implementation: `f64` with a global
//! comparison tolerance, and exact `BigRational` arithmetic. Spectra are
//! run-length compressed with big-integer multiplicities, so a 2000-fold
//! tensor power of a qubit is a perfectly ordinary value.

pub mod asymptotics;
pub mod catalysis;
mod error;
pub mod io;
pub mod meters;
pub mod oracle;
pub mod sampling;
pub mod scalar;
pub mod smoothing;
pub mod spectrum;
pub mod transforms;

pub use error::{Error, Result};
pub use scalar::{NumericKind, NumericMode, Scalar};
pub use spectrum::{EntropySummary, Run, Spectrum};
pub use transforms::{TransformMode, TransformQuery, TransformReport};
