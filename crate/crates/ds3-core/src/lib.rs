//! Numerical workbench for the anyonic sector of the D(S₃) quantum double.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`] — dense complex matrices with explicit tolerance contracts
//!   (Jacobi eigensolver, one-sided Jacobi SVD, PSD projection).
//! - [`group`] — the S₃ group, its conjugacy classes and the irreducible
//!   representations entering the anyon model.
//! - [`ribbon`] — ribbon operators for the {A, B, G} anyons: string operators,
//!   basis transforms, the symbolic exchange rewrite, fusion-channel
//!   decomposition and R/B-matrix extraction.
//! - [`dilation`] — unitary embeddings of the non-unitary ribbon operators and
//!   their success-probability analysis.
//! - [`channel`] — Kraus/Choi process representations, purity and fidelity.
//! - [`tomography`] — mutually unbiased bases, synthetic prepare-and-measure
//!   data and constrained least-squares process reconstruction.
//! - [`noise`] — parametric noise channels and the noisy-pipeline benchmark.
//! - [`wfm`] — wavefront-matching inverse design of a two-phase-plane
//!   programmable optical circuit.
//!
//! With the default `parallel` feature the embarrassingly parallel sweeps
//! (tomography trials, noise grids, multi-seed optimisation) run on rayon;
//! without it they fall back to equivalent sequential loops.

pub mod channel;
pub mod dilation;
pub mod group;
pub mod noise;
pub mod numerics;
pub mod par;
pub mod ribbon;
pub mod tomography;
pub mod wfm;

pub use numerics::{ComplexMatrix, SpectralDecomposition, SvdDecomposition};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("matrix contains a non-finite entry")]
    NotFinite,

    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("matrix is not unitary: residual {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("matrix is not positive semidefinite: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("group element {element} lies outside the domain of irrep {irrep}")]
    OutsideIrrepDomain { element: String, irrep: String },

    #[error("irrep {0} is not one-dimensional")]
    NotOneDimensional(String),

    #[error("zero matrix has no scale")]
    ZeroMatrix,

    #[error("scale {alpha} is below the largest singular value {sigma_max}")]
    ScaleTooSmall { alpha: f64, sigma_max: f64 },

    #[error("state is not normalized: norm {0}")]
    NotNormalized(f64),

    #[error("Choi state is not normalized to unit trace: trace {0}")]
    ChoiNotNormalized(f64),

    #[error("fusion channel {0} has zero forward coefficient; ratio undefined")]
    UndefinedFusionChannel(&'static str),

    #[error("invalid {what} index {index} (bound {bound})")]
    InvalidIndex {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("invalid ribbon word: {0}")]
    InvalidWord(String),

    #[error("invalid signal ports: {0}")]
    InvalidPorts(String),

    #[error("mode mixer needs at least {min} modes, got {n}")]
    TooFewModes { n: usize, min: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
