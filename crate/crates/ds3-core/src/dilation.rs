//! Unitary embeddings of non-unitary operators.
//!
//! A target T with largest singular value σ_max is rescaled to T/α (α ≥ σ_max)
//! and embedded as the top-left block of a larger unitary or isometry. Three
//! constructions are provided: the 2n×2n SVD block encoding, the minimal-row
//! isometry (which reports the smallest number of auxiliary modes an exact
//! embedding needs), and the fixed 8×8 three-qubit unitary that encodes the
//! minimal G ribbon at α = 2.
//!
//! Applying the embedded operator succeeds only when the ancilla is found in
//! its heralding outcome; [`success_report`] computes the state-dependent
//! bounds and the average success probability over the maximally mixed input.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::{eig_hermitian, omega, omega_bar, svd, ComplexMatrix};
use crate::{Error, Result};

/// How an enclosing operator was constructed.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum DilationKind {
    /// 2n×2n unitary [[T/α, W], [W, −T/α]] from the SVD of T/α.
    SvdBlock,
    /// (n+m)×n isometry [T/α; W] with the minimal m for an exact embedding.
    MinimalIsometry,
    /// The fixed 8×8 three-qubit unitary embedding of the G ribbon.
    ExplicitUf,
}

/// A target operator together with its scale and enclosing unitary/isometry.
///
/// The top-left block of `enclosing` equals target/α; `block_dim` is the
/// (possibly zero-padded) width of the heralded block, and `aux_modes` counts
/// the rows beyond the signal space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Dilation {
    pub target: ComplexMatrix,
    pub alpha: f64,
    pub aux_modes: usize,
    pub enclosing: ComplexMatrix,
    pub kind: DilationKind,
    pub block_dim: usize,
}

impl Dilation {
    /// Validates the block, scale and unitarity/isometry contracts.
    pub fn validate(&self) -> Result<()> {
        let n = self.target.rows();
        let scaled = self.target.scale_re(1.0 / self.alpha);
        let block = self.enclosing.block(0, 0, n, n);
        if block.max_abs_diff(&scaled) > 1e-10 {
            return Err(Error::InvalidParameter(
                "enclosing block does not match target/alpha".into(),
            ));
        }
        let sigma_max = svd(&self.target)?.sigma_max();
        if self.alpha < sigma_max - 1e-10 {
            return Err(Error::ScaleTooSmall {
                alpha: self.alpha,
                sigma_max,
            });
        }
        // Isometry contract V†V = 1 covers the square unitary case too.
        let residual = self.enclosing.unitarity_residual();
        if residual > 1e-9 {
            return Err(Error::NotUnitary { residual });
        }
        Ok(())
    }

    /// Dimension of the signal space.
    pub fn signal_dim(&self) -> usize {
        self.target.rows()
    }
}

/// Returns the target together with its operator-norm scale α = σ_max.
pub fn rescale(t: &ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
    let sigma_max = svd(t)?.sigma_max();
    if sigma_max <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    Ok((t.clone(), sigma_max))
}

/// SVD block encoding: with T/α = U₁·D·U₂ the 2n×2n matrix
/// [[T/α, U₁√(1−D²)U₂], [U₁√(1−D²)U₂, −T/α]] is unitary.
pub fn svd_dilation(t: &ComplexMatrix, alpha: f64) -> Result<Dilation> {
    if !t.is_square() {
        return Err(Error::DimMismatch(
            "svd dilation needs a square target".into(),
        ));
    }
    let decomp = svd(t)?;
    if alpha < decomp.sigma_max() - 1e-10 {
        return Err(Error::ScaleTooSmall {
            alpha,
            sigma_max: decomp.sigma_max(),
        });
    }
    let n = t.rows();
    let scaled = t.scale_re(1.0 / alpha);
    let complement = ComplexMatrix::diag(
        &decomp
            .singular_values
            .iter()
            .map(|&s| {
                let x = (1.0 - (s / alpha).powi(2)).max(0.0);
                Complex64::new(x.sqrt(), 0.0)
            })
            .collect::<Vec<_>>(),
    );
    let w = decomp.u.matmul(&complement).matmul(&decomp.v_adjoint);
    let enclosing = ComplexMatrix::block2x2(&scaled, &w, &w, &scaled.scale_re(-1.0));
    let d = Dilation {
        target: t.clone(),
        alpha,
        aux_modes: n,
        enclosing,
        kind: DilationKind::SvdBlock,
        block_dim: n,
    };
    d.validate()?;
    Ok(d)
}

/// Minimal-row isometry V = [T/α; W] with W†W = 1 − T†T/α².
///
/// The number of auxiliary rows m equals the rank of 1 − T†T/α² at relative
/// threshold 1e-9, which is the smallest m for which an exact embedding of
/// T/α into an isometry with m extra rows exists.
pub fn minimal_isometry(t: &ComplexMatrix, alpha: f64) -> Result<Dilation> {
    if !t.is_square() {
        return Err(Error::DimMismatch("isometry needs a square target".into()));
    }
    let n = t.rows();
    let scaled = t.scale_re(1.0 / alpha);
    let gram_deficit = ComplexMatrix::identity(n).sub(&scaled.adjoint().matmul(&scaled));
    let eig = eig_hermitian(&gram_deficit.symmetrize())?;
    let max_eig = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    if eig.eigenvalues.iter().any(|&l| l < -1e-9) {
        return Err(Error::ScaleTooSmall {
            alpha,
            sigma_max: svd(t)?.sigma_max(),
        });
    }
    let threshold = 1e-9 * max_eig.max(1e-300);
    // W rows: √λ_i · v_i† for each eigenvalue above the rank threshold.
    let kept: Vec<usize> = (0..n)
        .filter(|&i| eig.eigenvalues[i] > threshold)
        .collect();
    let m = kept.len();
    let mut w = ComplexMatrix::zeros(m, n);
    for (row, &i) in kept.iter().enumerate() {
        let root = eig.eigenvalues[i].max(0.0).sqrt();
        for col in 0..n {
            w[(row, col)] = eig.eigenvectors[(col, i)].conj() * root;
        }
    }
    let mut enclosing = ComplexMatrix::zeros(n + m, n);
    enclosing.paste(0, 0, &scaled);
    enclosing.paste(n, 0, &w);
    let d = Dilation {
        target: t.clone(),
        alpha,
        aux_modes: m,
        enclosing,
        kind: DilationKind::MinimalIsometry,
        block_dim: n,
    };
    d.validate()?;
    Ok(d)
}

/// The explicit 8×8 three-qubit unitary embedding of the minimal G ribbon at
/// α = 2, in basis order (|000⟩,|100⟩,|010⟩,|110⟩,|001⟩,|101⟩,|011⟩,|111⟩);
/// the signal block lives on the first three basis states.
pub fn explicit_uf() -> Dilation {
    let w = omega();
    let wb = omega_bar();
    let z = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    let s3 = 3f64.sqrt();
    let a = 1.0 / s3;
    let b = 1.0 / (2.0 * s3);

    let rows = vec![
        vec![z, re(0.5), wb * 0.5, z, re(-a), re(b), wb * b, z],
        vec![re(0.5), z, wb * 0.5, z, re(b), re(-a), wb * b, z],
        vec![w * 0.5, w * 0.5, z, z, w * b, w * b, re(-a), z],
        vec![z, z, z, z, z, z, z, re(1.0)],
        vec![re(-a), re(b), wb * b, z, z, re(-0.5), wb * -0.5, z],
        vec![re(b), re(-a), wb * b, z, re(-0.5), z, wb * -0.5, z],
        vec![w * b, w * b, re(-a), z, w * -0.5, w * -0.5, z, z],
        vec![z, z, z, re(1.0), z, z, z, z],
    ];
    let enclosing = ComplexMatrix::from_rows(&rows).unwrap();
    let target = crate::ribbon::minimal_g_ribbon().into_matrix();
    Dilation {
        target,
        alpha: 2.0,
        aux_modes: 5,
        enclosing,
        kind: DilationKind::ExplicitUf,
        block_dim: 4,
    }
}

/// Success probability of applying T/α to a given pure state:
/// p = ⟨ψ|T†T|ψ⟩ / α².
pub fn success_probability(d: &Dilation, state: &ComplexMatrix) -> Result<f64> {
    let n = d.signal_dim();
    if state.rows() != n || state.cols() != 1 {
        return Err(Error::DimMismatch(format!(
            "state must be a {n}-dimensional column, got {}x{}",
            state.rows(),
            state.cols()
        )));
    }
    let norm = state.frobenius_norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(norm));
    }
    let applied = d.target.matmul(state);
    Ok(applied.frobenius_norm().powi(2) / (d.alpha * d.alpha))
}

/// State-dependent success bounds and the average success probability.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuccessReport {
    pub p_min: f64,
    pub p_max: f64,
    pub p_avg: f64,
    /// Columns: the states attaining p_min and p_max (eigenstates of T†T).
    pub extremal_states: ComplexMatrix,
    pub claimed_average: Option<f64>,
    pub deviation: Option<f64>,
}

/// Computes p_min = (σ_min/σ_max)², p_max = 1 and
/// p_avg = Tr[T†T]/(n·σ_max²) at the saturating scale α = σ_max.
/// A claimed average may be supplied; its deviation is recorded, not asserted.
pub fn success_report(t: &ComplexMatrix, claimed_average: Option<f64>) -> Result<SuccessReport> {
    let decomp = svd(t)?;
    let alpha = decomp.sigma_max();
    if alpha <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let n = t.cols();
    let p_min = (decomp.sigma_min() / alpha).powi(2);
    let p_max = 1.0;
    let sum_sq: f64 = decomp.singular_values.iter().map(|s| s * s).sum();
    let p_avg = sum_sq / (n as f64 * alpha * alpha);

    let gram = t.adjoint().matmul(t);
    let eig = eig_hermitian(&gram)?;
    let mut extremal_states = ComplexMatrix::zeros(n, 2);
    extremal_states.set_column(0, &eig.eigenvectors.column(0)); // attains p_min
    extremal_states.set_column(1, &eig.eigenvectors.column(n - 1)); // attains p_max

    let deviation = claimed_average.map(|claim| (p_avg - claim).abs());
    Ok(SuccessReport {
        p_min,
        p_max,
        p_avg,
        extremal_states,
        claimed_average,
        deviation,
    })
}
