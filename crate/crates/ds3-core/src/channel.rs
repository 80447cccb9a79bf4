//! Quantum-process representations and metrics.
//!
//! Processes are non-trace-increasing CP maps held either as Kraus operator
//! lists or as Choi states ρ_χ = (χ ⊗ 1)(ρ⁺) with ρ⁺ the normalized maximally
//! entangled state. Reported Chois are normalized to unit trace, which is the
//! right object for comparing processes while neglecting global loss.
//!
//! The composite index convention is (out, in) → out·d_in + in, i.e. the
//! first tensor factor is the channel output.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dilation::Dilation;
use crate::numerics::{eig_hermitian, sqrt_psd, ComplexMatrix};
use crate::{Error, Result};

/// A CP map as a list of Kraus operators, constrained to Σ T†T ≤ 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KrausProcess {
    pub operators: Vec<ComplexMatrix>,
    pub d_in: usize,
    pub d_out: usize,
}

impl KrausProcess {
    /// Builds and validates the non-trace-increasing condition
    /// (largest eigenvalue of Σ T†T at most 1 + 1e-9).
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty Kraus list".into()))?;
        let (d_out, d_in) = (first.rows(), first.cols());
        for op in &operators {
            if op.rows() != d_out || op.cols() != d_in {
                return Err(Error::DimMismatch(format!(
                    "Kraus operators must share shape {d_out}x{d_in}, got {}x{}",
                    op.rows(),
                    op.cols()
                )));
            }
            op.check_finite()?;
        }
        let p = Self {
            operators,
            d_in,
            d_out,
        };
        let top = p.trace_operator_max_eigenvalue()?;
        if top > 1.0 + 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "process amplifies: max eigenvalue of ΣT†T is {top}"
            )));
        }
        Ok(p)
    }

    /// Single-Kraus process T/α.
    pub fn from_scaled_target(t: &ComplexMatrix, alpha: f64) -> Result<Self> {
        Self::new(vec![t.scale_re(1.0 / alpha)])
    }

    /// The identity channel on dimension d.
    pub fn identity(d: usize) -> Self {
        Self {
            operators: vec![ComplexMatrix::identity(d)],
            d_in: d,
            d_out: d,
        }
    }

    /// The fully depolarizing channel ρ → Tr[ρ]·1/d.
    pub fn fully_depolarizing(d: usize) -> Self {
        let scale = 1.0 / (d as f64).sqrt();
        let mut operators = Vec::with_capacity(d * d);
        for o in 0..d {
            for i in 0..d {
                let mut k = ComplexMatrix::zeros(d, d);
                k[(o, i)] = Complex64::new(scale, 0.0);
                operators.push(k);
            }
        }
        Self {
            operators,
            d_in: d,
            d_out: d,
        }
    }

    /// Largest eigenvalue of Σ T†T.
    pub fn trace_operator_max_eigenvalue(&self) -> Result<f64> {
        let mut acc = ComplexMatrix::zeros(self.d_in, self.d_in);
        for op in &self.operators {
            acc = acc.add(&op.adjoint().matmul(op));
        }
        let eig = eig_hermitian(&acc.symmetrize())?;
        Ok(eig.eigenvalues.last().copied().unwrap_or(0.0))
    }

    /// Applies the process to a density matrix: Σ T ρ T†.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.d_in || rho.cols() != self.d_in {
            return Err(Error::DimMismatch(format!(
                "state must be {0}x{0}, got {1}x{2}",
                self.d_in,
                rho.rows(),
                rho.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.d_out, self.d_out);
        for op in &self.operators {
            out = out.add(&op.matmul(rho).matmul(&op.adjoint()));
        }
        Ok(out)
    }

    /// Average success probability over the maximally mixed input,
    /// Tr[Σ T†T]/d_in.
    pub fn average_success_probability(&self) -> f64 {
        self.operators
            .iter()
            .map(|op| op.adjoint().matmul(op).trace().re)
            .sum::<f64>()
            / self.d_in as f64
    }
}

/// A Choi state with its subsystem dimensions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChoiState {
    pub matrix: ComplexMatrix,
    pub d_in: usize,
    pub d_out: usize,
    pub normalized: bool,
}

impl ChoiState {
    pub fn dim(&self) -> usize {
        self.d_in * self.d_out
    }

    /// PSD check at tolerance 1e-9 (relative to the largest eigenvalue).
    pub fn validate_psd(&self) -> Result<()> {
        let eig = eig_hermitian(&self.matrix.symmetrize())?;
        let max = eig.eigenvalues.last().copied().unwrap_or(0.0).max(1e-300);
        let min = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if min < -1e-9 * max.max(1.0) {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(())
    }
}

/// Choi state of a Kraus process: Σ_n vec(T_n)·vec(T_n)†/d_in, optionally
/// normalized to unit trace.
pub fn kraus_to_choi(k: &KrausProcess, normalize: bool) -> ChoiState {
    let dim = k.d_in * k.d_out;
    let mut choi = ComplexMatrix::zeros(dim, dim);
    for op in &k.operators {
        // vec(T)[(o, i)] = T[o][i] at composite index o·d_in + i.
        let v: Vec<Complex64> = (0..k.d_out)
            .flat_map(|o| (0..k.d_in).map(move |i| (o, i)))
            .map(|(o, i)| op[(o, i)])
            .collect();
        for r in 0..dim {
            for c in 0..dim {
                choi[(r, c)] += v[r] * v[c].conj();
            }
        }
    }
    let mut choi = choi.scale_re(1.0 / k.d_in as f64);
    if normalize {
        let trace = choi.trace().re;
        choi = choi.scale_re(1.0 / trace);
    }
    ChoiState {
        matrix: choi,
        d_in: k.d_in,
        d_out: k.d_out,
        normalized: normalize,
    }
}

/// Kraus operators from the eigendecomposition of a Choi state, ordered by
/// descending eigenvalue. The leading operator's global phase is fixed by
/// making its largest-magnitude entry real positive.
pub fn choi_to_kraus(c: &ChoiState) -> Result<KrausProcess> {
    c.validate_psd()?;
    let eig = eig_hermitian(&c.matrix.symmetrize())?;
    let max = eig.eigenvalues.last().copied().unwrap_or(0.0).max(1e-300);
    let mut operators = Vec::new();
    for i in (0..eig.eigenvalues.len()).rev() {
        let lambda = eig.eigenvalues[i];
        if lambda < 1e-12 * max {
            continue;
        }
        let scale = (lambda * c.d_in as f64).sqrt();
        let col = eig.eigenvectors.column(i);
        let mut op = ComplexMatrix::zeros(c.d_out, c.d_in);
        for o in 0..c.d_out {
            for j in 0..c.d_in {
                op[(o, j)] = col[o * c.d_in + j] * scale;
            }
        }
        operators.push(op);
    }
    // Phase gauge on the leading operator.
    if let Some(lead) = operators.first_mut() {
        let mut best = Complex64::new(0.0, 0.0);
        for z in lead.entries() {
            if z.norm() > best.norm() {
                best = *z;
            }
        }
        if best.norm() > 0.0 {
            let phase = best / best.norm();
            *lead = lead.scale(phase.conj());
        }
    }
    // The reconstruction may exceed the trace bound by rounding only; rebuild
    // without re-validating amplification to keep exact round trips.
    let first = operators
        .first()
        .ok_or_else(|| Error::InvalidParameter("Choi state has no support".into()))?;
    let (d_out, d_in) = (first.rows(), first.cols());
    Ok(KrausProcess {
        operators,
        d_in,
        d_out,
    })
}

/// Purity Tr[ρ²] of a normalized Choi state.
pub fn purity(c: &ChoiState) -> Result<f64> {
    let trace = c.matrix.trace().re;
    if !c.normalized || (trace - 1.0).abs() > 1e-10 {
        return Err(Error::ChoiNotNormalized(trace));
    }
    Ok(c.matrix.matmul(&c.matrix).trace().re)
}

/// Uhlmann fidelity [Tr √(√a·b·√a)]² between two normalized Choi states.
pub fn fidelity(a: &ChoiState, b: &ChoiState) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(format!(
            "fidelity needs equal dims, got {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    for c in [a, b] {
        let trace = c.matrix.trace().re;
        if !c.normalized || (trace - 1.0).abs() > 1e-8 {
            return Err(Error::ChoiNotNormalized(trace));
        }
    }
    let root = sqrt_psd(&a.matrix)?;
    let inner = root.matmul(&b.matrix).matmul(&root);
    let eig = eig_hermitian(&inner.symmetrize())?;
    let floor = 1e-14 * eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(0.0);
    let sum: f64 = eig
        .eigenvalues
        .iter()
        .map(|&l| if l > floor { l.sqrt() } else { 0.0 })
        .sum();
    Ok((sum * sum).clamp(0.0, 1.0 + 1e-9).min(1.0))
}

/// The heralded process of a dilation: K = (⟨success| ⊗ 1)·U·(|prep⟩ ⊗ 1),
/// restricted to the signal subspace. Block row `success` and block column
/// `prep` of the enclosing operator are read at `block_dim` granularity.
pub fn postselected_process(
    d: &Dilation,
    ancilla_prep: usize,
    success_outcome: usize,
) -> Result<KrausProcess> {
    let n = d.signal_dim();
    let b = d.block_dim;
    let col_blocks = d.enclosing.cols() / b;
    let row_blocks = d.enclosing.rows().div_ceil(b);
    if ancilla_prep >= col_blocks {
        return Err(Error::InvalidIndex {
            what: "ancilla preparation",
            index: ancilla_prep,
            bound: col_blocks,
        });
    }
    if success_outcome >= row_blocks {
        return Err(Error::InvalidIndex {
            what: "success outcome",
            index: success_outcome,
            bound: row_blocks,
        });
    }
    let r0 = success_outcome * b;
    let c0 = ancilla_prep * b;
    let nrows = n.min(d.enclosing.rows() - r0);
    let block = d.enclosing.block(r0, c0, nrows, n);
    KrausProcess::new(vec![block])
}
