//! Parametric noise channels and the noisy-pipeline benchmark.
//!
//! Depolarizing noise is the convex replacement model: with probability p the
//! device acts as the fully depolarizing channel, otherwise as the process
//! itself, so ρ → (1−p)·χ(ρ) + p·Tr[ρ]·1/d. For trace-preserving processes
//! this coincides with composing the textbook depolarizing channel after χ;
//! for the lossy ribbon processes the replacement form is the one whose p = 1
//! endpoint is the fully depolarized process. Dephasing composes the phase
//! damping channel after the process.

use serde::{Deserialize, Serialize};

use crate::channel::{fidelity, kraus_to_choi, purity, KrausProcess};
use crate::numerics::{svd, ComplexMatrix};
use crate::par;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum NoiseKind {
    Depolarizing,
    Dephasing,
}

/// A parametric single-qudit noise channel.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub strength: f64,
    pub dimension: usize,
}

impl NoiseModel {
    pub fn depolarizing(strength: f64, dimension: usize) -> Self {
        Self {
            kind: NoiseKind::Depolarizing,
            strength,
            dimension,
        }
    }

    pub fn dephasing(strength: f64, dimension: usize) -> Self {
        Self {
            kind: NoiseKind::Dephasing,
            strength,
            dimension,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.strength) {
            return Err(Error::InvalidParameter(format!(
                "noise strength must lie in [0, 1], got {}",
                self.strength
            )));
        }
        Ok(())
    }
}

/// Applies the noise model after the process, returning a CP
/// non-trace-increasing Kraus process.
pub fn apply_noise(model: &NoiseModel, process: &KrausProcess) -> Result<KrausProcess> {
    model.validate()?;
    if model.dimension != process.d_out {
        return Err(Error::DimMismatch(format!(
            "noise acts on dimension {}, process outputs {}",
            model.dimension, process.d_out
        )));
    }
    let p = model.strength;
    let d = model.dimension;
    let mut operators: Vec<ComplexMatrix> = process
        .operators
        .iter()
        .map(|op| op.scale_re((1.0 - p).sqrt()))
        .collect();
    match model.kind {
        NoiseKind::Depolarizing => {
            for op in KrausProcess::fully_depolarizing(d).operators {
                operators.push(op.scale_re(p.sqrt()));
            }
        }
        NoiseKind::Dephasing => {
            for k in 0..d {
                let mut proj = ComplexMatrix::zeros(d, d);
                proj[(k, k)] = num_complex::Complex64::new(p.sqrt(), 0.0);
                for op in &process.operators {
                    operators.push(proj.matmul(op));
                }
            }
        }
    }
    KrausProcess::new(operators)
}

/// One line of the noisy benchmark table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoiseBenchRow {
    pub target: String,
    pub p: f64,
    pub purity: f64,
    pub fidelity: f64,
}

/// For every target and noise strength: build the ideal scaled process,
/// apply the noise, and record the purity of the noisy Choi and its fidelity
/// to the ideal one. Grid points run in parallel when enabled.
pub fn noisy_benchmark(
    targets: &[(String, ComplexMatrix)],
    strengths: &[f64],
    kind: NoiseKind,
) -> Result<Vec<NoiseBenchRow>> {
    let mut rows = Vec::with_capacity(targets.len() * strengths.len());
    for (name, t) in targets {
        let alpha = svd(t)?.sigma_max();
        let process = KrausProcess::from_scaled_target(t, alpha)?;
        let ideal = kraus_to_choi(&process, true);
        let d = process.d_out;
        let results = par::map_indexed(strengths.len(), |k| -> Result<NoiseBenchRow> {
            let model = NoiseModel {
                kind,
                strength: strengths[k],
                dimension: d,
            };
            let noisy = apply_noise(&model, &process)?;
            let choi = kraus_to_choi(&noisy, true);
            Ok(NoiseBenchRow {
                target: name.clone(),
                p: strengths[k],
                purity: purity(&choi)?,
                fidelity: fidelity(&ideal, &choi)?,
            })
        });
        for r in results {
            rows.push(r?);
        }
    }
    Ok(rows)
}

/// Benchmark rows as CSV with header `target,p,purity,fidelity`.
pub fn noise_table_csv(rows: &[NoiseBenchRow]) -> String {
    let mut out = String::from("target,p,purity,fidelity\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.target, r.p, r.purity, r.fidelity));
    }
    out
}
