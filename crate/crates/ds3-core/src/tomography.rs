//! Mutually unbiased bases, synthetic prepare-and-measure data, and
//! constrained least-squares process tomography.
//!
//! Preparations and measurement projectors both run over the same four MUBs
//! of the qutrit (the computational basis plus three bases built from cube
//! roots of unity), giving 12×12 = 144 settings. The reconstruction solves
//!
//! ```text
//! min_{ρ, N}  Σ_s |I_s − N·Tr[(Π_s ⊗ τ_sᵀ)·ρ]|²   s.t.  ρ ⪰ 0, Tr ρ = 1
//! ```
//!
//! by projected gradient descent with a closed-form scale update, warm
//! started from the unconstrained linear inversion of the data. Accepted
//! steps never increase the objective, so the recorded trace is monotone.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::channel::{fidelity, kraus_to_choi, ChoiState, KrausProcess};
use crate::numerics::{eig_hermitian, omega, psd_project, ComplexMatrix};
use crate::par;
use crate::{Error, Result};

/// Qutrit dimension; the four MUBs below are specific to d = 3.
pub const DIM: usize = 3;
/// Number of bases (computational + 3).
pub const N_BASES: usize = 4;
/// Number of prepare/measure settings.
pub const N_SETTINGS: usize = (N_BASES * DIM) * (N_BASES * DIM);

/// Four mutually unbiased bases of the qutrit; each matrix holds one basis
/// as columns.
#[derive(Clone, Debug)]
pub struct MubSet {
    pub bases: Vec<ComplexMatrix>,
}

impl MubSet {
    pub fn vector(&self, basis: usize, j: usize) -> Vec<Complex64> {
        self.bases[basis].column(j)
    }

    /// Rank-1 projector |M^μ_j⟩⟨M^μ_j|.
    pub fn projector(&self, basis: usize, j: usize) -> ComplexMatrix {
        let v = self.vector(basis, j);
        ComplexMatrix::from_fn(DIM, DIM, |r, c| v[r] * v[c].conj())
    }
}

/// Builds the MUB family from a given root of unity:
/// basis 0 is computational, bases μ = 1..3 have vectors
/// (1/√3)·Σ_i root^{j·i + μ·i²}|i⟩.
fn mub_from_root(root: Complex64) -> MubSet {
    let mut bases = vec![ComplexMatrix::identity(DIM)];
    for mu in 1..N_BASES {
        let mut m = ComplexMatrix::zeros(DIM, DIM);
        for j in 0..DIM {
            for i in 0..DIM {
                let exponent = (j * i + mu * i * i) as i32;
                m[(i, j)] = root.powi(exponent) / (DIM as f64).sqrt();
            }
        }
        bases.push(m);
    }
    MubSet { bases }
}

/// The canonical MUB set, built from ω = e^{2πi/3}.
pub fn mub_vectors() -> MubSet {
    mub_from_root(omega())
}

/// Measured deviations of a candidate construction from the MUB property.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MubPropertyReport {
    pub orthonormal: bool,
    pub unbiased: bool,
    pub max_orthonormality_dev: f64,
    pub max_unbiasedness_dev: f64,
}

/// Checks within-basis orthonormality and cross-basis |⟨v|w⟩|² = 1/3 for the
/// construction seeded by `root`. Documents that e^{2πi/3} satisfies the
/// property while the sixth root e^{iπ/3} does not.
pub fn mub_property_report(root: Complex64) -> MubPropertyReport {
    let set = mub_from_root(root);
    let mut ortho_dev = 0.0f64;
    let mut unbias_dev = 0.0f64;
    for mu in 0..N_BASES {
        for nu in 0..N_BASES {
            for i in 0..DIM {
                for j in 0..DIM {
                    let vi = set.vector(mu, i);
                    let vj = set.vector(nu, j);
                    let overlap: Complex64 = vi.iter().zip(&vj).map(|(a, b)| a.conj() * b).sum();
                    if mu == nu {
                        let expected = if i == j { 1.0 } else { 0.0 };
                        ortho_dev = ortho_dev.max((overlap.norm() - expected).abs());
                    } else {
                        unbias_dev =
                            unbias_dev.max((overlap.norm_sqr() - 1.0 / DIM as f64).abs());
                    }
                }
            }
        }
    }
    MubPropertyReport {
        orthonormal: ortho_dev <= 1e-10,
        unbiased: unbias_dev <= 1e-10,
        max_orthonormality_dev: ortho_dev,
        max_unbiasedness_dev: unbias_dev,
    }
}

/// Flat index into the 4-index intensity array I[μ][i][ν][j]
/// (μ,i = measurement basis/vector; ν,j = preparation basis/vector).
pub fn setting_index(mu: usize, i: usize, nu: usize, j: usize) -> usize {
    ((mu * DIM + i) * N_BASES + nu) * DIM + j
}

/// Synthetic prepare-and-measure intensities.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TomographyData {
    /// System dimension the settings run over.
    pub dim: usize,
    /// 144 intensities, flattened by [`setting_index`].
    pub intensities: Vec<f64>,
    /// Poisson shots accumulated per setting; `None` means exact expectations.
    pub shots_per_setting: Option<u64>,
    pub seed: u64,
    /// The scale N of the data model, hidden from the reconstructor.
    pub scale_truth: f64,
}

impl TomographyData {
    /// The 12×12 coupling matrix (measurement settings × preparation
    /// settings) as CSV with M{μ}_{i} / P{ν}_{j} labels.
    pub fn coupling_matrix_csv(&self) -> String {
        let mut out = String::from("measurement");
        for nu in 0..N_BASES {
            for j in 0..DIM {
                out.push_str(&format!(",P{nu}_{j}"));
            }
        }
        out.push('\n');
        for mu in 0..N_BASES {
            for i in 0..DIM {
                out.push_str(&format!("M{mu}_{i}"));
                for nu in 0..N_BASES {
                    for j in 0..DIM {
                        out.push_str(&format!(
                            ",{}",
                            self.intensities[setting_index(mu, i, nu, j)]
                        ));
                    }
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Generates I[μ][i][ν][j] = scale·Tr[Π^μ_i χ(τ^ν_j)] over all 144 settings
/// using ideal MUB preparations and projectors. With `shots = Some(S)` each
/// setting accumulates S exposures with that mean, i.e. one Poisson draw
/// with mean S·scale·E, using the seeded generator.
pub fn simulate_measurements(
    process: &KrausProcess,
    scale: f64,
    shots: Option<u64>,
    seed: u64,
) -> Result<TomographyData> {
    let mubs = mub_vectors();
    let preps: Vec<ComplexMatrix> = all_settings()
        .iter()
        .map(|&(_, _, nu, j)| mubs.projector(nu, j))
        .collect();
    let meas: Vec<ComplexMatrix> = all_settings()
        .iter()
        .map(|&(mu, i, _, _)| mubs.projector(mu, i))
        .collect();
    simulate_with_operators(process, scale, shots, seed, &preps, &meas)
}

/// One (μ, i, ν, j) tuple per setting, in flat order.
fn all_settings() -> Vec<(usize, usize, usize, usize)> {
    let mut v = Vec::with_capacity(N_SETTINGS);
    for mu in 0..N_BASES {
        for i in 0..DIM {
            for nu in 0..N_BASES {
                for j in 0..DIM {
                    v.push((mu, i, nu, j));
                }
            }
        }
    }
    v
}

/// Data generation against explicit per-setting preparation and measurement
/// operators (the perturbation study passes imperfect ones here).
fn simulate_with_operators(
    process: &KrausProcess,
    scale: f64,
    shots: Option<u64>,
    seed: u64,
    preps: &[ComplexMatrix],
    meas: &[ComplexMatrix],
) -> Result<TomographyData> {
    if scale <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "scale must be positive, got {scale}"
        )));
    }
    if process.d_in != DIM || process.d_out != DIM {
        return Err(Error::DimMismatch(format!(
            "tomography covers {DIM}-dimensional processes, got {}→{}",
            process.d_in, process.d_out
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut intensities = vec![0.0; N_SETTINGS];
    for (s, (tau, pi)) in preps.iter().zip(meas).enumerate() {
        let out = process.apply(tau)?;
        let expectation = pi.matmul(&out).trace().re.max(0.0);
        intensities[s] = match shots {
            None => scale * expectation,
            Some(n) => {
                let mean = n as f64 * scale * expectation;
                if mean > 0.0 {
                    Poisson::new(mean).expect("positive mean").sample(&mut rng)
                } else {
                    0.0
                }
            }
        };
    }
    // The model scale for the unit-trace Choi: N = scale·shots·d·Tr[Choi_raw].
    let choi_trace = kraus_to_choi(process, false).matrix.trace().re;
    let scale_truth = scale * shots.unwrap_or(1) as f64 * DIM as f64 * choi_trace;
    Ok(TomographyData {
        dim: DIM,
        intensities,
        shots_per_setting: shots,
        seed,
        scale_truth,
    })
}

/// Solver configuration.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ReconstructConfig {
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for ReconstructConfig {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            tol: 1e-10,
        }
    }
}

/// Reconstructed process with solver diagnostics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProcessEstimate {
    pub choi: ChoiState,
    /// Fitted intensity scale N̂.
    pub scale: f64,
    /// Final value of the least-squares objective.
    pub objective: f64,
    pub objective_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Rank-1 design vectors u_s = m ⊗ p̄, so that Tr[(Π ⊗ τᵀ)ρ] = u†·ρ·u.
fn design_vectors() -> Vec<Vec<Complex64>> {
    let mubs = mub_vectors();
    all_settings()
        .iter()
        .map(|&(mu, i, nu, j)| {
            let m = mubs.vector(mu, i);
            let p = mubs.vector(nu, j);
            let mut u = vec![Complex64::new(0.0, 0.0); DIM * DIM];
            for a in 0..DIM {
                for b in 0..DIM {
                    u[a * DIM + b] = m[a] * p[b].conj();
                }
            }
            u
        })
        .collect()
}

fn predictions(rho: &ComplexMatrix, designs: &[Vec<Complex64>]) -> Vec<f64> {
    designs
        .iter()
        .map(|u| {
            let rv = rho.matvec(u);
            u.iter()
                .zip(&rv)
                .map(|(a, b)| (a.conj() * b).re)
                .sum::<f64>()
        })
        .collect()
}

fn optimal_scale(intensities: &[f64], preds: &[f64]) -> f64 {
    let num: f64 = intensities.iter().zip(preds).map(|(i, p)| i * p).sum();
    let den: f64 = preds.iter().map(|p| p * p).sum();
    if den > 0.0 {
        (num / den).max(0.0)
    } else {
        0.0
    }
}

fn objective_value(intensities: &[f64], preds: &[f64], scale: f64) -> f64 {
    intensities
        .iter()
        .zip(preds)
        .map(|(i, p)| {
            let r = i - scale * p;
            r * r
        })
        .sum()
}

/// Unconstrained linear inversion as a warm start: minimizes
/// Σ_s (I_s − Tr[A_s X])² over X by solving the normal equations with an
/// eigendecomposition pseudo-inverse, then symmetrizes.
fn linear_inversion(intensities: &[f64], designs: &[Vec<Complex64>]) -> Result<ComplexMatrix> {
    let d = DIM * DIM; // Choi dimension: vec(X) lives in C^{d·d}
    let vec_len = d * d;
    // Row vectors D_s with D_s[(b,a)] = u_a·ū_b give Tr[A_s X] = Σ D_s·vec(X),
    // where vec packs X row-major: vec[(b,a)] = X[b][a].
    let rows: Vec<Vec<Complex64>> = designs
        .iter()
        .map(|u| {
            let mut row = vec![Complex64::new(0.0, 0.0); vec_len];
            for b in 0..d {
                for a in 0..d {
                    row[b * d + a] = u[a] * u[b].conj();
                }
            }
            row
        })
        .collect();
    let mut h = ComplexMatrix::zeros(vec_len, vec_len);
    let mut rhs = vec![Complex64::new(0.0, 0.0); vec_len];
    for (s, row) in rows.iter().enumerate() {
        let weight = intensities[s];
        for k in 0..vec_len {
            let ck = row[k].conj();
            rhs[k] += ck * weight;
            for l in 0..vec_len {
                h[(k, l)] += ck * row[l];
            }
        }
    }
    let eig = eig_hermitian(&h.symmetrize())?;
    let max_eig = eig.eigenvalues.last().copied().unwrap_or(0.0).max(1e-300);
    // x = H⁺·rhs via the spectral pseudo-inverse.
    let vt_rhs = eig.eigenvectors.adjoint().matvec(&rhs);
    let scaled: Vec<Complex64> = vt_rhs
        .iter()
        .zip(&eig.eigenvalues)
        .map(|(z, &l)| {
            if l > 1e-10 * max_eig {
                z / l
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let x = eig.eigenvectors.matvec(&scaled);
    let mut m = ComplexMatrix::zeros(d, d);
    for b in 0..d {
        for a in 0..d {
            m[(b, a)] = x[b * d + a];
        }
    }
    Ok(m.symmetrize())
}

/// Projects onto the feasible set: PSD with unit trace.
fn project_feasible(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let p = psd_project(rho)?;
    let trace = p.trace().re;
    if trace <= 1e-12 {
        return Ok(ComplexMatrix::identity(DIM * DIM).scale_re(1.0 / (DIM * DIM) as f64));
    }
    Ok(p.scale_re(1.0 / trace))
}

/// Recovers the unit-trace Choi state and intensity scale from tomography
/// data. Alternates a closed-form scale update with a backtracking projected
/// gradient step on ρ; the `converged` flag is set when the relative
/// objective decrease falls below `config.tol`.
pub fn reconstruct(data: &TomographyData, config: &ReconstructConfig) -> Result<ProcessEstimate> {
    if data.intensities.len() != N_SETTINGS {
        return Err(Error::DimMismatch(format!(
            "expected {N_SETTINGS} settings, got {}",
            data.intensities.len()
        )));
    }
    let designs = design_vectors();
    let intensities = &data.intensities;

    // Warm start from the unconstrained fit.
    let raw = linear_inversion(intensities, &designs)?;
    let mut rho = project_feasible(&raw)?;
    let mut preds = predictions(&rho, &designs);
    let mut scale = optimal_scale(intensities, &preds);
    let mut value = objective_value(intensities, preds.as_slice(), scale);

    let d2 = DIM * DIM;
    let mut trace = vec![value];
    let mut step = 1.0_f64;
    let mut converged = false;
    let mut iterations = 0;

    for iter in 0..config.max_iters {
        iterations = iter + 1;
        // Gradient of Σ (I − N·u†ρu)² wrt ρ: −2N·Σ r_s·u_s u_s†.
        let mut grad = ComplexMatrix::zeros(d2, d2);
        for (s, u) in designs.iter().enumerate() {
            let r = intensities[s] - scale * preds[s];
            let w = -2.0 * scale * r;
            if w == 0.0 {
                continue;
            }
            for a in 0..d2 {
                let ua = u[a] * w;
                for b in 0..d2 {
                    grad[(a, b)] += ua * u[b].conj();
                }
            }
        }
        let gnorm = grad.frobenius_norm();
        if gnorm == 0.0 {
            converged = true;
            break;
        }

        // Backtracking on the projected step; accept only strict decreases.
        let mut accepted = false;
        let mut eta = step / gnorm.max(1e-300);
        for _ in 0..60 {
            let candidate =
                project_feasible(&rho.sub(&grad.scale(Complex64::new(eta, 0.0))))?;
            let cand_preds = predictions(&candidate, &designs);
            let cand_scale = optimal_scale(intensities, &cand_preds);
            let cand_value = objective_value(intensities, &cand_preds, cand_scale);
            if cand_value < value {
                let improvement = (value - cand_value) / value.max(1e-300);
                rho = candidate;
                preds = cand_preds;
                scale = cand_scale;
                value = cand_value;
                step = (eta * gnorm * 2.0).min(1e6);
                accepted = true;
                if improvement < config.tol {
                    converged = true;
                }
                break;
            }
            eta *= 0.5;
        }
        trace.push(value);
        if !accepted {
            // No descent direction at the smallest step: stationary point.
            converged = true;
            break;
        }
        if converged {
            break;
        }
    }

    let choi = ChoiState {
        matrix: project_feasible(&rho)?,
        d_in: DIM,
        d_out: DIM,
        normalized: true,
    };
    Ok(ProcessEstimate {
        choi,
        scale,
        objective: value,
        objective_trace: trace,
        iterations,
        converged,
    })
}

/// Summary statistics of a perturbation Monte Carlo run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PerturbationSummary {
    pub fidelity_mean: f64,
    pub fidelity_std: f64,
    pub fidelity_min: f64,
    pub fidelity_max: f64,
    pub fidelities: Vec<f64>,
}

/// e^{i·angle·H} for Hermitian H via its eigendecomposition.
fn unitary_exp(h: &ComplexMatrix, angle: f64) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(h)?;
    let phases: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&l| Complex64::from_polar(1.0, angle * l))
        .collect();
    Ok(eig
        .eigenvectors
        .matmul(&ComplexMatrix::diag(&phases))
        .matmul(&eig.eigenvectors.adjoint()))
}

/// Random Hermitian with unit spectral norm.
fn random_direction(rng: &mut ChaCha8Rng) -> Result<ComplexMatrix> {
    let g = ComplexMatrix::from_fn(DIM, DIM, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let h = g.symmetrize();
    let eig = eig_hermitian(&h)?;
    let spectral = eig
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .fold(0.0f64, f64::max)
        .max(1e-12);
    Ok(h.scale_re(1.0 / spectral))
}

/// Systematic-error Monte Carlo: each trial rotates every preparation and
/// measurement vector by an independent seeded random unitary within angle
/// `epsilon`, regenerates exact data, reconstructs assuming ideal vectors,
/// and records the fidelity to the ideal process. One RNG stream per trial,
/// derived by counter, so trials are reproducible and order-independent.
pub fn perturbed_qpt(
    process: &KrausProcess,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<PerturbationSummary> {
    if epsilon < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be non-negative, got {epsilon}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let ideal = kraus_to_choi(process, true);
    let results = par::map_indexed(trials, |t| -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64 + 1);
        let mubs = mub_vectors();
        let perturb_projector = |rng: &mut ChaCha8Rng, basis: usize, j: usize| -> Result<ComplexMatrix> {
            let rot = unitary_exp(&random_direction(rng)?, epsilon)?;
            let v = rot.matvec(&mubs.vector(basis, j));
            Ok(ComplexMatrix::from_fn(DIM, DIM, |r, c| v[r] * v[c].conj()))
        };
        // Independent imperfections for every preparation and measurement.
        let mut prep_proj = Vec::with_capacity(N_BASES * DIM);
        let mut meas_proj = Vec::with_capacity(N_BASES * DIM);
        for basis in 0..N_BASES {
            for j in 0..DIM {
                prep_proj.push(perturb_projector(&mut rng, basis, j)?);
            }
        }
        for basis in 0..N_BASES {
            for j in 0..DIM {
                meas_proj.push(perturb_projector(&mut rng, basis, j)?);
            }
        }
        let preps: Vec<ComplexMatrix> = all_settings()
            .iter()
            .map(|&(_, _, nu, j)| prep_proj[nu * DIM + j].clone())
            .collect();
        let meas: Vec<ComplexMatrix> = all_settings()
            .iter()
            .map(|&(mu, i, _, _)| meas_proj[mu * DIM + i].clone())
            .collect();
        let data = simulate_with_operators(process, 1.0, None, seed, &preps, &meas)?;
        let estimate = reconstruct(&data, &ReconstructConfig::default())?;
        fidelity(&estimate.choi, &ideal)
    });
    let mut fidelities = Vec::with_capacity(trials);
    for r in results {
        fidelities.push(r?);
    }
    let mean = fidelities.iter().sum::<f64>() / trials as f64;
    let var = fidelities
        .iter()
        .map(|f| (f - mean) * (f - mean))
        .sum::<f64>()
        / trials as f64;
    Ok(PerturbationSummary {
        fidelity_mean: mean,
        fidelity_std: var.sqrt(),
        fidelity_min: fidelities.iter().cloned().fold(f64::INFINITY, f64::min),
        fidelity_max: fidelities.iter().cloned().fold(0.0, f64::max),
        fidelities,
    })
}

/// Reconstruction fidelity against the ideal process for each seed at a
/// fixed Poisson shot budget. Seeds run in parallel when enabled.
pub fn shot_noise_fidelities(
    process: &KrausProcess,
    shots: u64,
    seeds: &[u64],
) -> Result<Vec<f64>> {
    let ideal = kraus_to_choi(process, true);
    let results = par::map_indexed(seeds.len(), |k| -> Result<f64> {
        let data = simulate_measurements(process, 1.0, Some(shots), seeds[k])?;
        let estimate = reconstruct(&data, &ReconstructConfig::default())?;
        fidelity(&estimate.choi, &ideal)
    });
    results.into_iter().collect()
}
