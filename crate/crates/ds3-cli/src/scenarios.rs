//! One function per subcommand: each builds a [`ScenarioReport`] from the
//! core library, with every claim expressed as a measured-vs-expected check.

use num_complex::Complex64;

use ds3_core::channel::{
    fidelity, kraus_to_choi, postselected_process, purity, KrausProcess,
};
use ds3_core::dilation::{
    explicit_uf, minimal_isometry, success_probability, success_report, svd_dilation, Dilation,
};
use ds3_core::group::{ConjugacyClassData, GroupElement, Irrep, IrrepLabel};
use ds3_core::noise::{noise_table_csv, noisy_benchmark, NoiseKind};
use ds3_core::numerics::{omega, omega_bar, svd, ComplexMatrix};
use ds3_core::ribbon::{
    abelian_transform, braiding_matrix, exchange_rewrite, extract_r_matrix, f_matrix_ggg,
    f_matrix_phi, forward_g_product, fuse, g_ribbon_terms, materialize_qudit, materialize_qutrit,
    minimal_g_ribbon, nonabelian_transform, r_matrix_gg, r_matrix_phi, reversed_g_product,
    string_operator, string_operator_qutrit, QutritOperator, RibbonId, RibbonWord, StringLabel,
};
use ds3_core::tomography::{
    mub_property_report, reconstruct, shot_noise_fidelities, simulate_measurements,
    ReconstructConfig,
};
use ds3_core::wfm::{
    certify_circuit, embedding_target, normalized_block_fidelity, suite_circuit, wfm_optimize,
    PhotonicCircuit, WfmConfig, SUITE_MODES, SUITE_SEEDS, SUITE_SWEEPS,
};

use crate::report::{Check, ScenarioReport};

pub type CliResult<T> = Result<T, String>;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The three implemented ribbon operations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum OpName {
    /// The minimal G ribbon.
    Fg,
    /// The forward product F^G·F^G.
    Fgfg,
    /// The exchanged product (2ω̄·1 + ω·F^G).
    FgfgRev,
}

impl OpName {
    pub fn matrix(self) -> ComplexMatrix {
        match self {
            OpName::Fg => minimal_g_ribbon().into_matrix(),
            OpName::Fgfg => forward_g_product().into_matrix(),
            OpName::FgfgRev => reversed_g_product().into_matrix(),
        }
    }

    pub fn claimed_average_success(self) -> f64 {
        match self {
            OpName::Fg => 0.5,
            OpName::Fgfg => 0.375,
            OpName::FgfgRev => 0.75,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OpName::Fg => "fg",
            OpName::Fgfg => "fgfg",
            OpName::FgfgRev => "fgfg-rev",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum MethodName {
    Svd,
    Minimal,
    Explicit,
}

pub fn verify_fusion(seed: u64) -> ScenarioReport {
    let mut rep = ScenarioReport::new("verify fusion", seed);
    let fg = minimal_g_ribbon();
    let square = forward_g_product();
    rep.matrix("fg", fg.matrix());
    rep.matrix("fg_squared", square.matrix());

    let sum = string_operator_qutrit(StringLabel::A)
        .matrix()
        .add(string_operator_qutrit(StringLabel::B).matrix())
        .add(fg.matrix());
    rep.check(Check::close(
        "fusion identity residual ‖F^G·F^G − (F^A+F^B+F^G)‖_F",
        square.matrix().sub(&sum).frobenius_norm(),
        0.0,
        1e-12,
    ));

    let d = fuse(&fg, &fg);
    for (channel, coeff) in [("A", d.coeff_a), ("B", d.coeff_b), ("G", d.coeff_g)] {
        rep.check(Check::close(
            &format!("fusion channel {channel} coefficient"),
            (coeff - c64(1.0)).norm(),
            0.0,
            1e-12,
        ));
    }
    rep.check(Check::close(
        "fusion decomposition residual",
        d.residual_norm,
        0.0,
        1e-12,
    ));

    let spectrum = ds3_core::ribbon::hermitian_spectrum(&fg).expect("hermitian");
    rep.metric("fg_eigenvalue_low", spectrum[0]);
    rep.metric("fg_eigenvalue_high", spectrum[2]);
    rep.check(Check::close("F^G spectrum: twice −1", spectrum[1], -1.0, 1e-12));
    rep.check(Check::close("F^G spectrum: top 2", spectrum[2], 2.0, 1e-12));

    // A published variant of the forward-product matrix disagrees with the
    // direct square; the artifact detects and surfaces the inconsistency.
    let w = omega();
    let wb = omega_bar();
    let variant = ComplexMatrix::from_rows(&[
        vec![c64(2.0), wb, wb],
        vec![c64(1.0), c64(2.0), w],
        vec![c64(1.0), w, c64(2.0)],
    ])
    .unwrap();
    let deviation = square.matrix().max_abs_diff(&variant);
    rep.metric("published_variant_max_deviation", deviation);
    rep.check(Check::at_least(
        "published forward-product variant flagged as inconsistent",
        deviation,
        0.1,
    ));
    rep.note(
        "The direct square of the minimal ribbon is authoritative (it satisfies the fusion \
         identity); the published variant matrix deviates and is flagged, not adopted.",
    );
    rep
}

pub fn verify_braiding(seed: u64) -> ScenarioReport {
    let mut rep = ScenarioReport::new("verify braiding", seed);
    let sum = g_ribbon_terms();
    let word = RibbonWord::two_ribbon_product(&sum, RibbonId::Rho2, &sum, RibbonId::Rho1);
    let mass_before = word.coefficient_l1_mass();
    let rewritten = exchange_rewrite(&word).expect("well-formed word");
    let mass_after = rewritten.coefficient_l1_mass();
    rep.check(Check::close(
        "exchange rewrite preserves coefficient l1 mass",
        mass_after,
        mass_before,
        1e-12,
    ));

    let reversed = rewritten.collapse_to_site().expect("qutrit word");
    let w = omega();
    let wb = omega_bar();
    let expected_rev = ComplexMatrix::identity(3)
        .scale(wb * 2.0)
        .add(&minimal_g_ribbon().matrix().scale(w));
    rep.matrix("reversed_product", reversed.matrix());
    rep.check(Check::close(
        "reversed product equals 2ω̄·1 + ω·F^G (max entry deviation)",
        reversed.matrix().max_abs_diff(&expected_rev),
        0.0,
        1e-12,
    ));

    let forward = fuse(&minimal_g_ribbon(), &minimal_g_ribbon());
    let backward = fuse(&reversed, &QutritOperator::identity());
    let r = extract_r_matrix(&forward, &backward).expect("nonzero forward channels");
    rep.matrix("r_matrix", &r);
    rep.check(Check::close(
        "R matrix equals diag(ω̄, ω̄, ω)",
        r.max_abs_diff(&r_matrix_gg()),
        0.0,
        1e-12,
    ));

    let b_gg = braiding_matrix(&f_matrix_ggg(), &r_matrix_gg()).expect("unitary F");
    let angle = 2.0 * std::f64::consts::PI / 3.0;
    let expected_b = ComplexMatrix::from_rows(&[
        vec![c64(angle.cos()), Complex64::new(0.0, angle.sin()), c64(0.0)],
        vec![Complex64::new(0.0, angle.sin()), c64(angle.cos()), c64(0.0)],
        vec![c64(0.0), c64(0.0), Complex64::new(angle.cos(), angle.sin())],
    ])
    .unwrap();
    rep.matrix("b_gg", &b_gg);
    rep.check(Check::close(
        "B_GG matches F·R²·F† closed form",
        b_gg.max_abs_diff(&expected_b),
        0.0,
        1e-12,
    ));

    let b_phi = braiding_matrix(&f_matrix_phi(), &r_matrix_phi()).expect("unitary F");
    rep.check(Check::close(
        "B_ΦΦ is the identity (Abelian sector braids trivially)",
        b_phi.max_abs_diff(&ComplexMatrix::identity(3)),
        0.0,
        1e-12,
    ));

    let r2 = r_matrix_gg().matmul(&r_matrix_gg());
    let comm = f_matrix_ggg()
        .matmul(&r2)
        .sub(&r2.matmul(&f_matrix_ggg()))
        .frobenius_norm();
    rep.metric("f_r2_commutator_norm", comm);
    rep.check(Check::at_least(
        "non-Abelian witness: ‖[F, R²]‖ > 0",
        comm,
        0.5,
    ));
    rep
}

pub fn verify_transforms(seed: u64) -> ScenarioReport {
    use GroupElement::{C, C2, E};
    let mut rep = ScenarioReport::new("verify transforms", seed);

    let trivial = abelian_transform(&Irrep::new(IrrepLabel::Trivial)).expect("one-dimensional");
    let sign = abelian_transform(&Irrep::new(IrrepLabel::Sign)).expect("one-dimensional");
    let trivial_ok = trivial.len() == 6
        && trivial
            .iter()
            .all(|t| t.flux == E && (t.coeff - c64(1.0)).norm() < 1e-14);
    let sign_ok = sign.len() == 6
        && sign.iter().all(|t| {
            let expected = if t.charge.is_rotation() { 1.0 } else { -1.0 };
            t.flux == E && (t.coeff - c64(expected)).norm() < 1e-14
        });
    rep.check(Check::flag("abelian transform reproduces the F^1 term set", trivial_ok));
    rep.check(Check::flag("abelian transform reproduces the F^Λ term set", sign_ok));

    rep.check(Check::close(
        "materialized F^1 is the identity",
        materialize_qudit(&trivial)
            .matrix()
            .max_abs_diff(&ComplexMatrix::identity(6)),
        0.0,
        1e-12,
    ));
    rep.check(Check::close(
        "materialized F^Λ is the B string operator",
        materialize_qudit(&sign)
            .matrix()
            .max_abs_diff(string_operator(StringLabel::B).matrix()),
        0.0,
        1e-12,
    ));

    let phi = nonabelian_transform(
        &ConjugacyClassData::class_e(),
        &Irrep::new(IrrepLabel::TwoDim),
    )
    .expect("domain matches");
    let phi_expected = [(E, E, c64(2.0)), (E, C, c64(-1.0)), (E, C2, c64(-1.0))];
    let phi_ok = phi.len() == 3
        && phi
            .iter()
            .zip(phi_expected)
            .all(|(t, (h, g, c))| t.flux == h && t.charge == g && (t.coeff - c).norm() < 1e-14);
    rep.check(Check::flag(
        "non-abelian transform gives F^Φ coefficients (2, −1, −1)",
        phi_ok,
    ));

    let g_terms = nonabelian_transform(
        &ConjugacyClassData::class_c(),
        &Irrep::new(IrrepLabel::Z3Omega),
    )
    .expect("domain matches");
    let w = omega();
    let wb = omega_bar();
    let g_expected = [
        (C, E, c64(1.0)),
        (C, C, w),
        (C, C2, wb),
        (C2, E, c64(1.0)),
        (C2, C, wb),
        (C2, C2, w),
    ];
    let g_ok = g_terms.len() == 6
        && g_terms
            .iter()
            .zip(g_expected)
            .all(|(t, (h, g, c))| t.flux == h && t.charge == g && (t.coeff - c).norm() < 1e-14);
    rep.check(Check::flag(
        "non-abelian transform gives the six F^G coefficients (1, ω, ω̄, 1, ω̄, ω)",
        g_ok,
    ));
    rep.check(Check::close(
        "materialized G transform equals the minimal G ribbon",
        materialize_qutrit(&g_terms)
            .expect("rotation sector")
            .matrix()
            .max_abs_diff(minimal_g_ribbon().matrix()),
        0.0,
        1e-12,
    ));

    // MUB root-of-unity question: e^{2πi/3} satisfies the property;
    // the sixth root written in the source does not.
    let cube = mub_property_report(omega());
    let sixth = mub_property_report(Complex64::from_polar(1.0, std::f64::consts::PI / 3.0));
    rep.metric("mub_cube_root_orthonormality_dev", cube.max_orthonormality_dev);
    rep.metric("mub_cube_root_unbiasedness_dev", cube.max_unbiasedness_dev);
    rep.metric("mub_sixth_root_orthonormality_dev", sixth.max_orthonormality_dev);
    rep.check(Check::flag(
        "MUB property holds for ω = e^{2πi/3}",
        cube.orthonormal && cube.unbiased,
    ));
    rep.check(Check::flag(
        "sixth root e^{iπ/3} fails the MUB property (surfaced)",
        !sixth.orthonormal,
    ));
    rep.note(
        "The MUB family is built from the cube root of unity; the sixth-root reading of the \
         construction breaks within-basis orthonormality and is rejected by measurement.",
    );
    rep
}

fn build_dilation(op: OpName, method: MethodName) -> CliResult<Dilation> {
    let t = op.matrix();
    let alpha = svd(&t).map_err(|e| e.to_string())?.sigma_max();
    match method {
        MethodName::Svd => svd_dilation(&t, alpha).map_err(|e| e.to_string()),
        MethodName::Minimal => minimal_isometry(&t, alpha).map_err(|e| e.to_string()),
        MethodName::Explicit => {
            if op != OpName::Fg {
                return Err(format!(
                    "--method explicit only encodes the minimal G ribbon (--op fg), got --op {}",
                    op.label()
                ));
            }
            Ok(explicit_uf())
        }
    }
}

pub fn dilate(op: OpName, method: MethodName, seed: u64) -> CliResult<ScenarioReport> {
    let mut rep = ScenarioReport::new("dilate", seed);
    rep.input("op", op.label());
    rep.input("method", format!("{method:?}").to_lowercase());

    let d = build_dilation(op, method)?;
    rep.matrix("enclosing", &d.enclosing);
    rep.metric("alpha", d.alpha);
    rep.metric("aux_modes", d.aux_modes as f64);

    rep.check(Check::close(
        "enclosing satisfies its unitarity/isometry contract",
        d.enclosing.unitarity_residual(),
        0.0,
        1e-9,
    ));
    let n = d.signal_dim();
    rep.check(Check::close(
        "signal block equals target/α",
        d.enclosing
            .block(0, 0, n, n)
            .max_abs_diff(&d.target.scale_re(1.0 / d.alpha)),
        0.0,
        1e-10,
    ));

    let heralded = postselected_process(&d, 0, 0).map_err(|e| e.to_string())?;
    rep.check(Check::close(
        "heralded Kraus operator equals target/α",
        heralded.operators[0]
            .block(0, 0, n, n)
            .max_abs_diff(&d.target.scale_re(1.0 / d.alpha)),
        0.0,
        1e-10,
    ));

    let claim = op.claimed_average_success();
    let report = success_report(&d.target, Some(claim)).map_err(|e| e.to_string())?;
    rep.metric("p_min", report.p_min);
    rep.metric("p_max", report.p_max);
    rep.metric("p_avg", report.p_avg);
    rep.metric("claimed_p_avg", claim);
    let deviation = report.deviation.unwrap_or(f64::NAN);
    rep.metric("claim_deviation", deviation);
    rep.check(Check::flag(
        "deviation from the published average success probability recorded",
        deviation.is_finite(),
    ));
    match op {
        OpName::Fg => {
            rep.check(Check::close("p bounds: lower 1/4", report.p_min, 0.25, 1e-10));
            rep.check(Check::close("p bounds: upper 1", report.p_max, 1.0, 1e-10));
            rep.check(Check::close("average success 1/2", report.p_avg, 0.5, 1e-10));
            // State-dependent extremes at the published extremal states.
            if d.kind != ds3_core::dilation::DilationKind::MinimalIsometry {
                let s3 = 3f64.sqrt();
                let wb = omega_bar();
                let top =
                    ComplexMatrix::column_from_slice(&[wb / s3, wb / s3, c64(1.0 / s3)]);
                let p = success_probability(&d, &top).map_err(|e| e.to_string())?;
                rep.check(Check::close("extremal state saturates p = 1", p, 1.0, 1e-10));
            }
        }
        OpName::Fgfg => {
            rep.check(Check::close("average success 3/8", report.p_avg, 0.375, 1e-10));
        }
        OpName::FgfgRev => {
            rep.check(Check::close(
                "computed average success is 6/7 (published claim 3/4; discrepancy surfaced)",
                report.p_avg,
                6.0 / 7.0,
                1e-10,
            ));
            rep.note(
                "The σ_max-saturating scale gives Tr[T†T]/(3σ_max²) = 6/7 ≈ 0.857 for the \
                 exchanged product, not the published 75%; the deviation 3/28 is recorded.",
            );
        }
    }
    if method == MethodName::Minimal {
        rep.note(&format!(
            "Exact embedding needs {} auxiliary modes; the single-auxiliary-mode narrative is \
             an approximation for this operator.",
            d.aux_modes
        ));
    }
    Ok(rep)
}

pub fn qpt(op: OpName, noise_p: f64, shots: u64, seed: u64) -> CliResult<ScenarioReport> {
    let mut rep = ScenarioReport::new("qpt", seed);
    rep.input("op", op.label());
    rep.input("noise", noise_p);
    rep.input("shots", shots);

    let t = op.matrix();
    let alpha = svd(&t).map_err(|e| e.to_string())?.sigma_max();
    let ideal_process = KrausProcess::from_scaled_target(&t, alpha).map_err(|e| e.to_string())?;
    let simulated = if noise_p > 0.0 {
        ds3_core::noise::apply_noise(
            &ds3_core::noise::NoiseModel::depolarizing(noise_p, 3),
            &ideal_process,
        )
        .map_err(|e| e.to_string())?
    } else {
        ideal_process.clone()
    };

    let shot_opt = if shots == 0 { None } else { Some(shots) };
    let data =
        simulate_measurements(&simulated, 1.0, shot_opt, seed).map_err(|e| e.to_string())?;
    let estimate = reconstruct(&data, &ReconstructConfig::default()).map_err(|e| e.to_string())?;

    let truth = kraus_to_choi(&simulated, true);
    let ideal = kraus_to_choi(&ideal_process, true);
    let fid_truth = fidelity(&estimate.choi, &truth).map_err(|e| e.to_string())?;
    let fid_ideal = fidelity(&estimate.choi, &ideal).map_err(|e| e.to_string())?;
    rep.metric("fidelity_to_simulated_process", fid_truth);
    rep.metric("fidelity_to_ideal_process", fid_ideal);
    rep.metric("purity", purity(&estimate.choi).map_err(|e| e.to_string())?);
    rep.metric("scale_estimate", estimate.scale);
    rep.metric("scale_truth", data.scale_truth);
    rep.metric("objective", estimate.objective);
    rep.metric("iterations", estimate.iterations as f64);

    rep.check(Check::flag("solver converged", estimate.converged));
    let monotone = estimate
        .objective_trace
        .windows(2)
        .all(|w| w[1] <= w[0] + 1e-12);
    rep.check(Check::flag("objective trace monotone non-increasing", monotone));
    rep.check(Check::flag(
        "estimated Choi is PSD with unit trace",
        estimate.choi.validate_psd().is_ok()
            && (estimate.choi.matrix.trace().re - 1.0).abs() < 1e-10,
    ));
    if shot_opt.is_none() {
        rep.check(Check::at_least(
            "exact-data reconstruction fidelity",
            fid_truth,
            0.999,
        ));
        rep.check(Check::close(
            "scale recovery N̂/N",
            estimate.scale / data.scale_truth,
            1.0,
            0.01,
        ));
    }
    Ok(rep)
}

/// The 12×12 coupling-matrix CSV for a qpt run with the same arguments.
pub fn qpt_coupling_csv(op: OpName, noise_p: f64, shots: u64, seed: u64) -> CliResult<String> {
    let t = op.matrix();
    let alpha = svd(&t).map_err(|e| e.to_string())?.sigma_max();
    let process = KrausProcess::from_scaled_target(&t, alpha).map_err(|e| e.to_string())?;
    let simulated = if noise_p > 0.0 {
        ds3_core::noise::apply_noise(
            &ds3_core::noise::NoiseModel::depolarizing(noise_p, 3),
            &process,
        )
        .map_err(|e| e.to_string())?
    } else {
        process
    };
    let shot_opt = if shots == 0 { None } else { Some(shots) };
    let data =
        simulate_measurements(&simulated, 1.0, shot_opt, seed).map_err(|e| e.to_string())?;
    Ok(data.coupling_matrix_csv())
}

pub fn noise_table(grid: &[f64], seed: u64) -> CliResult<(ScenarioReport, String)> {
    let mut rep = ScenarioReport::new("noise-table", seed);
    rep.input("grid", grid);
    let targets = vec![
        ("fg".to_string(), OpName::Fg.matrix()),
        ("fgfg".to_string(), OpName::Fgfg.matrix()),
        ("fgfg-rev".to_string(), OpName::FgfgRev.matrix()),
    ];
    let rows = noisy_benchmark(&targets, grid, NoiseKind::Depolarizing).map_err(|e| e.to_string())?;
    let csv = noise_table_csv(&rows);

    for (name, _) in &targets {
        let target_rows: Vec<_> = rows.iter().filter(|r| &r.target == name).collect();
        let monotone = target_rows
            .windows(2)
            .all(|w| w[1].fidelity <= w[0].fidelity + 1e-9);
        rep.check(Check::flag(
            &format!("{name}: fidelity monotone non-increasing in p"),
            monotone,
        ));
        if let Some(first) = target_rows.first() {
            if first.p == 0.0 {
                rep.check(Check::close(
                    &format!("{name}: fidelity 1 at p = 0"),
                    first.fidelity,
                    1.0,
                    1e-9,
                ));
            }
        }
        if let Some(last) = target_rows.last() {
            if (last.p - 1.0).abs() < 1e-12 {
                rep.check(Check::close(
                    &format!("{name}: purity 1/9 at p = 1 (fully depolarized Choi)"),
                    last.purity,
                    1.0 / 9.0,
                    1e-6,
                ));
            }
            rep.metric(&format!("{name}_final_purity"), last.purity);
            rep.metric(&format!("{name}_final_fidelity"), last.fidelity);
        }
    }
    rep.note(
        "The fully depolarized qutrit-process Choi is 1₉/9 with purity 1/9; the figure 1/81 \
         appearing in one criterion statement lies below the 9-dimensional purity floor and is \
         recorded here as the corrected value.",
    );
    Ok((rep, csv))
}

pub fn wfm(modes: usize, sweeps: usize, seed: u64) -> CliResult<ScenarioReport> {
    let mut rep = ScenarioReport::new("wfm", seed);
    rep.input("modes", modes);
    rep.input("sweeps", sweeps);

    let fg = minimal_g_ribbon().into_matrix();
    let (target, approx_error) = embedding_target(&fg, 2.0).map_err(|e| e.to_string())?;
    rep.matrix("target_4x4", &target);
    rep.metric("embedding_rank1_error", approx_error);
    rep.note(
        "The 4×4 target embeds F^G/2 with one auxiliary mode; the exact embedding needs two, \
         so the rank-1 completion error is reported explicitly.",
    );

    let circuit = suite_circuit(modes, seed).map_err(|e| e.to_string())?;
    let (optimized, report) = wfm_optimize(
        &circuit,
        &target,
        &WfmConfig {
            sweeps,
            tol: 1e-14,
            seed,
        },
    )
    .map_err(|e| e.to_string())?;

    rep.matrix("realized_block", &report.realized_block);
    rep.metric("final_fidelity", report.final_fidelity);
    rep.metric("raw_overlap", *report.objective_trace.last().unwrap());
    rep.metric("sweeps_run", report.iterations_run as f64);
    rep.input("objective_trace", &report.objective_trace);

    let monotone = report
        .objective_trace
        .windows(2)
        .all(|w| w[1] >= w[0] - 1e-12);
    rep.check(Check::flag("objective trace monotone non-decreasing", monotone));
    rep.check(Check::close(
        "transfer matrix stays unitary through optimization",
        ds3_core::wfm::circuit_transfer(&optimized).unitarity_residual(),
        0.0,
        1e-9,
    ));
    if modes == SUITE_MODES && sweeps >= SUITE_SWEEPS && SUITE_SEEDS.contains(&seed) {
        rep.check(Check::at_least(
            "calibrated suite threshold",
            report.final_fidelity,
            0.9,
        ));
    }

    let cert = certify_circuit(&optimized, &fg).map_err(|e| e.to_string())?;
    rep.metric("certified_fidelity", cert.fidelity);
    rep.metric("certified_purity", cert.purity);
    let block3 = report.realized_block.block(0, 0, 3, 3);
    let f3 = normalized_block_fidelity(&fg.scale_re(0.5), &block3);
    rep.check(Check::close(
        "certified fidelity consistent with squared signal-block fidelity",
        cert.fidelity,
        f3 * f3,
        0.05,
    ));
    Ok(rep)
}

/// The full sweep: every verification scenario with deterministic settings.
pub fn all(seed: u64) -> CliResult<Vec<ScenarioReport>> {
    let mut reports = vec![
        verify_fusion(seed),
        verify_braiding(seed),
        verify_transforms(seed),
    ];
    for (op, method) in [
        (OpName::Fg, MethodName::Svd),
        (OpName::Fg, MethodName::Minimal),
        (OpName::Fg, MethodName::Explicit),
        (OpName::Fgfg, MethodName::Svd),
        (OpName::FgfgRev, MethodName::Svd),
    ] {
        reports.push(dilate(op, method, seed)?);
    }
    for op in [OpName::Fg, OpName::Fgfg, OpName::FgfgRev] {
        reports.push(qpt(op, 0.0, 0, seed)?);
    }
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    reports.push(noise_table(&grid, seed)?.0);

    // Shot-noise convergence over the frozen seed list.
    let mut shot_rep = ScenarioReport::new("shot-noise", seed);
    let process = KrausProcess::from_scaled_target(&OpName::Fg.matrix(), 2.0)
        .map_err(|e| e.to_string())?;
    let seeds: Vec<u64> = (0..10).collect();
    let mut means = Vec::new();
    for shots in [1_000u64, 10_000, 100_000, 1_000_000] {
        let fids = shot_noise_fidelities(&process, shots, &seeds).map_err(|e| e.to_string())?;
        let mean = fids.iter().sum::<f64>() / fids.len() as f64;
        shot_rep.metric(&format!("mean_fidelity_{shots}_shots"), mean);
        if shots == 1_000_000 {
            let min = fids.iter().cloned().fold(1.0f64, f64::min);
            shot_rep.check(Check::at_least("min fidelity at 10⁶ shots", min, 0.99));
        }
        means.push(mean);
    }
    shot_rep.check(Check::flag(
        "mean fidelity non-decreasing across shot budgets",
        means.windows(2).all(|w| w[1] >= w[0] - 1e-12),
    ));
    reports.push(shot_rep);

    for &s in &SUITE_SEEDS {
        reports.push(wfm(SUITE_MODES, SUITE_SWEEPS, s)?);
    }

    // End-to-end certification of an exactly embedded target.
    let fg = minimal_g_ribbon().into_matrix();
    let d = svd_dilation(&fg, 2.0).map_err(|e| e.to_string())?;
    let mut mixer = ComplexMatrix::identity(8);
    mixer.paste(0, 0, &d.enclosing);
    let exact = PhotonicCircuit::new(
        mixer,
        ComplexMatrix::identity(8),
        [0, 1, 2, 3],
        [0, 1, 2, 3],
    )
    .map_err(|e| e.to_string())?;
    let cert = certify_circuit(&exact, &fg).map_err(|e| e.to_string())?;
    let mut cert_rep = ScenarioReport::new("certify exact embedding", seed);
    cert_rep.metric("fidelity", cert.fidelity);
    cert_rep.metric("purity", cert.purity);
    cert_rep.check(Check::at_least("certified fidelity", cert.fidelity, 0.999));
    cert_rep.check(Check::at_least("certified purity", cert.purity, 0.999));
    reports.push(cert_rep);

    Ok(reports)
}
