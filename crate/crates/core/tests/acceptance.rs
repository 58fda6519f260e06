//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use sbpcpr::advection::{build_jacobian, mass_jacobian_asymmetry, mass_jacobian_min_eigenvalue, JacobianStrategy};
use sbpcpr::burgers::{energy_rate, momentum_rate, BurgersScheme, CorrectionMode, DivForm, SolutionField};
use sbpcpr::fluxes::entropy_condition;
use sbpcpr::harness::{advection_initial, run_advection, run_burgers, Classification, ExperimentConfig};
use sbpcpr::mesh::{GridKind, Mapping, Mesh1D};
use sbpcpr::operators::tol_sbp;
use sbpcpr::time::{integrate, IntegrationConfig};
use sbpcpr::{build_operator_set, BasisKind, FluxKind};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn appendix_matrices() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for printed in common::printed_p2() {
        let ops = build_operator_set(printed.kind, 2).unwrap();
        let mut pairs = vec![
            ("M", ops.mass(), &printed.m),
            ("R", ops.restriction(), &printed.r),
            ("D", ops.derivative(), &printed.d),
        ];
        if let Some(v) = &printed.v {
            pairs.push(("V", ops.vandermonde(), v));
        }
        for (name, got, want) in pairs {
            let err = (got - want).amax();
            worst = worst.max(err);
            if err > 1e-13 {
                failures.push(format!("{} {name} {err:.1e}", printed.kind));
            }
        }
    }
    let time = within(start.elapsed(), Duration::from_secs(1));
    outcome(
        failures.is_empty() && time.is_ok(),
        format!("max entry error {worst:.1e} {failures:?} {}", time.err().unwrap_or_default()),
    )
}

fn sbp_sweep() -> Outcome {
    let start = Instant::now();
    let mut worst_ratio = 0.0_f64;
    let mut failures = Vec::new();
    for kind in BasisKind::ALL {
        for p in 1..=9 {
            let ops = build_operator_set(kind, p).unwrap();
            let ratio = ops.sbp_residual() / tol_sbp(p);
            worst_ratio = worst_ratio.max(ratio);
            let min_eig = ops.mass().clone().symmetric_eigenvalues().min();
            if ratio > 1.0 || min_eig <= 0.0 {
                failures.push(format!("{kind} p={p}"));
            }
        }
    }
    let time = within(start.elapsed(), Duration::from_secs(1));
    outcome(
        failures.is_empty() && time.is_ok(),
        format!("max residual/tol {worst_ratio:.1e} {failures:?} {}", time.err().unwrap_or_default()),
    )
}

fn flux_entropy() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(1);
    let mut violations = 0;
    for _ in 0..100_000 {
        let um: f64 = rng.random_range(-10.0..10.0);
        let up: f64 = rng.random_range(-10.0..10.0);
        let tol = 1e-12 * um.abs().max(up.abs()).powi(3).max(1.0);
        if entropy_condition(FluxKind::Econ, um, up).unwrap().abs() > tol {
            violations += 1;
        }
        for kind in [FluxKind::LocalLaxFriedrichs, FluxKind::Osher] {
            if entropy_condition(kind, um, up).unwrap() > tol {
                violations += 1;
            }
        }
    }
    let time = within(start.elapsed(), Duration::from_secs(1));
    outcome(
        violations == 0 && time.is_ok(),
        format!("{violations} violations in 1e5 pairs {}", time.err().unwrap_or_default()),
    )
}

fn random_field(kind: BasisKind, p: usize, seed: u64) -> SolutionField {
    let ops = Arc::new(build_operator_set(kind, p).unwrap());
    let mesh = Mesh1D::uniform(0.0, 2.0, 20, Mapping::Linear).unwrap();
    let mut rng = common::rng(seed);
    SolutionField::from_fn(mesh, ops, common::random_smooth(&mut rng, 2.0))
}

fn rates(field: &SolutionField, flux: FluxKind, mode: CorrectionMode, form: DivForm) -> (f64, f64) {
    let scheme = BurgersScheme::new(field.ops.clone(), field.mesh.clone(), flux, mode)
        .unwrap()
        .with_div_form(form);
    let r = scheme.rhs(&field.coeffs).unwrap();
    (
        momentum_rate(&field.ops, &field.mesh, &r),
        energy_rate(&field.ops, &field.mesh, &field.coeffs, &r),
    )
}

fn theorem_two() -> Outcome {
    let start = Instant::now();
    let (mut worst_m, mut worst_e, mut worst_econ) = (0.0_f64, f64::NEG_INFINITY, 0.0_f64);
    for kind in BasisKind::ALL {
        for seed in 0..10 {
            let field = random_field(kind, 7, seed);
            for flux in FluxKind::BURGERS {
                let (m, e) = rates(&field, flux, CorrectionMode::Both, DivForm::Adjoint);
                worst_m = worst_m.max(m.abs());
                if flux == FluxKind::Econ {
                    worst_econ = worst_econ.max(e.abs());
                } else {
                    worst_e = worst_e.max(e);
                }
            }
        }
    }
    let time = within(start.elapsed(), Duration::from_secs(5));
    outcome(
        worst_m <= 1e-10 && worst_e <= 1e-10 && worst_econ <= 1e-10 && time.is_ok(),
        format!(
            "max |momentum rate| {worst_m:.1e}, max dissipative energy rate {worst_e:.1e}, max |econ energy rate| {worst_econ:.1e} {}",
            time.err().unwrap_or_default()
        ),
    )
}

fn figure_one() -> Outcome {
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    for kind in BasisKind::ALL {
        let cfg = ExperimentConfig {
            sample_every: 1,
            ..ExperimentConfig::burgers_fig1(kind)
        };
        let run = run_burgers(&cfg).unwrap();
        let s = &run.series().samples;
        let m0 = s[0].momentum;
        let drift = s.iter().map(|x| (x.momentum - m0).abs()).fold(0.0, f64::max);
        let rise = s.windows(2).map(|w| w[1].energy - w[0].energy).fold(f64::NEG_INFINITY, f64::max);
        let ratio = s.last().unwrap().energy / s[0].energy;
        let complete = run.outcome.steps_taken == 10_000 && s.len() == 10_001;
        lines.push(format!("{kind}: drift {drift:.1e} max step rise {rise:.1e} E(3)/E(0) {ratio:.3}"));
        if !(complete && drift <= 1e-8 && rise <= 1e-8 && ratio < 0.9) {
            failures.push(kind.name());
        }
    }
    outcome(failures.is_empty(), format!("{} {failures:?}", lines.join("; ")))
}

/// Max |momentum rate| over random coefficient states.
fn worst_momentum_rate(kind: BasisKind, mode: CorrectionMode, form: DivForm) -> f64 {
    let ops = Arc::new(build_operator_set(kind, 7).unwrap());
    let mesh = Mesh1D::uniform(0.0, 2.0, 20, Mapping::Linear).unwrap();
    let mut worst = 0.0_f64;
    for seed in 0..10 {
        let coeffs = common::random_matrix(&mut common::rng(100 + seed), 8, 20);
        let field = SolutionField::new(mesh.clone(), ops.clone(), coeffs).unwrap();
        for flux in FluxKind::BURGERS {
            worst = worst.max(rates(&field, flux, mode, form).0.abs());
        }
    }
    worst
}

fn correction_necessity() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for kind in [BasisKind::Chebyshev1Roots, BasisKind::Chebyshev1Extrema, BasisKind::Chebyshev2Roots] {
        let none = worst_momentum_rate(kind, CorrectionMode::None, DivForm::Adjoint);
        let plain = worst_momentum_rate(kind, CorrectionMode::Both, DivForm::Plain);
        details.push(format!("{kind} none {none:.1e} plain-div {plain:.1e}"));
        pass &= none > 1e-4 || plain > 1e-4;
    }
    for mode in [CorrectionMode::Both, CorrectionMode::ResOnly, CorrectionMode::None, CorrectionMode::DivOnly] {
        let worst = worst_momentum_rate(BasisKind::ModalLegendre, mode, DivForm::Adjoint);
        let conserves = worst <= 1e-10;
        details.push(format!("legendre {mode} {worst:.1e}"));
        pass &= conserves == (mode != CorrectionMode::DivOnly);
    }
    outcome(pass, details.join("; "))
}

fn figure_two() -> Outcome {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for grid in GridKind::ALL {
        for case in ['a', 'b', 'c', 'd', 'e'] {
            for mapping in [Mapping::Quadratic, Mapping::Linear] {
                let cfg = ExperimentConfig {
                    grid,
                    mapping,
                    ..ExperimentConfig::advection_fig2(case).unwrap()
                };
                let run = run_advection(&cfg).unwrap();
                let class = run.classification();
                let expect_blowup = mapping == Mapping::Quadratic && matches!(case, 'b' | 'c');
                let ok = match class {
                    Classification::Blowup { t } => expect_blowup && t < 4.0,
                    Classification::Stable => {
                        let err = run.linf_error(advection_initial);
                        if mapping == Mapping::Quadratic {
                            details.push(format!("{grid}/{case} {err:.1e}"));
                        }
                        !expect_blowup && (mapping == Mapping::Linear || err <= 1e-2)
                    }
                };
                if !ok {
                    failures.push(format!("{grid}/{mapping}/{case}: {class}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("stable L-inf errors [{}] {failures:?}", details.join(", ")),
    )
}

fn mass_jacobian() -> Outcome {
    let start = Instant::now();
    let covered = [
        (BasisKind::GaussLegendre, JacobianStrategy::NodalDiagonal),
        (BasisKind::LobattoLegendre, JacobianStrategy::NodalDiagonal),
        (BasisKind::ModalLegendre, JacobianStrategy::ViaGaussTransform),
        (BasisKind::Chebyshev1Roots, JacobianStrategy::ViaGaussTransform),
        (BasisKind::Chebyshev1Extrema, JacobianStrategy::ViaGaussTransform),
        (BasisKind::Chebyshev2Roots, JacobianStrategy::ViaGaussTransform),
    ];
    let mesh = Mesh1D::graded(GridKind::GeometricIncreasing, -1.0, 1.0, 5, Mapping::Quadratic).unwrap();
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for p in 2..=9 {
        for (kind, strategy) in covered {
            let ops = build_operator_set(kind, p).unwrap();
            for k in 0..5 {
                let (a, b) = mesh.element(k);
                let j = build_jacobian(&ops, strategy, Mapping::Quadratic, a, b).unwrap();
                let asym = mass_jacobian_asymmetry(&ops, &j);
                worst = worst.max(asym);
                if asym > 1e-11 || mass_jacobian_min_eigenvalue(&ops, &j) <= 0.0 {
                    failures.push(format!("{kind}/{strategy} p={p}"));
                }
            }
        }
    }
    let (a, b) = mesh.element(0);
    let witness = |kind, strategy| {
        let ops = build_operator_set(kind, 9).unwrap();
        mass_jacobian_asymmetry(&ops, &build_jacobian(&ops, strategy, Mapping::Quadratic, a, b).unwrap())
    };
    let cheb = witness(BasisKind::Chebyshev2Roots, JacobianStrategy::NodalDiagonal);
    let lob = witness(BasisKind::LobattoLegendre, JacobianStrategy::ViaGaussTransform);
    let time = within(start.elapsed(), Duration::from_secs(1));
    outcome(
        failures.is_empty() && cheb > 1e-3 && lob > 1e-3 && time.is_ok(),
        format!(
            "max asymmetry {worst:.1e}; witnesses cheb2/nodal {cheb:.1e}, lobatto/via-gauss {lob:.1e} {failures:?} {}",
            time.err().unwrap_or_default()
        ),
    )
}

fn rk4_order() -> Outcome {
    let start = Instant::now();
    let error = |steps| {
        let out = integrate(|u: &f64| Ok(-*u), 1.0, &IntegrationConfig::new(1.0, steps), |_| (0.0, 0.0)).unwrap();
        (out.state - (-1.0f64).exp()).abs()
    };
    let order = (error(20) / error(40)).log2();
    let time = within(start.elapsed(), Duration::from_secs(1));
    outcome(
        (3.8..=4.2).contains(&order) && time.is_ok(),
        format!("observed order {order:.3} {}", time.err().unwrap_or_default()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("p = 2 operator matrices", appendix_matrices),
        ("SBP sweep", sbp_sweep),
        ("flux entropy property", flux_entropy),
        ("semidiscrete conservation and stability", theorem_two),
        ("Burgers momentum and energy time series", figure_one),
        ("correction necessity", correction_necessity),
        ("curvilinear advection stability matrix", figure_two),
        ("M J structure", mass_jacobian),
        ("RK4 order", rk4_order),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {} {status} {name} ({:.2}s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            out.detail.trim_end()
        );
        if !out.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
