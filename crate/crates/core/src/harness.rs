//! Experiment configuration, presets, runners and CSV output used by the
//! `sbpcpr` command line tool.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::advection::{AdvectionScheme, JacobianStrategy};
use crate::basis::BasisKind;
use crate::burgers::{energy_of, interpolate_on_mesh, momentum_of, BurgersScheme, CorrectionMode};
use crate::error::{Error, Result};
use crate::fluxes::FluxKind;
use crate::mesh::{GridKind, Mapping, Mesh1D};
use crate::operators::{build_operator_set, tol_sbp, OperatorSet};
use crate::polynomial::legendre_all;
use crate::time::{integrate, DiagnosticsSeries, IntegrationConfig, IntegrationOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_CONFIG: i32 = 2;
pub const EXIT_INVARIANT_FAILURE: i32 = 3;
pub const EXIT_BLOWUP: i32 = 4;

/// Points per element of the uniform overlay written for the modal basis.
const OVERLAY_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    Burgers,
    Advection,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub equation: Equation,
    pub basis: BasisKind,
    pub p: usize,
    pub elements: usize,
    pub flux: FluxKind,
    pub corrections: CorrectionMode,
    pub grid: GridKind,
    pub mapping: Mapping,
    pub jacobian: JacobianStrategy,
    pub t_final: f64,
    pub steps: usize,
    pub sample_every: usize,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Burgers' equation on `[0, 2]`: 20 elements, `p = 7`, LLF flux, both
    /// corrections, 10000 RK4 steps up to `t = 3`.
    pub fn burgers_fig1(basis: BasisKind) -> Self {
        ExperimentConfig {
            equation: Equation::Burgers,
            basis,
            p: 7,
            elements: 20,
            flux: FluxKind::LocalLaxFriedrichs,
            corrections: CorrectionMode::Both,
            grid: GridKind::Uniform,
            mapping: Mapping::Linear,
            jacobian: JacobianStrategy::NodalDiagonal,
            t_final: 3.0,
            steps: 10_000,
            sample_every: 10,
            out: None,
        }
    }

    /// Linear advection on `[-1, 1]`: 5 elements, `p = 9`, central flux,
    /// quadratic map on the geometric grid, 10000 RK4 steps up to `t = 4`.
    ///
    /// Cases: `a` Chebyshev-2 roots with the Gauss-transformed Jacobian,
    /// `b` Chebyshev-2 roots with the nodal Jacobian, `c` Lobatto with the
    /// Gauss-transformed Jacobian, `d` Lobatto nodal, `e` Gauss nodal.
    pub fn advection_fig2(case: char) -> Result<Self> {
        let (basis, jacobian) = match case.to_ascii_lowercase() {
            'a' => (BasisKind::Chebyshev2Roots, JacobianStrategy::ViaGaussTransform),
            'b' => (BasisKind::Chebyshev2Roots, JacobianStrategy::NodalDiagonal),
            'c' => (BasisKind::LobattoLegendre, JacobianStrategy::ViaGaussTransform),
            'd' => (BasisKind::LobattoLegendre, JacobianStrategy::NodalDiagonal),
            'e' => (BasisKind::GaussLegendre, JacobianStrategy::NodalDiagonal),
            _ => return Err(Error::InvalidConfig(format!("unknown figure case '{case}', expected a-e"))),
        };
        Ok(ExperimentConfig {
            equation: Equation::Advection,
            basis,
            p: 9,
            elements: 5,
            flux: FluxKind::Central,
            corrections: CorrectionMode::None,
            grid: GridKind::GeometricIncreasing,
            mapping: Mapping::Quadratic,
            jacobian,
            t_final: 4.0,
            steps: 10_000,
            sample_every: 10,
            out: None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.elements == 0 {
            return Err(Error::InvalidConfig("need at least one element".into()));
        }
        match self.equation {
            Equation::Burgers => {
                if self.flux == FluxKind::Central {
                    return Err(Error::InvalidConfig("Burgers' equation needs econ, llf or osher flux".into()));
                }
            }
            Equation::Advection => {
                if self.flux != FluxKind::Central {
                    return Err(Error::InvalidConfig("linear advection uses the central flux".into()));
                }
                if self.jacobian == JacobianStrategy::NodalDiagonal && !self.basis.is_nodal() {
                    return Err(Error::InvalidConfig("the nodal Jacobian needs a nodal basis".into()));
                }
            }
        }
        self.integration().validate()
    }

    pub fn integration(&self) -> IntegrationConfig {
        IntegrationConfig::new(self.t_final, self.steps).with_sample_every(self.sample_every)
    }

    /// Output prefix, defaulting to a name built from the configuration.
    pub fn output_prefix(&self) -> PathBuf {
        if let Some(out) = &self.out {
            return out.clone();
        }
        let name = match self.equation {
            Equation::Burgers => format!(
                "burgers_{}_{}_{}_{}_{}",
                self.basis, self.p, self.elements, self.flux, self.corrections
            ),
            Equation::Advection => format!(
                "advection_{}_{}_{}_{}_{}_{}_{}",
                self.basis, self.p, self.elements, self.grid, self.mapping, self.jacobian, self.steps
            ),
        };
        PathBuf::from(name)
    }
}

/// One output point of a solution snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionPoint {
    pub x: f64,
    pub u: f64,
    pub overlay: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub points: Vec<SolutionPoint>,
}

/// Samples the solution at the output points of every element: the basis
/// nodes (Gauss nodes for the modal basis) and, for the modal basis, a uniform
/// overlay.
pub fn sample_solution(ops: &OperatorSet, mesh: &Mesh1D, coeffs: &DMatrix<f64>, t: f64) -> Snapshot {
    let xi_nodes = ops.sample_points();
    let overlay: Vec<f64> = if ops.kind().is_nodal() {
        Vec::new()
    } else {
        (0..OVERLAY_POINTS)
            .map(|i| -1.0 + 2.0 * i as f64 / (OVERLAY_POINTS - 1) as f64)
            .collect()
    };
    let mut points = Vec::new();
    for k in 0..mesh.num_elements() {
        let u = coeffs.column(k).into_owned();
        let modal = ops.to_modal(&u);
        let eval = |xi: f64| -> f64 {
            legendre_all(ops.degree(), xi)
                .iter()
                .zip(modal.iter())
                .map(|(phi, c)| phi * c)
                .sum()
        };
        for (i, &xi) in xi_nodes.iter().enumerate() {
            let value = if ops.kind().is_nodal() { u[i] } else { eval(xi) };
            points.push(SolutionPoint {
                x: mesh.map(k, xi).0,
                u: value,
                overlay: false,
            });
        }
        for &xi in &overlay {
            points.push(SolutionPoint {
                x: mesh.map(k, xi).0,
                u: eval(xi),
                overlay: true,
            });
        }
    }
    Snapshot { t, points }
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_diagnostics_csv<W: Write>(out: &mut W, series: &DiagnosticsSeries) -> std::io::Result<()> {
    out.write_all(b"t,momentum,energy\n")?;
    for s in &series.samples {
        writeln!(out, "{},{},{}", fmt17(s.t), fmt17(s.momentum), fmt17(s.energy))?;
    }
    Ok(())
}

pub fn write_solution_csv<W: Write>(out: &mut W, snapshots: &[Snapshot]) -> std::io::Result<()> {
    out.write_all(b"t,x,u,kind\n")?;
    for snap in snapshots {
        for pt in &snap.points {
            let kind = if pt.overlay { "overlay" } else { "node" };
            writeln!(out, "{},{},{},{}", fmt17(snap.t), fmt17(pt.x), fmt17(pt.u), kind)?;
        }
    }
    Ok(())
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

/// Writes `<prefix>_diag.csv` and `<prefix>_solution.csv`; returns their paths.
pub fn write_outputs(prefix: &Path, series: &DiagnosticsSeries, snapshots: &[Snapshot]) -> Result<(PathBuf, PathBuf)> {
    let diag_path = suffixed(prefix, "_diag.csv");
    let sol_path = suffixed(prefix, "_solution.csv");
    let mut diag = BufWriter::new(File::create(&diag_path)?);
    write_diagnostics_csv(&mut diag, series)?;
    diag.flush()?;
    let mut sol = BufWriter::new(File::create(&sol_path)?);
    write_solution_csv(&mut sol, snapshots)?;
    sol.flush()?;
    Ok((diag_path, sol_path))
}

/// Outcome of a time integration run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification {
    Stable,
    Blowup { t: f64 },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Stable => f.write_str("STABLE"),
            Classification::Blowup { t } => write!(f, "BLOWUP t={t}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub ops: Arc<OperatorSet>,
    pub mesh: Mesh1D,
    pub initial: DMatrix<f64>,
    pub outcome: IntegrationOutcome<DMatrix<f64>>,
}

impl RunResult {
    pub fn classification(&self) -> Classification {
        match self.outcome.series.blowup_time {
            Some(t) => Classification::Blowup { t },
            None => Classification::Stable,
        }
    }

    pub fn series(&self) -> &DiagnosticsSeries {
        &self.outcome.series
    }

    pub fn snapshots(&self) -> Vec<Snapshot> {
        vec![
            sample_solution(&self.ops, &self.mesh, &self.initial, 0.0),
            sample_solution(&self.ops, &self.mesh, &self.outcome.state, self.outcome.t),
        ]
    }

    /// Max deviation of the final solution from `exact` at the output nodes.
    pub fn linf_error<F: Fn(f64) -> f64>(&self, exact: F) -> f64 {
        sample_solution(&self.ops, &self.mesh, &self.outcome.state, self.outcome.t)
            .points
            .iter()
            .filter(|p| !p.overlay)
            .map(|p| (p.u - exact(p.x)).abs())
            .fold(0.0, f64::max)
    }
}

pub fn burgers_initial(x: f64) -> f64 {
    (std::f64::consts::PI * x).sin() + 0.01
}

pub fn advection_initial(x: f64) -> f64 {
    (-20.0 * x * x).exp()
}

pub fn run_burgers(cfg: &ExperimentConfig) -> Result<RunResult> {
    if cfg.equation != Equation::Burgers {
        return Err(Error::InvalidConfig("not a Burgers configuration".into()));
    }
    cfg.validate()?;
    let ops = Arc::new(build_operator_set(cfg.basis, cfg.p)?);
    let mesh = Mesh1D::uniform(0.0, 2.0, cfg.elements, Mapping::Linear)?;
    let scheme = BurgersScheme::new(ops.clone(), mesh.clone(), cfg.flux, cfg.corrections)?;
    let initial = interpolate_on_mesh(&mesh, &ops, burgers_initial);
    let outcome = integrate(
        |u: &DMatrix<f64>| scheme.rhs(u),
        initial.clone(),
        &cfg.integration(),
        |u| (momentum_of(&ops, &mesh, u), energy_of(&ops, &mesh, u)),
    )?;
    Ok(RunResult {
        ops,
        mesh,
        initial,
        outcome,
    })
}

pub fn run_advection(cfg: &ExperimentConfig) -> Result<RunResult> {
    if cfg.equation != Equation::Advection {
        return Err(Error::InvalidConfig("not an advection configuration".into()));
    }
    cfg.validate()?;
    let ops = Arc::new(build_operator_set(cfg.basis, cfg.p)?);
    let mesh = Mesh1D::graded(cfg.grid, -1.0, 1.0, cfg.elements, cfg.mapping)?;
    let scheme = AdvectionScheme::new(ops.clone(), mesh.clone(), cfg.jacobian)?;
    let initial = interpolate_on_mesh(&mesh, &ops, advection_initial);
    let outcome = integrate(
        |u: &DMatrix<f64>| scheme.rhs(u),
        initial.clone(),
        &cfg.integration(),
        |u| (scheme.momentum(u), scheme.energy(u)),
    )?;
    Ok(RunResult {
        ops,
        mesh,
        initial,
        outcome,
    })
}

/// Consistency checks of one operator set.
#[derive(Debug, Clone)]
pub struct OpsReport {
    pub kind: BasisKind,
    pub p: usize,
    pub sbp_residual: f64,
    pub tol_sbp: f64,
    pub symmetry_defect: f64,
    pub mass_eig_min: f64,
    pub mass_eig_max: f64,
    pub unit_measure_error: f64,
    pub derivative_of_unit: f64,
    /// Max error of `D` on monomials of degree `<= p`.
    pub derivative_exactness: f64,
    /// Max error of `R` on monomials of degree `<= p`.
    pub restriction_exactness: f64,
    pub ops: OperatorSet,
}

const EXACTNESS_TOL: f64 = 1e-10;

impl OpsReport {
    pub fn passed(&self) -> bool {
        self.sbp_residual <= self.tol_sbp
            && self.symmetry_defect <= 1e-14
            && self.mass_eig_min > 0.0
            && self.unit_measure_error <= 1e-12
            && self.derivative_of_unit <= self.tol_sbp
            && self.derivative_exactness <= EXACTNESS_TOL
            && self.restriction_exactness <= EXACTNESS_TOL
    }
}

impl fmt::Display for OpsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "basis {} p = {}", self.kind, self.p)?;
        writeln!(
            f,
            "sbp residual        {:.3e} (tol {:.3e}) {}",
            self.sbp_residual,
            self.tol_sbp,
            mark(self.sbp_residual <= self.tol_sbp)
        )?;
        writeln!(
            f,
            "M symmetry defect   {:.3e} {}",
            self.symmetry_defect,
            mark(self.symmetry_defect <= 1e-14)
        )?;
        writeln!(
            f,
            "M eigenvalues       [{:.6e}, {:.6e}] {}",
            self.mass_eig_min,
            self.mass_eig_max,
            mark(self.mass_eig_min > 0.0)
        )?;
        writeln!(
            f,
            "1^T M 1 - 2         {:.3e} {}",
            self.unit_measure_error,
            mark(self.unit_measure_error <= 1e-12)
        )?;
        writeln!(
            f,
            "|D 1|               {:.3e} {}",
            self.derivative_of_unit,
            mark(self.derivative_of_unit <= self.tol_sbp)
        )?;
        writeln!(
            f,
            "D exactness (<= p)  {:.3e} {}",
            self.derivative_exactness,
            mark(self.derivative_exactness <= EXACTNESS_TOL)
        )?;
        writeln!(
            f,
            "R exactness (<= p)  {:.3e} {}",
            self.restriction_exactness,
            mark(self.restriction_exactness <= EXACTNESS_TOL)
        )?;
        let mut buf = Vec::new();
        self.ops.dump(&mut buf).map_err(|_| fmt::Error)?;
        f.write_str(&String::from_utf8_lossy(&buf))
    }
}

pub fn ops_check(kind: BasisKind, p: usize) -> Result<OpsReport> {
    let ops = build_operator_set(kind, p)?;
    let m = ops.mass();
    let symmetry_defect = (m - m.transpose()).amax() / m.amax();
    let eig = m.clone().symmetric_eigenvalues();
    let unit = ops.unit();
    let unit_measure_error = (unit.dot(&(m * unit)) - 2.0).abs();
    let derivative_of_unit = (ops.derivative() * unit).amax();
    let mut derivative_exactness = 0.0_f64;
    let mut restriction_exactness = 0.0_f64;
    for k in 0..=p {
        let kf = k as f64;
        let mono = ops.interpolate(|x| x.powi(k as i32));
        let deriv: DVector<f64> = if k == 0 {
            DVector::zeros(p + 1)
        } else {
            ops.interpolate(|x| kf * x.powi(k as i32 - 1))
        };
        derivative_exactness = derivative_exactness.max((ops.derivative() * &mono - deriv).amax());
        let r = ops.restriction() * &mono;
        let left = if k % 2 == 0 { 1.0 } else { -1.0 };
        restriction_exactness = restriction_exactness.max((r[0] - left).abs().max((r[1] - 1.0).abs()));
    }
    Ok(OpsReport {
        kind,
        p,
        sbp_residual: ops.sbp_residual(),
        tol_sbp: tol_sbp(p),
        symmetry_defect,
        mass_eig_min: eig.min(),
        mass_eig_max: eig.max(),
        unit_measure_error,
        derivative_of_unit,
        derivative_exactness,
        restriction_exactness,
        ops,
    })
}
