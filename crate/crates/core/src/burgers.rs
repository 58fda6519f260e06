//! Skew-symmetric SBP CPR semidiscretisation of the inviscid Burgers' equation
//! with divergence and restriction correction terms.
//!
//! Per element, on the reference element,
//!
//! ```text
//! du/dt = -[ D (U u)/2 + c_div + C (f_num - R (U u)/2 - c_res) ]
//! c_div = ( U* D u - D U u / 2 ) / 3,    U* = M^{-1} U^T M
//! c_res = ( (R u)^2 - R U u ) / 6
//! ```
//!
//! scaled by `2 / dx_k` for the affine element map. Elements are coupled
//! periodically.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Vector2};

use crate::error::{Error, Result};
use crate::fluxes::{burgers_flux, FluxKind};
use crate::mesh::Mesh1D;
use crate::multiplication::{m_adjoint, mult_operator};
use crate::operators::OperatorSet;

/// Which correction terms enter the scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrectionMode {
    Both,
    DivOnly,
    ResOnly,
    None,
}

impl CorrectionMode {
    pub const ALL: [CorrectionMode; 4] = [
        CorrectionMode::Both,
        CorrectionMode::DivOnly,
        CorrectionMode::ResOnly,
        CorrectionMode::None,
    ];

    pub fn uses_div(self) -> bool {
        matches!(self, CorrectionMode::Both | CorrectionMode::DivOnly)
    }

    pub fn uses_res(self) -> bool {
        matches!(self, CorrectionMode::Both | CorrectionMode::ResOnly)
    }

    pub fn name(self) -> &'static str {
        match self {
            CorrectionMode::Both => "both",
            CorrectionMode::DivOnly => "div",
            CorrectionMode::ResOnly => "res",
            CorrectionMode::None => "none",
        }
    }
}

impl fmt::Display for CorrectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorrectionMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "both" => Ok(CorrectionMode::Both),
            "div" | "div-only" => Ok(CorrectionMode::DivOnly),
            "res" | "res-only" => Ok(CorrectionMode::ResOnly),
            "none" => Ok(CorrectionMode::None),
            _ => Err(format!("unknown correction mode '{s}'")),
        }
    }
}

/// Multiplication operator used in the first term of `c_div`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DivForm {
    /// `M^{-1} U^T M`, the adjoint with respect to the norm matrix.
    #[default]
    Adjoint,
    /// `U` itself; only equivalent to the adjoint for diagonal norms or the modal basis.
    Plain,
}

/// Per-element coefficient vectors on a mesh; column `k` holds element `k`.
#[derive(Debug, Clone)]
pub struct SolutionField {
    pub mesh: Mesh1D,
    pub ops: Arc<OperatorSet>,
    pub coeffs: DMatrix<f64>,
}

impl SolutionField {
    pub fn new(mesh: Mesh1D, ops: Arc<OperatorSet>, coeffs: DMatrix<f64>) -> Result<Self> {
        if coeffs.nrows() != ops.len() {
            return Err(Error::DimensionMismatch {
                expected: ops.len(),
                got: coeffs.nrows(),
            });
        }
        if coeffs.ncols() != mesh.num_elements() {
            return Err(Error::DimensionMismatch {
                expected: mesh.num_elements(),
                got: coeffs.ncols(),
            });
        }
        Ok(SolutionField { mesh, ops, coeffs })
    }

    /// Interpolates a function of the physical coordinate element by element.
    pub fn from_fn<F: Fn(f64) -> f64>(mesh: Mesh1D, ops: Arc<OperatorSet>, f: F) -> Self {
        let coeffs = interpolate_on_mesh(&mesh, &ops, f);
        SolutionField { mesh, ops, coeffs }
    }

    pub fn zeros(mesh: Mesh1D, ops: Arc<OperatorSet>) -> Self {
        let coeffs = DMatrix::zeros(ops.len(), mesh.num_elements());
        SolutionField { mesh, ops, coeffs }
    }

    pub fn element(&self, k: usize) -> DVector<f64> {
        self.coeffs.column(k).into_owned()
    }

    pub fn num_elements(&self) -> usize {
        self.coeffs.ncols()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|v| v.is_finite())
    }
}

/// Coefficients of `f(x(xi))` on every element of `mesh`.
pub fn interpolate_on_mesh<F: Fn(f64) -> f64>(mesh: &Mesh1D, ops: &OperatorSet, f: F) -> DMatrix<f64> {
    let mut coeffs = DMatrix::zeros(ops.len(), mesh.num_elements());
    for k in 0..mesh.num_elements() {
        let col = ops.interpolate(|xi| f(mesh.map(k, xi).0));
        coeffs.set_column(k, &col);
    }
    coeffs
}

/// Divergence correction `( M^{-1} U^T M D u - D U u / 2 ) / 3`.
pub fn correction_div(ops: &OperatorSet, u: &DVector<f64>) -> DVector<f64> {
    correction_div_with(ops, u, DivForm::Adjoint)
}

/// Divergence correction with `U` in place of its adjoint.
pub fn correction_div_plain(ops: &OperatorSet, u: &DVector<f64>) -> DVector<f64> {
    correction_div_with(ops, u, DivForm::Plain)
}

pub fn correction_div_with(ops: &OperatorSet, u: &DVector<f64>, form: DivForm) -> DVector<f64> {
    let mult = mult_operator(ops, u);
    let du = ops.derivative() * u;
    let d_uu = ops.derivative() * mult.apply(u);
    let first = match form {
        DivForm::Adjoint => m_adjoint(ops, &mult) * du,
        DivForm::Plain => mult.apply(&du),
    };
    (first - d_uu * 0.5) / 3.0
}

/// Restriction correction `( (R u)^2 - R U u ) / 6`.
pub fn correction_res(ops: &OperatorSet, u: &DVector<f64>) -> Vector2<f64> {
    let mult = mult_operator(ops, u);
    let ru = ops.restriction() * u;
    let ruu = ops.restriction() * mult.apply(u);
    Vector2::new(ru[0] * ru[0] - ruu[0], ru[1] * ru[1] - ruu[1]) / 6.0
}

/// Semidiscrete Burgers operator for a fixed basis, mesh and flux.
#[derive(Debug, Clone)]
pub struct BurgersScheme {
    ops: Arc<OperatorSet>,
    mesh: Mesh1D,
    flux: FluxKind,
    mode: CorrectionMode,
    div_form: DivForm,
}

impl BurgersScheme {
    pub fn new(ops: Arc<OperatorSet>, mesh: Mesh1D, flux: FluxKind, mode: CorrectionMode) -> Result<Self> {
        if flux == FluxKind::Central {
            return Err(Error::FluxMismatch(flux));
        }
        Ok(BurgersScheme {
            ops,
            mesh,
            flux,
            mode,
            div_form: DivForm::Adjoint,
        })
    }

    pub fn with_div_form(mut self, form: DivForm) -> Self {
        self.div_form = form;
        self
    }

    pub fn ops(&self) -> &OperatorSet {
        &self.ops
    }

    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn flux(&self) -> FluxKind {
        self.flux
    }

    pub fn mode(&self) -> CorrectionMode {
        self.mode
    }

    /// Time derivative of all element coefficients.
    pub fn rhs(&self, coeffs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let ops = &*self.ops;
        let k_count = self.mesh.num_elements();
        let traces = ops.restriction() * coeffs;
        let fluxes = interface_values(&traces, |um, up| burgers_flux(self.flux, um, up))?;

        let mut out = DMatrix::zeros(ops.len(), k_count);
        for k in 0..k_count {
            let u = coeffs.column(k).into_owned();
            let mult = mult_operator(ops, &u);
            let uu = mult.apply(&u);
            let vol = ops.derivative() * &uu * 0.5;
            let ruu = ops.restriction() * &uu;

            let left = if k == 0 { k_count - 1 } else { k - 1 };
            let mut surface = Vector2::new(fluxes[left], fluxes[k]) - ruu.fixed_rows::<2>(0) * 0.5;
            if self.mode.uses_res() {
                let ru = traces.column(k);
                surface -= Vector2::new(ru[0] * ru[0] - ruu[0], ru[1] * ru[1] - ruu[1]) / 6.0;
            }

            let mut rate = vol.clone() + ops.correction() * surface;
            if self.mode.uses_div() {
                let du = ops.derivative() * &u;
                let first = match self.div_form {
                    DivForm::Adjoint => m_adjoint(ops, &mult) * du,
                    DivForm::Plain => mult.apply(&du),
                };
                rate += (first - vol) / 3.0;
            }
            rate *= -2.0 / self.mesh.width(k);
            out.set_column(k, &rate);
        }
        Ok(out)
    }
}

/// Numerical flux at every interface; interface `k` lies between element `k`
/// (its right trace) and element `k + 1` (its left trace), periodically.
pub(crate) fn interface_values<F>(traces: &DMatrix<f64>, mut f: F) -> Result<Vec<f64>>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let k_count = traces.ncols();
    (0..k_count)
        .map(|k| f(traces[(1, k)], traces[(0, (k + 1) % k_count)]))
        .collect()
}

/// `(u-, u+)` at every interface, in the order of [`BurgersScheme::rhs`].
pub fn interface_traces(ops: &OperatorSet, coeffs: &DMatrix<f64>) -> Vec<(f64, f64)> {
    let traces = ops.restriction() * coeffs;
    let k_count = traces.ncols();
    (0..k_count)
        .map(|k| (traces[(1, k)], traces[(0, (k + 1) % k_count)]))
        .collect()
}

pub fn burgers_rhs(field: &SolutionField, flux: FluxKind, mode: CorrectionMode) -> Result<DMatrix<f64>> {
    BurgersScheme::new(field.ops.clone(), field.mesh.clone(), flux, mode)?.rhs(&field.coeffs)
}

/// `sum_k dx_k/2 * 1^T M u_k`, accumulated in element order.
pub fn momentum_of(ops: &OperatorSet, mesh: &Mesh1D, coeffs: &DMatrix<f64>) -> f64 {
    let w = ops.mass() * ops.unit();
    (0..coeffs.ncols())
        .map(|k| 0.5 * mesh.width(k) * w.dot(&coeffs.column(k)))
        .fold(0.0, |acc, v| acc + v)
}

/// `sum_k dx_k/2 * u_k^T M u_k`, accumulated in element order.
pub fn energy_of(ops: &OperatorSet, mesh: &Mesh1D, coeffs: &DMatrix<f64>) -> f64 {
    let mu = ops.mass() * coeffs;
    (0..coeffs.ncols())
        .map(|k| 0.5 * mesh.width(k) * coeffs.column(k).dot(&mu.column(k)))
        .fold(0.0, |acc, v| acc + v)
}

pub fn momentum(field: &SolutionField) -> f64 {
    momentum_of(&field.ops, &field.mesh, &field.coeffs)
}

pub fn energy(field: &SolutionField) -> f64 {
    energy_of(&field.ops, &field.mesh, &field.coeffs)
}

/// Time derivative of [`momentum_of`] for a given rate field.
pub fn momentum_rate(ops: &OperatorSet, mesh: &Mesh1D, rates: &DMatrix<f64>) -> f64 {
    momentum_of(ops, mesh, rates)
}

/// Time derivative of [`energy_of`]: `2 sum_k dx_k/2 u_k^T M du_k/dt`.
pub fn energy_rate(ops: &OperatorSet, mesh: &Mesh1D, coeffs: &DMatrix<f64>, rates: &DMatrix<f64>) -> f64 {
    let m_rates = ops.mass() * rates;
    (0..coeffs.ncols())
        .map(|k| mesh.width(k) * coeffs.column(k).dot(&m_rates.column(k)))
        .fold(0.0, |acc, v| acc + v)
}
