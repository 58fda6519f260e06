//! Linear advection `u_t + u_x = 0` on curvilinear 1-D grids.
//!
//! Each element is mapped to `[-1, 1]` and the transformed equation
//! `J u_t + u_xi = 0` is discretised as
//!
//! ```text
//! J du/dt + D u + M^{-1} R^T B (f_num - R u) = 0
//! ```
//!
//! with the central flux. The energy estimate needs `M J` to be symmetric and
//! positive definite, which depends on how the Jacobian operator `J` is built.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Dyn, Vector2, LU};

use crate::burgers::{interface_values, SolutionField};
use crate::error::{Error, Result};
use crate::fluxes::central_flux;
use crate::mesh::{map_element, Mapping, Mesh1D};
use crate::operators::{vandermonde, OperatorSet};
use crate::polynomial::gauss_quadrature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JacobianStrategy {
    /// `diag(dx/dxi)` at the basis nodes.
    NodalDiagonal,
    /// Diagonal Jacobian at Gauss-Legendre nodes, transformed to the target basis.
    ViaGaussTransform,
}

impl JacobianStrategy {
    pub fn name(self) -> &'static str {
        match self {
            JacobianStrategy::NodalDiagonal => "nodal",
            JacobianStrategy::ViaGaussTransform => "via-gauss",
        }
    }
}

impl fmt::Display for JacobianStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for JacobianStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "nodal" | "nodal-diagonal" => Ok(JacobianStrategy::NodalDiagonal),
            "via-gauss" | "gauss" | "from-gauss" => Ok(JacobianStrategy::ViaGaussTransform),
            _ => Err(format!("unknown Jacobian strategy '{s}'")),
        }
    }
}

/// Matrix of multiplication by `dx/dxi` on one element.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianOperator(pub DMatrix<f64>);

impl JacobianOperator {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }
}

pub fn build_jacobian(
    ops: &OperatorSet,
    strategy: JacobianStrategy,
    mapping: Mapping,
    xmin: f64,
    xmax: f64,
) -> Result<JacobianOperator> {
    let dxdxi = |xi: f64| map_element(mapping, xmin, xmax, xi).1;
    match strategy {
        JacobianStrategy::NodalDiagonal => {
            let nodes = ops.nodes().ok_or(Error::NotNodal(ops.kind()))?;
            let diag = DVector::from_iterator(nodes.len(), nodes.iter().map(|&x| dxdxi(x)));
            Ok(JacobianOperator(DMatrix::from_diagonal(&diag)))
        }
        JacobianStrategy::ViaGaussTransform => {
            let p = ops.degree();
            let (xg, _) = gauss_quadrature(p + 1)?;
            let vg = vandermonde(&xg, p);
            let vg_lu = vg.clone().lu();
            let jg = DVector::from_iterator(p + 1, xg.iter().map(|&x| dxdxi(x)));
            // modal representation: Vg^{-1} diag(J) Vg
            let mut j_modal = DMatrix::from_diagonal(&jg) * &vg;
            if !vg_lu.solve_mut(&mut j_modal) {
                return Err(Error::SingularMatrix("Gauss Vandermonde matrix"));
            }
            if !ops.kind().is_nodal() {
                return Ok(JacobianOperator(j_modal));
            }
            // nodal representation: V J_modal V^{-1}, i.e. solve X V = V J_modal
            let v = ops.vandermonde();
            let rhs = (v * j_modal).transpose();
            let sol = v
                .transpose()
                .lu()
                .solve(&rhs)
                .ok_or(Error::SingularMatrix("Vandermonde matrix"))?;
            Ok(JacobianOperator(sol.transpose()))
        }
    }
}

/// Semidiscrete advection operator with per-element Jacobians factorised once.
#[derive(Debug, Clone)]
pub struct AdvectionScheme {
    ops: Arc<OperatorSet>,
    mesh: Mesh1D,
    jacobians: Vec<JacobianOperator>,
    factors: Vec<LU<f64, Dyn, Dyn>>,
}

impl AdvectionScheme {
    pub fn new(ops: Arc<OperatorSet>, mesh: Mesh1D, strategy: JacobianStrategy) -> Result<Self> {
        let jacobians = (0..mesh.num_elements())
            .map(|k| {
                let (a, b) = mesh.element(k);
                build_jacobian(&ops, strategy, mesh.mapping(), a, b)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_jacobians(ops, mesh, jacobians)
    }

    pub fn with_jacobians(ops: Arc<OperatorSet>, mesh: Mesh1D, jacobians: Vec<JacobianOperator>) -> Result<Self> {
        if jacobians.len() != mesh.num_elements() {
            return Err(Error::DimensionMismatch {
                expected: mesh.num_elements(),
                got: jacobians.len(),
            });
        }
        let factors = jacobians
            .iter()
            .map(|j| {
                if j.0.nrows() != ops.len() || j.0.ncols() != ops.len() {
                    return Err(Error::DimensionMismatch {
                        expected: ops.len(),
                        got: j.0.nrows(),
                    });
                }
                let lu = j.0.clone().lu();
                let u_diag = lu.u().diagonal().abs();
                if !(u_diag.min() > 1e-14 * u_diag.max()) {
                    return Err(Error::SingularMatrix("Jacobian operator"));
                }
                Ok(lu)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AdvectionScheme {
            ops,
            mesh,
            jacobians,
            factors,
        })
    }

    pub fn ops(&self) -> &OperatorSet {
        &self.ops
    }

    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    pub fn jacobians(&self) -> &[JacobianOperator] {
        &self.jacobians
    }

    /// `-J^{-1} [ D u + C (f_num - R u) ]` on every element.
    pub fn rhs(&self, coeffs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let ops = &*self.ops;
        let k_count = self.mesh.num_elements();
        let traces = ops.restriction() * coeffs;
        let fluxes = interface_values(&traces, |um, up| Ok(central_flux(um, up)))?;
        let mut out = ops.derivative() * coeffs;
        for k in 0..k_count {
            let left = if k == 0 { k_count - 1 } else { k - 1 };
            let surface = Vector2::new(fluxes[left] - traces[(0, k)], fluxes[k] - traces[(1, k)]);
            let mut col = out.column(k) + ops.correction() * surface;
            self.factors[k].solve_mut(&mut col);
            col.neg_mut();
            out.set_column(k, &col);
        }
        Ok(out)
    }

    /// `sum_k 1^T M J_k u_k`
    pub fn momentum(&self, coeffs: &DMatrix<f64>) -> f64 {
        let w = self.ops.mass() * self.ops.unit();
        (0..coeffs.ncols())
            .map(|k| w.dot(&(&self.jacobians[k].0 * coeffs.column(k))))
            .fold(0.0, |acc, v| acc + v)
    }

    /// `sum_k u_k^T M J_k u_k`
    pub fn energy(&self, coeffs: &DMatrix<f64>) -> f64 {
        (0..coeffs.ncols())
            .map(|k| {
                let u = coeffs.column(k);
                u.dot(&(self.ops.mass() * (&self.jacobians[k].0 * u)))
            })
            .fold(0.0, |acc, v| acc + v)
    }

    /// `sum_k 1^T M J_k du_k`
    pub fn momentum_rate(&self, rates: &DMatrix<f64>) -> f64 {
        self.momentum(rates)
    }

    /// `sum_k u_k^T M J_k du_k`
    pub fn energy_rate(&self, coeffs: &DMatrix<f64>, rates: &DMatrix<f64>) -> f64 {
        (0..coeffs.ncols())
            .map(|k| {
                coeffs
                    .column(k)
                    .dot(&(self.ops.mass() * (&self.jacobians[k].0 * rates.column(k))))
            })
            .fold(0.0, |acc, v| acc + v)
    }
}

pub fn advection_rhs(field: &SolutionField, jac: &[JacobianOperator]) -> Result<DMatrix<f64>> {
    AdvectionScheme::with_jacobians(field.ops.clone(), field.mesh.clone(), jac.to_vec())?.rhs(&field.coeffs)
}

/// `M J` and its symmetry defect `|MJ - (MJ)^T|_max / |MJ|_max`.
pub fn mass_jacobian_asymmetry(ops: &OperatorSet, jac: &JacobianOperator) -> f64 {
    let mj = ops.mass() * &jac.0;
    (&mj - mj.transpose()).amax() / mj.amax()
}

/// Smallest eigenvalue of the symmetric part of `M J`.
pub fn mass_jacobian_min_eigenvalue(ops: &OperatorSet, jac: &JacobianOperator) -> f64 {
    let mj = ops.mass() * &jac.0;
    let sym = (&mj + mj.transpose()) * 0.5;
    sym.symmetric_eigenvalues().min()
}
