//! Discrete multiplication operators and their adjoints with respect to the
//! scalar product induced by the norm matrix.
//!
//! Nodal bases multiply pointwise at their nodes. The modal Legendre basis
//! multiplies exactly and projects the product orthogonally back onto
//! polynomials of degree `<= p`.

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::operators::OperatorSet;
use crate::polynomial::{gauss_quadrature, legendre_all};

/// Gauss rule and Legendre table used for the orthogonal projection of
/// products `u * P_j` in the modal basis.
#[derive(Debug, Clone)]
pub struct ModalProjection {
    weights: DVector<f64>,
    /// `phi[(q, j)] = P_j(x_q)`
    phi: DMatrix<f64>,
    /// `(2k + 1) / 2`, the inverse Legendre norms.
    inv_norms: DVector<f64>,
}

impl ModalProjection {
    pub fn new(p: usize) -> Result<Self> {
        // integrands u * P_j * P_k have degree <= 3p
        let nq = (3 * p + 1).div_ceil(2) + 1;
        let (xq, wq) = gauss_quadrature(nq)?;
        let mut phi = DMatrix::zeros(nq, p + 1);
        for (q, &x) in xq.iter().enumerate() {
            for (j, v) in legendre_all(p, x).into_iter().enumerate() {
                phi[(q, j)] = v;
            }
        }
        Ok(ModalProjection {
            weights: DVector::from_vec(wq),
            phi,
            inv_norms: DVector::from_fn(p + 1, |k, _| (2.0 * k as f64 + 1.0) / 2.0),
        })
    }

    pub fn num_points(&self) -> usize {
        self.weights.len()
    }

    /// Matrix of `v -> proj(u v)` for Legendre coefficients `u`.
    fn multiplication_matrix(&self, u: &DVector<f64>) -> DMatrix<f64> {
        let u_at = &self.phi * u;
        let mut weighted = self.phi.clone();
        for (q, mut row) in weighted.row_iter_mut().enumerate() {
            row *= self.weights[q] * u_at[q];
        }
        let mut mat = self.phi.tr_mul(&weighted);
        for (k, mut row) in mat.row_iter_mut().enumerate() {
            row *= self.inv_norms[k];
        }
        mat
    }
}

/// Matrix representing multiplication by a fixed field `u` in a given basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MultOperator(pub DMatrix<f64>);

impl MultOperator {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.0 * v
    }
}

pub fn mult_operator(ops: &OperatorSet, u: &DVector<f64>) -> MultOperator {
    assert_eq!(u.len(), ops.len(), "coefficient vector length");
    if ops.kind().is_nodal() {
        MultOperator(DMatrix::from_diagonal(u))
    } else {
        MultOperator(ops.projection().multiplication_matrix(u))
    }
}

/// `M^{-1} U^T M`, obtained from a Cholesky solve of `M X = U^T M`.
pub fn m_adjoint(ops: &OperatorSet, op: &MultOperator) -> DMatrix<f64> {
    let mut x = op.0.tr_mul(ops.mass());
    ops.solve_mass_mut(&mut x);
    x
}
