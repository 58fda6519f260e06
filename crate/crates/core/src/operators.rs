//! Discrete SBP operator sets: norm, derivative and restriction matrices for
//! nodal and modal polynomial bases on the reference element.
//!
//! All operators are built in the modal Legendre basis, where they are known in
//! closed form, and transformed to nodal bases with the Vandermonde matrix
//! `V[i][j] = P_j(x_i)`:
//!
//! ```text
//! M = V^{-T} Mhat V^{-1},   D = V Dhat V^{-1},   R = Rhat V^{-1}
//! ```
//!
//! Gauss- and Lobatto-Legendre bases use the diagonal of quadrature weights as
//! norm matrix instead.

use std::io::{self, Write};

use log::warn;
use nalgebra::{Cholesky, DMatrix, DVector, Dyn, Matrix2, LU};

use crate::basis::BasisKind;
use crate::error::{Error, Result};
use crate::multiplication::ModalProjection;
use crate::polynomial::{compute_nodes, gauss_quadrature, legendre_all, lobatto_quadrature};

/// Largest supported polynomial degree.
pub const MAX_DEGREE: usize = 20;

const VANDERMONDE_COND_WARN: f64 = 1e12;

/// Admissible SBP residual for degree `p`.
pub fn tol_sbp(p: usize) -> f64 {
    let n = (p + 1) as f64;
    1e-11 * n * n
}

/// Boundary bilinear form `diag(-1, 1)`.
pub fn boundary_matrix() -> Matrix2<f64> {
    Matrix2::new(-1.0, 0.0, 0.0, 1.0)
}

/// Closed-form operators of the modal Legendre basis.
#[derive(Debug, Clone)]
pub struct ModalOperators {
    pub mass: DMatrix<f64>,
    pub derivative: DMatrix<f64>,
    pub restriction: DMatrix<f64>,
}

impl ModalOperators {
    pub fn new(p: usize) -> Self {
        let n = p + 1;
        let mass = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                2.0 / (2.0 * i as f64 + 1.0)
            } else {
                0.0
            }
        });
        let derivative = DMatrix::from_fn(n, n, |i, j| {
            if j > i && (i + j) % 2 == 1 {
                2.0 * i as f64 + 1.0
            } else {
                0.0
            }
        });
        let restriction = DMatrix::from_fn(2, n, |side, j| {
            if side == 0 && j % 2 == 1 {
                -1.0
            } else {
                1.0
            }
        });
        ModalOperators {
            mass,
            derivative,
            restriction,
        }
    }
}

/// Vandermonde matrix `V[i][j] = P_j(nodes[i])` mapping Legendre coefficients
/// to nodal values.
pub fn vandermonde(nodes: &[f64], p: usize) -> DMatrix<f64> {
    assert_eq!(nodes.len(), p + 1, "need p + 1 nodes");
    let n = p + 1;
    let mut v = DMatrix::zeros(n, n);
    for (i, &x) in nodes.iter().enumerate() {
        for (j, val) in legendre_all(p, x).into_iter().enumerate() {
            v[(i, j)] = val;
        }
    }
    let sv = v.clone().singular_values();
    let cond = sv.max() / sv.min();
    if !(cond <= VANDERMONDE_COND_WARN) {
        warn!("Vandermonde matrix for p = {p} is ill-conditioned (cond ~ {cond:e})");
    }
    v
}

/// Max-norm of `M D + D^T M - R^T B R`.
pub fn sbp_residual_of(m: &DMatrix<f64>, d: &DMatrix<f64>, r: &DMatrix<f64>) -> f64 {
    let md = m * d;
    let rbr = r.transpose() * boundary_matrix() * r;
    (&md + md.transpose() - rbr).amax()
}

/// Discrete SBP operator for one basis kind and degree.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    kind: BasisKind,
    p: usize,
    nodes: Option<Vec<f64>>,
    m: DMatrix<f64>,
    d: DMatrix<f64>,
    r: DMatrix<f64>,
    v: DMatrix<f64>,
    m_chol: Cholesky<f64, Dyn>,
    v_lu: LU<f64, Dyn, Dyn>,
    correction: DMatrix<f64>,
    unit: DVector<f64>,
    projection: ModalProjection,
}

impl OperatorSet {
    pub fn new(kind: BasisKind, p: usize) -> Result<Self> {
        build_operator_set(kind, p)
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    /// Number of coefficients per element, `p + 1`.
    pub fn len(&self) -> usize {
        self.p + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Interpolation nodes, `None` for the modal basis.
    pub fn nodes(&self) -> Option<&[f64]> {
        self.nodes.as_deref()
    }

    pub fn mass(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn derivative(&self) -> &DMatrix<f64> {
        &self.d
    }

    pub fn restriction(&self) -> &DMatrix<f64> {
        &self.r
    }

    pub fn boundary(&self) -> Matrix2<f64> {
        boundary_matrix()
    }

    pub fn vandermonde(&self) -> &DMatrix<f64> {
        &self.v
    }

    /// Correction matrix `C = M^{-1} R^T B` (n x 2).
    pub fn correction(&self) -> &DMatrix<f64> {
        &self.correction
    }

    /// Coefficients of the constant function 1.
    pub fn unit(&self) -> &DVector<f64> {
        &self.unit
    }

    pub(crate) fn projection(&self) -> &ModalProjection {
        &self.projection
    }

    /// Solves `M x = b` in place for every column of `b`.
    pub fn solve_mass_mut(&self, b: &mut DMatrix<f64>) {
        self.m_chol.solve_mut(b);
    }

    pub fn solve_mass(&self, b: &DVector<f64>) -> DVector<f64> {
        self.m_chol.solve(b)
    }

    pub fn sbp_residual(&self) -> f64 {
        sbp_residual_of(&self.m, &self.d, &self.r)
    }

    /// Modal Legendre coefficients `V^{-1} u`.
    pub fn to_modal(&self, u: &DVector<f64>) -> DVector<f64> {
        match self.kind {
            BasisKind::ModalLegendre => u.clone(),
            _ => self.v_lu.solve(u).expect("Vandermonde matrix was checked at construction"),
        }
    }

    /// Nodal values `V u_hat` from Legendre coefficients.
    pub fn from_modal(&self, u_hat: &DVector<f64>) -> DVector<f64> {
        &self.v * u_hat
    }

    /// Evaluates the polynomial with coefficients `u` at reference coordinate `x`.
    pub fn evaluate(&self, u: &DVector<f64>, x: f64) -> f64 {
        let modal = self.to_modal(u);
        legendre_all(self.p, x)
            .iter()
            .zip(modal.iter())
            .map(|(phi, c)| phi * c)
            .sum()
    }

    /// Coefficients of the interpolant of `f`.
    ///
    /// Nodal bases sample `f` at their nodes. The modal basis interpolates at the
    /// `p + 1` Gauss-Legendre nodes and transforms to Legendre coefficients.
    pub fn interpolate<F: Fn(f64) -> f64>(&self, f: F) -> DVector<f64> {
        match &self.nodes {
            Some(nodes) => DVector::from_iterator(nodes.len(), nodes.iter().map(|&x| f(x))),
            None => {
                let (xg, wg) = gauss_quadrature(self.p + 1)
                    .expect("Gauss nodes exist for every supported degree");
                // Gauss interpolation coincides with the discrete Legendre projection.
                let mut c = DVector::zeros(self.p + 1);
                for (&x, &w) in xg.iter().zip(&wg) {
                    let fx = f(x);
                    for (k, phi) in legendre_all(self.p, x).into_iter().enumerate() {
                        c[k] += w * fx * phi;
                    }
                }
                for k in 0..=self.p {
                    c[k] *= (2.0 * k as f64 + 1.0) / 2.0;
                }
                c
            }
        }
    }

    /// Reference coordinates at which the solution is sampled for output:
    /// the basis nodes, or the Gauss-Legendre nodes for the modal basis.
    pub fn sample_points(&self) -> Vec<f64> {
        match &self.nodes {
            Some(nodes) => nodes.clone(),
            None => gauss_quadrature(self.p + 1)
                .expect("Gauss nodes exist for every supported degree")
                .0,
        }
    }

    /// Writes `M`, `D`, `R`, `B` and `V` in the plain-text dump format.
    pub fn dump<W: Write>(&self, out: &mut W) -> io::Result<()> {
        write_matrix(out, "M", &self.m)?;
        write_matrix(out, "D", &self.d)?;
        write_matrix(out, "R", &self.r)?;
        let b = DMatrix::from_fn(2, 2, |i, j| boundary_matrix()[(i, j)]);
        write_matrix(out, "B", &b)?;
        write_matrix(out, "V", &self.v)
    }
}

/// Row-major dump of one matrix headed by `# <name> <rows>x<cols>`, 17 significant digits.
pub fn write_matrix<W: Write>(out: &mut W, name: &str, a: &DMatrix<f64>) -> io::Result<()> {
    writeln!(out, "# {name} {}x{}", a.nrows(), a.ncols())?;
    for i in 0..a.nrows() {
        let row: Vec<String> = (0..a.ncols()).map(|j| format!("{:.16e}", a[(i, j)])).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

pub fn build_operator_set(kind: BasisKind, p: usize) -> Result<OperatorSet> {
    if !(1..=MAX_DEGREE).contains(&p) {
        return Err(Error::InvalidDegree { p, max: MAX_DEGREE });
    }
    let n = p + 1;
    let modal = ModalOperators::new(p);

    let (nodes, m, d, r, v) = if kind == BasisKind::ModalLegendre {
        (
            None,
            modal.mass.clone(),
            modal.derivative.clone(),
            modal.restriction.clone(),
            DMatrix::identity(n, n),
        )
    } else {
        let nodes = compute_nodes(kind, p)?;
        let v = vandermonde(&nodes, p);
        let v_inv = v
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMatrix("Vandermonde matrix"))?;
        let d = &v * &modal.derivative * &v_inv;
        let r = &modal.restriction * &v_inv;
        let m = match kind {
            BasisKind::GaussLegendre => DMatrix::from_diagonal(&DVector::from_vec(
                gauss_quadrature(n)?.1,
            )),
            BasisKind::LobattoLegendre => {
                DMatrix::from_diagonal(&DVector::from_vec(lobatto_quadrature(p)?.1))
            }
            _ => {
                let m = v_inv.transpose() * &modal.mass * &v_inv;
                (&m + m.transpose()) * 0.5
            }
        };
        (Some(nodes), m, d, r, v)
    };

    let residual = sbp_residual_of(&m, &d, &r);
    let tol = tol_sbp(p);
    if !(residual <= tol) {
        return Err(Error::SbpViolation {
            kind,
            p,
            residual,
            tol,
        });
    }

    let m_chol = Cholesky::new(m.clone()).ok_or(Error::SingularMatrix("norm matrix"))?;
    let v_lu = v.clone().lu();
    let rtb = r.transpose() * boundary_matrix();
    let mut correction = DMatrix::from_column_slice(n, 2, rtb.as_slice());
    m_chol.solve_mut(&mut correction);
    let unit = if kind.is_nodal() {
        DVector::from_element(n, 1.0)
    } else {
        DVector::from_fn(n, |i, _| if i == 0 { 1.0 } else { 0.0 })
    };
    let projection = ModalProjection::new(p)?;

    Ok(OperatorSet {
        kind,
        p,
        nodes,
        m,
        d,
        r,
        v,
        m_chol,
        v_lu,
        correction,
        unit,
        projection,
    })
}

/// Free-function form of [`OperatorSet::sbp_residual`].
pub fn sbp_residual(ops: &OperatorSet) -> f64 {
    ops.sbp_residual()
}
