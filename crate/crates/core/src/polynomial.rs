//! Legendre polynomials, interpolation nodes and Gauss-type quadrature rules.

use std::f64::consts::PI;

use crate::basis::BasisKind;
use crate::error::{Error, Result};

/// Largest Legendre degree the recurrences are used with.
pub const MAX_LEGENDRE_DEGREE: usize = 128;

const NEWTON_MAX_ITER: usize = 100;
const NEWTON_TOL: f64 = 1e-15;

/// Legendre polynomial `P_j(x)` normalised so that `P_j(1) = 1`.
pub fn legendre_eval(j: usize, x: f64) -> f64 {
    debug_assert!(j <= MAX_LEGENDRE_DEGREE);
    legendre_with_derivative(j, x).0
}

/// `(P_j(x), P_j'(x))` from the three-term recurrence.
pub fn legendre_with_derivative(j: usize, x: f64) -> (f64, f64) {
    if j == 0 {
        return (1.0, 0.0);
    }
    let (mut p_prev, mut p) = (1.0, x);
    let (mut dp_prev, mut dp) = (0.0, 1.0);
    for k in 1..j {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        // P'_{k+1} = P'_{k-1} + (2k+1) P_k
        let dp_next = dp_prev + (2.0 * kf + 1.0) * p;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp)
}

/// Values `P_0(x), ..., P_p(x)`.
pub fn legendre_all(p: usize, x: f64) -> Vec<f64> {
    let mut vals = Vec::with_capacity(p + 1);
    vals.push(1.0);
    if p >= 1 {
        vals.push(x);
    }
    for k in 1..p {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * vals[k] - kf * vals[k - 1]) / (kf + 1.0);
        vals.push(next);
    }
    vals
}

/// Newton iteration on `f` starting from `x0`.
fn newton<F>(what: &'static str, mut x: f64, f: F) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    for _ in 0..NEWTON_MAX_ITER {
        let (val, der) = f(x);
        if val.abs() <= NEWTON_TOL {
            return Ok(x);
        }
        let step = val / der;
        x -= step;
        if step.abs() <= NEWTON_TOL {
            return Ok(x);
        }
    }
    Err(Error::NewtonDiverged {
        what,
        iterations: NEWTON_MAX_ITER,
    })
}

/// Mirror the upper half of a symmetric node set so that `x_i = -x_{n-1-i}` holds exactly.
fn symmetrize(nodes: &mut [f64]) {
    let n = nodes.len();
    for i in 0..n / 2 {
        let a = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -a;
        nodes[n - 1 - i] = a;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
}

/// `n`-point Gauss-Legendre rule, nodes ascending.
pub fn gauss_quadrature(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    assert!(n >= 1, "a quadrature rule needs at least one node");
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-like initial guess, descending in i.
        let guess = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let root = newton("Gauss-Legendre node", guess, |x| legendre_with_derivative(n, x))?;
        nodes.push(root);
    }
    nodes.reverse();
    symmetrize(&mut nodes);
    let weights = nodes
        .iter()
        .map(|&x| {
            let (_, dp) = legendre_with_derivative(n, x);
            2.0 / ((1.0 - x * x) * dp * dp)
        })
        .collect();
    Ok((nodes, weights))
}

/// `(p+1)`-point Lobatto-Legendre rule: `±1` and the roots of `P_p'`, nodes ascending.
pub fn lobatto_quadrature(p: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    assert!(p >= 1, "Lobatto rules need at least two nodes");
    let mut nodes = vec![-1.0];
    let pf = p as f64;
    for i in (1..p).rev() {
        let guess = (PI * i as f64 / pf).cos();
        // f = P_p', f' = P_p'' from the Legendre ODE.
        let root = newton("Lobatto-Legendre node", guess, |x| {
            let (val, der) = legendre_with_derivative(p, x);
            let second = (2.0 * x * der - pf * (pf + 1.0) * val) / (1.0 - x * x);
            (der, second)
        })?;
        nodes.push(root);
    }
    nodes.push(1.0);
    symmetrize(&mut nodes);
    let weights = nodes
        .iter()
        .map(|&x| {
            let val = legendre_eval(p, x);
            2.0 / (pf * (pf + 1.0) * val * val)
        })
        .collect();
    Ok((nodes, weights))
}

/// Interpolation nodes of a nodal basis of degree `p`, ascending.
pub fn compute_nodes(kind: BasisKind, p: usize) -> Result<Vec<f64>> {
    let pf = p as f64;
    let mut nodes: Vec<f64> = match kind {
        BasisKind::GaussLegendre => return Ok(gauss_quadrature(p + 1)?.0),
        BasisKind::LobattoLegendre => return Ok(lobatto_quadrature(p)?.0),
        BasisKind::Chebyshev1Roots => (0..=p)
            .map(|i| ((2.0 * i as f64 + 1.0) * PI / (2.0 * pf + 2.0)).cos())
            .collect(),
        BasisKind::Chebyshev1Extrema => (0..=p).map(|i| (i as f64 * PI / pf).cos()).collect(),
        BasisKind::Chebyshev2Roots => (0..=p)
            .map(|i| ((i as f64 + 1.0) * PI / (pf + 2.0)).cos())
            .collect(),
        BasisKind::ModalLegendre => return Err(Error::NotNodal(kind)),
    };
    nodes.reverse();
    symmetrize(&mut nodes);
    Ok(nodes)
}
