//! Summation-by-parts operators in the correction procedure via reconstruction
//! (CPR) framework for one-dimensional conservation laws.
//!
//! The crate provides
//! - SBP operator sets for nodal (Gauss, Lobatto, three Chebyshev node families)
//!   and modal Legendre bases ([`operators`]),
//! - multiplication operators and their adjoints in the discrete norm
//!   ([`multiplication`]),
//! - entropy stable numerical fluxes ([`fluxes`]),
//! - a skew-symmetric semidiscretisation of Burgers' equation with correction
//!   terms for divergence and boundary restriction ([`burgers`]),
//! - linear advection on curvilinear grids with selectable Jacobian operators
//!   ([`advection`]),
//! - a classical Runge-Kutta driver ([`time`]) and the experiment harness behind
//!   the `sbpcpr` command line tool ([`harness`]).

pub mod advection;
pub mod basis;
pub mod burgers;
pub mod error;
pub mod fluxes;
pub mod harness;
pub mod mesh;
pub mod multiplication;
pub mod operators;
pub mod polynomial;
pub mod time;

pub use basis::BasisKind;
pub use error::{Error, Result};
pub use fluxes::FluxKind;
pub use operators::{build_operator_set, OperatorSet};
