use std::fmt;
use std::str::FromStr;

/// Polynomial bases on the reference element `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    GaussLegendre,
    LobattoLegendre,
    /// Roots of the Chebyshev polynomial `T_{p+1}`.
    Chebyshev1Roots,
    /// Extrema of the Chebyshev polynomial `T_p` (including `±1`).
    Chebyshev1Extrema,
    /// Roots of the Chebyshev polynomial of the second kind `U_{p+1}`.
    Chebyshev2Roots,
    /// Coefficients with respect to Legendre polynomials `P_0, ..., P_p`.
    ModalLegendre,
}

impl BasisKind {
    pub const ALL: [BasisKind; 6] = [
        BasisKind::GaussLegendre,
        BasisKind::LobattoLegendre,
        BasisKind::Chebyshev1Roots,
        BasisKind::Chebyshev1Extrema,
        BasisKind::Chebyshev2Roots,
        BasisKind::ModalLegendre,
    ];

    pub fn is_nodal(self) -> bool {
        self != BasisKind::ModalLegendre
    }

    /// Nodal basis whose norm matrix is the diagonal of quadrature weights.
    pub fn is_diagonal_norm(self) -> bool {
        matches!(self, BasisKind::GaussLegendre | BasisKind::LobattoLegendre)
    }

    pub fn is_dense_norm(self) -> bool {
        matches!(
            self,
            BasisKind::Chebyshev1Roots | BasisKind::Chebyshev1Extrema | BasisKind::Chebyshev2Roots
        )
    }

    /// Short name used on the command line and in output files.
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::GaussLegendre => "gauss",
            BasisKind::LobattoLegendre => "lobatto",
            BasisKind::Chebyshev1Roots => "cheb1-roots",
            BasisKind::Chebyshev1Extrema => "cheb1-extrema",
            BasisKind::Chebyshev2Roots => "cheb2-roots",
            BasisKind::ModalLegendre => "legendre",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace(['_', ' '], "-");
        let kind = match key.as_str() {
            "gauss" | "gauss-legendre" | "gausslegendre" => BasisKind::GaussLegendre,
            "lobatto" | "lobatto-legendre" | "lobattolegendre" => BasisKind::LobattoLegendre,
            "cheb1-roots" | "chebyshev1-roots" | "chebyshev1roots" => BasisKind::Chebyshev1Roots,
            "cheb1-extrema" | "chebyshev1-extrema" | "chebyshev1extrema" => {
                BasisKind::Chebyshev1Extrema
            }
            "cheb2-roots" | "chebyshev2-roots" | "chebyshev2roots" => BasisKind::Chebyshev2Roots,
            "legendre" | "modal" | "modal-legendre" | "modallegendre" => BasisKind::ModalLegendre,
            _ => return Err(format!("unknown basis kind '{s}'")),
        };
        Ok(kind)
    }
}
