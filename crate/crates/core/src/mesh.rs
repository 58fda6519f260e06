//! One-dimensional element meshes and reference-to-physical element maps.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mapping {
    Linear,
    /// `x(xi) = dx/8 (xi + 2)^2 + xmin - dx/8`
    Quadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridKind {
    Uniform,
    /// Widths alternate by a factor of ten: `dx_i = dx_{i-1} / 10` for even `i`
    /// and `dx_i = 10 dx_{i-1}` for odd `i >= 3` (1-based).
    Alternating,
    /// `dx_i = 3/2 dx_{i-1}`
    GeometricIncreasing,
}

impl Mapping {
    pub fn name(self) -> &'static str {
        match self {
            Mapping::Linear => "linear",
            Mapping::Quadratic => "quadratic",
        }
    }
}

impl GridKind {
    pub const ALL: [GridKind; 3] = [GridKind::Uniform, GridKind::Alternating, GridKind::GeometricIncreasing];

    pub fn name(self) -> &'static str {
        match self {
            GridKind::Uniform => "uniform",
            GridKind::Alternating => "alternating",
            GridKind::GeometricIncreasing => "geometric",
        }
    }

    /// Relative widths (first element has width 1).
    fn ratios(self, elements: usize) -> Vec<f64> {
        let mut widths = Vec::with_capacity(elements);
        let mut w = 1.0;
        for i in 1..=elements {
            if i > 1 {
                w = match self {
                    GridKind::Uniform => w,
                    GridKind::Alternating if i % 2 == 0 => w / 10.0,
                    GridKind::Alternating => w * 10.0,
                    GridKind::GeometricIncreasing => w * 1.5,
                };
            }
            widths.push(w);
        }
        widths
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mapping {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(Mapping::Linear),
            "quadratic" => Ok(Mapping::Quadratic),
            _ => Err(format!("unknown mapping '{s}'")),
        }
    }
}

impl FromStr for GridKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" => Ok(GridKind::Uniform),
            "alternating" => Ok(GridKind::Alternating),
            "geometric" | "geomincr" | "geometric-increasing" => Ok(GridKind::GeometricIncreasing),
            _ => Err(format!("unknown grid '{s}'")),
        }
    }
}

/// Maps `xi` in `[-1, 1]` to the element `[xmin, xmax]`; returns `(x, dx/dxi)`.
pub fn map_element(mapping: Mapping, xmin: f64, xmax: f64, xi: f64) -> (f64, f64) {
    let dx = xmax - xmin;
    match mapping {
        Mapping::Linear => (0.5 * (xmax + xmin) + 0.5 * dx * xi, 0.5 * dx),
        Mapping::Quadratic => {
            let s = xi + 2.0;
            (dx / 8.0 * s * s + xmin - dx / 8.0, dx / 4.0 * s)
        }
    }
}

/// Ordered element boundaries plus the per-element map.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    boundaries: Vec<f64>,
    mapping: Mapping,
    grid_kind: GridKind,
}

impl Mesh1D {
    /// Mesh from explicit boundaries; `grid_kind` is recorded as given.
    pub fn from_boundaries(boundaries: Vec<f64>, mapping: Mapping, grid_kind: GridKind) -> Result<Self> {
        if boundaries.len() < 2 {
            return Err(Error::InvalidMesh("need at least one element".into()));
        }
        if !boundaries.windows(2).all(|w| w[1] > w[0]) || boundaries.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidMesh("boundaries must be finite and strictly increasing".into()));
        }
        Ok(Mesh1D {
            boundaries,
            mapping,
            grid_kind,
        })
    }

    pub fn uniform(xmin: f64, xmax: f64, elements: usize, mapping: Mapping) -> Result<Self> {
        Self::graded(GridKind::Uniform, xmin, xmax, elements, mapping)
    }

    /// Partition of `[xmin, xmax]` into `elements` cells following `kind`.
    pub fn graded(kind: GridKind, xmin: f64, xmax: f64, elements: usize, mapping: Mapping) -> Result<Self> {
        if elements == 0 {
            return Err(Error::InvalidMesh("need at least one element".into()));
        }
        if !(xmax > xmin) {
            return Err(Error::InvalidMesh(format!("empty interval [{xmin}, {xmax}]")));
        }
        let ratios = kind.ratios(elements);
        let total: f64 = ratios.iter().sum();
        let scale = (xmax - xmin) / total;
        let mut boundaries = Vec::with_capacity(elements + 1);
        boundaries.push(xmin);
        let mut acc = 0.0;
        for r in &ratios[..elements - 1] {
            acc += r;
            boundaries.push(xmin + acc * scale);
        }
        boundaries.push(xmax);
        Ok(Mesh1D {
            boundaries,
            mapping,
            grid_kind: kind,
        })
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn mapping(&self) -> Mapping {
        self.mapping
    }

    pub fn grid_kind(&self) -> GridKind {
        self.grid_kind
    }

    pub fn num_elements(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn element(&self, k: usize) -> (f64, f64) {
        (self.boundaries[k], self.boundaries[k + 1])
    }

    pub fn width(&self, k: usize) -> f64 {
        self.boundaries[k + 1] - self.boundaries[k]
    }

    pub fn widths(&self) -> Vec<f64> {
        self.boundaries.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.boundaries[0], *self.boundaries.last().unwrap())
    }

    /// Physical coordinate and map derivative of `xi` in element `k`.
    pub fn map(&self, k: usize, xi: f64) -> (f64, f64) {
        let (a, b) = self.element(k);
        map_element(self.mapping, a, b, xi)
    }
}
