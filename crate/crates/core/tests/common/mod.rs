#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sbpcpr::BasisKind;

pub fn mat(rows: &[[f64; 3]]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), 3, |i, j| rows[i][j])
}

/// Printed p = 2 matrices: (kind, V, M, R, D). `V` is only printed for the
/// Chebyshev bases.
pub struct Printed {
    pub kind: BasisKind,
    pub v: Option<DMatrix<f64>>,
    pub m: DMatrix<f64>,
    pub r: DMatrix<f64>,
    pub d: DMatrix<f64>,
}

pub fn printed_p2() -> Vec<Printed> {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let s15 = 15f64.sqrt();
    vec![
        Printed {
            kind: BasisKind::ModalLegendre,
            v: None,
            m: mat(&[[2.0, 0.0, 0.0], [0.0, 2.0 / 3.0, 0.0], [0.0, 0.0, 0.4]]),
            r: mat(&[[1.0, -1.0, 1.0], [1.0, 1.0, 1.0]]),
            d: mat(&[[0.0, 1.0, 0.0], [0.0, 0.0, 3.0], [0.0, 0.0, 0.0]]),
        },
        Printed {
            kind: BasisKind::Chebyshev1Roots,
            v: Some(mat(&[[1.0, -s3 / 2.0, 0.625], [1.0, 0.0, -0.5], [1.0, s3 / 2.0, 0.625]])),
            m: mat(&[
                [2.0 / 5.0, 4.0 / 45.0, -2.0 / 45.0],
                [4.0 / 45.0, 14.0 / 15.0, 4.0 / 45.0],
                [-2.0 / 45.0, 4.0 / 45.0, 2.0 / 5.0],
            ]),
            r: mat(&[
                [(2.0 + s3) / 3.0, -1.0 / 3.0, (2.0 - s3) / 3.0],
                [(2.0 - s3) / 3.0, -1.0 / 3.0, (2.0 + s3) / 3.0],
            ]),
            d: mat(&[
                [-s3, 4.0 * s3 / 3.0, -s3 / 3.0],
                [-s3 / 3.0, 0.0, s3 / 3.0],
                [s3 / 3.0, -4.0 * s3 / 3.0, s3],
            ]),
        },
        Printed {
            kind: BasisKind::Chebyshev1Extrema,
            v: Some(mat(&[[1.0, -1.0, 1.0], [1.0, 0.0, -0.5], [1.0, 1.0, 1.0]])),
            m: mat(&[
                [4.0 / 15.0, 2.0 / 15.0, -1.0 / 15.0],
                [2.0 / 15.0, 16.0 / 15.0, 2.0 / 15.0],
                [-1.0 / 15.0, 2.0 / 15.0, 4.0 / 15.0],
            ]),
            r: mat(&[[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
            // the printed bottom-right entry reads 3/3
            d: mat(&[[-1.5, 2.0, -0.5], [-0.5, 0.0, 0.5], [0.5, -2.0, 1.5]]),
        },
        Printed {
            kind: BasisKind::Chebyshev2Roots,
            v: Some(mat(&[[1.0, -s2 / 2.0, 0.25], [1.0, 0.0, -0.5], [1.0, s2 / 2.0, 0.25]])),
            m: mat(&[
                [11.0 / 15.0, -2.0 / 15.0, 1.0 / 15.0],
                [-2.0 / 15.0, 14.0 / 15.0, -2.0 / 15.0],
                [1.0 / 15.0, -2.0 / 15.0, 11.0 / 15.0],
            ]),
            r: mat(&[
                [(2.0 + s2) / 2.0, -1.0, (2.0 - s2) / 2.0],
                [(2.0 - s2) / 2.0, -1.0, (2.0 + s2) / 2.0],
            ]),
            d: mat(&[
                [-3.0 * s2 / 2.0, 2.0 * s2, -s2 / 2.0],
                [-s2 / 2.0, 0.0, s2 / 2.0],
                [s2 / 2.0, -2.0 * s2, 3.0 * s2 / 2.0],
            ]),
        },
        Printed {
            kind: BasisKind::GaussLegendre,
            v: None,
            m: mat(&[[5.0 / 9.0, 0.0, 0.0], [0.0, 8.0 / 9.0, 0.0], [0.0, 0.0, 5.0 / 9.0]]),
            r: mat(&[
                [(5.0 + s15) / 6.0, -2.0 / 3.0, (5.0 - s15) / 6.0],
                [(5.0 - s15) / 6.0, -2.0 / 3.0, (5.0 + s15) / 6.0],
            ]),
            d: mat(&[
                [-s15 / 2.0, 2.0 * s15 / 3.0, -s15 / 6.0],
                [-s15 / 6.0, 0.0, s15 / 6.0],
                [s15 / 6.0, -2.0 * s15 / 3.0, s15 / 2.0],
            ]),
        },
        Printed {
            kind: BasisKind::LobattoLegendre,
            v: None,
            m: mat(&[[1.0 / 3.0, 0.0, 0.0], [0.0, 4.0 / 3.0, 0.0], [0.0, 0.0, 1.0 / 3.0]]),
            r: mat(&[[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
            d: mat(&[[-1.5, 2.0, -0.5], [-0.5, 0.0, 0.5], [0.5, -2.0, 1.5]]),
        },
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random trigonometric polynomial with a few low modes, periodic on a domain
/// of length `period`.
pub fn random_smooth(rng: &mut ChaCha8Rng, period: f64) -> impl Fn(f64) -> f64 + Clone {
    let offset: f64 = rng.random_range(-0.5..0.5);
    let modes: Vec<(f64, f64, f64)> = (1..=3)
        .map(|k| {
            (
                2.0 * std::f64::consts::PI * k as f64 / period,
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        })
        .collect();
    move |x: f64| {
        offset
            + modes
                .iter()
                .map(|(w, a, b)| a * (w * x).sin() + b * (w * x).cos())
                .sum::<f64>()
    }
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, k: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, k, |_, _| rng.random_range(-1.0..1.0))
}
