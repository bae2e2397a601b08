use serde::{Deserialize, Serialize};

/// Every numerical threshold used by the library, in one place.
///
/// Relative tolerances are multiplied by a problem scale (usually a Frobenius
/// norm) at the point of use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Eigenpair residual bound, relative to ‖A‖_F.
    pub eig: f64,
    /// Hermiticity check, relative to ‖S‖_F.
    pub herm: f64,
    /// Band around a vanishing discriminant classified as an exceptional point.
    pub ep: f64,
    /// Radius within which eigenvalues count as one cluster.
    pub cluster: f64,
    /// Singular values below `rank · σ_max` count as zero.
    pub rank: f64,
    /// Imaginary parts below `real · scale` count as real.
    pub real: f64,
    /// Largest matrix the dense eigensolver accepts.
    pub max_dim: usize,
    /// QR iterations allowed per eigenvalue, as a multiple of the dimension.
    pub max_iter_factor: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig: 1e-10,
            herm: 1e-12,
            ep: 1e-9,
            cluster: 1e-7,
            rank: 1e-9,
            real: 1e-9,
            max_dim: 256,
            max_iter_factor: 30,
        }
    }
}
