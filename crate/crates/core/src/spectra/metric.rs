use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    c64, eigen_decompose_with, hermitian_eigen_with, hermitian_inverse_sqrt, hermitian_sqrt, inverse,
    ComplexMatrix, C64,
};
use crate::tolerances::Tolerances;

/// Largest `‖Φ‖_F ‖Φ⁻¹‖_F` accepted for the right eigenvector matrix.
const MAX_CONDITION: f64 = 1e8;

/// Biorthonormal eigenbases of a diagonalisable `H` and the metric built from
/// them.
#[derive(Debug, Clone, Serialize)]
pub struct BiorthogonalSystem {
    /// Eigenvalues, sorted by (re, im).
    pub values: Vec<C64>,
    /// Unit right eigenvectors `φ_k` as columns.
    pub right_vectors: ComplexMatrix,
    /// Left eigenvectors `ψ_k` (eigenvectors of `H†`) as columns, scaled so
    /// that `⟨ψ_j|φ_k⟩ = δ_jk`.
    pub left_vectors: ComplexMatrix,
    /// `S = Σ_k |ψ_{π(k)}⟩⟨ψ_k|`.
    pub s_matrix: ComplexMatrix,
    /// `π(k)` is the index of the eigenvalue `conj(E_k)`; `π(k) = k` when
    /// `E_k` is real.
    pub pairing: Vec<usize>,
    pub positive_definite: bool,
    /// `‖Φ‖_F ‖Φ⁻¹‖_F`.
    pub condition: f64,
    /// `‖SH − H†S‖_F / (‖S‖_F ‖H‖_F)`.
    pub intertwining_defect: f64,
}

/// Pairs every eigenvalue with its complex conjugate.
fn conjugate_pairing(values: &[C64], real_tol: f64) -> Result<Vec<usize>> {
    let n = values.len();
    let mut pairing = vec![usize::MAX; n];
    for k in 0..n {
        if pairing[k] != usize::MAX {
            continue;
        }
        if values[k].im.abs() <= real_tol {
            pairing[k] = k;
            continue;
        }
        let target = values[k].conj();
        let partner = (0..n)
            .filter(|&j| j != k && pairing[j] == usize::MAX)
            .min_by(|&a, &b| {
                (values[a] - target)
                    .norm()
                    .total_cmp(&(values[b] - target).norm())
            })
            .filter(|&j| (values[j] - target).norm() <= real_tol.max(1e-6 * values[k].norm()))
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "eigenvalue {} has no complex-conjugate partner",
                    values[k]
                ))
            })?;
        pairing[k] = partner;
        pairing[partner] = k;
    }
    Ok(pairing)
}

/// Biorthonormal system of `h` and the metric `S` with `SH = H†S`.
///
/// Fails with [`Error::NotDiagonalisable`] when the eigenvector matrix is
/// singular or worse conditioned than `1e8`, which is the case at and near
/// exceptional points.
pub fn biorthogonal_system(h: &ComplexMatrix, tol: &Tolerances) -> Result<BiorthogonalSystem> {
    let n = h.ensure_square()?;
    let eig = eigen_decompose_with(h, false, tol)?;
    let phi = eig.right_vectors;
    let phi_inv = inverse(&phi).map_err(|e| match e {
        Error::Singular => Error::NotDiagonalisable("eigenvector matrix is singular".into()),
        other => other,
    })?;
    let condition = phi.frobenius_norm() * phi_inv.frobenius_norm();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::NotDiagonalisable(format!(
            "eigenvector condition number {condition:e} exceeds {MAX_CONDITION:e}"
        )));
    }
    let psi = phi_inv.adjoint();

    let scale = h.frobenius_norm().max(1.0);
    let pairing = conjugate_pairing(&eig.values, tol.real * scale)?;

    let mut s = ComplexMatrix::zeros(n, n);
    for (k, &p) in pairing.iter().enumerate() {
        for i in 0..n {
            let a = psi[(i, p)];
            for j in 0..n {
                s[(i, j)] += a * psi[(j, k)].conj();
            }
        }
    }
    s = (&s + &s.adjoint()).scale_real(0.5);

    let lowest = hermitian_eigen_with(&s, tol)?.values[0];
    let positive_definite = lowest > tol.rank * s.frobenius_norm();
    let intertwining_defect = (&(&s * h) - &(&h.adjoint() * &s)).frobenius_norm()
        / (s.frobenius_norm() * h.frobenius_norm()).max(f64::MIN_POSITIVE);

    Ok(BiorthogonalSystem {
        values: eig.values,
        right_vectors: phi,
        left_vectors: psi,
        s_matrix: s,
        pairing,
        positive_definite,
        condition,
        intertwining_defect,
    })
}

/// `h = S^{1/2} H S^{−1/2}`, required to come out Hermitian to `1e-10‖h‖`.
pub fn hermitize(h: &ComplexMatrix, s: &ComplexMatrix) -> Result<ComplexMatrix> {
    if h.dim() != s.dim() {
        return Err(Error::DimensionMismatch(format!(
            "H is {}x{} but S is {}x{}",
            h.rows(),
            h.cols(),
            s.rows(),
            s.cols()
        )));
    }
    let inv_half = hermitian_inverse_sqrt(s)?;
    let half = hermitian_sqrt(s)?;
    let out = &(&half * h) * &inv_half;
    let defect = out.hermiticity_defect();
    let tolerance = 1e-10 * out.frobenius_norm().max(1.0);
    if defect > tolerance {
        return Err(Error::NotHermitian { defect, tolerance });
    }
    Ok(out)
}

/// Closed-form metric `[[z²/2 + 2/μ, −iz], [iz, 2]]` of `μJ₋ + J₊` at `d = 2`.
/// Positive definite iff `μ > 0`.
pub fn linear_h_metric_d2(mu: f64, z: f64) -> Result<ComplexMatrix> {
    if mu == 0.0 || !mu.is_finite() || !z.is_finite() {
        return Err(Error::InvalidParameter("mu must be finite and nonzero".into()));
    }
    ComplexMatrix::from_rows(&[
        [c64(z * z / 2.0 + 2.0 / mu, 0.0), c64(0.0, -z)],
        [c64(0.0, z), c64(2.0, 0.0)],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigen, multiset_distance};
    use crate::reps::{build_deformed_generators, RepSpec};
    use crate::spectra::build_linear_h;

    fn linear(mu: f64, z: f64, d: usize) -> ComplexMatrix {
        build_linear_h(mu, &build_deformed_generators(&RepSpec::irrep(z, d)).unwrap())
    }

    #[test]
    fn closed_form_metric_intertwines() {
        for (mu, z) in [(1.0, 1.0), (0.3, 2.0), (-0.7, 0.5)] {
            let h = linear(mu, z, 2);
            let s = linear_h_metric_d2(mu, z).unwrap();
            let defect = (&(&s * &h) - &(&h.adjoint() * &s)).frobenius_norm();
            assert!(defect < 1e-12, "mu={mu} z={z}: {defect}");
            let pd = hermitian_eigen(&s).unwrap().values[0] > 0.0;
            assert_eq!(pd, mu > 0.0);
        }
    }

    #[test]
    fn biorthogonal_metric_real_phase() {
        let h = linear(0.8, 1.2, 4);
        let sys = biorthogonal_system(&h, &Tolerances::default()).unwrap();
        assert!(sys.positive_definite);
        assert!(sys.intertwining_defect < 1e-12);
        let gram = &sys.left_vectors.adjoint() * &sys.right_vectors;
        assert!(gram.distance(&ComplexMatrix::identity(4)) < 1e-10);
        let herm = hermitize(&h, &sys.s_matrix).unwrap();
        let spec = crate::linalg::eigenvalues(&herm).unwrap();
        assert!(multiset_distance(&spec, &sys.values) < 1e-9);
    }

    #[test]
    fn broken_phase_metric_is_indefinite() {
        let h = linear(-1.0, 0.5, 2);
        let sys = biorthogonal_system(&h, &Tolerances::default()).unwrap();
        assert_eq!(sys.pairing, vec![1, 0]);
        assert!(!sys.positive_definite);
        assert!(sys.intertwining_defect < 1e-12);
        assert!(matches!(hermitize(&h, &sys.s_matrix), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn jordan_block_rejected() {
        let h = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(
            biorthogonal_system(&h, &Tolerances::default()),
            Err(Error::NotDiagonalisable(_))
        ));
    }
}
