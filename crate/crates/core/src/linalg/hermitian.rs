use super::{c64, ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `S = V diag(λ) V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal columns matching `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V f(Λ) V†`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let fl: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum()
        });
        // Symmetrise away rounding so the result is exactly Hermitian.
        (&m + &m.adjoint()).scale_real(0.5)
    }
}

/// 2×2 unitary `U` such that `U† [[app, apq], [conj(apq), aqq]] U` is diagonal.
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> [[C64; 2]; 2] {
    let g = apq.norm();
    let phase = if g == 0.0 { c64(1.0, 0.0) } else { (apq / g).conj() };
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    [
        [c64(c, 0.0), c64(s, 0.0)],
        [phase * -s, phase * c],
    ]
}

fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, u: &[[C64; 2]; 2]) {
    for i in 0..m.rows() {
        let a = m[(i, p)];
        let b = m[(i, q)];
        m[(i, p)] = a * u[0][0] + b * u[1][0];
        m[(i, q)] = a * u[0][1] + b * u[1][1];
    }
}

fn rotate_rows_adjoint(m: &mut ComplexMatrix, p: usize, q: usize, u: &[[C64; 2]; 2]) {
    for j in 0..m.cols() {
        let a = m[(p, j)];
        let b = m[(q, j)];
        m[(p, j)] = u[0][0].conj() * a + u[1][0].conj() * b;
        m[(q, j)] = u[0][1].conj() * a + u[1][1].conj() * b;
    }
}

/// Cyclic Jacobi eigen-decomposition of a Hermitian matrix.
pub fn hermitian_eigen(s: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eigen_with(s, &Tolerances::default())
}

pub fn hermitian_eigen_with(s: &ComplexMatrix, tol: &Tolerances) -> Result<HermitianEigen> {
    let n = s.ensure_square()?;
    if !s.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = s.frobenius_norm();
    let defect = s.hermiticity_defect();
    if defect > tol.herm * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian {
            defect,
            tolerance: tol.herm * norm,
        });
    }
    let mut a = (s + &s.adjoint()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    for sweep in 0.. {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-16 * norm || off == 0.0 {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                iterations: sweep,
                row: 0,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() == 0.0 {
                    continue;
                }
                let u = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                rotate_columns(&mut a, p, q, &u);
                rotate_rows_adjoint(&mut a, p, q, &u);
                a[(p, q)] = c64(0.0, 0.0);
                a[(q, p)] = c64(0.0, 0.0);
                a[(p, p)] = c64(a[(p, p)].re, 0.0);
                a[(q, q)] = c64(a[(q, q)].re, 0.0);
                rotate_columns(&mut v, p, q, &u);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        vectors.set_column(new, &v.column(old));
    }
    Ok(HermitianEigen { values, vectors })
}

fn positive_eigen(s: &ComplexMatrix) -> Result<HermitianEigen> {
    let eig = hermitian_eigen(s)?;
    match eig.values.first() {
        Some(&lowest) if lowest <= 0.0 => Err(Error::NotPositiveDefinite { eigenvalue: lowest }),
        _ => Ok(eig),
    }
}

/// The positive-definite Hermitian square root.
pub fn hermitian_sqrt(s: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(positive_eigen(s)?.apply(f64::sqrt))
}

/// `S^{−1/2}` for positive-definite Hermitian `S`.
pub fn hermitian_inverse_sqrt(s: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(positive_eigen(s)?.apply(|x| 1.0 / x.sqrt()))
}

/// Singular values in descending order, by one-sided Jacobi.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut m = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.adjoint()
    };
    let n = m.cols();
    let negligible = f64::EPSILON * a.frobenius_norm();
    for sweep in 0.. {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, c64(0.0, 0.0));
                for i in 0..m.rows() {
                    let x = m[(i, p)];
                    let y = m[(i, q)];
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt()
                    || alpha.min(beta).sqrt() <= negligible
                {
                    continue;
                }
                rotated = true;
                let u = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut m, p, q, &u);
            }
        }
        if !rotated {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                iterations: sweep,
                row: 0,
            });
        }
    }
    let mut sv: Vec<f64> = (0..n)
        .map(|j| m.column(j).iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Number of singular values above `rel · σ_max`.
pub fn numerical_rank(a: &ComplexMatrix, rel: f64) -> Result<usize> {
    let sv = singular_values(a)?;
    let top = sv.first().copied().unwrap_or(0.0);
    Ok(sv.iter().filter(|&&s| s > rel * top).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_hermitian(seed: u64, n: usize) -> ComplexMatrix {
        let mut state = seed;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let a = ComplexMatrix::from_fn(n, n, |_, _| c64(next(), next()));
        &a + &a.adjoint()
    }

    #[test]
    fn reconstructs_hermitian() {
        let s = random_hermitian(4, 7);
        let eig = hermitian_eigen(&s).unwrap();
        assert!(eig.apply(|x| x).distance(&s) < 1e-13 * s.frobenius_norm());
        let vtv = &eig.vectors.adjoint() * &eig.vectors;
        assert!(vtv.distance(&ComplexMatrix::identity(7)) < 1e-13);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sqrt_of_diagonal() {
        let s = ComplexMatrix::diagonal(&[c64(4.0, 0.0), c64(9.0, 0.0)]);
        let r = hermitian_sqrt(&s).unwrap();
        assert!(r.distance(&ComplexMatrix::diagonal(&[c64(2.0, 0.0), c64(3.0, 0.0)])) < 1e-15);
        assert_eq!(hermitian_sqrt(&ComplexMatrix::identity(3)).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn sqrt_rejects_indefinite_and_non_hermitian() {
        let s = ComplexMatrix::diagonal(&[c64(1.0, 0.0), c64(-2.0, 0.0)]);
        match hermitian_sqrt(&s) {
            Err(Error::NotPositiveDefinite { eigenvalue }) => assert_eq!(eigenvalue, -2.0),
            other => panic!("unexpected {other:?}"),
        }
        let n = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(hermitian_sqrt(&n), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn inverse_sqrt_consistent() {
        let a = random_hermitian(9, 5);
        let s = &(&a * &a) + &ComplexMatrix::identity(5);
        let r = hermitian_sqrt(&s).unwrap();
        let ri = hermitian_inverse_sqrt(&s).unwrap();
        assert!((&r * &ri).distance(&ComplexMatrix::identity(5)) < 1e-12);
    }

    #[test]
    fn singular_values_of_known_matrix() {
        let a = ComplexMatrix::from_real_rows(&[[3.0, 0.0], [4.0, 5.0]]).unwrap();
        let sv = singular_values(&a).unwrap();
        // σ₁σ₂ = |det| = 15, σ₁² + σ₂² = 50.
        assert!((sv[0] * sv[1] - 15.0).abs() < 1e-12);
        assert!((sv[0].powi(2) + sv[1].powi(2) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn rank_of_nilpotent_shift() {
        let mut a = ComplexMatrix::zeros(5, 5);
        for i in 1..5 {
            a[(i, i - 1)] = c64(0.0, -1.0);
        }
        assert_eq!(numerical_rank(&a, 1e-9).unwrap(), 4);
    }
}
