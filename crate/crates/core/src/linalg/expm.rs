use super::{lu, ComplexMatrix};
use crate::error::{Error, Result};

const NILPOTENT_TOL: f64 = 1e-14;

// Padé [13/13] coefficients and the 1-norm bound below which no scaling is needed.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Returns `e^A`.
///
/// Diagonal input is exponentiated entrywise. Nilpotent input (strictly
/// triangular, or `A^d` negligible with a provably negligible series tail) is
/// summed exactly as a finite series. Everything else goes through Padé
/// scaling and squaring.
pub fn matrix_exponential(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    if a.is_diagonal() {
        return finite(ComplexMatrix::diagonal(
            &a.diag().iter().map(|x| x.exp()).collect::<Vec<_>>(),
        ));
    }
    if let Some(powers) = nilpotent_powers(a, n) {
        let mut out = ComplexMatrix::identity(n);
        let mut factorial = 1.0;
        for (k, p) in powers.iter().enumerate() {
            factorial *= (k + 1) as f64;
            out += &p.scale_real(1.0 / factorial);
        }
        return finite(out);
    }
    pade13(a, n)
}

/// Returns `(e^{cA} − I)/c` for nilpotent `A`, evaluated as the finite series
/// `Σ_{k≥1} c^{k−1} A^k / k!`. At `c = 0` this is `A`.
pub fn nilpotent_exp_quotient(a: &ComplexMatrix, c: f64) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    let powers = nilpotent_powers(a, n)
        .ok_or_else(|| Error::InvalidParameter("matrix is not nilpotent".into()))?;
    let mut out = ComplexMatrix::zeros(n, n);
    let mut coeff = 1.0;
    for (k, p) in powers.iter().enumerate() {
        coeff /= (k + 1) as f64;
        out += &p.scale_real(coeff);
        coeff *= c;
    }
    finite(out)
}

/// Powers `A, A², …, A^{d−1}` when `A` is nilpotent, trimmed after the last
/// nonzero power; `None` otherwise.
fn nilpotent_powers(a: &ComplexMatrix, n: usize) -> Option<Vec<ComplexMatrix>> {
    let exact = a.is_strictly_lower_triangular() || a.is_strictly_upper_triangular();
    let mut powers = vec![a.clone()];
    if !exact {
        // A nilpotent matrix has tr(A^k) = 0 for every k; cheap rejection.
        let norm = a.norm_1();
        let a2 = a * a;
        if a.trace().norm() > 1e-12 * n as f64 * norm
            || a2.trace().norm() > 1e-12 * n as f64 * norm * norm
        {
            return None;
        }
        if n > 1 {
            powers.push(a2);
        }
    }
    while powers.len() < n {
        let next = powers.last().unwrap() * a;
        if next.is_zero() {
            break;
        }
        powers.push(next);
    }
    if exact {
        return Some(powers);
    }
    let norm = a.norm_1();
    if norm == 0.0 {
        return Some(Vec::new());
    }
    let top = powers.last().unwrap() * a;
    let top_norm = top.norm_1();
    if top_norm > NILPOTENT_TOL * norm.powi(n as i32) {
        return None;
    }
    let log_factorial: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    let tail = top_norm.ln() + norm - log_factorial;
    if top_norm == 0.0 || tail <= NILPOTENT_TOL.ln() {
        Some(powers)
    } else {
        None
    }
}

fn pade13(a: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    let norm = a.norm_1();
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.scale_real(0.5_f64.powi(s));
    let b = &PADE13;
    let id = ComplexMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_inner = &(&a6.scale_real(b[13]) + &a4.scale_real(b[11])) + &a2.scale_real(b[9]);
    let u_outer = &(&(&a6.scale_real(b[7]) + &a4.scale_real(b[5])) + &a2.scale_real(b[3]))
        + &id.scale_real(b[1]);
    let u = &a * &(&(&a6 * &u_inner) + &u_outer);

    let v_inner = &(&a6.scale_real(b[12]) + &a4.scale_real(b[10])) + &a2.scale_real(b[8]);
    let v_outer = &(&(&a6.scale_real(b[6]) + &a4.scale_real(b[4])) + &a2.scale_real(b[2]))
        + &id.scale_real(b[0]);
    let v = &(&a6 * &v_inner) + &v_outer;

    let mut r = lu::solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..s {
        r = &r * &r;
    }
    finite(r)
}

fn finite(m: ComplexMatrix) -> Result<ComplexMatrix> {
    if m.is_finite() {
        Ok(m)
    } else {
        Err(Error::NonFinite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn zero_gives_identity() {
        let e = matrix_exponential(&ComplexMatrix::zeros(2, 2)).unwrap();
        assert_eq!(e, ComplexMatrix::identity(2));
    }

    #[test]
    fn nilpotent_two_term_series() {
        let c = c64(0.3, -1.7);
        let a = ComplexMatrix::from_rows(&[[c64(0.0, 0.0), c64(0.0, 0.0)], [c, c64(0.0, 0.0)]]).unwrap();
        let e = matrix_exponential(&a).unwrap();
        let expected =
            ComplexMatrix::from_rows(&[[c64(1.0, 0.0), c64(0.0, 0.0)], [c, c64(1.0, 0.0)]]).unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn diagonal_entrywise() {
        let a = ComplexMatrix::diagonal(&[c64(0.5, 0.0), c64(-1.0, 2.0)]);
        let e = matrix_exponential(&a).unwrap();
        assert!((e[(0, 0)] - c64(0.5, 0.0).exp()).norm() < 1e-15);
        assert!((e[(1, 1)] - c64(-1.0, 2.0).exp()).norm() < 1e-15);
        assert_eq!(e[(0, 1)], c64(0.0, 0.0));
    }

    #[test]
    fn rotation_generator() {
        let t = 2.3;
        let a = ComplexMatrix::from_real_rows(&[[0.0, -t], [t, 0.0]]).unwrap();
        let e = matrix_exponential(&a).unwrap();
        let expected =
            ComplexMatrix::from_real_rows(&[[t.cos(), -t.sin()], [t.sin(), t.cos()]]).unwrap();
        assert!(e.distance(&expected) < 1e-14);
    }

    #[test]
    fn large_norm_uses_scaling() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 40.0], [0.0, -2.0]]).unwrap();
        let e = matrix_exponential(&a).unwrap();
        let off = 40.0 * (1f64.exp() - (-2f64).exp()) / 3.0;
        assert!((e[(0, 1)].re - off).abs() < 1e-12 * off);
        assert!((e[(0, 0)].re - 1f64.exp()).abs() < 1e-13);
    }

    #[test]
    fn exp_quotient_at_zero_is_identity_map() {
        let a = ComplexMatrix::from_rows(&[
            [c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
            [c64(0.0, -1.0), c64(0.0, 0.0), c64(0.0, 0.0)],
            [c64(0.0, 0.0), c64(0.0, -1.5), c64(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(nilpotent_exp_quotient(&a, 0.0).unwrap(), a);
        let c = 1.3;
        let direct = (&matrix_exponential(&a.scale_real(c)).unwrap() - &ComplexMatrix::identity(3))
            .scale_real(1.0 / c);
        assert!(nilpotent_exp_quotient(&a, c).unwrap().distance(&direct) < 1e-15);
    }

    #[test]
    fn non_nilpotent_quotient_rejected() {
        assert!(nilpotent_exp_quotient(&ComplexMatrix::identity(2), 1.0).is_err());
    }
}
