use super::{c64, ComplexMatrix, C64};
use crate::error::{Error, Result};

/// LU factorisation with partial pivoting, stored packed.
struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    sign: f64,
}

fn factor(a: &ComplexMatrix) -> Result<Lu> {
    let n = a.ensure_square()?;
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pmax == 0.0 {
            return Err(Error::Singular);
        }
        if p != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            perm.swap(k, p);
            sign = -sign;
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / pivot;
            lu[(i, k)] = f;
            if f == c64(0.0, 0.0) {
                continue;
            }
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
        }
    }
    Ok(Lu { lu, perm, sign })
}

impl Lu {
    fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.perm.len();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                x[i] = x[i] - u * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

/// Solves `A X = B` for square `A`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let lu = factor(a)?;
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} rows, expected {}",
            b.rows(),
            a.rows()
        )));
    }
    let mut x = ComplexMatrix::zeros(b.rows(), b.cols());
    for j in 0..b.cols() {
        x.set_column(j, &lu.solve_vec(&b.column(j)));
    }
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(x)
}

pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    if a.is_diagonal() {
        let d = a.diag();
        if d.iter().any(|x| x.norm() == 0.0) {
            return Err(Error::Singular);
        }
        return Ok(ComplexMatrix::diagonal(&d.iter().map(|x| x.inv()).collect::<Vec<_>>()));
    }
    solve(a, &ComplexMatrix::identity(n))
}

pub fn determinant(a: &ComplexMatrix) -> Result<C64> {
    a.ensure_square()?;
    match factor(a) {
        Ok(lu) => Ok(lu.lu.diag().into_iter().product::<C64>() * lu.sign),
        Err(Error::Singular) => Ok(c64(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let a = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 1.0), c64(2.0, 0.0), c64(0.0, 0.0)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(3.0, -1.0)],
            vec![c64(0.5, 0.5), c64(1.0, 0.0), c64(1.0, 0.0)],
        ])
        .unwrap();
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).distance(&ComplexMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn determinant_of_triangular() {
        let a = ComplexMatrix::from_real_rows(&[[2.0, 0.0], [5.0, 3.0]]).unwrap();
        assert!((determinant(&a).unwrap() - 6.0).norm() < 1e-15);
        let swap = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!((determinant(&swap).unwrap() + 1.0).norm() < 1e-15);
    }

    #[test]
    fn singular_detected() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(inverse(&a), Err(Error::Singular)));
        assert_eq!(determinant(&a).unwrap(), c64(0.0, 0.0));
    }
}
