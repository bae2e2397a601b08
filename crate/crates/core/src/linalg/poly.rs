use serde::{Deserialize, Serialize};

use super::{c64, eigen, ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Monic polynomial `λⁿ + c_{n−1}λ^{n−1} + … + c₀`, stored as `c₀..c_{n−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coefficients: Vec<C64>,
}

impl Polynomial {
    pub fn monic(lower: Vec<C64>) -> Self {
        Self { coefficients: lower }
    }

    pub fn monic_real(lower: &[f64]) -> Self {
        Self::monic(lower.iter().map(|&x| c64(x, 0.0)).collect())
    }

    /// From all coefficients `a₀..a_n`, dividing through by `a_n`.
    pub fn from_coefficients(all: &[C64]) -> Result<Self> {
        let (&lead, lower) = all.split_last().ok_or(Error::ZeroDegree)?;
        if lead.norm() == 0.0 {
            return Err(Error::InvalidParameter("leading coefficient is zero".into()));
        }
        Ok(Self::monic(lower.iter().map(|c| c / lead).collect()))
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    /// `c₀..c_{n−1}`.
    pub fn coefficients(&self) -> &[C64] {
        &self.coefficients
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coefficients
            .iter()
            .rev()
            .fold(c64(1.0, 0.0), |acc, &c| acc * x + c)
    }

    /// Companion matrix with ones on the subdiagonal and `−c` in the last column.
    pub fn companion(&self) -> Result<ComplexMatrix> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = c64(1.0, 0.0);
        }
        for (i, &c) in self.coefficients.iter().enumerate() {
            m[(i, n - 1)] = -c;
        }
        Ok(m)
    }
}

/// All roots with multiplicity, sorted by (re, im).
pub fn polynomial_roots(p: &Polynomial) -> Result<Vec<C64>> {
    let companion = p.companion()?;
    Ok(eigen::eigen_decompose(&companion, false)?.values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let roots = polynomial_roots(&Polynomial::monic_real(&[-1.0, 0.0])).unwrap();
        assert!((roots[0] + 1.0).norm() < 1e-15);
        assert!((roots[1] - 1.0).norm() < 1e-15);
    }

    #[test]
    fn quadruple_root() {
        let roots = polynomial_roots(&Polynomial::monic_real(&[1.0, -4.0, 6.0, -4.0])).unwrap();
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!((r - 1.0).norm() < 1e-3);
        }
    }

    #[test]
    fn zero_degree_rejected() {
        assert!(matches!(
            polynomial_roots(&Polynomial::monic(vec![])),
            Err(Error::ZeroDegree)
        ));
        assert!(Polynomial::from_coefficients(&[]).is_err());
    }

    #[test]
    fn roots_are_zeros() {
        let p = Polynomial::from_coefficients(&[c64(2.0, 1.0), c64(0.0, -3.0), c64(1.0, 0.0), c64(2.0, 0.0)])
            .unwrap();
        for r in polynomial_roots(&p).unwrap() {
            assert!(p.eval(r).norm() < 1e-12);
        }
    }
}
