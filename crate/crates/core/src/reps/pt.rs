use crate::linalg::ComplexMatrix;

/// Antilinear PT action on Fock-basis matrices: `M ↦ D conj(M) D` with
/// `D = diag((−1)^m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PtOperator {
    pub parity_signs: Vec<f64>,
}

impl PtOperator {
    pub fn new(dim: usize) -> Self {
        Self {
            parity_signs: (0..dim)
                .map(|m| if m % 2 == 0 { 1.0 } else { -1.0 })
                .collect(),
        }
    }

    /// `D⊗D` on the tensor product of two Fock truncations.
    pub fn tensor(left: usize, right: usize) -> Self {
        let a = Self::new(left);
        let b = Self::new(right);
        Self {
            parity_signs: a
                .parity_signs
                .iter()
                .flat_map(|x| b.parity_signs.iter().map(move |y| x * y))
                .collect(),
        }
    }

    pub fn apply(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let d = &self.parity_signs;
        assert_eq!(d.len(), m.rows(), "PT operator dimension mismatch");
        ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].conj() * (d[i] * d[j]))
    }

    /// `‖PT(M) − M‖_F`.
    pub fn defect(&self, m: &ComplexMatrix) -> f64 {
        self.apply(m).distance(m)
    }
}

pub fn pt_transform(m: &ComplexMatrix) -> ComplexMatrix {
    PtOperator::new(m.rows()).apply(m)
}

pub fn check_pt_symmetric(m: &ComplexMatrix, tol: f64) -> bool {
    PtOperator::new(m.rows()).defect(m) <= tol
}
