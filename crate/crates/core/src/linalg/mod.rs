//! Dense complex linear algebra used throughout the crate.

mod eigen;
mod expm;
mod hermitian;
mod lu;
mod matrix;
mod poly;

pub use eigen::{eigen_decompose, eigen_decompose_with, eigenvalues, EigenDecomposition};
pub use expm::{matrix_exponential, nilpotent_exp_quotient};
pub use hermitian::{
    hermitian_eigen, hermitian_eigen_with, hermitian_inverse_sqrt, hermitian_sqrt, numerical_rank,
    singular_values, HermitianEigen,
};
pub use lu::{determinant, inverse, solve};
pub use matrix::{kronecker, ComplexMatrix};
pub use poly::{polynomial_roots, Polynomial};

pub type C64 = num_complex::Complex64;

pub(crate) const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Orders complex numbers by real part, then imaginary part.
pub fn cmp_re_im(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Largest distance between paired elements of two multisets of equal size.
///
/// Pairs are chosen greedily by global nearest distance, which is exact when
/// the errors are small compared to the separation of distinct values and
/// arbitrary (but harmless) inside a cluster of equal values.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets must have equal size");
    let n = a.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; n];
    let mut worst = 0.0_f64;
    let mut matched = 0;
    for (dist, i, j) in pairs {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        worst = worst.max(dist);
        matched += 1;
        if matched == n {
            break;
        }
    }
    worst
}
