use serde::Serialize;

use super::{group_linked, group_within, EpCluster};
use crate::error::Result;
use crate::linalg::{cmp_re_im, eigen_decompose_with, singular_values, ComplexMatrix, C64};
use crate::tolerances::Tolerances;

/// Multiple of the first-order error bound `κ ε ‖H‖` within which two
/// computed eigenvalues are treated as one.
const LINK_FACTOR: f64 = 10.0;

/// Groups of positions whose values agree within `radius` (single linkage).
pub fn cluster_indices(values: &[C64], radius: f64) -> Vec<Vec<usize>> {
    group_within(values, radius)
}

/// `dim ker(H − λ)` from singular values below `tol.rank · σ_max`, and whether
/// that falls short of the algebraic multiplicity `order`.
pub fn coalescence(h: &ComplexMatrix, value: C64, order: usize, tol: &Tolerances) -> Result<(usize, bool)> {
    let n = h.dim();
    let mut shifted = h.clone();
    for i in 0..n {
        shifted[(i, i)] -= value;
    }
    let sv = singular_values(&shifted)?;
    let top = sv.first().copied().unwrap_or(0.0);
    let nullity = sv.iter().filter(|&&s| s <= tol.rank * top).count();
    Ok((nullity, nullity < order))
}

/// Eigenvalues of a matrix with defective clusters resolved.
#[derive(Debug, Clone, Serialize)]
pub struct NumericSpectrum {
    /// Sorted by (re, im); members of a defective cluster replaced by the mean.
    pub values: Vec<C64>,
    /// Eigenvalues exactly as returned by the QR iteration, sorted.
    pub raw: Vec<C64>,
    /// Defective clusters that were replaced by their mean.
    pub defective: Vec<EpCluster>,
    /// `max(1, ‖H‖_F)`.
    pub scale: f64,
}

/// Spectrum of `h` with exceptional-point clusters refined.
///
/// QR splits a `k`-fold defective eigenvalue into `k` values spread by about
/// `ε^{1/k}`, while their mean stays accurate to working precision. Two
/// computed eigenvalues are linked when they differ by less than their
/// first-order error bounds `κ ε ‖H‖`, with `κ = 1/|y†x|` from the unit left
/// and right eigenvectors; a split Jordan block always satisfies this, since
/// its computed eigenvectors are nearly orthogonal to their left partners.
/// Linked groups that the rank test confirms as defective are replaced by
/// their mean.
pub fn numeric_spectrum(h: &ComplexMatrix, tol: &Tolerances) -> Result<NumericSpectrum> {
    let dec = eigen_decompose_with(h, true, tol)?;
    let raw = dec.values;
    let n = raw.len();
    let scale = h.frobenius_norm().max(1.0);
    let left = dec.left_vectors.expect("left vectors requested");
    let bound: Vec<f64> = (0..n)
        .map(|k| {
            let x = dec.right_vectors.column(k);
            let y = left.column(k);
            let s = x.iter().zip(&y).map(|(a, b)| b.conj() * a).sum::<C64>().norm();
            let kappa = if s > 0.0 { 1.0 / s } else { f64::INFINITY };
            kappa * f64::EPSILON * scale
        })
        .collect();
    let groups = group_linked(n, |i, j| {
        (raw[i] - raw[j]).norm() <= LINK_FACTOR * (bound[i] + bound[j])
    });

    let mut values = raw.clone();
    let mut defective = Vec::new();
    for g in groups.into_iter().filter(|g| g.len() > 1) {
        let mean = g.iter().map(|&i| raw[i]).sum::<C64>() / g.len() as f64;
        let (nullity, coalescent) = coalescence(h, mean, g.len(), tol)?;
        if !coalescent || nullity == 0 {
            continue;
        }
        for &i in &g {
            values[i] = mean;
        }
        defective.push(EpCluster {
            order: g.len(),
            indices: g,
            value: mean,
            geometric_multiplicity: Some(nullity),
            coalescent: Some(true),
        });
    }
    values.sort_by(cmp_re_im);
    for c in defective.iter_mut() {
        c.indices = (0..n).filter(|&i| values[i] == c.value).collect();
    }
    Ok(NumericSpectrum {
        values,
        raw,
        defective,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, multiset_distance};

    #[test]
    fn jordan_pair_refined_to_mean() {
        // Similarity transform of a Jordan block so QR actually splits it.
        let j = ComplexMatrix::from_real_rows(&[[2.0, 1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, -1.0]]).unwrap();
        let p = ComplexMatrix::from_real_rows(&[[1.0, 2.0, 0.5], [0.3, 1.0, -1.0], [2.0, 0.0, 1.0]]).unwrap();
        let pinv = crate::linalg::inverse(&p).unwrap();
        let h = &(&p * &j) * &pinv;
        let spec = numeric_spectrum(&h, &Tolerances::default()).unwrap();
        let exact = [c64(-1.0, 0.0), c64(2.0, 0.0), c64(2.0, 0.0)];
        assert!(multiset_distance(&spec.values, &exact) < 1e-12);
        assert_eq!(spec.defective.len(), 1);
        assert_eq!(spec.defective[0].geometric_multiplicity, Some(1));
    }

    #[test]
    fn semisimple_degeneracy_left_alone() {
        let h = ComplexMatrix::diagonal(&[c64(1.0, 0.0), c64(1.0, 0.0), c64(3.0, 0.0)]);
        let spec = numeric_spectrum(&h, &Tolerances::default()).unwrap();
        assert!(spec.defective.is_empty());
        assert_eq!(coalescence(&h, c64(1.0, 0.0), 2, &Tolerances::default()).unwrap(), (2, false));
    }
}
