//! Hamiltonians built from the generators, their closed-form and numerical
//! spectra, PT phase classification, exceptional points and metric operators.

mod family;
mod metric;
mod numeric;
mod polynomial;
mod similarity;

pub use family::{
    analytic_spectrum_family, build_family_h, build_linear_h, classify_phase_and_scan,
    classify_point, finite_eta_form, h_minus_params, h_plus_params, limit_hamiltonian_family,
    rescale_to_unit, upsilon, Branch, FamilyParams, PhaseMap, ScanPoint, SimilarityPlan,
};
pub use metric::{biorthogonal_system, hermitize, linear_h_metric_d2, BiorthogonalSystem};
pub use numeric::{cluster_indices, coalescence, numeric_spectrum, NumericSpectrum};
pub use polynomial::{analytic_spectrum_polynomial, build_polynomial_h, PolyHamiltonianSpec};
pub use similarity::{conjugate_by_exp, sl2_hermitize, verify_adjoint_identities, Sl2Hermitization};

use serde::Serialize;

use crate::linalg::C64;

/// PT phase of one Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    ExactPT,
    BrokenPT,
    ExceptionalPoint,
}

impl Phase {
    pub fn label(self) -> &'static str {
        match self {
            Phase::ExactPT => "exact",
            Phase::BrokenPT => "broken",
            Phase::ExceptionalPoint => "ep",
        }
    }
}

/// A group of eigenvalues that coincide within the cluster radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpCluster {
    /// Positions in the sorted eigenvalue list.
    pub indices: Vec<usize>,
    pub value: C64,
    /// Algebraic multiplicity, i.e. `indices.len()`.
    pub order: usize,
    /// `dim ker(H − λ)` when a matrix was available to test.
    pub geometric_multiplicity: Option<usize>,
    /// True when the eigenvectors coalesce (geometric < algebraic).
    pub coalescent: Option<bool>,
}

/// Eigenvalues plus the data that decides their PT phase.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumResult {
    /// Sorted by (re, im).
    pub eigenvalues: Vec<C64>,
    /// `μ₀² + 2μ₊μ₋` for the linear family; absent for other families.
    pub discriminant: Option<f64>,
    pub phase: Phase,
    pub ep_clusters: Vec<EpCluster>,
}

impl SpectrumResult {
    pub fn max_abs_imag(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|v| v.im.abs())
            .fold(0.0, f64::max)
    }

    /// Largest distance from a non-real eigenvalue to the nearest member of
    /// the list that is its conjugate; zero for a real spectrum.
    pub fn conjugate_pairing_defect(&self) -> f64 {
        conjugate_pairing_defect(&self.eigenvalues)
    }
}

/// Distance of the spectrum from being closed under complex conjugation.
pub fn conjugate_pairing_defect(values: &[C64]) -> f64 {
    let conj: Vec<C64> = values.iter().map(|v| v.conj()).collect();
    crate::linalg::multiset_distance(values, &conj)
}

/// Labels positions whose values agree within `radius` (single linkage).
pub(crate) fn group_within(values: &[C64], radius: f64) -> Vec<Vec<usize>> {
    group_linked(values.len(), |i, j| (values[i] - values[j]).norm() <= radius)
}

/// Connected components of the graph on `0..n` with edges where `linked`.
pub(crate) fn group_linked(n: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if linked(i, j) {
                let (a, b) = (root(&mut label, i), root(&mut label, j));
                if a != b {
                    label[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut label, i);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of_root[r]].push(i);
    }
    groups
}

/// Clusters of size ≥ 2 among `values` (already sorted).
pub(crate) fn degenerate_clusters(values: &[C64], radius: f64) -> Vec<EpCluster> {
    group_within(values, radius)
        .into_iter()
        .filter(|g| g.len() > 1)
        .map(|indices| {
            let value = indices.iter().map(|&i| values[i]).sum::<C64>() / indices.len() as f64;
            EpCluster {
                order: indices.len(),
                indices,
                value,
                geometric_multiplicity: None,
                coalescent: None,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn grouping_is_transitive() {
        let v = [c64(0.0, 0.0), c64(0.5, 0.0), c64(1.0, 0.0), c64(5.0, 0.0)];
        let g = group_within(&v, 0.6);
        assert_eq!(g, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn pairing_defect() {
        let v = [c64(1.0, 2.0), c64(1.0, -2.0), c64(3.0, 0.0)];
        assert_eq!(conjugate_pairing_defect(&v), 0.0);
        let w = [c64(1.0, 2.0), c64(1.0, -1.0)];
        assert!(conjugate_pairing_defect(&w) > 0.5);
    }
}
