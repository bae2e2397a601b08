use super::GeneratorTriple;
use crate::check::CheckReport;
use crate::error::Result;
use crate::linalg::{nilpotent_exp_quotient, ComplexMatrix};

/// `(e^{2zJ₊} − 1)/z`, which is `2J₊` at `z = 0`.
pub(crate) fn plus_commutator_rhs(jplus: &ComplexMatrix, z: f64) -> Result<ComplexMatrix> {
    Ok(nilpotent_exp_quotient(jplus, 2.0 * z)?.scale_real(2.0))
}

/// The scalar the Casimir takes on the irrep of weight `β`.
pub fn casimir_value(beta: f64) -> f64 {
    beta * (beta / 2.0 - 1.0)
}

/// `C = ½ J₀ E J₀ + A J₋ + J₋ A + E − 1` with `E = e^{−2zJ₊}` and
/// `A = (1 − E)/(2z)`; both are finite series because `J₊` is nilpotent.
pub fn casimir_matrix(triple: &GeneratorTriple) -> Result<ComplexMatrix> {
    Ok(casimir_with_scale(triple)?.0)
}

/// The Casimir together with the sum of the norms of its terms, which bounds
/// the rounding error of the cancellation that produces a multiple of 1.
fn casimir_with_scale(triple: &GeneratorTriple) -> Result<(ComplexMatrix, f64)> {
    let d = triple.dim();
    let z = triple.z();
    let id = ComplexMatrix::identity(d);
    let a = nilpotent_exp_quotient(&triple.jplus, -2.0 * z)?;
    let e = &id - &a.scale_real(2.0 * z);
    let j0 = &triple.j0;
    let jm = &triple.jminus;
    let terms = [
        (&(j0 * &e) * j0).scale_real(0.5),
        &a * jm,
        jm * &a,
        &e - &id,
    ];
    let scale = terms.iter().map(ComplexMatrix::frobenius_norm).sum();
    let c = terms
        .iter()
        .fold(ComplexMatrix::zeros(d, d), |acc, t| &acc + t);
    Ok((c, scale))
}

/// Checks `C = β(β/2 − 1)·1` and `[C, X] = 0` for the three generators.
pub fn verify_casimir(triple: &GeneratorTriple, tol: f64) -> Result<CheckReport> {
    let d = triple.dim();
    let (c, scale) = casimir_with_scale(triple)?;
    let mut report = CheckReport::new(tol);
    let target = ComplexMatrix::identity(d).scale_real(casimir_value(triple.spec.beta));
    report.record("Casimir = beta(beta/2-1)", c.distance(&target), scale);
    for (label, x) in [("J0", &triple.j0), ("J+", &triple.jplus), ("J-", &triple.jminus)] {
        report.record(
            format!("[C,{label}] = 0"),
            c.commutator(x).frobenius_norm(),
            2.0 * scale * x.frobenius_norm(),
        );
    }
    Ok(report)
}

/// Residuals of the three defining relations.
#[derive(Debug, Clone)]
pub struct CommutationReport {
    /// `[J₀,J₊] − (e^{2zJ₊}−1)/z`, `[J₀,J₋] + 2J₋ − zJ₀²`, `[J₊,J₋] − J₀`.
    pub residual_matrices: [ComplexMatrix; 3],
    /// Frobenius norms of `residual_matrices`.
    pub residuals: [f64; 3],
    /// `max(1, ‖J₋‖_F)`.
    pub scale: f64,
    pub tolerance: f64,
    pub irreducible: bool,
    pub passed: bool,
}

impl CommutationReport {
    pub const NAMES: [&'static str; 3] = [
        "[J0,J+] = (exp(2zJ+)-1)/z",
        "[J0,J-] = -2J- + zJ0^2",
        "[J+,J-] = J0",
    ];

    /// Entries of residual `which` above `threshold`, largest first.
    pub fn offending_entries(&self, which: usize, threshold: f64) -> Vec<(usize, usize, f64)> {
        let m = &self.residual_matrices[which];
        let mut out: Vec<(usize, usize, f64)> = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, m[(i, j)].norm()))
            .filter(|e| e.2 > threshold)
            .collect();
        out.sort_by(|a, b| b.2.total_cmp(&a.2));
        out
    }
}

/// Evaluates the relations; passes iff every residual is at most
/// `tol · max(1, ‖J₋‖_F)`.
pub fn verify_commutation(triple: &GeneratorTriple, tol: f64) -> Result<CommutationReport> {
    let z = triple.z();
    let (j0, jp, jm) = (&triple.j0, &triple.jplus, &triple.jminus);
    let r0 = &j0.commutator(jp) - &plus_commutator_rhs(jp, z)?;
    let r1 = &(&j0.commutator(jm) + &jm.scale_real(2.0)) - &(j0 * j0).scale_real(z);
    let r2 = &jp.commutator(jm) - j0;
    let residuals = [r0.frobenius_norm(), r1.frobenius_norm(), r2.frobenius_norm()];
    let scale = jm.frobenius_norm().max(1.0);
    let passed = residuals.iter().all(|&r| r <= tol * scale);
    Ok(CommutationReport {
        residual_matrices: [r0, r1, r2],
        residuals,
        scale,
        tolerance: tol,
        irreducible: triple.is_irreducible(),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{build_deformed_generators, RepSpec};

    #[test]
    fn casimir_d2() {
        let t = build_deformed_generators(&RepSpec::irrep(0.8, 2)).unwrap();
        let c = casimir_matrix(&t).unwrap();
        assert!(c.distance(&ComplexMatrix::identity(2).scale_real(1.5)) < 1e-13);
    }

    #[test]
    fn non_integer_weight_defect_at_boundary() {
        let spec = RepSpec::new(0.0, -1.5, 4).unwrap();
        let t = build_deformed_generators(&spec).unwrap();
        let report = verify_commutation(&t, 1e-11).unwrap();
        assert!(!report.passed);
        let entries = report.offending_entries(2, 1e-12);
        assert_eq!(entries.len(), 1);
        assert_eq!((entries[0].0, entries[0].1), (3, 3));
        // The missing L₋L₊ term at the last state: d(d − 1 + β).
        let expected = 4.0 * (3.0 - 1.5);
        assert!((entries[0].2 - expected).abs() < 1e-12);
    }
}
