use serde::Serialize;

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::linalg::{c64, matrix_exponential, nilpotent_exp_quotient, ComplexMatrix, C64};
use crate::reps::{build_deformed_generators, build_sl2_generators, GeneratorTriple};
use crate::spectra::build_linear_h;

/// Floor on the tolerance of the finite-difference derivative check, whose
/// truncation and rounding errors are far above machine precision.
const DERIVATIVE_TOL: f64 = 1e-8;

/// `η = e^{α₀L₊} e^{b₀L₋} e^{γ₀L₀}` and `ηH_μη⁻¹` for `H_μ = μL₋ + L₊`.
#[derive(Debug, Clone, Serialize)]
pub struct Sl2Hermitization {
    pub alpha0: C64,
    pub b0: C64,
    pub gamma0: f64,
    pub transformed: ComplexMatrix,
}

fn complex_sqrt(x: f64) -> C64 {
    if x >= 0.0 {
        c64(x.sqrt(), 0.0)
    } else {
        c64(0.0, (-x).sqrt())
    }
}

/// Maps the undeformed `H_μ` to `√μ L₀` (diagonal for either sign of `μ`) by
/// explicit conjugation with `α₀ = e^{2γ₀}/(2√μ)` and `b₀ = −e^{−2γ₀}√μ`.
pub fn sl2_hermitize(mu: f64, gamma0: f64, triple: &GeneratorTriple) -> Result<Sl2Hermitization> {
    if mu == 0.0 || !mu.is_finite() || !gamma0.is_finite() {
        return Err(Error::InvalidParameter("mu must be finite and nonzero".into()));
    }
    if triple.z() != 0.0 {
        return Err(Error::InvalidParameter("an undeformed triple is required".into()));
    }
    let root = complex_sqrt(mu);
    let alpha0 = (2.0 * gamma0).exp() / (root * 2.0);
    let b0 = -root * (-2.0 * gamma0).exp();
    let h = build_linear_h(mu, triple);
    let inner = conjugate_by_exp(&triple.j0.scale_real(gamma0), &h)?;
    let middle = conjugate_by_exp(&triple.jminus.scale(b0), &inner)?;
    Ok(Sl2Hermitization {
        alpha0,
        b0,
        gamma0,
        transformed: conjugate_by_exp(&triple.jplus.scale(alpha0), &middle)?,
    })
}

/// `e^A X e^{−A}`.
///
/// For diagonal `A` this is an entrywise scaling and for strictly triangular
/// `A` the Hadamard series `Σ ad_A^k X / k!`, which terminates at
/// `k = 2(n−1)` and is cut earlier once a term cancels to rounding level.
/// Both avoid forming `e^{±A}`, whose entries can be many orders
/// of magnitude larger than the result.
pub fn conjugate_by_exp(a: &ComplexMatrix, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    if a.is_diagonal() {
        let d = a.diag();
        return Ok(ComplexMatrix::from_fn(n, n, |i, j| x[(i, j)] * (d[i] - d[j]).exp()));
    }
    if a.is_strictly_lower_triangular() || a.is_strictly_upper_triangular() {
        let a_norm = a.frobenius_norm();
        let mut out = x.clone();
        let mut term = x.clone();
        for k in 1..=2 * n.saturating_sub(1) {
            let previous = term.frobenius_norm();
            term = a.commutator(&term).scale_real(1.0 / k as f64);
            // A commutator at the rounding level of its own evaluation is zero;
            // summing it would only amplify noise in the remaining terms.
            let noise = 4.0 * n as f64 * f64::EPSILON * a_norm * previous / k as f64;
            if term.frobenius_norm() <= noise {
                break;
            }
            out += &term;
        }
        return Ok(out);
    }
    Ok(&(&matrix_exponential(a)? * x) * &matrix_exponential(&a.scale_real(-1.0))?)
}

struct Conjugator {
    plus: ComplexMatrix,
    minus: ComplexMatrix,
    scale_factor: f64,
}

impl Conjugator {
    fn new(x: &ComplexMatrix, alpha: f64) -> Result<Self> {
        let plus = matrix_exponential(&x.scale_real(alpha))?;
        let minus = matrix_exponential(&x.scale_real(-alpha))?;
        let scale_factor = plus.frobenius_norm() * minus.frobenius_norm();
        Ok(Self {
            plus,
            minus,
            scale_factor,
        })
    }

    fn apply(&self, y: &ComplexMatrix) -> ComplexMatrix {
        &(&self.plus * y) * &self.minus
    }

    fn check(&self, report: &mut CheckReport, name: &str, y: &ComplexMatrix, rhs: &ComplexMatrix) {
        let residual = self.apply(y).distance(rhs);
        report.record(name, residual, self.scale_factor * y.frobenius_norm());
    }
}

/// `Σ_{n≥1} cₙ Xⁿ` for nilpotent `X`.
fn nilpotent_series(x: &ComplexMatrix, coeff: impl Fn(usize) -> f64) -> ComplexMatrix {
    let d = x.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    let mut power = x.clone();
    for n in 1..d.max(2) {
        if power.is_zero() {
            break;
        }
        out += &power.scale_real(coeff(n));
        power = &power * x;
    }
    out
}

fn sl2_identities(l: &GeneratorTriple, alpha: f64, report: &mut CheckReport) -> Result<()> {
    let (l0, lp, lm) = (&l.j0, &l.jplus, &l.jminus);
    let by_plus = Conjugator::new(lp, alpha)?;
    by_plus.check(report, "sl2: e^{aL+} L- e^{-aL+}", lm, &(&(l0 - &lp.scale_real(alpha)).scale_real(alpha) + lm));
    by_plus.check(report, "sl2: e^{aL+} L0 e^{-aL+}", l0, &(l0 - &lp.scale_real(2.0 * alpha)));
    let by_minus = Conjugator::new(lm, alpha)?;
    by_minus.check(report, "sl2: e^{aL-} L+ e^{-aL-}", lp, &(&(l0 + &lm.scale_real(alpha)).scale_real(-alpha) + lp));
    by_minus.check(report, "sl2: e^{aL-} L0 e^{-aL-}", l0, &(l0 + &lm.scale_real(2.0 * alpha)));
    let by_zero = Conjugator::new(l0, alpha)?;
    by_zero.check(report, "sl2: e^{aL0} L+ e^{-aL0}", lp, &lp.scale_real((2.0 * alpha).exp()));
    by_zero.check(report, "sl2: e^{aL0} L- e^{-aL0}", lm, &lm.scale_real((-2.0 * alpha).exp()));
    Ok(())
}

fn deformed_identities(j: &GeneratorTriple, alpha: f64, tol: f64, report: &mut CheckReport) -> Result<()> {
    let z = j.z();
    let (j0, jp, jm) = (&j.j0, &j.jplus, &j.jminus);
    let f = nilpotent_exp_quotient(jp, 2.0 * z)?;

    let by_plus = Conjugator::new(jp, alpha)?;
    by_plus.check(report, "deformed: e^{aJ+} J- e^{-aJ+}", jm, &(&(j0 - &f.scale_real(alpha)).scale_real(alpha) + jm));
    by_plus.check(report, "deformed: e^{aJ+} J0 e^{-aJ+}", j0, &(j0 - &f.scale_real(2.0 * alpha)));

    let by_zero = Conjugator::new(j0, alpha)?;
    let (ea, sh) = (alpha.exp(), alpha.sinh());
    let q = -2.0 * ea * sh;
    let rhs_plus = nilpotent_series(&f, |n| {
        (-2.0 * z).powi(n as i32 - 1) / n as f64 * (1.0 - q.powi(n as i32))
    });
    by_zero.check(report, "deformed: e^{aJ0} J+ e^{-aJ0}", jp, &rhs_plus);
    let rhs_minus = &jm.scale_real((-2.0 * alpha).exp()) + &(j0 * j0).scale_real(z * (-alpha).exp() * sh);
    by_zero.check(report, "deformed: e^{aJ0} J- e^{-aJ0}", jm, &rhs_minus);
    let rhs_f = nilpotent_series(&f, |n| ea * (4.0 * z * sh).powi(n as i32 - 1) * ea.powi(n as i32));
    by_zero.check(report, "deformed: e^{aJ0} f e^{-aJ0}", &f, &rhs_f);

    // e^{aJ-} J0 e^{-aJ-} = −d/da (e^{aJ-} J+ e^{-aJ-}), by a five-point stencil.
    let h = 1e-3 / (1.0 + jm.frobenius_norm()).sqrt();
    let at = |a: f64| -> Result<ComplexMatrix> { Ok(Conjugator::new(jm, a)?.apply(jp)) };
    let stencil = &(&at(alpha - 2.0 * h)? - &at(alpha + 2.0 * h)?)
        + &(&at(alpha + h)? - &at(alpha - h)?).scale_real(8.0);
    let neg_derivative = stencil.scale_real(-1.0 / (12.0 * h));
    let by_minus = Conjugator::new(jm, alpha)?;
    let mut fd = CheckReport::new(tol.max(DERIVATIVE_TOL));
    let residual = by_minus.apply(j0).distance(&neg_derivative);
    fd.record(
        "deformed: e^{aJ-} J0 e^{-aJ-} = -d/da(e^{aJ-} J+ e^{-aJ-})",
        residual,
        by_minus.scale_factor * j0.frobenius_norm().max(jp.frobenius_norm()),
    );
    report.extend(fd);
    Ok(())
}

/// Checks the conjugation identities of the undeformed and deformed
/// generators at parameter `alpha`, each relative to
/// `‖e^{αX}‖ ‖Y‖ ‖e^{−αX}‖`. The derivative identity is checked by finite
/// differences against a tolerance of at least `1e-8`.
pub fn verify_adjoint_identities(triple: &GeneratorTriple, alpha: f64, tol: f64) -> Result<CheckReport> {
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter("alpha must be finite".into()));
    }
    let mut report = CheckReport::new(tol);
    sl2_identities(&build_sl2_generators(&triple.spec)?, alpha, &mut report)?;
    let deformed = if triple.deformed || triple.spec.z == 0.0 {
        triple.clone()
    } else {
        build_deformed_generators(&triple.spec)?
    };
    deformed_identities(&deformed, alpha, tol, &mut report)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigenvalues;
    use crate::reps::RepSpec;

    #[test]
    fn mu4_gives_twice_l0() {
        let t = build_sl2_generators(&RepSpec::irrep(0.0, 3)).unwrap();
        let r = sl2_hermitize(4.0, 0.0, &t).unwrap();
        let expected = t.j0.scale_real(2.0);
        assert!(r.transformed.distance(&expected) < 1e-10, "{:?}", r.transformed);
    }

    #[test]
    fn gamma_independent() {
        let t = build_sl2_generators(&RepSpec::irrep(0.0, 4)).unwrap();
        let base = sl2_hermitize(1.0, 0.0, &t).unwrap().transformed;
        for g in [-1.0, 1.0] {
            assert!(sl2_hermitize(1.0, g, &t).unwrap().transformed.distance(&base) < 1e-10);
        }
    }

    #[test]
    fn negative_mu_conjugate_pairs() {
        let t = build_sl2_generators(&RepSpec::irrep(0.0, 4)).unwrap();
        let r = sl2_hermitize(-1.0, 0.0, &t).unwrap();
        let diag = ComplexMatrix::diagonal(&r.transformed.diag());
        assert!(r.transformed.distance(&diag) < 1e-10);
        assert!(diag.distance(&t.j0.scale(c64(0.0, 1.0))) < 1e-10);
        let v = eigenvalues(&r.transformed).unwrap();
        assert!(crate::spectra::conjugate_pairing_defect(&v) < 1e-10);
        assert!(v.iter().all(|x| x.re.abs() < 1e-10));
        assert!(sl2_hermitize(0.0, 0.0, &t).is_err());
    }

    #[test]
    fn identities_hold() {
        for (d, z, alpha) in [(4, 0.0, 0.3), (4, 1.0, 0.5), (6, 0.4, -0.7), (3, 2.0, 0.0)] {
            let t = build_deformed_generators(&RepSpec::irrep(z, d)).unwrap();
            let report = verify_adjoint_identities(&t, alpha, 1e-11).unwrap();
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "d={d} z={z}: {failures:?}");
        }
    }

    #[test]
    fn conjugation_matches_explicit_exponentials() {
        let x = ComplexMatrix::from_fn(4, 4, |i, j| c64(1.0 + i as f64 - 0.5 * j as f64, 0.3 * (i * j) as f64));
        let nilpotent = ComplexMatrix::from_fn(4, 4, |i, j| if j > i { c64(0.4, -0.1 * j as f64) } else { c64(0.0, 0.0) });
        let diagonal = ComplexMatrix::diagonal(&[c64(0.2, 0.0), c64(-0.5, 0.1), c64(0.0, 0.0), c64(1.0, 0.0)]);
        let general = ComplexMatrix::from_fn(4, 4, |i, j| c64(0.1 * (i + 2 * j) as f64, 0.05));
        for a in [nilpotent, diagonal, general] {
            let direct = &(&matrix_exponential(&a).unwrap() * &x) * &matrix_exponential(&a.scale_real(-1.0)).unwrap();
            let fast = conjugate_by_exp(&a, &x).unwrap();
            assert!(fast.distance(&direct) < 1e-12 * direct.frobenius_norm());
        }
    }
}
