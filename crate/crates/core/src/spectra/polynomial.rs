use serde::{Deserialize, Serialize};

use super::{degenerate_clusters, Phase, SpectrumResult};
use crate::error::{Error, Result};
use crate::linalg::{c64, cmp_re_im, ComplexMatrix, C64};
use crate::reps::GeneratorTriple;
use crate::tolerances::Tolerances;

/// Truncation bound on the scalar Taylor tail of `sin`/`cos`.
const TAYLOR_TAIL: f64 = 1e-12;

/// `H₀ = μ₋J₋ + Σₙ aₙ J₀ⁿ` with `coefficients = [a₀, a₁, …, a_N]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyHamiltonianSpec {
    pub mu_minus: f64,
    pub coefficients: Vec<f64>,
}

impl PolyHamiltonianSpec {
    pub fn new(mu_minus: f64, coefficients: Vec<f64>) -> Self {
        Self {
            mu_minus,
            coefficients,
        }
    }

    /// `μ₋J₋ + sin(λJ₀)`, truncated so the series tail at `λ·max_abs_n` is
    /// below `1e-12`.
    pub fn sine(mu_minus: f64, lambda: f64, max_abs_n: f64) -> Self {
        Self::new(mu_minus, taylor(lambda, max_abs_n, 1))
    }

    /// `μ₋J₋ + cos(λJ₀)`, truncated like [`PolyHamiltonianSpec::sine`].
    pub fn cosine(mu_minus: f64, lambda: f64, max_abs_n: f64) -> Self {
        Self::new(mu_minus, taylor(lambda, max_abs_n, 0))
    }

    /// Largest `|n_m| = |2m + β|` on the irrep of dimension `d`.
    pub fn max_abs_n(d: usize) -> f64 {
        d.saturating_sub(1) as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu_minus.is_finite() && self.coefficients.iter().all(|a| a.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter("polynomial couplings must be finite".into()))
        }
    }

    fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }
}

/// Taylor coefficients of `sin(λx)` (`parity = 1`) or `cos(λx)` (`parity = 0`).
fn taylor(lambda: f64, max_abs_n: f64, parity: usize) -> Vec<f64> {
    let x = (lambda * max_abs_n).abs();
    // Smallest N with x^{N+1}/(N+1)! ≤ tail.
    let mut order = 0usize;
    let mut next_term = x;
    while next_term > TAYLOR_TAIL {
        order += 1;
        next_term *= x / (order + 1) as f64;
    }
    let mut coefficients = vec![0.0; order.max(parity) + 1];
    let mut term = 1.0;
    for (n, c) in coefficients.iter_mut().enumerate() {
        if n > 0 {
            term *= lambda / n as f64;
        }
        if n % 2 == parity {
            let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            *c = sign * term;
        }
    }
    coefficients
}

pub fn build_polynomial_h(spec: &PolyHamiltonianSpec, triple: &GeneratorTriple) -> Result<ComplexMatrix> {
    spec.validate()?;
    Ok(&triple.jminus.scale_real(spec.mu_minus) + &triple.j0.polynomial(&spec.coefficients))
}

/// `{(z/2)μ₋n² + Σ aₙ nⁿ : n = 2m + β, m = 0..d−1}`.
pub fn analytic_spectrum_polynomial(spec: &PolyHamiltonianSpec, d: usize, z: f64) -> Result<SpectrumResult> {
    spec.validate()?;
    if d == 0 {
        return Err(Error::InvalidParameter("dim must be at least 1".into()));
    }
    let beta = 1.0 - d as f64;
    let mut eigenvalues: Vec<C64> = (0..d)
        .map(|m| {
            let n = 2.0 * m as f64 + beta;
            c64(0.5 * z * spec.mu_minus * n * n + spec.eval(n), 0.0)
        })
        .collect();
    eigenvalues.sort_by(cmp_re_im);
    let scale = eigenvalues.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let ep_clusters = degenerate_clusters(&eigenvalues, Tolerances::default().cluster * scale);
    Ok(SpectrumResult {
        eigenvalues,
        discriminant: None,
        phase: Phase::ExactPT,
        ep_clusters,
    })
}
