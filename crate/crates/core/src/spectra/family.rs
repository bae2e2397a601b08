use serde::{Deserialize, Serialize};

use super::numeric::{coalescence, numeric_spectrum, NumericSpectrum};
use super::{degenerate_clusters, Phase, SpectrumResult};
use crate::error::{Error, Result};
use crate::exec::{try_map, Execution};
use crate::linalg::{c64, cmp_re_im, matrix_exponential, ComplexMatrix, C64};
use crate::reps::{build_deformed_generators, GeneratorTriple, RepSpec, plus_commutator_rhs};
use crate::tolerances::Tolerances;

/// Couplings of `H = μ₋J₋ + μ₊[J₀,J₊] + μ₀ g(J₀)`, with `g` the identity
/// unless a power series `g₀ + g₁x + …` is supplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub mu_plus: f64,
    pub mu_minus: f64,
    pub mu_0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<f64>>,
}

impl FamilyParams {
    pub fn new(mu_plus: f64, mu_minus: f64, mu_0: f64) -> Self {
        Self {
            mu_plus,
            mu_minus,
            mu_0,
            g: None,
        }
    }

    pub fn with_g(mut self, g: Vec<f64>) -> Self {
        self.g = Some(g);
        self
    }

    /// `μ₀² + 2μ₊μ₋`.
    pub fn discriminant(&self) -> f64 {
        self.mu_0 * self.mu_0 + 2.0 * self.mu_plus * self.mu_minus
    }

    /// `√(μ₀² + 2μ₊μ₋)`, imaginary when the discriminant is negative.
    pub fn sqrt_discriminant(&self) -> C64 {
        let d = self.discriminant();
        if d >= 0.0 {
            c64(d.sqrt(), 0.0)
        } else {
            c64(0.0, (-d).sqrt())
        }
    }

    /// Magnitude the discriminant is compared against.
    pub fn discriminant_scale(&self) -> f64 {
        (self.mu_0 * self.mu_0)
            .max((2.0 * self.mu_plus * self.mu_minus).abs())
            .max(1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.mu_plus, self.mu_minus, self.mu_0]
            .iter()
            .chain(self.g.iter().flatten())
            .all(|x| x.is_finite());
        if finite {
            Ok(())
        } else {
            Err(Error::InvalidParameter("couplings must be finite".into()))
        }
    }

    /// Phase decided by the sign of the discriminant, with a band of width
    /// `tol.ep · scale` around zero classed as exceptional.
    pub fn phase(&self, tol: &Tolerances) -> Phase {
        let d = self.discriminant();
        let band = tol.ep * self.discriminant_scale();
        if d > band {
            Phase::ExactPT
        } else if d < -band {
            Phase::BrokenPT
        } else {
            Phase::ExceptionalPoint
        }
    }
}

/// `h₋(μ,ν)`: couplings `(μ₊, μ₋, μ₀) = (−μ, μ, μν)`, discriminant `μ²(ν²−2)`.
pub fn h_minus_params(mu: f64, nu: f64) -> FamilyParams {
    FamilyParams::new(-mu, mu, mu * nu)
}

/// `h₊(μ,ν)`: couplings `(μ, μ, μν)`, discriminant `μ²(ν²+2)`.
pub fn h_plus_params(mu: f64, nu: f64) -> FamilyParams {
    FamilyParams::new(mu, mu, mu * nu)
}

/// `H_μ = μJ₋ + J₊`.
pub fn build_linear_h(mu: f64, triple: &GeneratorTriple) -> ComplexMatrix {
    &triple.jminus.scale_real(mu) + &triple.jplus
}

/// Returns `(λ, sign)` with `λ = √|μ| z` and `sign = sign(μ)`, such that
/// `σ(H_μ; z) = √|μ| · σ(H_sign; λ)` for either sign of `μ`.
pub fn rescale_to_unit(mu: f64, z: f64) -> Result<(f64, f64)> {
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::InvalidParameter("mu must be finite and nonzero".into()));
    }
    Ok((mu.abs().sqrt() * z, mu.signum()))
}

/// `H(μ₊,μ₋,μ₀)`, with the commutator evaluated as `(e^{2zJ₊} − 1)/z`.
pub fn build_family_h(params: &FamilyParams, triple: &GeneratorTriple) -> Result<ComplexMatrix> {
    params.validate()?;
    let comm = plus_commutator_rhs(&triple.jplus, triple.z())?;
    let diag_part = match &params.g {
        None => triple.j0.clone(),
        Some(g) => triple.j0.polynomial(g),
    };
    Ok(&(&triple.jminus.scale_real(params.mu_minus) + &comm.scale_real(params.mu_plus))
        + &diag_part.scale_real(params.mu_0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

fn require_mu_minus(params: &FamilyParams) -> Result<()> {
    if params.mu_minus == 0.0 {
        Err(Error::InvalidParameter("mu_minus must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// `𝔥± = (z/2) μ₋ J₀² ± √(μ₀² + 2μ₊μ₋) J₀`, lower triangular in Fock order.
pub fn limit_hamiltonian_family(
    params: &FamilyParams,
    triple: &GeneratorTriple,
    branch: Branch,
) -> Result<ComplexMatrix> {
    require_mu_minus(params)?;
    let j0 = &triple.j0;
    let quad = (j0 * j0).scale_real(0.5 * triple.z() * params.mu_minus);
    Ok(&quad + &j0.scale(params.sqrt_discriminant() * branch.sign()))
}

/// Parameters `(η, κ±)` of `Υ± = e^{ηJ₀} e^{κ±J₊}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimilarityPlan {
    pub eta: f64,
    pub kappa_plus: C64,
    pub kappa_minus: C64,
}

impl SimilarityPlan {
    /// `κ± = (±√(μ₀² + 2μ₊μ₋) − μ₀)/μ₋`, the two roots of
    /// `μ₋κ² + 2μ₀κ − 2μ₊ = 0` that remove the `J₊` component.
    pub fn new(params: &FamilyParams, eta: f64) -> Result<Self> {
        require_mu_minus(params)?;
        let root = params.sqrt_discriminant();
        Ok(Self {
            eta,
            kappa_plus: (root - params.mu_0) / params.mu_minus,
            kappa_minus: (-root - params.mu_0) / params.mu_minus,
        })
    }

    pub fn kappa(&self, branch: Branch) -> C64 {
        match branch {
            Branch::Plus => self.kappa_plus,
            Branch::Minus => self.kappa_minus,
        }
    }
}

/// `(Υ, Υ⁻¹)` with `Υ = e^{ηJ₀} e^{κJ₊}`.
pub fn upsilon(triple: &GeneratorTriple, eta: f64, kappa: C64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let e_eta = matrix_exponential(&triple.j0.scale_real(eta))?;
    let e_eta_inv = matrix_exponential(&triple.j0.scale_real(-eta))?;
    let e_kappa = matrix_exponential(&triple.jplus.scale(kappa))?;
    let e_kappa_inv = matrix_exponential(&triple.jplus.scale(-kappa))?;
    Ok((&e_eta * &e_kappa, &e_kappa_inv * &e_eta_inv))
}

/// Closed form of `Υ± H Υ±⁻¹` at finite `η`:
/// `μ₋e^{−2η}J₋ + zμ₋e^{−η}sinh(η) J₀² ± √(μ₀² + 2μ₊μ₋) J₀`.
pub fn finite_eta_form(
    params: &FamilyParams,
    triple: &GeneratorTriple,
    eta: f64,
    branch: Branch,
) -> Result<ComplexMatrix> {
    require_mu_minus(params)?;
    let j0 = &triple.j0;
    let decay = (-2.0 * eta).exp();
    let quad = (j0 * j0).scale_real(triple.z() * params.mu_minus * 0.5 * (1.0 - decay));
    Ok(&(&triple.jminus.scale_real(params.mu_minus * decay) + &quad)
        + &j0.scale(params.sqrt_discriminant() * branch.sign()))
}

/// Closed-form spectrum `{(z/2)μ₋n² + n√(μ₀²+2μ₊μ₋) : n = 2m+β}` of the irrep
/// of dimension `d`, with phase and degenerate clusters.
pub fn analytic_spectrum_family(params: &FamilyParams, d: usize, z: f64) -> Result<SpectrumResult> {
    analytic_spectrum_family_with(params, d, z, &Tolerances::default())
}

pub fn analytic_spectrum_family_with(
    params: &FamilyParams,
    d: usize,
    z: f64,
    tol: &Tolerances,
) -> Result<SpectrumResult> {
    params.validate()?;
    if params.g.is_some() {
        return Err(Error::InvalidParameter(
            "no closed-form spectrum for a non-identity g".into(),
        ));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("dim must be at least 1".into()));
    }
    let beta = 1.0 - d as f64;
    let root = params.sqrt_discriminant();
    let mut eigenvalues: Vec<C64> = (0..d)
        .map(|m| {
            let n = 2.0 * m as f64 + beta;
            c64(0.5 * z * params.mu_minus * n * n, 0.0) + root * n
        })
        .collect();
    eigenvalues.sort_by(cmp_re_im);
    let scale = eigenvalues.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let ep_clusters = degenerate_clusters(&eigenvalues, tol.cluster * scale);
    Ok(SpectrumResult {
        eigenvalues,
        discriminant: Some(params.discriminant()),
        phase: params.phase(tol),
        ep_clusters,
    })
}

/// One classified grid point.
#[derive(Debug, Clone, Serialize)]
pub struct ScanPoint {
    pub params: FamilyParams,
    /// Closed-form spectrum; its clusters carry the coalescence verdicts.
    pub analytic: SpectrumResult,
    /// Eigenvalues of the full `H(μ₊,μ₋,μ₀)`.
    pub numeric: NumericSpectrum,
}

impl ScanPoint {
    pub fn phase(&self) -> Phase {
        self.analytic.phase
    }

    /// An EP whose eigenvector coalescence was confirmed by the rank test.
    pub fn is_confirmed_ep(&self) -> bool {
        self.phase() == Phase::ExceptionalPoint
            && self
                .analytic
                .ep_clusters
                .iter()
                .any(|c| c.coalescent == Some(true))
    }
}

/// Classifies a single parameter point on the irrep of dimension `d`.
///
/// The phase follows the discriminant. At exceptional-point candidates each
/// cluster of the closed-form spectrum is checked for coalescence through the
/// rank of `H − λ` on the full Hamiltonian.
pub fn classify_point(params: &FamilyParams, d: usize, z: f64, tol: &Tolerances) -> Result<ScanPoint> {
    let triple = build_deformed_generators(&RepSpec::irrep(z, d))?;
    let h = build_family_h(params, &triple)?;
    let numeric = numeric_spectrum(&h, tol)?;
    let mut analytic = analytic_spectrum_family_with(params, d, z, tol)?;
    if analytic.phase == Phase::ExceptionalPoint {
        for cluster in analytic.ep_clusters.iter_mut() {
            let (nullity, coalescent) = coalescence(&h, cluster.value, cluster.order, tol)?;
            cluster.geometric_multiplicity = Some(nullity);
            cluster.coalescent = Some(coalescent);
        }
    }
    Ok(ScanPoint {
        params: params.clone(),
        analytic,
        numeric,
    })
}

/// Classified grid plus the positions of confirmed exceptional points.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseMap {
    pub points: Vec<ScanPoint>,
    pub ep_locus: Vec<usize>,
}

pub fn classify_phase_and_scan(
    grid: &[FamilyParams],
    d: usize,
    z: f64,
    tol: &Tolerances,
    exec: Execution,
) -> Result<PhaseMap> {
    let points = try_map(grid, exec, |i, p| {
        classify_point(p, d, z, tol).map_err(|e| Error::GridPoint {
            point: format!("#{i} (mu_plus={}, mu_minus={}, mu_0={})", p.mu_plus, p.mu_minus, p.mu_0),
            source: Box::new(e),
        })
    })?;
    let ep_locus = points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_confirmed_ep())
        .map(|(i, _)| i)
        .collect();
    Ok(PhaseMap { points, ep_locus })
}
