//! Three-electron hybrid double-quantum-dot model: the 4×4 Hamiltonian `H_e`,
//! its characteristic quartic, the large-detuning approximation and the
//! effective model built from the deformed `d = 2` representation at `z = ε`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{try_map, Execution};
use crate::linalg::{c64, hermitian_eigen, inverse, polynomial_roots, ComplexMatrix, Polynomial, C64};
use crate::reps::{build_deformed_generators, RepSpec};

/// Level offsets, tunnel couplings and detuning, all in GHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QdotParams {
    #[serde(rename = "deltaL")]
    pub delta_l: f64,
    #[serde(rename = "deltaR")]
    pub delta_r: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub epsilon: f64,
}

impl Default for QdotParams {
    fn default() -> Self {
        Self {
            delta_l: 3.0,
            delta_r: 95.8,
            t1: 1.8,
            t2: 7.1,
            t3: 11.5,
            t4: 6.3,
            epsilon: 0.0,
        }
    }
}

impl QdotParams {
    pub fn at(self, epsilon: f64) -> Self {
        Self { epsilon, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.delta_l,
            self.delta_r,
            self.t1,
            self.t2,
            self.t3,
            self.t4,
            self.epsilon,
        ];
        if all.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter("quantum-dot parameters must be finite".into()))
        }
    }

    fn require_detuning(&self) -> Result<()> {
        if self.epsilon == 0.0 {
            Err(Error::InvalidParameter(
                "the effective model is singular at epsilon = 0".into(),
            ))
        } else {
            Ok(())
        }
    }

    /// `−3δL² − 2εδL + 4t₃²`.
    pub fn radicand_left(&self) -> f64 {
        -3.0 * self.delta_l * self.delta_l - 2.0 * self.epsilon * self.delta_l + 4.0 * self.t3 * self.t3
    }

    /// `δR² − 2εδR + 4t₂²`.
    pub fn radicand_right(&self) -> f64 {
        self.delta_r * self.delta_r - 2.0 * self.epsilon * self.delta_r + 4.0 * self.t2 * self.t2
    }
}

/// `H_e` as a real symmetric array.
pub fn he_entries(p: &QdotParams) -> [[f64; 4]; 4] {
    let e = p.epsilon / 2.0;
    [
        [p.delta_l + e, -p.t3, 0.0, p.t4],
        [-p.t3, -e, p.t1, 0.0],
        [0.0, p.t1, e, -p.t2],
        [p.t4, 0.0, -p.t2, p.delta_r - e],
    ]
}

pub fn build_he(p: &QdotParams) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&he_entries(p)).expect("4x4 rows")
}

/// Monic `λ⁴ + c₃λ³ + c₂λ² + c₁λ + c₀` with `p(λ) = det(λ − H_e)`.
pub fn charpoly_coeffs(p: &QdotParams) -> Polynomial {
    let (dl, dr, e) = (p.delta_l, p.delta_r, p.epsilon);
    let (t1s, t2s, t3s, t4s) = (p.t1 * p.t1, p.t2 * p.t2, p.t3 * p.t3, p.t4 * p.t4);
    let tsum = t1s + t2s + t3s + t4s;
    let c3 = -dl - dr;
    let c2 = 0.5 * (e * (dr - dl) - 2.0 * (-dl * dr + tsum) - e * e);
    let c1 = 0.25 * e * e * (dl + dr) + t1s * (dl + dr) + dl * t2s + dr * t3s;
    let cross = p.t2 * p.t3 - p.t1 * p.t4;
    let c0 = (e.powi(4) + 2.0 * e.powi(3) * (dl - dr) + 4.0 * e * e * (-dl * dr + tsum)
        + 8.0 * e * (dl * (t1s + t2s) - dr * (t1s + t3s))
        + 16.0 * (cross * cross - dl * dr * t1s))
        / 16.0;
    Polynomial::monic_real(&[c0, c1, c2, c3])
}

/// Eigenvalues of `H_e`, ascending, from a Hermitian eigensolve.
pub fn exact_eigenvalues(p: &QdotParams) -> Result<[f64; 4]> {
    p.validate()?;
    let values = hermitian_eigen(&build_he(p))?.values;
    Ok([values[0], values[1], values[2], values[3]])
}

/// Real parts of the roots of the characteristic quartic, ascending.
pub fn quartic_eigenvalues(p: &QdotParams) -> Result<[f64; 4]> {
    p.validate()?;
    let roots = polynomial_roots(&charpoly_coeffs(p))?;
    let mut re: Vec<f64> = roots.iter().map(|r| r.re).collect();
    re.sort_by(f64::total_cmp);
    Ok([re[0], re[1], re[2], re[3]])
}

/// Large-detuning pairs `E₁,± = ½(δL ± √((δL+ε)² + 4t₃²))` and
/// `E₂,± = ½(δR ± √((δR−ε)² + 4t₂²))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxEigenvalues {
    pub e1_plus: f64,
    pub e1_minus: f64,
    pub e2_plus: f64,
    pub e2_minus: f64,
}

impl ApproxEigenvalues {
    pub fn sorted(&self) -> [f64; 4] {
        let mut v = [self.e1_plus, self.e1_minus, self.e2_plus, self.e2_minus];
        v.sort_by(f64::total_cmp);
        v
    }
}

pub fn approx_eigenvalues(p: &QdotParams) -> ApproxEigenvalues {
    let r1 = ((p.delta_l + p.epsilon).powi(2) + 4.0 * p.t3 * p.t3).sqrt();
    let r2 = ((p.delta_r - p.epsilon).powi(2) + 4.0 * p.t2 * p.t2).sqrt();
    ApproxEigenvalues {
        e1_plus: 0.5 * (p.delta_l + r1),
        e1_minus: 0.5 * (p.delta_l - r1),
        e2_plus: 0.5 * (p.delta_r + r2),
        e2_minus: 0.5 * (p.delta_r - r2),
    }
}

/// `(H₁, H₂)` on the deformed `d = 2` irrep at `z = ε`:
/// `H₁ = ½(ε+δL)J₀ + (t₃²ε/δL)J₊ + (δL/ε)J₋`, `H₂` likewise with
/// `(−δR, t₂, δR)`.
pub fn heff_blocks(p: &QdotParams) -> Result<(ComplexMatrix, ComplexMatrix)> {
    p.validate()?;
    p.require_detuning()?;
    if p.delta_l == 0.0 || p.delta_r == 0.0 {
        return Err(Error::InvalidParameter("deltaL and deltaR must be nonzero".into()));
    }
    let t = build_deformed_generators(&RepSpec::irrep(p.epsilon, 2))?;
    let e = p.epsilon;
    let block = |shift: f64, t_sq: f64, delta: f64| {
        &(&t.j0.scale_real(0.5 * (e + shift)) + &t.jplus.scale_real(t_sq * e / delta))
            + &t.jminus.scale_real(delta / e)
    };
    Ok((
        block(p.delta_l, p.t3 * p.t3, p.delta_l),
        block(-p.delta_r, p.t2 * p.t2, p.delta_r),
    ))
}

fn block_diag(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (false, false) => b[(i - n, j - n)],
        _ => c64(0.0, 0.0),
    })
}

/// `H_eff = diag(1,0) ⊗ H₁ + diag(0,1) ⊗ H₂`.
pub fn build_heff(p: &QdotParams) -> Result<ComplexMatrix> {
    let (h1, h2) = heff_blocks(p)?;
    Ok(block_diag(&h1, &h2))
}

fn radicand_root(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 {
        Ok(value.sqrt())
    } else {
        Err(Error::DomainViolation { name, value })
    }
}

/// `S^{1/2} = diag(s₁, s₂)` with `s₁ = diag(ε√R₁/(2δL), 1)` and
/// `s₂ = diag(ε√R₂/(2δR), 1)`.
pub fn s_half(p: &QdotParams) -> Result<ComplexMatrix> {
    p.require_detuning()?;
    let r1 = radicand_root("-3 deltaL^2 - 2 epsilon deltaL + 4 t3^2", p.radicand_left())?;
    let r2 = radicand_root("deltaR^2 - 2 epsilon deltaR + 4 t2^2", p.radicand_right())?;
    Ok(ComplexMatrix::diagonal(&[
        c64(p.epsilon * r1 / (2.0 * p.delta_l), 0.0),
        c64(1.0, 0.0),
        c64(p.epsilon * r2 / (2.0 * p.delta_r), 0.0),
        c64(1.0, 0.0),
    ]))
}

/// `(h₁, h₂)`, the blocks of `S^{1/2} H_eff S^{−1/2}`, each Hermitian.
pub fn hermitize_blocks(p: &QdotParams) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let h_eff = build_heff(p)?;
    let s = s_half(p)?;
    let h = &(&s * &h_eff) * &inverse(&s)?;
    let block = |o: usize| ComplexMatrix::from_fn(2, 2, |i, j| h[(o + i, o + j)]);
    let (h1, h2) = (block(0), block(2));
    for b in [&h1, &h2] {
        let defect = b.hermiticity_defect();
        let tolerance = 1e-12 * b.frobenius_norm().max(1.0);
        if defect > tolerance {
            return Err(Error::NotHermitian { defect, tolerance });
        }
    }
    Ok((h1, h2))
}

/// `P = diag(p₁, p₂)` mapping `h_eff` to the decoupled real form.
pub fn p_transform(p: &QdotParams) -> Result<ComplexMatrix> {
    p.require_detuning()?;
    if p.t2 == 0.0 || p.t3 == 0.0 {
        return Err(Error::InvalidParameter("t2 and t3 must be nonzero".into()));
    }
    let r1 = radicand_root("-3 deltaL^2 - 2 epsilon deltaL + 4 t3^2", p.radicand_left())?;
    let r2 = radicand_root("deltaR^2 - 2 epsilon deltaR + 4 t2^2", p.radicand_right())?;
    let p1 = [
        [c64(0.0, r1 / (2.0 * p.t3)), c64(-(3.0 * p.delta_l + 2.0 * p.epsilon) / (2.0 * p.t3), 0.0)],
        [c64(0.0, 0.0), c64(1.0, 0.0)],
    ];
    let p2 = [
        [c64(0.0, r2 / (2.0 * p.t2)), c64((p.delta_r - 2.0 * p.epsilon) / (2.0 * p.t2), 0.0)],
        [c64(0.0, 0.0), c64(1.0, 0.0)],
    ];
    Ok(block_diag(
        &ComplexMatrix::from_rows(&p1)?,
        &ComplexMatrix::from_rows(&p2)?,
    ))
}

/// `𝔥 = P h_eff P⁻¹`.
pub fn block_diagonalize(p: &QdotParams) -> Result<ComplexMatrix> {
    let (h1, h2) = hermitize_blocks(p)?;
    let pm = p_transform(p)?;
    Ok(&(&pm * &block_diag(&h1, &h2)) * &inverse(&pm)?)
}

/// `H_e` with `t₁ = t₄ = 0`: blocks `[[δL+ε/2, −t₃], [−t₃, −ε/2]]` and
/// `[[ε/2, −t₂], [−t₂, δR−ε/2]]`.
pub fn decoupled_form(p: &QdotParams) -> ComplexMatrix {
    build_he(&QdotParams { t1: 0.0, t4: 0.0, ..*p })
}

/// Exact and approximate levels at one detuning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QdotSpectrum {
    pub epsilon: f64,
    /// Ascending.
    pub exact: [f64; 4],
    /// The four large-detuning values, ascending.
    pub approx: [f64; 4],
    /// `|exact − approx|` per level divided by the level's normalisation.
    pub deviations: [f64; 4],
}

/// Exact and approximate spectra over `eps_grid`.
///
/// Level `l` pairs the `l`-th exact and approximate eigenvalues in ascending
/// order. Its deviation is normalised by `|exact_l|` at the grid point where
/// the gap between level `l` and its nearest neighbour is smallest, that is,
/// where the level goes through its avoided crossing.
pub fn sweep_compare(p: &QdotParams, eps_grid: &[f64], exec: Execution) -> Result<Vec<QdotSpectrum>> {
    if eps_grid.is_empty() {
        return Err(Error::InvalidParameter("detuning grid is empty".into()));
    }
    let raw = try_map(eps_grid, exec, |_, &e| {
        let q = p.at(e);
        Ok((e, exact_eigenvalues(&q)?, approx_eigenvalues(&q).sorted()))
    })?;

    let mut norm = [1.0; 4];
    for (level, n) in norm.iter_mut().enumerate() {
        let gap = |exact: &[f64; 4]| {
            let below = if level > 0 { exact[level] - exact[level - 1] } else { f64::INFINITY };
            let above = if level < 3 { exact[level + 1] - exact[level] } else { f64::INFINITY };
            below.min(above)
        };
        let at = raw
            .iter()
            .min_by(|a, b| gap(&a.1).total_cmp(&gap(&b.1)))
            .map(|r| r.1[level].abs())
            .unwrap_or(1.0);
        if at > 0.0 {
            *n = at;
        }
    }

    Ok(raw
        .into_iter()
        .map(|(epsilon, exact, approx)| {
            let deviations = std::array::from_fn(|l| (exact[l] - approx[l]).abs() / norm[l]);
            QdotSpectrum {
                epsilon,
                exact,
                approx,
                deviations,
            }
        })
        .collect())
}

/// Largest imaginary part among the quartic roots, a sanity check that the
/// characteristic polynomial of a symmetric matrix has real roots.
pub fn quartic_max_imag(p: &QdotParams) -> Result<f64> {
    let roots: Vec<C64> = polynomial_roots(&charpoly_coeffs(p))?;
    Ok(roots.iter().map(|r| r.im.abs()).fold(0.0, f64::max))
}
