//! Generator matrices of `sl(2,R)` and `U_z(sl(2,R))` on the Fock truncation
//! `|0⟩..|d−1⟩`, plus the PT operator, the deformed Casimir and structural
//! checks of the algebra and its Hopf maps.

mod algebra;
mod hopf;
mod pt;

pub use algebra::{
    casimir_matrix, casimir_value, verify_casimir, verify_commutation, CommutationReport,
};
pub use hopf::{coproduct_images, verify_hopf_axioms, Coproduct};
pub use pt::{check_pt_symmetric, pt_transform, PtOperator};
pub(crate) use algebra::plus_commutator_rhs;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, C64};

/// Deformation `z`, weight `β` and truncation dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepSpec {
    pub z: f64,
    pub beta: f64,
    pub dim: usize,
}

impl RepSpec {
    pub fn new(z: f64, beta: f64, dim: usize) -> Result<Self> {
        let spec = Self { z, beta, dim };
        spec.validate()?;
        Ok(spec)
    }

    /// The irreducible representation of dimension `d`, which has `β = 1 − d`.
    pub fn irrep(z: f64, dim: usize) -> Self {
        Self {
            z,
            beta: 1.0 - dim as f64,
            dim,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidParameter("dim must be at least 1".into()));
        }
        if !self.z.is_finite() || !self.beta.is_finite() {
            return Err(Error::InvalidParameter("z and beta must be finite".into()));
        }
        Ok(())
    }

    /// True iff `β = 1 − d`, where the truncated space is an invariant block.
    pub fn is_irreducible(&self) -> bool {
        self.beta == 1.0 - self.dim as f64
    }
}

/// The three generators of one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorTriple {
    pub spec: RepSpec,
    pub j0: ComplexMatrix,
    pub jplus: ComplexMatrix,
    pub jminus: ComplexMatrix,
    /// False for the undeformed `L₀, L₊, L₋`.
    pub deformed: bool,
}

impl GeneratorTriple {
    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn z(&self) -> f64 {
        if self.deformed {
            self.spec.z
        } else {
            0.0
        }
    }

    pub fn is_irreducible(&self) -> bool {
        self.spec.is_irreducible()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "z": self.spec.z,
            "beta": self.spec.beta,
            "dim": self.spec.dim,
            "deformed": self.deformed,
            "irreducible": self.is_irreducible(),
            "J0": matrix_to_json(&self.j0),
            "Jplus": matrix_to_json(&self.jplus),
            "Jminus": matrix_to_json(&self.jminus),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |name: &str| {
            value
                .get(name)
                .ok_or_else(|| Error::Config(format!("missing field `{name}`")))
        };
        let number = |name: &str| {
            field(name)?
                .as_f64()
                .ok_or_else(|| Error::Config(format!("field `{name}` must be a number")))
        };
        let dim = field("dim")?
            .as_u64()
            .ok_or_else(|| Error::Config("field `dim` must be a positive integer".into()))?
            as usize;
        let spec = RepSpec::new(number("z")?, number("beta")?, dim)?;
        let deformed = field("deformed")
            .ok()
            .and_then(Value::as_bool)
            .unwrap_or(spec.z != 0.0);
        Ok(Self {
            spec,
            j0: matrix_from_json(field("J0")?, dim)?,
            jplus: matrix_from_json(field("Jplus")?, dim)?,
            jminus: matrix_from_json(field("Jminus")?, dim)?,
            deformed,
        })
    }
}

/// Row-major list of `[re, im]` pairs.
pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        m.as_slice()
            .iter()
            .map(|x| json!([x.re, x.im]))
            .collect(),
    )
}

pub fn matrix_from_json(value: &Value, dim: usize) -> Result<ComplexMatrix> {
    let entries = value
        .as_array()
        .ok_or_else(|| Error::Config("matrix must be an array of [re, im] pairs".into()))?;
    if entries.len() != dim * dim {
        return Err(Error::Config(format!(
            "matrix has {} entries, expected {}",
            entries.len(),
            dim * dim
        )));
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (k, e) in entries.iter().enumerate() {
        let pair = e.as_array().filter(|p| p.len() == 2);
        let (re, im) = match pair.map(|p| (p[0].as_f64(), p[1].as_f64())) {
            Some((Some(re), Some(im))) => (re, im),
            _ => return Err(Error::Config(format!("matrix entry {k} is not [re, im]"))),
        };
        m[(k / dim, k % dim)] = c64(re, im);
    }
    Ok(m)
}

/// `L₊ = −i a†`, `L₀ = 2a†a + β`, `L₋ = −i(a†a + β)a`, truncated to `d` states.
pub fn build_sl2_generators(spec: &RepSpec) -> Result<GeneratorTriple> {
    spec.validate()?;
    let d = spec.dim;
    let beta = spec.beta;
    let mut jplus = ComplexMatrix::zeros(d, d);
    let mut j0 = ComplexMatrix::zeros(d, d);
    let mut jminus = ComplexMatrix::zeros(d, d);
    for m in 0..d {
        let mf = m as f64;
        j0[(m, m)] = c64(2.0 * mf + beta, 0.0);
        if m + 1 < d {
            jplus[(m + 1, m)] = c64(0.0, -(mf + 1.0).sqrt());
        }
        if m >= 1 {
            jminus[(m - 1, m)] = c64(0.0, -mf.sqrt() * (mf - 1.0 + beta));
        }
    }
    Ok(GeneratorTriple {
        spec: *spec,
        j0,
        jplus,
        jminus,
        deformed: false,
    })
}

/// `(−2iz)^k / k! · √((m+k)!/m!)`.
fn ladder_coefficient(z: f64, m: usize, k: usize) -> C64 {
    let mut c = c64(1.0, 0.0);
    let step = c64(0.0, -2.0 * z);
    for j in 1..=k {
        c = c * step * ((m + j) as f64).sqrt() / j as f64;
    }
    c
}

/// The deformed generators on the Fock truncation. Every ket `|n⟩` with
/// `n ≥ d` is dropped; at `β = 1 − d` this is exact. At `z = 0` the result is
/// the undeformed triple.
pub fn build_deformed_generators(spec: &RepSpec) -> Result<GeneratorTriple> {
    let mut triple = build_sl2_generators(spec)?;
    let z = spec.z;
    if z == 0.0 {
        return Ok(triple);
    }
    let d = spec.dim;
    let beta = spec.beta;
    for m in 0..d {
        let mf = m as f64;
        for k in 1..d {
            let c = ladder_coefficient(z, m, k);
            let kf = k as f64;
            if m + k < d {
                triple.j0[(m + k, m)] += c * (2.0 * mf / (kf + 1.0) + beta / 2.0);
                triple.jminus[(m + k, m)] -= c * (z * beta * beta / 8.0);
            }
            if m >= 1 && m - 1 + k < d {
                let w = mf / (mf + kf).sqrt() * ((mf - 1.0) / (kf + 1.0) + beta / 2.0);
                triple.jminus[(m - 1 + k, m)] += c * c64(0.0, -w);
            }
        }
    }
    triple.deformed = true;
    Ok(triple)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_undeformed_entries() {
        let t = build_sl2_generators(&RepSpec::irrep(0.0, 2)).unwrap();
        assert_eq!(t.j0.diag(), vec![c64(-1.0, 0.0), c64(1.0, 0.0)]);
        assert_eq!(t.jplus[(1, 0)], c64(0.0, -1.0));
        assert_eq!(t.jminus[(0, 1)], c64(0.0, 1.0));
        assert_eq!(t.jminus[(1, 0)], c64(0.0, 0.0));
    }

    #[test]
    fn d2_deformed_entries() {
        let z = 0.7;
        let t = build_deformed_generators(&RepSpec::irrep(z, 2)).unwrap();
        let expect_minus =
            ComplexMatrix::from_rows(&[[c64(0.0, 0.0), c64(0.0, 1.0)], [c64(0.0, z * z / 4.0), c64(z, 0.0)]])
                .unwrap();
        let expect_zero =
            ComplexMatrix::from_rows(&[[c64(-1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, z), c64(1.0, 0.0)]])
                .unwrap();
        assert!(t.jminus.distance(&expect_minus) < 1e-15);
        assert!(t.j0.distance(&expect_zero) < 1e-15);
    }

    #[test]
    fn z_zero_matches_sl2_bitwise() {
        for d in 1..7 {
            let spec = RepSpec::new(0.0, -1.5, d).unwrap();
            assert_eq!(
                build_deformed_generators(&spec).unwrap(),
                build_sl2_generators(&spec).unwrap()
            );
        }
    }

    #[test]
    fn diagonal_of_j0() {
        let t = build_deformed_generators(&RepSpec::irrep(1.3, 3)).unwrap();
        assert_eq!(t.j0.diag(), vec![c64(-2.0, 0.0), c64(0.0, 0.0), c64(2.0, 0.0)]);
        assert!(t.jplus.is_strictly_lower_triangular());
    }

    #[test]
    fn json_round_trip() {
        let t = build_deformed_generators(&RepSpec::irrep(0.4, 3)).unwrap();
        let back = GeneratorTriple::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn irreducible_flag() {
        assert!(RepSpec::irrep(1.0, 4).is_irreducible());
        assert!(!RepSpec::new(1.0, -1.5, 4).unwrap().is_irreducible());
        assert!(RepSpec::new(1.0, -1.0, 0).is_err());
    }
}
