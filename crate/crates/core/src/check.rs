use serde::Serialize;

/// A named identity and how far it is from holding.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// Norm of the difference between both sides.
    pub residual: f64,
    /// Magnitude the residual is measured against (floored at 1).
    pub scale: f64,
    pub passed: bool,
}

impl Check {
    pub fn relative(&self) -> f64 {
        self.residual / self.scale
    }
}

/// A list of checks sharing one relative tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub tolerance: f64,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(tolerance: f64) -> Self {
        Self {
            tolerance,
            checks: Vec::new(),
        }
    }

    /// Records a check that passes iff `residual ≤ tolerance · max(1, scale)`.
    pub fn record(&mut self, name: impl Into<String>, residual: f64, scale: f64) {
        let scale = scale.max(1.0);
        self.checks.push(Check {
            name: name.into(),
            residual,
            scale,
            passed: residual <= self.tolerance * scale,
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn worst_relative(&self) -> f64 {
        self.checks.iter().map(Check::relative).fold(0.0, f64::max)
    }
}
