//! Check-result records shared by the verification operations and the CLI
//! report writer.

use serde::Serialize;

/// One named residual check against a pinned tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub point: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(check: impl Into<String>, point: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        CheckResult {
            check: check.into(),
            point: point.into(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
        }
    }
}

pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.pass)
}

/// Largest residual in a batch, for one-line summaries.
pub fn worst(results: &[CheckResult]) -> f64 {
    results.iter().map(|r| r.residual).fold(0.0, f64::max)
}
