//! Verification reports: the JSON output of one scenario run.

use serde::{Deserialize, Serialize};

use omega_lab_core::{Classification, Point};

/// Outcome of a single named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// What the check itself concluded.
    pub pass: bool,
    /// The verdict the scenario says this check should reach.
    pub expected: bool,
    /// `pass == expected`; the bit that drives the exit code.
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleSummary {
    pub is_single_cycle: bool,
    pub cycle_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Everything one scenario run produced. Pipeline fields are `None` when an
/// earlier stage failed; the failure itself lands in `error`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub map: String,
    pub orbit_len: usize,
    pub exact_orbit: Option<bool>,
    /// Size of the epsilon-net representing the omega-limit estimate.
    pub omega_size: Option<usize>,
    pub tail_size: Option<usize>,
    pub component_count: Option<usize>,
    pub induced_well_defined: Option<bool>,
    pub cycle: Option<CycleSummary>,
    pub classification: Option<Classification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hausdorff_to_target: Option<f64>,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Omitted under `--no-timing` so reports are byte-stable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl VerificationReport {
    /// True when the pipeline ran to completion and every check matched its
    /// expected verdict.
    pub fn all_ok(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// CSV dump of a point list: header `index,coord0,...`, one row per point,
/// short rows padded with empty cells. Floats print in Rust's shortest
/// round-trip form.
pub fn points_to_csv(points: &[Point]) -> String {
    let width = points
        .iter()
        .map(|p| p.dump_coords().len())
        .max()
        .unwrap_or(0);
    let mut out = String::from("index");
    for j in 0..width {
        out.push_str(&format!(",coord{j}"));
    }
    out.push('\n');
    for (i, p) in points.iter().enumerate() {
        out.push_str(&i.to_string());
        let coords = p.dump_coords();
        for j in 0..width {
            out.push(',');
            if let Some(c) = coords.get(j) {
                out.push_str(&format!("{c}"));
            }
        }
        out.push('\n');
    }
    out
}
