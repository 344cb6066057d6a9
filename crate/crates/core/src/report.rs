//! Report types: drawing-validation findings and identity-check tables.

use serde::Serialize;

/// How serious a validation finding is. `Error` findings make a drawing
/// unusable for the signed counting machinery; warnings are advisory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// A single finding produced by drawing validation.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub severity: Severity,
    /// Stable machine-readable code, e.g. `crossing`, `near-cusp`.
    pub code: String,
    pub message: String,
}

impl Finding {
    pub fn error(code: &str, message: String) -> Self {
        Finding {
            severity: Severity::Error,
            code: code.to_string(),
            message,
        }
    }

    pub fn warning(code: &str, message: String) -> Self {
        Finding {
            severity: Severity::Warning,
            code: code.to_string(),
            message,
        }
    }
}

/// Outcome of validating an embedded drawing.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn new(findings: Vec<Finding>) -> Self {
        let ok = findings.iter().all(|f| f.severity != Severity::Error);
        ValidationReport { ok, findings }
    }
}

/// One verified identity: both sides rendered, pass flag, and the first
/// coefficient index where the sides disagree (if any).
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub id: String,
    pub pass: bool,
    pub first_mismatch: Option<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl IdentityCheck {
    pub fn new(id: &str, pass: bool, first_mismatch: Option<usize>, lhs: String, rhs: String) -> Self {
        IdentityCheck {
            id: id.to_string(),
            pass,
            first_mismatch,
            lhs,
            rhs,
        }
    }
}

/// A batch of identity checks for one graph at one truncation order.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub graph: String,
    pub order: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn new(graph: &str, order: usize) -> Self {
        IdentityReport {
            graph: graph.to_string(),
            order,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: IdentityCheck) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.id.as_str())
            .collect()
    }
}
