//! Machine-readable verification records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "normline.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `|rhs − lhs| ≤ tolerance`.
    Identity,
    /// `rhs − lhs ≥ −tolerance`.
    Inequality,
    /// Recorded only; always passes.
    Observation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub kind: CheckKind,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub details: BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn new(check: &str, kind: CheckKind, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = rhs - lhs;
        let pass = match kind {
            CheckKind::Identity => slack.abs() <= tolerance,
            CheckKind::Inequality => slack >= -tolerance,
            CheckKind::Observation => true,
        } && lhs.is_finite()
            && rhs.is_finite();
        VerificationReport {
            check: check.to_string(),
            kind,
            lhs,
            rhs,
            slack,
            tolerance,
            pass,
            seed: None,
            runtime_ms: None,
            details: BTreeMap::new(),
        }
    }

    pub fn identity(check: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(check, CheckKind::Identity, lhs, rhs, tolerance)
    }

    pub fn inequality(check: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(check, CheckKind::Inequality, lhs, rhs, tolerance)
    }

    /// A failed record for a check that could not be evaluated.
    pub fn error(check: &str, message: String) -> Self {
        let mut r = Self::new(check, CheckKind::Identity, f64::NAN, f64::NAN, 0.0);
        r.pass = false;
        r.details.insert("error".into(), message.into());
        r
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_detail(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    /// The same record with `rhs` scaled by `factor` and the verdict
    /// recomputed; used as a negative control.
    pub fn corrupted(&self, factor: f64) -> Self {
        let mut r = Self::new(&self.check, self.kind, self.lhs, self.rhs * factor, self.tolerance);
        r.seed = self.seed;
        r.runtime_ms = self.runtime_ms;
        r.details = self.details.clone();
        r.pass &= self.pass || self.kind == CheckKind::Observation;
        r
    }

    /// Fail an otherwise passing record, e.g. when a cross-check disagrees.
    pub fn fail(mut self, reason: &str) -> Self {
        self.pass = false;
        self.details.insert("failure".into(), reason.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub by_check: BTreeMap<String, (usize, usize)>,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut by_check: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for r in reports {
            let e = by_check.entry(r.check.clone()).or_default();
            if r.pass {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        let failed = reports.iter().filter(|r| !r.pass).count();
        Summary {
            schema: REPORT_SCHEMA.to_string(),
            total: reports.len(),
            passed: reports.len() - failed,
            failed,
            by_check,
        }
    }
}
