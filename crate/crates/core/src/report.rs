//! Pass/fail reports shared by the identity checks.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Which cell of the check failed, e.g. `g0=1 n=2 c=3 u^4`.
    pub cell: String,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub cells_checked: usize,
    /// In the check's deterministic cell order.
    pub mismatches: Vec<Mismatch>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            cells_checked: 0,
            mismatches: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }

    pub(crate) fn record(&mut self, cell: impl Into<String>, expected: String, found: String) {
        self.cells_checked += 1;
        if expected != found {
            self.mismatches.push(Mismatch {
                cell: cell.into(),
                expected,
                found,
            });
        }
    }

    pub(crate) fn merge(&mut self, other: CheckReport) {
        self.cells_checked += other.cells_checked;
        self.mismatches.extend(other.mismatches);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} cells, {} mismatches)",
            self.check,
            self.cells_checked,
            self.mismatches.len()
        )?;
        if let Some(m) = self.first_mismatch() {
            write!(
                f,
                "; first at {}: expected {}, found {}",
                m.cell, m.expected, m.found
            )?;
        }
        Ok(())
    }
}
