use std::fmt;

use serde::Serialize;

pub const REPORT_SCHEMA: &str = "bmetric-verification/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Symbolic,
    Sampled,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Sampled => "sampled",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "sampled" => Ok(Mode::Sampled),
            other => Err(format!("unknown mode `{other}` (expected symbolic or sampled)")),
        }
    }
}

/// Theorem claims are proved statements and must hold; table claims compare
/// printed values against the engine and may disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    Theorem,
    Table,
}

impl ClaimKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimKind::Theorem => "theorem",
            ClaimKind::Table => "table",
        }
    }
}

/// Ordered from best to worst so that `max` aggregates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    VerifiedExact,
    Discrepancy,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::VerifiedExact => "verified-exact",
            Status::Discrepancy => "discrepancy",
            Status::Failed => "failed",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Detail {
    pub label: String,
    pub value: String,
}

impl Detail {
    pub fn new(label: impl Into<String>, value: impl ToString) -> Self {
        Detail {
            label: label.into(),
            value: value.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimItem {
    pub id: String,
    pub kind: ClaimKind,
    pub anchor: String,
    pub status: Status,
    pub details: Vec<Detail>,
}

impl ClaimItem {
    pub fn detail(&self, label: &str) -> Option<&str> {
        self.details
            .iter()
            .find(|d| d.label == label)
            .map(|d| d.value.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub verified_exact: usize,
    pub discrepancy: usize,
    pub failed: usize,
    pub theorem_failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: String,
    pub mode: Mode,
    pub seed: u64,
    pub samples: usize,
    pub items: Vec<ClaimItem>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts the items by id and fills in the summary.
    pub fn assemble(mode: Mode, seed: u64, samples: usize, mut items: Vec<ClaimItem>) -> Self {
        items.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary {
            total: items.len(),
            ..Summary::default()
        };
        for item in &items {
            match item.status {
                Status::VerifiedExact => summary.verified_exact += 1,
                Status::Discrepancy => summary.discrepancy += 1,
                Status::Failed => summary.failed += 1,
            }
            if item.status == Status::Failed && item.kind == ClaimKind::Theorem {
                summary.theorem_failed += 1;
            }
        }
        VerificationReport {
            schema: REPORT_SCHEMA.to_string(),
            mode,
            seed,
            samples,
            items,
            summary,
        }
    }

    /// True when no theorem claim failed.
    pub fn passed(&self) -> bool {
        self.summary.theorem_failed == 0
    }

    pub fn item(&self, id: &str) -> Option<&ClaimItem> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "verification report ({}, mode {}, seed {}, samples {})\n\n",
            self.schema,
            self.mode.as_str(),
            self.seed,
            self.samples
        ));
        for item in &self.items {
            out.push_str(&format!(
                "[{:<14}] {:<7} {}\n    {}\n",
                item.status.as_str(),
                item.kind.as_str(),
                item.id,
                item.anchor
            ));
            for d in &item.details {
                out.push_str(&format!("    - {}: {}\n", d.label, d.value));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} claims: {} verified-exact, {} discrepancy, {} failed ({} theorem claims failed)\n",
            s.total, s.verified_exact, s.discrepancy, s.failed, s.theorem_failed
        ));
        out
    }
}
