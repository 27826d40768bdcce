//! Machine-readable reports: `{command, config, pair, checks}` with
//! rationals as exact strings.

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{format_q, Q};
use crate::error::Result;
use crate::pair::{restricted_roots, singular_kernels, SymmetricPair};
use crate::rootsys::restricted_root_type;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    EvidenceOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The claim being checked, by content.
    pub paper_ref: String,
    pub status: Status,
    pub details: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        claim: impl Into<String>,
        status: Status,
        details: Value,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            paper_ref: claim.into(),
            status,
            details,
            notes: Vec::new(),
        }
    }

    pub fn pass_if(
        name: impl Into<String>,
        claim: impl Into<String>,
        ok: bool,
        details: Value,
    ) -> Self {
        Self::new(
            name,
            claim,
            if ok { Status::Pass } else { Status::Fail },
            details,
        )
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub pair: Option<Value>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Value) -> Self {
        Report {
            command: command.into(),
            config,
            pair: None,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values serialize")
    }
}

pub fn q_str(x: &Q) -> String {
    format_q(x)
}

pub fn q_strs(xs: &[Q]) -> Vec<String> {
    xs.iter().map(format_q).collect()
}

/// Dimensions, rank, `dim R`, restricted root type and multiplicities.
pub fn pair_summary(pair: &SymmetricPair) -> Result<Value> {
    let data = restricted_roots(pair)?;
    let kernels = singular_kernels(pair, &data);
    let roots: Vec<Value> = data
        .positive
        .iter()
        .map(|r| json!({ "alpha": q_strs(&r.alpha), "multiplicity": r.p_alpha.dim().to_string() }))
        .collect();
    Ok(json!({
        "kind": pair.kind().to_string(),
        "dim_g": pair.g().dim().to_string(),
        "dim_k": pair.k().dim().to_string(),
        "dim_p": pair.dim_p().to_string(),
        "rank": pair.rank().to_string(),
        "dim_R": pair.dim_reduction_variety().to_string(),
        "root_type": restricted_root_type(pair)?,
        "positive_roots": roots,
        "singular_kernels": kernels.len().to_string(),
    }))
}
