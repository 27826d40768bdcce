//! The verification suite: one deterministic check per claim, assembled
//! into a [`Report`] sorted by check name.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::arith::{q, Vector};
use crate::error::{Error, Result};
use crate::grassmann::{LinearFamilies, Plane};
use crate::lie::Element;
use crate::pair::{make_transpose_pair, square_by_name, SymmetricPair};
use crate::report::{CheckRecord, Report, Status};

mod geometry;
mod limits;
mod tables;

pub use geometry::{
    check_jacobian, check_linear_families, check_special_equivalence, check_structure,
};
pub use limits::{
    check_anchored_subvarieties, check_descent_and_closure, check_rigidity, check_tempered_limits,
};
pub use tables::{check_coxeter_table, check_root_combinatorics};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Full,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Fast => "fast",
            Suite::Full => "full",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            other => Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected fast or full"
            ))),
        }
    }
}

/// Sample counts per check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sizes {
    pub planes_per_pair: usize,
    pub regular_elements: usize,
    pub limit_instances: usize,
    pub rigidity_runs: usize,
    pub anchor_curves: usize,
    pub family_samples: usize,
    pub descent_runs: usize,
    pub closure_samples: usize,
    pub search_budget: usize,
}

impl Suite {
    pub fn sizes(self) -> Sizes {
        match self {
            Suite::Fast => Sizes {
                planes_per_pair: 120,
                regular_elements: 24,
                limit_instances: 24,
                rigidity_runs: 12,
                anchor_curves: 4,
                family_samples: 2,
                descent_runs: 3,
                closure_samples: 2,
                search_budget: 50_000_000,
            },
            Suite::Full => Sizes {
                planes_per_pair: 1000,
                regular_elements: 100,
                limit_instances: 100,
                rigidity_runs: 50,
                anchor_curves: 12,
                family_samples: 4,
                descent_runs: 8,
                closure_samples: 6,
                search_budget: 50_000_000,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(suite: Suite, seed: u64) -> Self {
        VerifyConfig { suite, seed }
    }

    pub fn sizes(&self) -> Sizes {
        self.suite.sizes()
    }

    /// Independent stream per check, so checks can run in any order.
    pub fn rng(&self, check: &str) -> ChaCha8Rng {
        let h = check.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
        });
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    pub fn full(&self) -> bool {
        self.suite == Suite::Full
    }
}

pub type CheckFn = fn(&VerifyConfig) -> CheckRecord;

/// Every check with its name, in report order.
pub const CHECKS: [(&str, CheckFn); 10] = [
    ("anchored-subvarieties", check_anchored_subvarieties),
    ("coxeter-table", check_coxeter_table),
    ("descent-and-closure", check_descent_and_closure),
    ("jacobian-centralizer", check_jacobian),
    ("linear-families", check_linear_families),
    ("pair-structure", check_structure),
    ("rigidity", check_rigidity),
    ("root-combinatorics", check_root_combinatorics),
    ("special-reduction-equivalence", check_special_equivalence),
    ("tempered-limits", check_tempered_limits),
];

pub fn run_suite(config: &VerifyConfig) -> Report {
    let mut report = Report::new(
        "verify",
        json!({ "suite": config.suite.to_string(), "seed": config.seed.to_string() }),
    );
    for (_, f) in CHECKS {
        report.push(f(config));
    }
    report
}

/// Runs one check by name.
pub fn run_check(config: &VerifyConfig, name: &str) -> Option<CheckRecord> {
    CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| f(config))
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InsufficientBudget { .. } | Error::SearchExhausted(_) => "budget",
        Error::Falsified { .. } => "falsified",
        _ => "internal",
    }
}

/// Folds an error into a failing record that names the falsified claim.
pub(crate) fn guarded(
    name: &str,
    claim: &str,
    f: impl FnOnce() -> Result<CheckRecord>,
) -> CheckRecord {
    f().unwrap_or_else(|e| {
        CheckRecord::new(
            name,
            claim,
            Status::Fail,
            json!({ "error": e.to_string(), "error_kind": error_kind(&e) }),
        )
    })
}

/// 0 when every check passes, 3 when a failure came from an exhausted
/// budget, 1 otherwise.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        0
    } else if report.checks.iter().any(|c| {
        c.status == Status::Fail
            && c.details.get("error_kind").and_then(|v| v.as_str()) == Some("budget")
    }) {
        3
    } else {
        1
    }
}

pub(crate) fn named_pair(name: &str) -> Result<SymmetricPair> {
    match name.strip_prefix("transpose") {
        Some(n) => make_transpose_pair(n.parse().map_err(|_| Error::InvalidArgument(name.into()))?),
        None => square_by_name(name),
    }
}

/// `k a` for a random element `k` of the fixed group.
pub(crate) fn cartan_conjugate(pair: &SymmetricPair, rng: &mut impl Rng) -> Result<Plane> {
    conjugate(pair, &Plane::from_subspace(pair, pair.cartan())?, rng)
}

pub(crate) fn conjugate(pair: &SymmetricPair, u: &Plane, rng: &mut impl Rng) -> Result<Plane> {
    let k = crate::analysis::random_k_element(pair, rng, 2)?;
    let vs: Vec<Element> = u.basis_g(pair).iter().map(|x| k.mul_vec(x)).collect();
    Plane::from_basis(pair, &vs)
}

pub(crate) fn family_member(
    pair: &SymmetricPair,
    fams: &LinearFamilies,
    rng: &mut impl Rng,
) -> Result<Plane> {
    let f = fams
        .families
        .choose(rng)
        .ok_or_else(|| Error::Unsupported("no linear families".into()))?;
    let u = f.sample(rng);
    conjugate(pair, &u, rng)
}

pub(crate) fn random_p_element(pair: &SymmetricPair, rng: &mut impl Rng) -> Element {
    let c: Vector = (0..pair.dim_p())
        .map(|_| q(rng.gen_range(-3..=3)))
        .collect();
    pair.from_p(&c)
}
