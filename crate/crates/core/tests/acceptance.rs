//! Runs every acceptance check of the full suite in sequence and prints one
//! line per criterion. Three criteria fail on documented discrepancies;
//! for those the run insists the failure is exactly the documented one.
//! Any other failure, an internal error or a blown time bound fails the
//! target.

use std::process::ExitCode;
use std::time::Instant;

use serde_json::Value;

use redvar::report::{CheckRecord, Status};
use redvar::verify::{run_check, Suite, VerifyConfig};

const SEED: u64 = 42;

/// `(check, time bound in seconds, claim)` in criterion order.
const CRITERIA: [(&str, f64, &str); 10] = [
    (
        "coxeter-table",
        1.0,
        "positive-root counts and Coxeter numbers of the nine rows",
    ),
    (
        "pair-structure",
        30.0,
        "structure of the six built pairs, dim R",
    ),
    (
        "special-reduction-equivalence",
        60.0,
        "vanishing exterior Killing value iff nilpotent elements",
    ),
    (
        "jacobian-centralizer",
        60.0,
        "Jacobian wedge equals the centralizer Pluecker vector",
    ),
    (
        "tempered-limits",
        120.0,
        "tempered frame equals the Pluecker oracle, wedge additivity",
    ),
    (
        "rigidity",
        120.0,
        "limits of Cartan subspaces are abelian, CJ-closed and rigid",
    ),
    (
        "anchored-subvarieties",
        60.0,
        "centralizer pairs of root-kernel anchors",
    ),
    (
        "linear-families",
        60.0,
        "maximal linear families through a Cartan subspace",
    ),
    (
        "root-combinatorics",
        300.0,
        "survivors, abelian root sets, orbit criterion, witness",
    ),
    (
        "descent-and-closure",
        300.0,
        "descent to nilpotent planes, class closure order",
    ),
];

fn s(v: &Value) -> &str {
    v.as_str().unwrap_or("")
}

/// The only failure allowed for a check, if any: returns `Some(reason)`
/// when the record fails in exactly the documented way.
fn documented_failure(rec: &CheckRecord) -> Option<&'static str> {
    let d = &rec.details;
    match rec.name.as_str() {
        "coxeter-table" => {
            let only_e7 = rec.notes.len() == 1 && rec.notes[0].starts_with("E7:");
            only_e7.then_some("printed E7 row has h = 12; the roots give 126 / 7 = 18")
        }
        "tempered-limits" => {
            let mut all = vec![&d["toys"]];
            all.extend(d["pairs"].as_array()?.iter());
            let only_additivity = all.iter().all(|p| {
                s(&p["reduction_equals_oracle"]) == s(&p["instances"])
                    && s(&p["tempered_equals_oracle"]) == s(&p["tempered_frame_is_basis"])
                    && s(&p["control_triggered"]) == s(&p["nontrivial_flags"])
                    && p.get("limit_plane_equivalence")
                        .is_none_or(|e| s(&e["disagreements"]) == "0")
            });
            let toys_ok = d["toys"]["expected_values"]["pass"] == Value::Bool(true);
            (only_additivity && toys_ok)
                .then_some("constant magnitude bases need not have additive wedge orders")
        }
        "root-combinatorics" => {
            let others = d["survivors"]["pass"] == Value::Bool(true)
                && d["infinite_orbits"]["pass"] == Value::Bool(true)
                && d["nonalgebraic_witness"]["pass"] == Value::Bool(true);
            let items = d["maximal_abelian_sets"]["items"].as_array()?;
            let only_g2_classes = items.iter().all(|i| {
                i["pass"] == Value::Bool(true)
                    || (s(&i["type"]) == "G2"
                        && s(&i["max_size"]) == "3"
                        && s(&i["weyl_classes"]) == "2")
            });
            (others && only_g2_classes)
                .then_some("G2 has two Weyl classes of maximal abelian root sets, not three")
        }
        _ => None,
    }
}

fn main() -> ExitCode {
    let config = VerifyConfig::new(Suite::Full, SEED);
    let mut ok = true;
    println!("acceptance: full suite, seed {SEED}");
    for (i, (name, bound, claim)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let rec = run_check(&config, name).expect("known check");
        let secs = start.elapsed().as_secs_f64();
        let status = match rec.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::EvidenceOnly => "EVIDENCE",
        };
        let mut verdict = String::new();
        if let Some(e) = rec.details.get("error") {
            ok = false;
            verdict = format!("  error: {e}");
        } else if rec.status == Status::Fail {
            match documented_failure(&rec) {
                Some(reason) => verdict = format!("  documented: {reason}"),
                None => {
                    ok = false;
                    verdict = "  UNEXPECTED".to_string();
                }
            }
        }
        if secs > *bound {
            ok = false;
            verdict.push_str("  OVER TIME BOUND");
        }
        println!(
            "{:>2} {status:<8} {name:<30} {secs:>7.2}s / {bound:>5.0}s  {claim}{verdict}",
            i + 1
        );
        for n in &rec.notes {
            println!("{:>12}note: {n}", "");
        }
    }
    if ok {
        println!("acceptance: every criterion passed or failed on its documented discrepancy");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome");
        ExitCode::FAILURE
    }
}
