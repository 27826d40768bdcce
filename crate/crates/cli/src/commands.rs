use serde_json::{json, Value};

use redvar::analysis::is_cj_closed;
use redvar::arith::{format_q, parse_q, q, Vector, Q};
use redvar::degeneration::{
    curve_from_generators, limit_plane, magnitude_flag, non_adapted_basis, plucker_limit,
    rigidity_check, satisfies_wedge_additivity, tempered_limit, GroupCurve,
};
use redvar::error::Error;
use redvar::grassmann::{is_anisotropic_subalgebra, is_special_reduction, Plane, PluckerVector};
use redvar::lie::Element;
use redvar::pair::{make_transpose_pair, square_by_name, SymmetricPair};
use redvar::report::{pair_summary, q_strs, CheckRecord, Report, Status};
use redvar::rootsys::{
    build_root_system, inequality_survivors, infinite_orbit_summary, infinite_orbit_types,
    malcev_dimension, malcev_printed, max_abelian_root_sets, CartanType, Family, MalcevSource,
    ENUMERATE_DIMENSION_LIMIT, PRINTED_INFINITE_LIST, SURVIVOR_SCAN_RANK,
};
use redvar::verify::{check_coxeter_table, run_check, run_suite, Suite, VerifyConfig, CHECKS};

use crate::{DegenerateSpec, PairSpec, RootsSpec, Stage, StageError};

type Out = Result<Report, StageError>;

fn usage(msg: String) -> StageError {
    StageError {
        stage: "arguments",
        error: Error::InvalidArgument(msg),
    }
}

fn build_pair(
    square: &Option<String>,
    transpose: Option<usize>,
) -> Result<SymmetricPair, StageError> {
    match (square, transpose) {
        (Some(name), None) => square_by_name(name).stage("pair construction"),
        (None, Some(n)) => make_transpose_pair(n).stage("pair construction"),
        _ => Err(usage("give exactly one of --square and --transpose".into())),
    }
}

fn pair_echo(square: &Option<String>, transpose: Option<usize>) -> Value {
    match (square, transpose) {
        (Some(s), _) => json!({ "square": s }),
        (_, Some(n)) => json!({ "transpose": n.to_string() }),
        _ => Value::Null,
    }
}

pub fn pair(spec: &PairSpec) -> Out {
    let pair = build_pair(&spec.square, spec.transpose)?;
    let mut report = Report::new("pair", pair_echo(&spec.square, spec.transpose));
    report.pair = Some(pair_summary(&pair).stage("restricted roots")?);
    Ok(report)
}

/// `c*label + c*label`, as printed by the algebra.
fn parse_element(pair: &SymmetricPair, s: &str) -> Result<Element, StageError> {
    let mut terms: Vec<(String, Q)> = Vec::new();
    for t in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (c, label) = match t.split_once('*') {
            Some((c, l)) => (parse_q(c).map_err(|e| usage(e.to_string()))?, l.trim()),
            None => match t.strip_prefix('-') {
                Some(l) => (q(-1), l.trim()),
                None => (q(1), t),
            },
        };
        if pair.g().label_index(label).is_none() {
            return Err(usage(format!("unknown basis label {label:?}")));
        }
        terms.push((label.to_string(), c));
    }
    if terms.is_empty() {
        return Err(usage(format!("empty element {s:?}")));
    }
    let refs: Vec<(&str, Q)> = terms.iter().map(|(l, c)| (l.as_str(), c.clone())).collect();
    pair.g().element(&refs).stage("arguments")
}

fn parse_vector(s: &str, n: usize) -> Result<Vector, StageError> {
    let v: Vector = s
        .split(',')
        .map(|c| parse_q(c).map_err(|e| usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(usage(format!(
            "vector {s:?} has {} coordinates, expected {n}",
            v.len()
        )));
    }
    Ok(v)
}

fn parts(s: &str) -> impl Iterator<Item = &str> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty())
}

fn plucker_json(p: &PluckerVector) -> Value {
    let entries: Vec<Value> = p
        .subsets
        .iter()
        .zip(&p.coords)
        .filter(|(_, c)| **c != q(0))
        .map(|(s, c)| json!({ "subset": s.iter().map(|i| i.to_string()).collect::<Vec<_>>(), "value": format_q(c) }))
        .collect();
    Value::Array(entries)
}

pub fn degenerate(spec: &DegenerateSpec) -> Out {
    let mut config = pair_echo(&spec.square, spec.transpose);
    if let Some(n) = spec.raw {
        config = json!({ "raw": n.to_string() });
    }
    config["plane"] = json!(spec.plane);
    config["curve"] = json!(spec.curve);
    config["diagonal"] = json!(spec.diagonal);
    let mut report = Report::new("degenerate", config);

    let (pair, curve, a1) = match spec.raw {
        Some(n) => {
            if spec.curve.is_some() {
                return Err(usage("raw mode takes --diagonal, not --curve".into()));
            }
            let curve = match &spec.diagonal {
                Some(d) => {
                    let e: Vec<i64> = d
                        .split(',')
                        .map(|x| {
                            x.trim()
                                .parse()
                                .map_err(|_| usage(format!("bad exponent {x:?}")))
                        })
                        .collect::<Result<_, _>>()?;
                    if e.len() != n {
                        return Err(usage(format!("{} exponents for dimension {n}", e.len())));
                    }
                    GroupCurve::diagonal(&e)
                }
                None => GroupCurve::identity(n),
            };
            let rows: Vec<Vector> = parts(&spec.plane)
                .map(|r| parse_vector(r, n))
                .collect::<Result<_, _>>()?;
            (None, curve, Plane::from_p_coords(n, &rows).stage("plane")?)
        }
        None => {
            if spec.diagonal.is_some() {
                return Err(usage("--diagonal needs --raw".into()));
            }
            let pair = build_pair(&spec.square, spec.transpose)?;
            let a1 = if spec.plane.trim() == "cartan" {
                Plane::from_subspace(&pair, pair.cartan()).stage("plane")?
            } else {
                let xs: Vec<Element> = parts(&spec.plane)
                    .map(|e| parse_element(&pair, e))
                    .collect::<Result<_, _>>()?;
                Plane::from_basis(&pair, &xs).stage("plane")?
            };
            let mut gens = Vec::new();
            for f in parts(spec.curve.as_deref().unwrap_or("")) {
                let (e, w) = f
                    .rsplit_once(':')
                    .ok_or_else(|| usage(format!("factor {f:?} needs `element : exponent`")))?;
                let w: i64 = w
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("bad exponent {w:?}")))?;
                gens.push((parse_element(&pair, e)?, w));
            }
            let curve = if gens.is_empty() {
                GroupCurve::identity(pair.dim_p())
            } else {
                curve_from_generators(&pair, &gens).stage("curve")?
            };
            report.pair = Some(pair_summary(&pair).stage("restricted roots")?);
            (Some(pair), curve, a1)
        }
    };

    let flag = magnitude_flag(&curve, &a1).stage("magnitude flag")?;
    let tempered = tempered_limit(&curve, &a1, None).stage("tempered frame")?;
    let oracle = plucker_limit(&curve, &a1).stage("Pluecker oracle")?;
    let limit = limit_plane(&curve, &a1).stage("limit plane")?;
    let format_plane = |u: &Plane| -> Vec<String> {
        match &pair {
            Some(p) => u
                .basis_g(p)
                .iter()
                .map(|x| p.g().format_element(x))
                .collect(),
            None => u.basis_p().iter().map(|x| q_strs(x).join(",")).collect(),
        }
    };
    let agree = limit.plucker() == oracle
        && tempered
            .plane
            .as_ref()
            .is_none_or(|p| p.plucker() == oracle);
    let mut details = json!({
        "magnitude_flag": {
            "jumps": flag.jumps.iter().map(|j| j.to_string()).collect::<Vec<_>>(),
            "level_dims": flag.levels.iter().map(|l| l.dim().to_string()).collect::<Vec<_>>(),
            "trivial": flag.is_trivial(),
        },
        "omega": tempered.orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
        "tempered": {
            "basis": tempered.basis.iter().map(|x| q_strs(x)).collect::<Vec<_>>(),
            "wedge_profile": tempered.profile.iter().map(|(w, s)| [w.to_string(), s.to_string()]).collect::<Vec<_>>(),
            "additive": tempered.is_additive(),
            "limit": tempered.plane.as_ref().map(&format_plane),
        },
        "oracle_pluecker": plucker_json(&oracle),
        "limit": format_plane(&limit),
        "wedge_order": tempered.profile.last().map(|p| p.0.to_string()),
    });
    report.push(CheckRecord::pass_if(
        "oracle-agreement",
        "tempered and reduction limits equal the Pluecker-valuation limit",
        agree,
        json!({}),
    ));
    let control = non_adapted_basis(&curve, &a1).stage("negative control")?;
    let triggered = match &control {
        Some(b) => Some(!satisfies_wedge_additivity(&curve, b).stage("negative control")?),
        None => None,
    };
    report.push(CheckRecord::pass_if(
        "negative-control",
        "a non-adapted basis breaks wedge additivity when the flag is nontrivial",
        triggered != Some(false),
        json!({ "applicable": triggered.is_some(), "triggered": triggered }),
    ));
    if let Some(pair) = &pair {
        if is_anisotropic_subalgebra(pair, &limit) {
            details["special"] =
                json!(is_special_reduction(pair, &limit, true).stage("special test")?);
        }
        if is_anisotropic_subalgebra(pair, &a1) && is_cj_closed(pair, &a1).stage("CJ closure")? {
            let (_, rep) = rigidity_check(pair, &curve, &a1).stage("rigidity")?;
            details["rigidity"] = json!({
                "limit_dim": rep.limit_dim.to_string(),
                "orders": rep.orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                "frame_additive": rep.frame_additive,
                "semisimple_span_dim": rep.semisimple_span_dim.to_string(),
                "exhibited_by_split_basis": rep.exhibited_by_split_basis,
                "nilpotent_limit": rep.nilpotent_limit,
            });
        }
    }
    report.push(CheckRecord::new(
        "limit",
        "limit of the plane along the arc",
        Status::EvidenceOnly,
        details,
    ));
    Ok(report)
}

fn parse_type(s: &str) -> Result<CartanType, StageError> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

const A_FORMULA_NOTE: &str = "the printed A_r value floor((r-1)^2/4) disagrees with enumeration, which gives floor((r+1)^2/4)";

pub fn roots(spec: &RootsSpec, budget: usize) -> Out {
    if spec.coxeter_table {
        let mut report = Report::new("roots --coxeter-table", json!({}));
        report.push(check_coxeter_table(&VerifyConfig::new(Suite::Fast, 0)));
        return Ok(report);
    }
    if spec.survivors {
        let mut report = Report::new("roots --survivors", json!({}));
        let s: Vec<String> = inequality_survivors()
            .stage("inequality scan")?
            .iter()
            .map(|t| t.to_string())
            .collect();
        let ok = s == ["A1", "A2", "A3", "B2", "G2"];
        report.push(CheckRecord::pass_if(
            "survivors",
            "types with n/2 <= h + r - 1",
            ok,
            json!({ "types": s, "scan_rank": SURVIVOR_SCAN_RANK.to_string() }),
        ));
        return Ok(report);
    }
    if spec.orbits {
        let mut report = Report::new("roots --orbits", json!({ "budget": budget.to_string() }));
        let rows = infinite_orbit_types(SURVIVOR_SCAN_RANK, budget).stage("abelian root search")?;
        let summary: Vec<String> = infinite_orbit_summary(&rows)
            .iter()
            .map(|(f, r)| format!("{f:?}{r}"))
            .collect();
        let rows_json: Vec<Value> = rows
            .iter()
            .map(|r| json!({ "type": r.ctype.to_string(), "m": r.m.to_string(), "source": r.source, "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "infinite": r.infinite }))
            .collect();
        let stated: Vec<String> = PRINTED_INFINITE_LIST
            .iter()
            .map(|(f, r)| format!("{f:?}{r}"))
            .collect();
        report.push(CheckRecord::new(
            "orbit-criterion",
            "types with r (m - r) > r - 2",
            Status::EvidenceOnly,
            json!({ "rows": rows_json, "summary": summary, "stated": stated }),
        ));
        return Ok(report);
    }
    if let Some(t) = &spec.malcev {
        let t = parse_type(t)?;
        let mut report = Report::new(
            "roots --malcev",
            json!({ "type": t.to_string(), "budget": budget.to_string() }),
        );
        let rs = build_root_system(t).stage("root system")?;
        let printed = malcev_printed(t);
        let mut details =
            json!({ "type": t.to_string(), "printed": printed.map(|m| m.to_string()) });
        let size = if rs.num_positive() <= ENUMERATE_DIMENSION_LIMIT || t.is_exceptional() {
            let s = max_abelian_root_sets(t, budget).stage("abelian root search")?;
            details["max_size"] = json!(s.max_size.to_string());
            details["maximal_sets"] = json!(s.maximal_sets.to_string());
            details["weyl_classes"] = json!(s.weyl_classes.len().to_string());
            details["automorphism_classes"] = json!(s.automorphism_classes.to_string());
            details["class_representatives"] = json!(s
                .weyl_classes
                .iter()
                .map(|c| c
                    .roots(&rs)
                    .iter()
                    .map(|b| b
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" "))
                    .collect::<Vec<_>>())
                .collect::<Vec<_>>());
            details["source"] = json!(MalcevSource::Enumerated);
            s.max_size
        } else {
            let (m, source) = malcev_dimension(t, budget).stage("abelian root search")?;
            details["max_size"] = json!(m.to_string());
            details["source"] = json!(source);
            m
        };
        let ok = printed.is_none_or(|p| p == size);
        let mut rec = CheckRecord::new(
            "malcev",
            "largest abelian sets of positive roots",
            if ok { Status::Pass } else { Status::Fail },
            details,
        );
        if t.family == Family::A && t.rank > 2 {
            rec = rec.with_note(A_FORMULA_NOTE);
        }
        if t == parse_type("B3")? {
            rec = rec.with_note("B3: the enumerated value governs");
        }
        report.push(rec);
        return Ok(report);
    }
    let t = parse_type(spec.ctype.as_deref().unwrap_or(""))?;
    let rs = build_root_system(t).stage("root system")?;
    let mut report = Report::new("roots", json!({ "type": t.to_string() }));
    let details = json!({
        "rank": t.rank.to_string(),
        "positive_roots": rs.num_positive().to_string(),
        "coxeter_number": rs.coxeter_number().to_string(),
        "highest_root": rs.highest_root().stage("root system")?.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "cartan_matrix": rs.cartan_matrix().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "diagram_automorphisms": rs.diagram_automorphisms().len().to_string(),
    });
    report.push(CheckRecord::pass_if(
        "root-system",
        "root system axioms",
        rs.check_axioms().is_ok(),
        details,
    ));
    Ok(report)
}

pub fn verify(suite: Suite, seed: u64, check: Option<&str>) -> Out {
    let config = VerifyConfig::new(suite, seed);
    match check {
        None => Ok(run_suite(&config)),
        Some(name) => {
            let rec = run_check(&config, name).ok_or_else(|| {
                let names: Vec<&str> = CHECKS.iter().map(|(n, _)| *n).collect();
                usage(format!(
                    "unknown check {name:?}; expected one of {}",
                    names.join(", ")
                ))
            })?;
            let mut report = Report::new(
                "verify",
                json!({ "suite": suite.to_string(), "seed": seed.to_string(), "check": name }),
            );
            report.push(rec);
            Ok(report)
        }
    }
}
