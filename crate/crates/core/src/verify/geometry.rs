use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use super::{cartan_conjugate, family_member, guarded, named_pair, random_p_element, VerifyConfig};
use crate::analysis::{
    all_signatures, centralizer_map, is_regular, jacobian_map, random_k_element,
    signature_representative,
};
use crate::arith::MatrixQ;
use crate::degeneration::{limit_plane, random_curve};
use crate::error::{Error, Result};
use crate::grassmann::{
    exterior_killing_value, is_anisotropic_subalgebra, maximal_linear_through, nilpotent_part,
    Plane,
};
use crate::lie::Element;
use crate::pair::{restricted_roots, SymmetricPair};
use crate::report::{CheckRecord, Status};
use crate::rootsys::anticanonical_degrees;

/// `(pair, expected dim R)`
const STRUCTURE_PAIRS: [(&str, usize); 6] = [
    ("sl2", 2),
    ("sl3", 6),
    ("sp4", 8),
    ("g2", 12),
    ("transpose3", 3),
    ("transpose4", 6),
];

pub fn check_structure(config: &VerifyConfig) -> CheckRecord {
    let (name, claim) = (
        "pair-structure",
        "theta is an involutive automorphism; [k,k] in k, [k,p] in p, [p,p] in k; c_p(a) = a; root-space bookkeeping; dim R = dim p - rank",
    );
    guarded(name, claim, || {
        let mut items = Vec::new();
        let mut all = true;
        for (label, expected) in STRUCTURE_PAIRS {
            if !config.full() && matches!(label, "sp4" | "g2") {
                continue;
            }
            let pair = named_pair(label)?;
            let (ok, v) = structure_of(&pair, label, expected)?;
            all &= ok;
            items.push(v);
        }
        Ok(CheckRecord::pass_if(
            name,
            claim,
            all,
            json!({ "pairs": items }),
        ))
    })
}

fn structure_of(pair: &SymmetricPair, label: &str, expected: usize) -> Result<(bool, Value)> {
    let g = pair.g();
    let n = g.dim();
    let th = pair.theta();
    let involutive = th.mul(th) == MatrixQ::identity(n);
    let automorphism = (0..n).all(|i| {
        (i + 1..n).all(|j| {
            th.mul_vec(&g.bracket(&g.basis_element(i), &g.basis_element(j)))
                == g.bracket(&th.col(i), &th.col(j))
        })
    });
    let (k, p) = (pair.k(), pair.p());
    let brackets = k.contains_subspace(&g.bracket_span(k, k))
        && p.contains_subspace(&g.bracket_span(k, p))
        && k.contains_subspace(&g.bracket_span(p, p));
    let self_centralizing = &pair.centralizer_p_of(pair.cartan()) == pair.cartan();
    let data = restricted_roots(pair)?;
    let sum_p: usize = data.positive.iter().map(|r| r.p_alpha.dim()).sum();
    let sum_k: usize = data.positive.iter().map(|r| r.k_alpha.dim()).sum();
    let bookkeeping =
        k.dim() + p.dim() == n && p.dim() == pair.rank() + sum_p && k.dim() == data.m.dim() + sum_k;
    let dim_r = pair.dim_reduction_variety();
    let derived = p.dim() - pair.rank();
    let ok = involutive
        && automorphism
        && brackets
        && self_centralizing
        && bookkeeping
        && dim_r == derived
        && derived == sum_p
        && dim_r == expected;
    Ok((
        ok,
        json!({
            "pair": label,
            "dim_g": n.to_string(),
            "dim_k": k.dim().to_string(),
            "dim_p": p.dim().to_string(),
            "rank": pair.rank().to_string(),
            "dim_m": data.m.dim().to_string(),
            "involutive": involutive,
            "automorphism": automorphism,
            "brackets": brackets,
            "cartan_self_centralizing": self_centralizing,
            "bookkeeping": bookkeeping,
            "dim_R": dim_r.to_string(),
            "root_multiplicity_sum": sum_p.to_string(),
            "expected_dim_R": expected.to_string(),
            "pass": ok,
        }),
    ))
}

const SMALL_PAIRS: [&str; 4] = ["sl2", "sl3", "transpose3", "transpose4"];

/// Tally of the special-reduction equivalence over a set of planes.
#[derive(Default)]
pub(crate) struct Equivalence {
    pub planes: usize,
    pub non_abelian: usize,
    pub special: usize,
    pub disagreements: usize,
    pub degenerate_cartans: usize,
}

impl Equivalence {
    /// `exterior Killing value = 0` iff the plane meets the nilpotent cone.
    pub fn record(&mut self, pair: &SymmetricPair, u: &Plane, is_cartan: bool) -> Result<()> {
        self.planes += 1;
        if !is_anisotropic_subalgebra(pair, u) {
            self.non_abelian += 1;
            return Ok(());
        }
        let vanishes = exterior_killing_value(pair, u).is_zero();
        let meets_nilpotents = nilpotent_part(pair, u)?.dim() > 0;
        if vanishes != meets_nilpotents {
            self.disagreements += 1;
        }
        if vanishes {
            self.special += 1;
        }
        if is_cartan && vanishes {
            self.degenerate_cartans += 1;
        }
        Ok(())
    }

    pub fn ok(&self) -> bool {
        self.non_abelian == 0 && self.disagreements == 0 && self.degenerate_cartans == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "planes": self.planes.to_string(),
            "non_abelian": self.non_abelian.to_string(),
            "special": self.special.to_string(),
            "disagreements": self.disagreements.to_string(),
            "degenerate_cartan_subspaces": self.degenerate_cartans.to_string(),
        })
    }
}

pub fn check_special_equivalence(config: &VerifyConfig) -> CheckRecord {
    let (name, claim) = (
        "special-reduction-equivalence",
        "an abelian plane has vanishing exterior Killing value iff it contains a nilpotent element; Cartan subspaces are nondegenerate",
    );
    guarded(name, claim, || {
        let mut rng = config.rng(name);
        let count = config.sizes().planes_per_pair;
        let mut items = Vec::new();
        let mut all = true;
        for label in SMALL_PAIRS {
            let pair = named_pair(label)?;
            let fams = maximal_linear_through(&pair, &mut rng, 1)?;
            let mut eq = Equivalence::default();
            let mut sources = [0usize; 4];
            for i in 0..count {
                let (u, is_cartan) = match i % 4 {
                    0 => (cartan_conjugate(&pair, &mut rng)?, true),
                    1 => {
                        // c(t) k a has the same limits as c(t) on k a
                        let a = Plane::from_subspace(&pair, pair.cartan())?;
                        let factors = rng.gen_range(1..=3);
                        (
                            limit_plane(&random_curve(&pair, &mut rng, factors)?, &a)?,
                            false,
                        )
                    }
                    2 => (family_member(&pair, &fams, &mut rng)?, false),
                    _ => (regular_centralizer(&pair, &mut rng)?, false),
                };
                sources[i % 4] += 1;
                eq.record(&pair, &u, is_cartan)?;
            }
            all &= eq.ok();
            let mut v = eq.to_json();
            v["pair"] = json!(label);
            v["sources"] = json!({
                "cartan_conjugates": sources[0].to_string(),
                "limit_planes": sources[1].to_string(),
                "family_members": sources[2].to_string(),
                "regular_centralizers": sources[3].to_string(),
            });
            items.push(v);
        }
        Ok(CheckRecord::pass_if(
            name,
            claim,
            all,
            json!({ "pairs": items }),
        ))
    })
}

/// `c_p(x)` for a random regular `x`.
fn regular_centralizer(pair: &SymmetricPair, rng: &mut impl Rng) -> Result<Plane> {
    centralizer_map(pair, &random_regular(pair, rng)?)
}

fn random_regular(pair: &SymmetricPair, rng: &mut impl Rng) -> Result<Element> {
    for _ in 0..64 {
        let x = random_p_element(pair, rng);
        if is_regular(pair, &x)? {
            return Ok(x);
        }
    }
    Err(Error::SearchExhausted(
        "no regular element among the samples".into(),
    ))
}

pub fn check_jacobian(config: &VerifyConfig) -> CheckRecord {
    let (name, claim) = (
        "jacobian-centralizer",
        "at a regular element the Jacobian wedge is the Pluecker vector of the centralizer",
    );
    guarded(name, claim, || {
        let mut rng = config.rng(name);
        let count = config.sizes().regular_elements;
        let mut items = Vec::new();
        let mut all = true;
        for label in ["sl2", "sl3"] {
            let pair = named_pair(label)?;
            let n = if label == "sl2" { 2 } else { 3 };
            let mut regular_reps = Vec::new();
            for sig in all_signatures(n) {
                let x = signature_representative(&pair, &sig)?;
                if is_regular(&pair, &x)? {
                    regular_reps.push((sig.to_string(), x));
                }
            }
            let (mut agree, mut zero_wedges, mut from_classes) = (0, 0, 0);
            for i in 0..count {
                let x: Element = if i % 2 == 0 {
                    random_regular(&pair, &mut rng)?
                } else {
                    from_classes += 1;
                    let (_, x0) = regular_reps
                        .choose(&mut rng)
                        .ok_or_else(|| Error::Unsupported("no regular class".into()))?;
                    let k = random_k_element(&pair, &mut rng, 3)?;
                    let x = k.mul_vec(x0);
                    if !is_regular(&pair, &x)? {
                        return Err(Error::falsified(
                            "conjugates of regular elements are regular",
                            pair.g().format_element(&x),
                        ));
                    }
                    x
                };
                let j = jacobian_map(&pair, &x)?;
                if j.is_zero() {
                    zero_wedges += 1;
                } else if j == centralizer_map(&pair, &x)?.plucker() {
                    agree += 1;
                }
            }
            all &= agree == count;
            items.push(json!({
                "pair": label,
                "elements": count.to_string(),
                "class_conjugates": from_classes.to_string(),
                "regular_classes": regular_reps.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>(),
                "proportional": agree.to_string(),
                "zero_wedges": zero_wedges.to_string(),
            }));
        }
        Ok(CheckRecord::pass_if(
            name,
            claim,
            all,
            json!({ "pairs": items }),
        ))
    })
}

/// `(pair, number of families)`
const FAMILY_PAIRS: [(&str, usize); 4] = [("sl3", 3), ("sp4", 4), ("g2", 6), ("transpose3", 3)];

pub fn check_linear_families(config: &VerifyConfig) -> CheckRecord {
    let (name, claim) = (
        "linear-families",
        "one maximal linear family through a Cartan subspace per positive restricted root up to proportionality; projective planes of anticanonical degree 3 for squares; families meet only at the base point",
    );
    guarded(name, claim, || {
        let mut rng = config.rng(name);
        let samples = config.sizes().family_samples;
        let mut items = Vec::new();
        let mut all = true;
        for (label, expected) in FAMILY_PAIRS {
            if !config.full() && matches!(label, "sp4" | "g2") {
                continue;
            }
            let pair = named_pair(label)?;
            let reduced = restricted_roots(&pair)?.reduced_positive().len();
            let fams = maximal_linear_through(&pair, &mut rng, samples)?;
            let degrees = anticanonical_degrees(&pair, &mut rng, samples)?;
            let square = !label.starts_with("transpose");
            let planes_ok = !square || degrees.iter().all(|d| d.dim == 2 && d.degree == 3);
            let ok = fams.families.len() == expected
                && reduced == expected
                && fams.members_abelian
                && fams.transversal
                && planes_ok;
            all &= ok;
            items.push(json!({
                "pair": label,
                "families": fams.families.len().to_string(),
                "reduced_positive_roots": reduced.to_string(),
                "expected": expected.to_string(),
                "members_abelian": fams.members_abelian,
                "transversal": fams.transversal,
                "degrees": degrees
                    .iter()
                    .map(|d| json!({
                        "alpha": d.alpha,
                        "dim": d.dim.to_string(),
                        "degree": d.degree.to_string(),
                        "multiplicity": d.multiplicity.to_string(),
                    }))
                    .collect::<Vec<_>>(),
                "pass": ok,
            }));
        }
        Ok(CheckRecord::new(
            name,
            claim,
            if all { Status::Pass } else { Status::Fail },
            json!({ "pairs": items }),
        ))
    })
}
