use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{build_root_system, CartanType, Family, Root, RootSystem};
use crate::error::{Error, Result};

/// A set of positive roots, no two of which sum to a root; indices into
/// [`RootSystem::positive_roots`], sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianRootSet(Vec<usize>);

impl AbelianRootSet {
    pub fn new(rs: &RootSystem, mut idx: Vec<usize>) -> Result<Self> {
        idx.sort_unstable();
        idx.dedup();
        let pos = rs.positive_roots();
        if let Some(&bad) = idx.iter().find(|&&i| i >= pos.len()) {
            return Err(Error::InvalidArgument(format!(
                "root index {bad} out of range"
            )));
        }
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let s: Root = pos[i].iter().zip(&pos[j]).map(|(x, y)| x + y).collect();
                if rs.is_root(&s) {
                    return Err(Error::InvalidArgument(format!(
                        "{:?} + {:?} is a root",
                        pos[i], pos[j]
                    )));
                }
            }
        }
        Ok(AbelianRootSet(idx))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn roots(&self, rs: &RootSystem) -> Vec<Root> {
        self.0
            .iter()
            .map(|&i| rs.positive_roots()[i].clone())
            .collect()
    }
}

/// Result of the exhaustive search for abelian root sets of maximal size.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianSearch {
    pub ctype: CartanType,
    pub max_size: usize,
    /// Number of abelian sets of positive roots of maximal size.
    pub maximal_sets: usize,
    /// One representative per Weyl-group class, in the order found.
    pub weyl_classes: Vec<AbelianRootSet>,
    /// Classes under the Weyl group extended by diagram automorphisms.
    pub automorphism_classes: usize,
    pub nodes: usize,
}

/// Classical root systems up to this many positive roots get their maximal
/// dimension by enumeration in [`malcev_dimension`]; exceptional ones
/// always do.
pub const ENUMERATE_DIMENSION_LIMIT: usize = 24;

/// Largest root system searched exhaustively (by number of positive roots).
pub const SEARCH_ROOT_LIMIT: usize = 128;

struct CliqueSearch<'a> {
    compat: &'a [u128],
    best: usize,
    found: Vec<Vec<usize>>,
    nodes: usize,
    budget: usize,
}

impl CliqueSearch<'_> {
    fn run(&mut self, clique: &mut Vec<usize>, mut cand: u128) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchExhausted(format!(
                "abelian root-set search exceeded {} nodes",
                self.budget
            )));
        }
        if cand == 0 {
            if clique.len() > self.best {
                self.best = clique.len();
                self.found.clear();
            }
            if clique.len() == self.best {
                self.found.push(clique.clone());
            }
            return Ok(());
        }
        while cand != 0 {
            if clique.len() + (cand.count_ones() as usize) < self.best {
                return Ok(());
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            clique.push(v);
            self.run(clique, cand & self.compat[v])?;
            clique.pop();
        }
        // the clique itself, with no further vertex added
        if clique.len() >= self.best && !clique.is_empty() {
            if clique.len() > self.best {
                self.best = clique.len();
                self.found.clear();
            }
            self.found.push(clique.clone());
        }
        Ok(())
    }
}

/// Permutation tables of the generators on the list of all roots.
fn generator_tables(rs: &RootSystem, with_automorphisms: bool) -> Vec<Vec<usize>> {
    let all = rs.all_roots();
    let index: HashMap<&Root, usize> = all.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut tables: Vec<Vec<usize>> = (0..rs.rank())
        .map(|i| all.iter().map(|b| index[&rs.reflect(i, b)]).collect())
        .collect();
    if with_automorphisms {
        for sigma in rs.diagram_automorphisms() {
            if sigma.iter().enumerate().all(|(i, &s)| i == s) {
                continue;
            }
            tables.push(
                all.iter()
                    .map(|b| {
                        let mut img = vec![0; b.len()];
                        for (j, &s) in sigma.iter().enumerate() {
                            img[s] = b[j];
                        }
                        index[&img]
                    })
                    .collect(),
            );
        }
    }
    tables
}

/// Partition of `sets` (sorted index lists into the root list) into orbits
/// of the group generated by `tables`; returns one representative per
/// orbit, in input order.
fn orbit_classes(sets: &[Vec<usize>], tables: &[Vec<usize>]) -> Vec<usize> {
    let members: HashMap<&Vec<usize>, usize> =
        sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut assigned = vec![false; sets.len()];
    let mut reps = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        reps.push(i);
        let mut seen: HashSet<Vec<usize>> = HashSet::from([s.clone()]);
        let mut queue = VecDeque::from([s.clone()]);
        while let Some(cur) = queue.pop_front() {
            if let Some(&k) = members.get(&cur) {
                assigned[k] = true;
            }
            for t in tables {
                let mut img: Vec<usize> = cur.iter().map(|&x| t[x]).collect();
                img.sort_unstable();
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
    }
    reps
}

/// All abelian sets of positive roots of maximal size, by branch and
/// bound on the graph of pairs whose sum is not a root.
fn maximum_sets(rs: &RootSystem, budget: usize) -> Result<(usize, Vec<Vec<usize>>, usize)> {
    let n = rs.num_positive();
    if n > SEARCH_ROOT_LIMIT {
        return Err(Error::SearchExhausted(format!(
            "{} has {n} positive roots, above the search limit {SEARCH_ROOT_LIMIT}",
            rs.ctype()
        )));
    }
    let pos = rs.positive_roots();
    let compat: Vec<u128> = (0..n)
        .map(|i| {
            let mut m = 0u128;
            for j in 0..n {
                let s: Root = pos[i].iter().zip(&pos[j]).map(|(x, y)| x + y).collect();
                if i != j && !rs.is_root(&s) {
                    m |= 1u128 << j;
                }
            }
            m
        })
        .collect();
    let mut search = CliqueSearch {
        compat: &compat,
        best: 0,
        found: Vec::new(),
        nodes: 0,
        budget,
    };
    let all = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    search.run(&mut Vec::new(), all)?;
    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok((search.best, found, search.nodes))
}

/// Maximal abelian sets of positive roots with their classes under simple
/// reflections (and diagram automorphisms).
pub fn max_abelian_root_sets(t: CartanType, budget: usize) -> Result<AbelianSearch> {
    let rs = build_root_system(t)?;
    let (max_size, found, nodes) = maximum_sets(&rs, budget)?;
    let weyl = orbit_classes(&found, &generator_tables(&rs, false));
    let auto = orbit_classes(&found, &generator_tables(&rs, true));
    let weyl_classes = weyl
        .iter()
        .map(|&i| AbelianRootSet::new(&rs, found[i].clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianSearch {
        ctype: t,
        max_size,
        maximal_sets: found.len(),
        weyl_classes,
        automorphism_classes: auto.len(),
        nodes,
    })
}

/// Size of the largest abelian set of positive roots, without classes.
pub fn max_abelian_size(t: CartanType, budget: usize) -> Result<usize> {
    Ok(maximum_sets(&build_root_system(t)?, budget)?.0)
}

/// Number of classes of maximal abelian root sets up to the Weyl group and
/// diagram automorphisms.
pub fn automorphism_classes(t: CartanType, budget: usize) -> Result<usize> {
    Ok(max_abelian_root_sets(t, budget)?.automorphism_classes)
}

/// The printed dimension of the maximal commutative nilpotent subalgebra,
/// where the printed statement covers the type.
pub fn malcev_printed(t: CartanType) -> Option<usize> {
    let r = t.rank;
    match (t.family, r) {
        (Family::A, r) if r > 2 => Some((r - 1) * (r - 1) / 4),
        (Family::B, 3) => Some(5),
        (Family::B, 4) => Some(7),
        (Family::B, r) if r > 4 => Some(r * (r - 1) / 2 + 1),
        (Family::C, r) => Some(r * (r + 1) / 2),
        (Family::D, r) => Some(r * (r - 1) / 2),
        (Family::E, 6) => Some(16),
        (Family::E, 7) => Some(29),
        (Family::E, 8) => Some(36),
        (Family::F, 4) => Some(9),
        (Family::G, 2) => Some(3),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MalcevSource {
    Enumerated,
    ClosedForm,
}

/// Closed forms used above the search limit; the `A_r` value is the one
/// confirmed by enumeration, `floor((r+1)^2/4)`.
fn malcev_closed_form(t: CartanType) -> Option<usize> {
    let r = t.rank;
    match t.family {
        Family::A => Some((r + 1) * (r + 1) / 4),
        Family::B if r >= 4 => Some(r * (r - 1) / 2 + 1),
        Family::C => Some(r * (r + 1) / 2),
        Family::D => Some(r * (r - 1) / 2),
        _ => None,
    }
}

/// Enumeration for exceptional types and small classical ones, closed
/// forms for larger classical types.
pub fn malcev_dimension(t: CartanType, budget: usize) -> Result<(usize, MalcevSource)> {
    let rs = build_root_system(t)?;
    if t.is_exceptional() || rs.num_positive() <= ENUMERATE_DIMENSION_LIMIT {
        return Ok((maximum_sets(&rs, budget)?.0, MalcevSource::Enumerated));
    }
    malcev_closed_form(t)
        .map(|m| (m, MalcevSource::ClosedForm))
        .ok_or_else(|| Error::Unsupported(format!("no dimension available for {t}")))
}

/// One line of the orbit-count criterion `r (m - r) > r - 2`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitCriterionRow {
    pub ctype: CartanType,
    pub m: usize,
    pub source: MalcevSource,
    pub lhs: i64,
    pub rhs: i64,
    pub infinite: bool,
}

/// The printed list of types with infinitely many orbits; classical
/// entries hold from the given rank on.
pub const PRINTED_INFINITE_LIST: [(Family, usize); 6] = [
    (Family::A, 5),
    (Family::B, 4),
    (Family::C, 5),
    (Family::D, 6),
    (Family::E, 7),
    (Family::E, 8),
];

/// Evaluates the criterion for every type of rank at most `max_rank`
/// except `A_1` (where the orbit-dimension bound does not apply) and
/// `C_2` (same as `B_2`).
pub fn infinite_orbit_types(max_rank: usize, budget: usize) -> Result<Vec<OrbitCriterionRow>> {
    let mut types = Vec::new();
    for r in 2..=max_rank {
        for f in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            if f == Family::C && r == 2 {
                continue;
            }
            if let Ok(t) = CartanType::new(f, r) {
                types.push(t);
            }
        }
    }
    types.sort();
    types
        .into_iter()
        .map(|t| {
            let (m, source) = malcev_dimension(t, budget)?;
            let r = t.rank as i64;
            let lhs = r * (m as i64 - r);
            let rhs = r - 2;
            Ok(OrbitCriterionRow {
                ctype: t,
                m,
                source,
                lhs,
                rhs,
                infinite: lhs > rhs,
            })
        })
        .collect()
}

/// Compresses rows into `(family, rank)` entries: a classical family
/// appears with the least rank from which every scanned rank satisfies
/// the criterion; exceptional types appear individually.
pub fn infinite_orbit_summary(rows: &[OrbitCriterionRow]) -> Vec<(Family, usize)> {
    let mut out = Vec::new();
    for f in [Family::A, Family::B, Family::C, Family::D] {
        let fam: Vec<&OrbitCriterionRow> = rows.iter().filter(|x| x.ctype.family == f).collect();
        let mut from = None;
        for row in fam.iter().rev() {
            if row.infinite {
                from = Some(row.ctype.rank);
            } else {
                break;
            }
        }
        if let Some(r) = from {
            out.push((f, r));
        }
    }
    for row in rows
        .iter()
        .filter(|x| x.ctype.is_exceptional() && x.infinite)
    {
        out.push((row.ctype.family, row.ctype.rank));
    }
    out
}
