//! Abstract root systems built from Gram matrices of simple roots, the
//! Coxeter-number table, the positive-root inequality, and the abelian
//! root-set data behind the maximal commutative nilpotent subalgebras.

mod abelian;
mod realize;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub use abelian::{
    automorphism_classes, infinite_orbit_summary, infinite_orbit_types, malcev_dimension,
    malcev_printed, max_abelian_root_sets, max_abelian_size, AbelianRootSet, AbelianSearch,
    MalcevSource, OrbitCriterionRow, ENUMERATE_DIMENSION_LIMIT, PRINTED_INFINITE_LIST,
};
pub use realize::{
    anticanonical_degrees, realize_abelian_set, realize_roots, restricted_root_type, BuiltRoots,
    FamilyDegree,
};

/// A root in simple-root coordinates.
pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan type such as `A3`, `E7`, `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "no root system of type {family:?}{rank}"
            )));
        }
        Ok(CartanType { family, rank })
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.family, Family::E | Family::F | Family::G)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse Cartan type {s:?}"));
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

/// Gram matrix of the simple roots, Bourbaki numbering, short roots of
/// squared length 2 in the non-simply-laced cases.
fn gram_matrix(t: CartanType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let mut g = vec![vec![0i64; r]; r];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    match t.family {
        Family::A => (1..r).for_each(|i| link(&mut g, i - 1, i, -1)),
        Family::B => {
            // alpha_1..alpha_{r-1} long, alpha_r short
            (0..r).for_each(|i| g[i][i] = 4);
            g[r - 1][r - 1] = 2;
            (1..r).for_each(|i| link(&mut g, i - 1, i, -2));
        }
        Family::C => {
            (1..r - 1).for_each(|i| link(&mut g, i - 1, i, -1));
            g[r - 1][r - 1] = 4;
            link(&mut g, r - 2, r - 1, -2);
        }
        Family::D => {
            (1..r - 1).for_each(|i| link(&mut g, i - 1, i, -1));
            link(&mut g, r - 3, r - 1, -1);
        }
        Family::E => {
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            (3..r).for_each(|i| link(&mut g, i - 1, i, -1));
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

/// Positive roots, Coxeter number and reflection data of a reduced root
/// system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    ctype: CartanType,
    gram: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
    coxeter: usize,
}

/// Enumerates positive roots by simple-root strings, level by level.
pub fn build_root_system(t: CartanType) -> Result<RootSystem> {
    let t = CartanType::new(t.family, t.rank)?;
    let r = t.rank;
    let gram = gram_matrix(t);
    let unit = |i: usize| -> Root {
        let mut v = vec![0; r];
        v[i] = 1;
        v
    };
    let mut positive: Vec<Root> = (0..r).map(unit).collect();
    let mut index: HashMap<Root, usize> = positive
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let mut level: Vec<Root> = positive.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..r {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if index.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - coroot_pairing(&gram, beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !index.contains_key(&up) {
                        index.insert(up.clone(), positive.len());
                        positive.push(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        level = next;
    }
    let n = 2 * positive.len();
    if !n.is_multiple_of(r) {
        return Err(Error::falsified(
            "Coxeter number",
            format!("{n} roots are not divisible by rank {r}"),
        ));
    }
    let coxeter = n / r;
    let rs = RootSystem {
        ctype: t,
        gram,
        positive,
        index,
        coxeter,
    };
    let top = rs.highest_root()?;
    if height(&top) + 1 != coxeter as i64 {
        return Err(Error::falsified(
            "Coxeter number",
            format!(
                "1 + height of the highest root is {}, roots/rank is {coxeter}",
                height(&top) + 1
            ),
        ));
    }
    Ok(rs)
}

fn coroot_pairing(gram: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    let s: i64 = beta.iter().zip(&gram[i]).map(|(c, g)| c * g).sum();
    2 * s / gram[i][i]
}

pub fn height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

impl RootSystem {
    pub fn ctype(&self) -> CartanType {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `(beta, gamma)` in the normalization of the Gram matrix.
    pub fn inner(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut s = 0;
        for (i, bi) in beta.iter().enumerate() {
            for (j, gj) in gamma.iter().enumerate() {
                s += bi * gj * self.gram[i][j];
            }
        }
        s
    }

    /// `<beta, alpha_i^vee>`
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        coroot_pairing(&self.gram, beta, i)
    }

    /// `a_ij = <alpha_j, alpha_i^vee>`
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| 2 * self.gram[i][j] / self.gram[i][i])
                    .collect()
            })
            .collect()
    }

    pub fn positive_index(&self, beta: &[i64]) -> Option<usize> {
        self.index.get(beta).copied()
    }

    pub fn is_root(&self, beta: &[i64]) -> bool {
        if self.index.contains_key(beta) {
            return true;
        }
        let neg: Root = beta.iter().map(|c| -c).collect();
        self.index.contains_key(&neg)
    }

    /// The unique root of maximal height; an error if it is not unique.
    pub fn highest_root(&self) -> Result<Root> {
        let top = self
            .positive
            .iter()
            .map(|b| height(b))
            .max()
            .expect("nonempty");
        let tops: Vec<&Root> = self.positive.iter().filter(|b| height(b) == top).collect();
        if tops.len() != 1 {
            return Err(Error::falsified(
                "highest root",
                format!("{} roots of maximal height", tops.len()),
            ));
        }
        Ok(tops[0].clone())
    }

    pub fn reflect(&self, i: usize, beta: &[i64]) -> Root {
        let c = self.pairing(beta, i);
        let mut out = beta.to_vec();
        out[i] -= c;
        out
    }

    /// All roots: the positive ones in order, then their negatives.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut out = self.positive.clone();
        out.extend(
            self.positive
                .iter()
                .map(|b| b.iter().map(|c| -c).collect::<Root>()),
        );
        out
    }

    /// Permutations of the simple roots preserving the Gram matrix.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(r);
        let mut used = vec![false; r];
        self.extend_automorphism(&mut perm, &mut used, &mut out);
        out
    }

    fn extend_automorphism(
        &self,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = perm.len();
        if k == self.rank() {
            out.push(perm.clone());
            return;
        }
        for cand in 0..self.rank() {
            if used[cand]
                || (0..=k).any(|j| {
                    self.gram[k][j] != self.gram[cand][if j == k { cand } else { perm[j] }]
                })
            {
                continue;
            }
            used[cand] = true;
            perm.push(cand);
            self.extend_automorphism(perm, used, out);
            perm.pop();
            used[cand] = false;
        }
    }

    /// Closure of the root set under negation and the recorded sums.
    pub fn check_axioms(&self) -> Result<()> {
        let roots = self.all_roots();
        for b in &roots {
            for i in 0..self.rank() {
                if !self.is_root(&self.reflect(i, b)) {
                    return Err(Error::falsified(
                        "root system axioms",
                        format!("s_{i} {b:?} is not a root"),
                    ));
                }
            }
            let len = self.inner(b, b);
            for c in &roots {
                if len <= 0 || (2 * self.inner(b, c)) % len != 0 {
                    return Err(Error::falsified(
                        "root system axioms",
                        format!("non-integral pairing of {c:?} with {b:?}"),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Types whose Cartan matrix equals `a` up to renumbering, one per
/// connected component of the Dynkin diagram, in order of the least index
/// of each component.
pub fn identify_type(a: &[Vec<i64>]) -> Result<Vec<CartanType>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        let sub: Vec<Vec<i64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| a[i][j]).collect())
            .collect();
        let r = comp.len();
        let found = [
            Family::A,
            Family::C,
            Family::B,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ]
        .into_iter()
        .filter_map(|f| CartanType::new(f, r).ok())
        .find(|&t| {
            build_root_system(t)
                .map(|rs| matches_up_to_numbering(&sub, &rs.cartan_matrix()))
                .unwrap_or(false)
        });
        out.push(found.ok_or_else(|| {
            Error::falsified("Cartan matrix", format!("{sub:?} is of no finite type"))
        })?);
    }
    Ok(out)
}

fn matches_up_to_numbering(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    fn extend(a: &[Vec<i64>], b: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let k = perm.len();
        if k == a.len() {
            return true;
        }
        for c in 0..a.len() {
            if used[c]
                || (0..=k).any(|j| {
                    let pj = if j == k { c } else { perm[j] };
                    a[k][j] != b[c][pj] || a[j][k] != b[pj][c]
                })
            {
                continue;
            }
            used[c] = true;
            perm.push(c);
            if extend(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[c] = false;
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::new(), &mut vec![false; a.len()])
}

/// `(n/2, h, h + r - 1)` computed from the enumerated roots.
pub fn coxeter_row(t: CartanType) -> Result<(usize, usize, usize)> {
    let rs = build_root_system(t)?;
    let h = rs.coxeter_number();
    Ok((rs.num_positive(), h, h + t.rank - 1))
}

/// Row labels of the printed table of positive-root counts and Coxeter
/// numbers, in printed order.
pub const COXETER_ROW_LABELS: [&str; 9] = [
    "A_r", "B_r", "C_r", "D_r", "E_6", "E_7", "E_8", "F_4", "G_2",
];

/// The printed table entry for a type, formulas evaluated at the rank.
pub fn printed_coxeter_row(t: CartanType) -> (usize, usize, usize) {
    let r = t.rank;
    match (t.family, r) {
        (Family::A, _) => (r * (r + 1) / 2, r + 1, 2 * r),
        (Family::B, _) | (Family::C, _) => (r * r, 2 * r, 3 * r - 1),
        (Family::D, _) => (r * (r - 1), 2 * r - 2, 3 * r - 3),
        (Family::E, 6) => (36, 12, 17),
        (Family::E, 7) => (63, 12, 18),
        (Family::E, 8) => (120, 30, 37),
        (Family::F, _) => (24, 12, 15),
        (Family::G, _) => (6, 6, 7),
        (Family::E, _) => unreachable!("validated rank"),
    }
}

/// The representative types of a printed row: classical rows at every
/// valid rank up to `max_rank`.
pub fn coxeter_row_types(label: &str, max_rank: usize) -> Result<Vec<CartanType>> {
    let fam = |f: Family, from: usize| {
        (from..=max_rank)
            .map(move |r| CartanType::new(f, r))
            .collect::<Result<Vec<_>>>()
    };
    match label {
        "A_r" => fam(Family::A, 1),
        "B_r" => fam(Family::B, 2),
        "C_r" => fam(Family::C, 2),
        "D_r" => fam(Family::D, 4),
        "E_6" => Ok(vec![CartanType::new(Family::E, 6)?]),
        "E_7" => Ok(vec![CartanType::new(Family::E, 7)?]),
        "E_8" => Ok(vec![CartanType::new(Family::E, 8)?]),
        "F_4" => Ok(vec![CartanType::new(Family::F, 4)?]),
        "G_2" => Ok(vec![CartanType::new(Family::G, 2)?]),
        _ => Err(Error::InvalidArgument(format!("unknown row {label:?}"))),
    }
}

/// Whether `n/2 <= h + r - 1` holds.
pub fn satisfies_inequality(row: (usize, usize, usize)) -> bool {
    row.0 <= row.2
}

/// Rank up to which classical families are enumerated in the inequality
/// scan. Beyond it the closed forms `n/2 - (h + r - 1)` equal
/// `r(r+1)/2 - 2r`, `r^2 - 3r + 1` and `r(r-1) - 3r + 3`, each increasing
/// and positive from rank 4 on, so no further type survives.
pub const SURVIVOR_SCAN_RANK: usize = 8;

/// All types with `n/2 <= h + r - 1`, with `C_2` identified with `B_2`.
pub fn inequality_survivors() -> Result<Vec<CartanType>> {
    let mut out = Vec::new();
    let mut types = Vec::new();
    for label in COXETER_ROW_LABELS {
        types.extend(coxeter_row_types(label, SURVIVOR_SCAN_RANK)?);
    }
    for t in types {
        if t.family == Family::C && t.rank == 2 {
            continue;
        }
        if satisfies_inequality(coxeter_row(t)?) {
            out.push(t);
        }
    }
    for r in SURVIVOR_SCAN_RANK + 1..=SURVIVOR_SCAN_RANK + 4 {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            let t = CartanType::new(f, r)?;
            let (n, _, bound) = printed_coxeter_row(t);
            if n <= bound {
                return Err(Error::falsified(
                    "closed-form monotonicity",
                    format!("{t} satisfies the inequality"),
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
