//! Regular elements, the centralizer map, decomposition classes,
//! subvarieties of reductions and the Jacobian map.

use std::fmt;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::arith::{min_poly, q, MatrixQ, Subspace, Vector, Q};
use crate::error::{Error, Result};
use crate::grassmann::{is_anisotropic_subalgebra, Plane, PluckerVector};
use crate::lie::{exp_ad, jordan_chevalley_matrix, semisimple_part, Element};
use crate::pair::{
    centralizer_pair, make_cartesian_square, BaseAlgebra, DerivedMaps, PairKind, SymmetricPair,
};

/// A plane together with one of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidencePoint {
    pub plane: Plane,
    pub element: Element,
}

impl IncidencePoint {
    pub fn new(pair: &SymmetricPair, plane: Plane, element: Element) -> Result<Self> {
        if !plane.space().contains(&pair.to_p(&element)?) {
            return Err(Error::InvalidArgument("element is not in the plane".into()));
        }
        Ok(IncidencePoint { plane, element })
    }
}

/// `dim c_p(x) = rank`
pub fn is_regular(pair: &SymmetricPair, x: &[Q]) -> Result<bool> {
    pair.to_p(x)?;
    Ok(pair.centralizer_p(x).dim() == pair.rank())
}

/// `x -> c_p(x)` on regular elements.
pub fn centralizer_map(pair: &SymmetricPair, x: &[Q]) -> Result<Plane> {
    if !is_regular(pair, x)? {
        return Err(Error::NotRegular);
    }
    let c = pair.centralizer_p(x);
    let plane = Plane::from_subspace(pair, &c)?;
    if !is_anisotropic_subalgebra(pair, &plane) {
        return Err(Error::falsified(
            "centralizers of regular elements are abelian",
            pair.g().format_element(x),
        ));
    }
    Ok(plane)
}

/// True iff the plane contains the semisimple part of each basis element;
/// for abelian planes this is closure under the Chevalley–Jordan
/// decomposition, since `x -> x_s` is linear there.
pub fn is_cj_closed(pair: &SymmetricPair, u: &Plane) -> Result<bool> {
    for x in u.basis_g(pair) {
        let s = semisimple_part(pair.g(), &x)?;
        if !u.space().contains(&pair.to_p(&s)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `n` when the pair is the Cartesian square of `sl_n`.
pub fn sl_square_degree(pair: &SymmetricPair) -> Option<usize> {
    match pair.kind() {
        PairKind::CartesianSquare(BaseAlgebra::Sl(n)) => Some(*n),
        _ => None,
    }
}

fn require_sl_square(pair: &SymmetricPair) -> Result<usize> {
    sl_square_degree(pair).ok_or_else(|| {
        Error::Unsupported(format!(
            "only Cartesian squares of sl_n are supported, got {}",
            pair.kind()
        ))
    })
}

/// `X` for `x = (X, -X)` in the square of `sl_n`.
pub fn first_factor_matrix(pair: &SymmetricPair, x: &[Q]) -> Result<MatrixQ> {
    let n = require_sl_square(pair)?;
    let m = pair.g().realize(x)?;
    let idx: Vec<usize> = (0..n).collect();
    Ok(m.submatrix(&idx, &idx))
}

/// `(X, -X)` for a traceless `X`.
pub fn from_first_factor(pair: &SymmetricPair, x: &MatrixQ) -> Result<Element> {
    require_sl_square(pair)?;
    let m = x.direct_sum(&x.scale(&q(-1)));
    pair.g()
        .coords_of_matrix(&m)?
        .ok_or_else(|| Error::InvalidArgument("matrix is not traceless".into()))
}

/// Data of a decomposition class in the square of `sl_n`: for each
/// eigenvalue of `x_s`, its multiplicity and the Jordan type of `x_n` on the
/// eigenspace; eigenvalues themselves are forgotten.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DecompositionSignature {
    pub n: usize,
    /// `(multiplicity, partition)`, sorted decreasingly.
    pub blocks: Vec<(usize, Vec<usize>)>,
}

impl fmt::Display for DecompositionSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(m, p)| {
                format!(
                    "{m}:({})",
                    p.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl DecompositionSignature {
    pub fn new(n: usize, mut blocks: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        for (m, p) in &mut blocks {
            p.sort_by(|a, b| b.cmp(a));
            if p.iter().sum::<usize>() != *m {
                return Err(Error::InvalidArgument(
                    "Jordan partition does not fill its block".into(),
                ));
            }
        }
        if blocks.iter().map(|(m, _)| m).sum::<usize>() != n {
            return Err(Error::InvalidArgument(
                "multiplicities do not sum to n".into(),
            ));
        }
        blocks.sort_by(|a, b| b.cmp(a));
        Ok(DecompositionSignature { n, blocks })
    }

    pub fn is_zero_class(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].1.iter().all(|&p| p == 1)
    }
}

/// Jordan type of a nilpotent `nil` on an invariant subspace `v`.
fn jordan_type_on(nil: &MatrixQ, v: &Subspace) -> Vec<usize> {
    let mut kernel_dims = vec![0usize];
    let mut power = MatrixQ::identity(nil.rows());
    while *kernel_dims.last().unwrap() < v.dim() {
        power = power.mul(nil);
        kernel_dims.push(Subspace::kernel_of(&power).intersect(v).dim());
    }
    // at_least[k] = number of blocks of size > k
    let at_least: Vec<usize> = kernel_dims.windows(2).map(|w| w[1] - w[0]).collect();
    let mut parts = Vec::new();
    for (k, &c) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, c - next));
    }
    parts.sort_by(|a, b| b.cmp(a));
    parts
}

pub fn decomposition_signature(pair: &SymmetricPair, x: &[Q]) -> Result<DecompositionSignature> {
    let n = require_sl_square(pair)?;
    let xm = first_factor_matrix(pair, x)?;
    let (s, nil) = jordan_chevalley_matrix(&xm)?;
    let mut blocks = Vec::new();
    for lambda in min_poly(&s)?.rational_roots()? {
        let v = Subspace::kernel_of(&s.sub(&MatrixQ::identity(n).scale(&lambda)));
        blocks.push((v.dim(), jordan_type_on(&nil, &v)));
    }
    DecompositionSignature::new(n, blocks)
}

/// `a >= b` in the dominance order of partitions of the same size.
pub fn dominates(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

/// Index-wise sum of partitions (induction of nilpotent orbits from a Levi).
fn induced(parts: &[&Vec<usize>]) -> Vec<usize> {
    let len = parts.iter().map(|p| p.len()).max().unwrap_or(0);
    (0..len)
        .map(|i| parts.iter().map(|p| p.get(i).copied().unwrap_or(0)).sum())
        .collect()
}

/// Whether the class `d0` lies in the closure of `d1`: the blocks of `d1`
/// can be grouped onto the blocks of `d0` with matching multiplicities so
/// that each Jordan type of `d0` is dominated by the induced type of its
/// group.
pub fn in_closure(d0: &DecompositionSignature, d1: &DecompositionSignature) -> bool {
    if d0.n != d1.n {
        return false;
    }
    fn assign(
        d0: &DecompositionSignature,
        d1: &DecompositionSignature,
        k: usize,
        groups: &mut Vec<Vec<usize>>,
        fill: &mut Vec<usize>,
    ) -> bool {
        if k == d1.blocks.len() {
            return d0.blocks.iter().enumerate().all(|(i, (m, lambda))| {
                fill[i] == *m && {
                    let members: Vec<&Vec<usize>> =
                        groups[i].iter().map(|&j| &d1.blocks[j].1).collect();
                    dominates(&induced(&members), lambda)
                }
            });
        }
        for i in 0..d0.blocks.len() {
            if fill[i] + d1.blocks[k].0 > d0.blocks[i].0 {
                continue;
            }
            fill[i] += d1.blocks[k].0;
            groups[i].push(k);
            if assign(d0, d1, k + 1, groups, fill) {
                return true;
            }
            groups[i].pop();
            fill[i] -= d1.blocks[k].0;
        }
        false
    }
    let mut groups = vec![Vec::new(); d0.blocks.len()];
    let mut fill = vec![0; d0.blocks.len()];
    assign(d0, d1, 0, &mut groups, &mut fill)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Genericity {
    MoreGeneral,
    LessGeneral,
    Equal,
    Incomparable,
}

/// Relation of `s1` to `s2` in the closure order of decomposition classes.
pub fn signature_genericity(
    s1: &DecompositionSignature,
    s2: &DecompositionSignature,
) -> Genericity {
    if s1 == s2 {
        return Genericity::Equal;
    }
    match (in_closure(s2, s1), in_closure(s1, s2)) {
        (true, false) => Genericity::MoreGeneral,
        (false, true) => Genericity::LessGeneral,
        (true, true) => Genericity::Equal,
        (false, false) => Genericity::Incomparable,
    }
}

/// All decomposition signatures for `sl_n`.
pub fn all_signatures(n: usize) -> Vec<DecompositionSignature> {
    fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for mults in partitions(n, n) {
        let choices: Vec<Vec<Vec<usize>>> = mults.iter().map(|&m| partitions(m, m)).collect();
        let mut idx = vec![0usize; mults.len()];
        loop {
            let blocks = mults
                .iter()
                .zip(&idx)
                .enumerate()
                .map(|(b, (&m, &i))| (m, choices[b][i].clone()))
                .collect();
            out.push(DecompositionSignature::new(n, blocks).expect("valid by construction"));
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Element of the class: Jordan blocks of the given types on eigenvalues
/// `1, 2, ...` with the last eigenvalue chosen to make the trace vanish.
pub fn signature_representative(
    pair: &SymmetricPair,
    sig: &DecompositionSignature,
) -> Result<Element> {
    let n = require_sl_square(pair)?;
    if sig.n != n {
        return Err(Error::InvalidArgument(format!(
            "signature for sl_{} used in sl_{n}",
            sig.n
        )));
    }
    let b = sig.blocks.len();
    let mut eigen: Vec<Q> = (0..b.saturating_sub(1)).map(|i| q(i as i64 + 1)).collect();
    let partial: Q = eigen
        .iter()
        .zip(&sig.blocks)
        .map(|(l, (m, _))| l * q(*m as i64))
        .sum();
    eigen.push(-partial / q(sig.blocks[b - 1].0 as i64));
    let mut m = MatrixQ::zeros(n, n);
    let mut pos = 0;
    for ((_, parts), lambda) in sig.blocks.iter().zip(&eigen) {
        for &size in parts {
            for i in 0..size {
                m[(pos + i, pos + i)] = lambda.clone();
                if i + 1 < size {
                    m[(pos + i, pos + i + 1)] = Q::one();
                }
            }
            pos += size;
        }
    }
    from_first_factor(pair, &m)
}

/// Random element of the fixed group, as a product of `exp(ad(c y))` for
/// nilpotent generators `y` of `k`; acts on coordinates of `g`.
pub fn random_k_element(
    pair: &SymmetricPair,
    rng: &mut impl Rng,
    factors: usize,
) -> Result<MatrixQ> {
    let gens: Vec<Element> = pair
        .k_nilpotent_generators()?
        .into_iter()
        .flat_map(|(_, v)| v)
        .collect();
    let mut acc = MatrixQ::identity(pair.g().dim());
    for _ in 0..factors {
        let y = gens.choose(rng).expect("pair has nilpotent generators");
        let c = q(rng.gen_range(-2..=2));
        let y: Vector = y.iter().map(|v| v * &c).collect();
        acc = exp_ad(pair.g(), &y)?.mul(&acc);
    }
    Ok(acc)
}

/// Reductions containing a fixed subspace `ã` of the Cartan subspace, via
/// the pair `(c_g(ã), theta)`.
#[derive(Clone, Debug)]
pub struct SubvarietyOfReductions {
    pub anchor: Subspace,
    pub pair: SymmetricPair,
    /// `c_g(ã)` inside `g`; its echelon basis gives the coordinates of `pair`.
    pub centralizer: Subspace,
    pub maps: DerivedMaps,
}

pub fn make_subvariety(pair: &SymmetricPair, anchor: &Subspace) -> Result<SubvarietyOfReductions> {
    let (sub, incl) = centralizer_pair(pair, anchor)?;
    if sub.rank() != pair.rank() {
        return Err(Error::falsified(
            "centralizer pair has the ambient rank",
            format!("{} vs {}", sub.rank(), pair.rank()),
        ));
    }
    let centralizer = Subspace::span(pair.g().dim(), &incl.col_vecs());
    let maps = DerivedMaps::new(&sub);
    Ok(SubvarietyOfReductions {
        anchor: anchor.clone(),
        pair: sub,
        centralizer,
        maps,
    })
}

impl SubvarietyOfReductions {
    /// `u ⊃ ã`
    pub fn contains(&self, ambient: &SymmetricPair, u: &Plane) -> bool {
        u.to_subspace(ambient).contains_subspace(&self.anchor)
    }

    /// The plane in coordinates of the centralizer pair.
    pub fn to_sub_plane(&self, ambient: &SymmetricPair, u: &Plane) -> Result<Plane> {
        let vs: Vec<Element> = u
            .basis_g(ambient)
            .iter()
            .map(|x| {
                self.centralizer
                    .coords(x)
                    .ok_or_else(|| Error::InvalidArgument("plane leaves the centralizer".into()))
            })
            .collect::<Result<_>>()?;
        Plane::from_basis(&self.pair, &vs)
    }

    pub fn from_sub_plane(&self, ambient: &SymmetricPair, v: &Plane) -> Result<Plane> {
        let xs: Vec<Element> = v
            .basis_g(&self.pair)
            .iter()
            .map(|c| self.centralizer.combine(c))
            .collect();
        Plane::from_basis(ambient, &xs)
    }
}

/// Wedge of the Killing-gradients of the characteristic polynomial
/// coefficients `c_2, ..., c_n` at `x`, in coordinates of `p`.
pub fn jacobian_map(pair: &SymmetricPair, x: &[Q]) -> Result<PluckerVector> {
    let n = require_sl_square(pair)?;
    let xm = first_factor_matrix(pair, x)?;
    let basis: Vec<MatrixQ> = pair
        .p()
        .basis()
        .iter()
        .map(|b| first_factor_matrix(pair, b))
        .collect::<Result<_>>()?;
    let g = pair.g();
    let gram = MatrixQ::from_rows(
        &pair
            .p()
            .basis()
            .iter()
            .map(|a| pair.p().basis().iter().map(|b| g.killing(a, b)).collect())
            .collect::<Vec<Vector>>(),
    );
    let gram_inv = gram.inverse()?;
    // Faddeev–LeVerrier: adj(tI - X) = sum_k M_k t^(n-k), d a_k = -tr(M_k dX).
    let id = MatrixQ::identity(n);
    let mut m_k = id.clone();
    let mut a_prev = Q::one();
    let mut rows = Vec::new();
    for k in 1..=n {
        if k > 1 {
            m_k = xm.mul(&m_k).add(&id.scale(&a_prev));
        }
        if k >= 2 {
            let covector: Vector = basis.iter().map(|b| -m_k.trace_of_product(b)).collect();
            rows.push(gram_inv.mul_vec(&covector));
        }
        a_prev = -xm.mul(&m_k).trace() / q(k as i64);
    }
    Ok(PluckerVector::from_rows(pair.dim_p(), &rows))
}

/// Outcome of the non-algebraic abelian plane construction.
#[derive(Clone, Debug)]
pub struct NonalgebraicWitness {
    pub pair: SymmetricPair,
    pub plane: Plane,
    pub abelian: bool,
    pub cj_closed: bool,
    pub dim_matches_rank: bool,
}

/// In the square of `sl_n`, `n >= 5`: `s = diag(1, ..., 1, -(n-1))` and an
/// abelian space of `E_ij` (`i <= a < j < n`, `a = (n-1)/2`) inside the
/// `sl_{n-1}` block give the abelian plane `span{s + m_1, m_2, ..., m_r}`,
/// which does not contain `s`.
pub fn nonalgebraic_witness(n: usize) -> Result<NonalgebraicWitness> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!(
            "the construction needs n >= 5, got {n}"
        )));
    }
    let pair = make_cartesian_square(BaseAlgebra::Sl(n))?;
    let r = n - 1;
    let a = (n - 1) / 2;
    let mut ms = Vec::new();
    for i in 0..a {
        for j in a..n - 1 {
            ms.push(MatrixQ::unit(n, i, j));
        }
    }
    if ms.len() < r {
        return Err(Error::Unsupported(format!(
            "abelian space of dimension {} < {r}",
            ms.len()
        )));
    }
    ms.truncate(r);
    let mut d = vec![q(1); n];
    d[n - 1] = q(-(n as i64 - 1));
    let s = MatrixQ::diagonal(&d);
    let mut basis = vec![from_first_factor(&pair, &s.add(&ms[0]))?];
    for m in &ms[1..] {
        basis.push(from_first_factor(&pair, m)?);
    }
    let plane = Plane::from_basis(&pair, &basis)?;
    let abelian = is_anisotropic_subalgebra(&pair, &plane);
    let cj_closed = is_cj_closed(&pair, &plane)?;
    let dim_matches_rank = plane.dim() == pair.rank();
    Ok(NonalgebraicWitness {
        pair,
        plane,
        abelian,
        cj_closed,
        dim_matches_rank,
    })
}

#[cfg(test)]
mod tests;
