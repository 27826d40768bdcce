//! Degeneration arcs in the fixed group: magnitude orders, tempered moving
//! frames and limits of planes, with the rigidity, descent and
//! class-closure harnesses built on them.
//!
//! Arcs are products `prod exp(t^e ad y)` of exponentials of nilpotent
//! elements of `k`, so every entry is a Laurent polynomial and every claim
//! below is decided exactly. The point at infinity is `t = 0`.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::analysis::{
    all_signatures, decomposition_signature, in_closure, is_cj_closed, random_k_element,
    signature_representative, sl_square_degree, DecompositionSignature,
};
use crate::arith::{
    is_zero_vec, q, qf, valuation_adapted_reduce, with_budget_escalation, MatrixL, MatrixQ, Series,
    Subspace, Vector, DEFAULT_BUDGET, Q,
};
use crate::error::{Error, Result};
use crate::grassmann::{is_anisotropic_subalgebra, nilpotent_part, Plane, PluckerVector};
use crate::lie::{
    classify_element, jordan_chevalley, semisimple_part, Element, ElementClass, LieAlgebra,
};
use crate::pair::SymmetricPair;

/// Curve `t -> c(t)` in `GL(E)`, acting on column coordinates of `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCurve {
    matrix: MatrixL,
    /// The same arc acting on all of `g`, when it comes from generators.
    on_g: Option<MatrixL>,
}

impl GroupCurve {
    pub fn new(matrix: MatrixL) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Shape(format!(
                "curve matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(GroupCurve { matrix, on_g: None })
    }

    pub fn identity(n: usize) -> Self {
        GroupCurve {
            matrix: MatrixL::identity(n),
            on_g: None,
        }
    }

    /// `diag(t^e_1, ..., t^e_n)`
    pub fn diagonal(exponents: &[i64]) -> Self {
        let n = exponents.len();
        let matrix = MatrixL::from_fn(n, n, |i, j| {
            if i == j {
                Series::monomial(q(1), exponents[i])
            } else {
                Series::zero()
            }
        });
        GroupCurve { matrix, on_g: None }
    }

    pub fn matrix(&self) -> &MatrixL {
        &self.matrix
    }

    pub fn on_g(&self) -> Option<&MatrixL> {
        self.on_g.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `c(t) x`
    pub fn apply(&self, x: &[Q]) -> Vec<Series> {
        let v: Vec<Series> = x.iter().map(|c| Series::constant(c.clone())).collect();
        self.matrix.mul_vec(&v)
    }

    /// Matrix whose columns are `c(t) x_k`.
    pub fn frame(&self, basis: &[Vector]) -> MatrixL {
        let cols: Vec<Vec<Series>> = basis.iter().map(|x| self.apply(x)).collect();
        MatrixL::from_cols(self.dim(), &cols)
    }

    /// `t^e c(t)`
    pub fn shift(&self, e: i64) -> Self {
        let n = self.dim();
        GroupCurve {
            matrix: MatrixL::from_fn(n, n, |i, j| self.matrix.get(i, j).shift(e)),
            on_g: None,
        }
    }

    /// `t -> c(t u(t))` for a unit `u`.
    pub fn reparametrize(&self, u: &Series, budget: usize) -> Result<Self> {
        let n = self.dim();
        let mut m = MatrixL::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.matrix.get(i, j).reparametrize(u, budget)?);
            }
        }
        Ok(GroupCurve {
            matrix: m,
            on_g: None,
        })
    }

    /// Whether `c(t) [x, y] = [c(t) x, c(t) y]` holds for all basis pairs, as
    /// an identity of Laurent polynomials.
    pub fn preserves_bracket(&self, g: &LieAlgebra) -> Result<bool> {
        let m = self
            .on_g
            .as_ref()
            .ok_or_else(|| Error::Unsupported("curve does not act on g".into()))?;
        let (lo, hi) = exponent_range(m)?;
        let coeffs: Vec<MatrixQ> = (lo..hi).map(|e| m.coefficient(e)).collect::<Result<_>>()?;
        let n = g.dim();
        let cols: Vec<Vec<Vector>> = coeffs.iter().map(|c| c.col_vecs()).collect();
        for i in 0..n {
            for j in i + 1..n {
                let mut br = vec![Q::zero(); n];
                for (k, c) in g.bracket_basis(i, j) {
                    br[*k] = c.clone();
                }
                if !bracket_identity(g, &coeffs, lo, &br, i, j, &cols) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Coefficient of `t^e` on both sides of `c[e_i, e_j] = [c e_i, c e_j]`,
/// for every `e`.
fn bracket_identity(
    g: &LieAlgebra,
    coeffs: &[MatrixQ],
    lo: i64,
    br: &[Q],
    i: usize,
    j: usize,
    cols: &[Vec<Vector>],
) -> bool {
    let n = g.dim();
    let len = coeffs.len() as i64;
    let hi = lo + len;
    for e in 2 * lo..2 * hi - 1 {
        let lhs = if (lo..hi).contains(&e) {
            coeffs[(e - lo) as usize].mul_vec(br)
        } else {
            vec![Q::zero(); n]
        };
        let mut rhs = vec![Q::zero(); n];
        for a in lo..hi {
            let b = e - a;
            if !(lo..hi).contains(&b) {
                continue;
            }
            let term = g.bracket(&cols[(a - lo) as usize][i], &cols[(b - lo) as usize][j]);
            crate::arith::axpy(&mut rhs, &q(1), &term);
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// `[lo, hi)` covering every exponent of an exact matrix.
fn exponent_range(m: &MatrixL) -> Result<(i64, i64)> {
    if !m.is_exact() {
        return Err(Error::Unsupported(
            "exponent range of a truncated matrix".into(),
        ));
    }
    let mut range: Option<(i64, i64)> = None;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let s = m.get(i, j);
            if s.is_zero() {
                continue;
            }
            let v = s.valuation()?;
            let e = s.end();
            range = Some(range.map_or((v, e), |(a, b)| (a.min(v), b.max(e))));
        }
    }
    Ok(range.unwrap_or((0, 1)))
}

/// `exp(t^e a)` for nilpotent `a`.
fn exp_series(a: &MatrixQ, e: i64) -> Result<MatrixL> {
    let n = a.rows();
    let mut parts = vec![(0, MatrixQ::identity(n))];
    let mut term = MatrixQ::identity(n);
    for k in 1..=n {
        term = term.mul(a).scale(&qf(1, k as i64));
        if term.is_zero() {
            return Ok(MatrixL::from_coefficients(n, n, &parts));
        }
        parts.push((e * k as i64, term.clone()));
    }
    Err(Error::NotNilpotent(format!("{n}x{n} matrix")))
}

/// Matrix of the restriction to `p` of a map of `g` preserving `p`.
pub fn restrict_to_p(pair: &SymmetricPair, m: &MatrixQ) -> Result<MatrixQ> {
    let dp = pair.dim_p();
    let mut out = MatrixQ::zeros(dp, dp);
    for j in 0..dp {
        let mut e = vec![Q::zero(); dp];
        e[j] = q(1);
        let img = m.mul_vec(&pair.from_p(&e));
        let c = pair
            .to_p(&img)
            .map_err(|_| Error::falsified("the fixed group preserves p", "image left p"))?;
        for (i, v) in c.into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    Ok(out)
}

fn restrict_series_to_p(pair: &SymmetricPair, m: &MatrixL) -> Result<MatrixL> {
    let (lo, hi) = exponent_range(m)?;
    let dp = pair.dim_p();
    let parts: Vec<(i64, MatrixQ)> = (lo..hi)
        .map(|e| Ok((e, restrict_to_p(pair, &m.coefficient(e)?)?)))
        .collect::<Result<_>>()?;
    Ok(MatrixL::from_coefficients(dp, dp, &parts))
}

/// `c(t) = prod exp(t^e_i ad y_i)`, first factor leftmost, acting on `p`.
pub fn curve_from_generators(pair: &SymmetricPair, gens: &[(Element, i64)]) -> Result<GroupCurve> {
    let g = pair.g();
    let n = g.dim();
    let mut fwd = MatrixL::identity(n);
    let mut inv = MatrixL::identity(n);
    for (y, e) in gens {
        if !pair.k().contains(y) {
            return Err(Error::InvalidArgument(format!(
                "{} is not in k",
                g.format_element(y)
            )));
        }
        let ad = g.ad(y);
        if pair.theta().mul(&ad) != ad.mul(pair.theta()) {
            return Err(Error::falsified(
                "arcs in K commute with theta",
                g.format_element(y),
            ));
        }
        let f = exp_series(&ad, *e).map_err(|_| Error::NotNilpotent(g.format_element(y)))?;
        let b = exp_series(&ad.scale(&q(-1)), *e)?;
        fwd = fwd.mul(&f)?;
        inv = b.mul(&inv)?;
    }
    if fwd.mul(&inv)? != MatrixL::identity(n) {
        return Err(Error::falsified(
            "arcs in K are invertible",
            "c(t) c(t)^-1 != 1",
        ));
    }
    let matrix = restrict_series_to_p(pair, &fwd)?;
    Ok(GroupCurve {
        matrix,
        on_g: Some(fwd),
    })
}

/// `k c(t)` for a constant element `k` of the group acting on `g`.
pub fn translate_curve(
    pair: &SymmetricPair,
    curve: &GroupCurve,
    k: &MatrixQ,
) -> Result<GroupCurve> {
    let kp = MatrixL::from_q(&restrict_to_p(pair, k)?);
    let on_g = match &curve.on_g {
        Some(m) => Some(MatrixL::from_q(k).mul(m)?),
        None => None,
    };
    Ok(GroupCurve {
        matrix: kp.mul(&curve.matrix)?,
        on_g,
    })
}

/// Random arc with `factors` exponentials of root vectors of `k`, exponents
/// drawn from `{-2, -1, 1}`.
pub fn random_curve(
    pair: &SymmetricPair,
    rng: &mut impl Rng,
    factors: usize,
) -> Result<GroupCurve> {
    let groups = pair.k_nilpotent_generators()?;
    let mut gens = Vec::with_capacity(factors);
    for _ in 0..factors {
        let (_, vecs) = groups
            .choose(rng)
            .ok_or_else(|| Error::Unsupported("no nilpotent generators".into()))?;
        let y = random_combination(vecs, rng);
        let e = *[-2i64, -1, -1, 1].choose(rng).expect("nonempty");
        gens.push((y, e));
    }
    curve_from_generators(pair, &gens)
}

/// Nonzero combination with small integer coefficients.
fn random_combination(vecs: &[Vector], rng: &mut impl Rng) -> Vector {
    loop {
        let mut y = vec![Q::zero(); vecs[0].len()];
        for v in vecs {
            crate::arith::axpy(&mut y, &q(rng.gen_range(-2..=2)), v);
        }
        if !is_zero_vec(&y) {
            return y;
        }
    }
}

fn column_order(m: &MatrixL, k: usize) -> Result<i64> {
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.submatrix(&rows, &[k])
        .min_valuation()?
        .ok_or(Error::RankDeficient)
}

/// `omega(c(t) x)`: least valuation among the coordinates.
pub fn magnitude_order(curve: &GroupCurve, x: &[Q]) -> Result<i64> {
    if is_zero_vec(x) {
        return Err(Error::InvalidArgument(
            "the zero vector has no magnitude order".into(),
        ));
    }
    column_order(&curve.frame(&[x.to_vec()]), 0)
}

/// Levels `(A_1)_k = { x | omega(c x) >= k }` at the jump values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnitudeFlag {
    /// `a_1 < ... < a_m`
    pub jumps: Vec<i64>,
    /// `(A_1)_{a_1} ⊃ ... ⊃ (A_1)_{a_m}` in ambient coordinates.
    pub levels: Vec<Subspace>,
}

impl MagnitudeFlag {
    pub fn is_trivial(&self) -> bool {
        self.jumps.len() == 1
    }

    /// `(A_1)_k` for any integer `k`.
    pub fn level(&self, k: i64) -> Subspace {
        match self.jumps.iter().position(|&a| a >= k) {
            Some(j) => self.levels[j].clone(),
            None => Subspace::zero(self.levels[0].ambient()),
        }
    }
}

/// The magnitude orders flag; each level is the common kernel of the
/// coefficient matrices below it, so linearity is exact.
pub fn magnitude_flag(curve: &GroupCurve, a1: &Plane) -> Result<MagnitudeFlag> {
    let basis = a1.basis_p();
    if basis.is_empty() {
        return Err(Error::InvalidArgument(
            "magnitude flag of the zero plane".into(),
        ));
    }
    let m = curve.frame(basis);
    let lo = m.min_valuation()?.ok_or(Error::RankDeficient)?;
    let hi = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).end())
        .max()
        .unwrap_or(lo);
    let to_ambient = |s: &Subspace| -> Subspace {
        let vs: Vec<Vector> = s.basis().iter().map(|c| a1.space().combine(c)).collect();
        Subspace::span(curve.dim(), &vs)
    };
    let mut current = Subspace::full(basis.len());
    let (mut jumps, mut levels) = (Vec::new(), Vec::new());
    let mut k = lo;
    while current.dim() > 0 {
        if k > hi {
            return Err(Error::RankDeficient);
        }
        let next = current.intersect(&Subspace::kernel_of(&m.coefficient(k)?));
        if next.dim() < current.dim() {
            jumps.push(k);
            levels.push(to_ambient(&current));
        }
        current = next;
        k += 1;
    }
    Ok(MagnitudeFlag { jumps, levels })
}

/// Basis of `A_1` refining the magnitude flag, listed by nondecreasing
/// magnitude order. With `split`, every vector is taken from one summand;
/// failure to do so is reported as a falsified claim.
pub fn magnitude_basis(
    curve: &GroupCurve,
    a1: &Plane,
    split: Option<&[Subspace]>,
) -> Result<Vec<Vector>> {
    let flag = magnitude_flag(curve, a1)?;
    let pools: Vec<Subspace> = match split {
        None => vec![a1.space().clone()],
        Some(parts) => {
            let total: usize = parts.iter().map(Subspace::dim).sum();
            let sum = parts
                .iter()
                .fold(Subspace::zero(curve.dim()), |acc, p| acc.sum(p));
            if total != a1.dim() || &sum != a1.space() {
                return Err(Error::InvalidArgument(
                    "split is not a direct sum decomposition of the plane".into(),
                ));
            }
            parts.to_vec()
        }
    };
    let mut span = Subspace::zero(curve.dim());
    let mut blocks: Vec<Vec<Vector>> = Vec::new();
    for (level, a) in flag.levels.iter().zip(&flag.jumps).rev() {
        let mut block = Vec::new();
        for pool in &pools {
            for v in level.intersect(pool).basis() {
                if !span.contains(v) {
                    span = span.with_vectors(std::slice::from_ref(v));
                    block.push(v.clone());
                }
            }
        }
        if &span != level {
            return Err(Error::falsified(
                "a magnitude orders basis can be chosen inside the summands of a direct sum",
                format!("level {a} is not spanned by its intersections with the summands"),
            ));
        }
        blocks.push(block);
    }
    Ok(blocks.into_iter().rev().flatten().collect())
}

/// `(omega(c x_1 ∧ ... ∧ c x_k), sum_{i <= k} omega(c x_i))` for each `k`.
pub fn additivity_profile(curve: &GroupCurve, basis: &[Vector]) -> Result<Vec<(i64, i64)>> {
    let frame = curve.frame(basis);
    let rows: Vec<usize> = (0..frame.rows()).collect();
    let mut sum = 0;
    let mut out = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        sum += column_order(&frame, k)?;
        let cols: Vec<usize> = (0..=k).collect();
        out.push((frame.submatrix(&rows, &cols).wedge_valuation()?, sum));
    }
    Ok(out)
}

/// Orders nondecreasing and `omega` additive on every initial wedge.
pub fn satisfies_wedge_additivity(curve: &GroupCurve, basis: &[Vector]) -> Result<bool> {
    let orders: Vec<i64> = basis
        .iter()
        .map(|x| magnitude_order(curve, x))
        .collect::<Result<_>>()?;
    if orders.windows(2).any(|w| w[0] > w[1]) {
        return Ok(false);
    }
    Ok(additivity_profile(curve, basis)?
        .iter()
        .all(|(w, s)| w == s))
}

/// Magnitude basis with its last vector replaced by `x_r + x_1`; `None`
/// when the flag is trivial.
pub fn non_adapted_basis(curve: &GroupCurve, a1: &Plane) -> Result<Option<Vec<Vector>>> {
    let basis = magnitude_basis(curve, a1, None)?;
    let r = basis.len();
    if r < 2 || magnitude_order(curve, &basis[0])? == magnitude_order(curve, &basis[r - 1])? {
        return Ok(None);
    }
    let mut out = basis.clone();
    out[r - 1] = crate::arith::add_vec(&basis[r - 1], &basis[0]);
    Ok(Some(out))
}

/// Limit of `c(t) A_1` from the Plücker vector: divide every maximal minor
/// by `t^v` for the least valuation `v` and evaluate at `t = 0`.
pub fn plucker_limit(curve: &GroupCurve, a1: &Plane) -> Result<PluckerVector> {
    let frame = curve.frame(a1.basis_p());
    let v = frame.wedge_valuation()?;
    let minors = frame.maximal_minors()?;
    let coords: Vec<Q> = minors
        .iter()
        .map(|(_, d)| d.coeff(v))
        .collect::<Result<_>>()?;
    let subsets = minors.into_iter().map(|(s, _)| s).collect();
    Ok(PluckerVector::from_coords(subsets, &coords))
}

/// Tempered frame of a constant magnitude orders basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemperedLimit {
    pub basis: Vec<Vector>,
    pub orders: Vec<i64>,
    /// `(omega(c x_1 ∧ ... ∧ c x_k), sum_{i <= k} omega(c x_i))`
    pub profile: Vec<(i64, i64)>,
    /// `t^-omega c(t) x_k` at `t = 0`.
    pub values: Vec<Vector>,
    /// Span of `values`, present exactly when they form a basis.
    pub plane: Option<Plane>,
}

impl TemperedLimit {
    pub fn is_additive(&self) -> bool {
        self.profile.iter().all(|(w, s)| w == s)
    }
}

/// Tempered frame of a magnitude orders basis (taken inside the summands
/// of `split` when given). Additivity of wedge orders is reported, not
/// assumed: constant magnitude bases need not satisfy it. When it holds
/// the frame must extend to a basis equal to the Plücker limit; a failure
/// there is a falsified claim.
pub fn tempered_limit(
    curve: &GroupCurve,
    a1: &Plane,
    split: Option<&[Subspace]>,
) -> Result<TemperedLimit> {
    let basis = magnitude_basis(curve, a1, split)?;
    let frame = curve.frame(&basis);
    let orders: Vec<i64> = (0..basis.len())
        .map(|k| column_order(&frame, k))
        .collect::<Result<_>>()?;
    if orders.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::falsified(
            "magnitude orders bases have nondecreasing orders",
            format!("{orders:?}"),
        ));
    }
    let profile = additivity_profile(curve, &basis)?;
    let values: Vec<Vector> = (0..basis.len())
        .map(|k| {
            (0..frame.rows())
                .map(|i| frame.get(i, k).coeff(orders[k]))
                .collect::<Result<Vector>>()
        })
        .collect::<Result<_>>()?;
    let plane = Plane::from_p_coords(curve.dim(), &values).ok();
    let additive = profile.iter().all(|(w, s)| w == s);
    if additive != plane.is_some() {
        return Err(Error::falsified(
            "the tempered frame extends to a basis exactly when wedge orders are additive",
            format!("additive {additive}, profile {profile:?}"),
        ));
    }
    if let Some(p) = &plane {
        if plucker_limit(curve, a1)? != p.plucker() {
            return Err(Error::falsified(
                "the tempered frame limit equals the Plücker limit",
                format!("{:?}", p.basis_p()),
            ));
        }
    }
    Ok(TemperedLimit {
        basis,
        orders,
        profile,
        values,
        plane,
    })
}

/// `c_0 A_1`, from a column reduction of the moving frame over power
/// series (pivots of least valuation, later columns cleared with
/// multipliers of nonnegative valuation); the rescaled reduced columns
/// evaluate to a basis of the limit. Checked against the Plücker limit.
pub fn limit_plane(curve: &GroupCurve, a1: &Plane) -> Result<Plane> {
    let frame = curve.frame(a1.basis_p());
    let values = with_budget_escalation(DEFAULT_BUDGET, |budget| {
        let red = valuation_adapted_reduce(&frame, budget)?;
        (0..frame.cols())
            .map(|k| {
                (0..frame.rows())
                    .map(|i| red.reduced.get(i, k).coeff(red.pivot_valuations[k]))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<Vector>>>()
    })?;
    let plane = Plane::from_p_coords(curve.dim(), &values).map_err(|_| {
        Error::falsified(
            "reduced moving frames evaluate to a basis of the limit",
            "dependent limit vectors",
        )
    })?;
    if plucker_limit(curve, a1)? != plane.plucker() {
        return Err(Error::falsified(
            "the reduced frame limit equals the Plücker limit",
            format!("{:?}", plane.basis_p()),
        ));
    }
    Ok(plane)
}

/// `S(u)`: image of `x -> x_s` on an abelian plane, in `p` coordinates.
pub fn semisimple_span(pair: &SymmetricPair, u: &Plane) -> Result<Subspace> {
    let parts: Vec<Vector> = u
        .basis_g(pair)
        .iter()
        .map(|x| pair.to_p(&semisimple_part(pair.g(), x)?))
        .collect::<Result<_>>()?;
    Ok(Subspace::span(pair.dim_p(), &parts))
}

/// Power traces `tr(rho(x)^j)` in the realization; equal for conjugate
/// elements.
pub fn realization_invariants(g: &LieAlgebra, x: &[Q]) -> Result<Vec<Q>> {
    let m = g.realize(x)?;
    let mut acc = m.clone();
    let mut out = Vec::with_capacity(m.rows());
    for _ in 0..m.rows() {
        out.push(acc.trace());
        acc = acc.mul(&m);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub limit_dim: usize,
    /// Orders of the split magnitude basis.
    pub orders: Vec<i64>,
    /// The split magnitude basis has additive wedge orders.
    pub frame_additive: bool,
    /// Indices of the split magnitude basis whose limit is semisimple.
    pub semisimple_indices: Vec<usize>,
    pub semisimple_span_dim: usize,
    /// `S(A_0)` is spanned by the limits of the semisimple split basis vectors.
    pub exhibited_by_split_basis: bool,
    pub nilpotent_limit: bool,
}

/// Degenerates an abelian plane closed under the Chevalley–Jordan
/// decomposition and checks what survives. Hard checks: the limit is
/// abelian and CJ-closed; along each split basis vector, nilpotent goes to
/// nilpotent and a semisimple vector with non-nilpotent limit has order 0
/// and the same invariants; every semisimple element of the limit is
/// `c_0 s_1` for a semisimple `s_1` of order 0 with the same invariants.
/// Whether the split basis alone exhibits `S(A_0)` is reported.
pub fn rigidity_check(
    pair: &SymmetricPair,
    curve: &GroupCurve,
    a1: &Plane,
) -> Result<(Plane, RigidityReport)> {
    let g = pair.g();
    if !is_anisotropic_subalgebra(pair, a1) || !is_cj_closed(pair, a1)? {
        return Err(Error::InvalidArgument(
            "rigidity needs an abelian plane closed under the Chevalley-Jordan decomposition"
                .into(),
        ));
    }
    let s1 = semisimple_span(pair, a1)?;
    let n1 = nilpotent_part(pair, a1)?;
    if s1.dim() + n1.dim() != a1.dim() {
        return Err(Error::falsified(
            "abelian CJ-closed planes split into semisimple and nilpotent parts",
            format!("{} + {} != {}", s1.dim(), n1.dim(), a1.dim()),
        ));
    }
    let a0 = limit_plane(curve, a1)?;
    if !is_anisotropic_subalgebra(pair, &a0) {
        return Err(Error::falsified(
            "limits of abelian planes are abelian",
            format!("{:?}", a0.basis_p()),
        ));
    }
    if !is_cj_closed(pair, &a0)? {
        return Err(Error::falsified(
            "limits of CJ-closed abelian planes are CJ-closed",
            format!("{:?}", a0.basis_p()),
        ));
    }
    let split: Vec<Subspace> = [s1.clone(), n1]
        .into_iter()
        .filter(|s| s.dim() > 0)
        .collect();
    let lim = tempered_limit(curve, a1, Some(&split))?;
    let mut semisimple_indices = Vec::new();
    for (k, (x, y)) in lim.basis.iter().zip(&lim.values).enumerate() {
        if !a0.space().contains(y) {
            return Err(Error::falsified(
                "limits of lines in a moving plane lie in the limit plane",
                format!("index {k}"),
            ));
        }
        let (xg, yg) = (pair.from_p(x), pair.from_p(y));
        match (classify_element(g, &xg)?, classify_element(g, &yg)?) {
            (ElementClass::Nilpotent, ElementClass::Nilpotent)
            | (ElementClass::Semisimple, ElementClass::Nilpotent) => {}
            (ElementClass::Nilpotent, _) => {
                return Err(Error::falsified(
                    "limits of nilpotent vectors are nilpotent",
                    g.format_element(&yg),
                ));
            }
            (ElementClass::Semisimple, ElementClass::Semisimple) => {
                if lim.orders[k] != 0 {
                    return Err(Error::falsified(
                        "semisimple limits come from vectors of order 0",
                        format!("order {}", lim.orders[k]),
                    ));
                }
                if realization_invariants(g, &xg)? != realization_invariants(g, &yg)? {
                    return Err(Error::falsified(
                        "a semisimple limit is conjugate to its source",
                        g.format_element(&yg),
                    ));
                }
                semisimple_indices.push(k);
            }
            (ElementClass::Semisimple, _) => {
                return Err(Error::falsified(
                    "limits of semisimple vectors are semisimple or nilpotent",
                    g.format_element(&yg),
                ));
            }
            _ => {
                return Err(Error::falsified(
                    "split magnitude bases consist of semisimple or nilpotent vectors",
                    g.format_element(&xg),
                ))
            }
        }
    }
    let s0 = semisimple_span(pair, &a0)?;
    let from_split = Subspace::span(
        pair.dim_p(),
        &semisimple_indices
            .iter()
            .map(|&k| lim.values[k].clone())
            .collect::<Vec<_>>(),
    );
    let exhibited_by_split_basis = s0 == from_split;
    if lim.is_additive() && !exhibited_by_split_basis {
        return Err(Error::falsified(
            "S(A_0) is spanned by limits of semisimple split basis vectors",
            format!("dim {} vs {}", s0.dim(), from_split.dim()),
        ));
    }
    exhibit_semisimple_limits(pair, curve, a1, &s1, &s0)?;
    let report = RigidityReport {
        limit_dim: a0.dim(),
        orders: lim.orders.clone(),
        frame_additive: lim.is_additive(),
        semisimple_span_dim: s0.dim(),
        exhibited_by_split_basis,
        nilpotent_limit: s0.dim() == 0,
        semisimple_indices,
    };
    Ok((a0, report))
}

/// Every `s_0` in `S(A_0)` equals `c_0 s_1` for some `s_1` in `S(A_1)` of
/// order at least 0, and the two have the same invariants.
fn exhibit_semisimple_limits(
    pair: &SymmetricPair,
    curve: &GroupCurve,
    a1: &Plane,
    s1: &Subspace,
    s0: &Subspace,
) -> Result<()> {
    if s0.dim() == 0 {
        return Ok(());
    }
    let g = pair.g();
    let sources = magnitude_flag(curve, a1)?.level(0).intersect(s1);
    let at_zero =
        |x: &Vector| -> Result<Vector> { curve.apply(x).iter().map(|s| s.coeff(0)).collect() };
    let images: Vec<Vector> = sources
        .basis()
        .iter()
        .map(&at_zero)
        .collect::<Result<_>>()?;
    let m = MatrixQ::from_cols(pair.dim_p(), &images);
    for (i, target) in s0.basis().iter().enumerate() {
        let coeffs = m.solve(target).ok_or_else(|| {
            Error::falsified(
                "semisimple elements of the limit are limits of semisimple elements",
                format!("basis vector {i} of S(A_0) is not reached"),
            )
        })?;
        let src = sources.combine(&coeffs);
        if magnitude_order(curve, &src)? != 0 {
            return Err(Error::falsified(
                "semisimple elements of the limit come from elements of order 0",
                format!("basis vector {i}"),
            ));
        }
        if realization_invariants(g, &pair.from_p(&src))?
            != realization_invariants(g, &pair.from_p(target))?
        {
            return Err(Error::falsified(
                "a semisimple element of the limit is conjugate to its source",
                format!("basis vector {i}"),
            ));
        }
    }
    Ok(())
}

/// `dim { y in k | [y, u] ⊆ u }`
pub fn stabilizer_dim(pair: &SymmetricPair, u: &Plane) -> Result<usize> {
    let g = pair.g();
    let ann = u.space().annihilator();
    let kb = pair.k().basis();
    let ub = u.basis_g(pair);
    let mut rows: Vec<Vector> = Vec::new();
    for f in ann.basis() {
        for x in &ub {
            let mut row = Vec::with_capacity(kb.len());
            for y in kb {
                let c = pair.to_p(&g.bracket(y, x))?;
                row.push(crate::arith::dot(f, &c));
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(kb.len());
    }
    Ok(kb.len() - MatrixQ::from_rows(&rows).rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub plane: Plane,
    /// Stabilizer dimension after each accepted step, starting value first.
    pub stabilizer_dims: Vec<usize>,
    pub attempts: usize,
    /// Stopped because the attempt budget ran out rather than by stagnation.
    pub exhausted: bool,
    /// Every element of the final plane is nilpotent.
    pub nilpotent: bool,
}

/// Degenerates `a0` by sampled arcs `exp(t^-1 ad y)`, accepting a step when
/// the stabilizer in `k` grows. Stops after `budget` attempts or after a run
/// of unproductive attempts.
pub fn descend_to_closed(
    pair: &SymmetricPair,
    a0: &Plane,
    rng: &mut impl Rng,
    budget: usize,
) -> Result<DescentReport> {
    let groups = pair.k_nilpotent_generators()?;
    let patience = 6 * groups.len().max(1);
    let mut plane = a0.clone();
    let mut dims = vec![stabilizer_dim(pair, &plane)?];
    let (mut attempts, mut idle) = (0, 0);
    while attempts < budget && idle < patience {
        attempts += 1;
        let y = match rng.gen_range(0..3) {
            0 => {
                let all: Vec<Vector> = groups
                    .iter()
                    .filter(|(l, _)| l > &Q::zero())
                    .flat_map(|(_, v)| v.clone())
                    .collect();
                random_combination(&all, rng)
            }
            _ => random_combination(&groups.choose(rng).expect("nonempty").1, rng),
        };
        let curve = curve_from_generators(pair, &[(y, -1)])?;
        let next = limit_plane(&curve, &plane)?;
        let d = stabilizer_dim(pair, &next)?;
        if d > *dims.last().expect("nonempty") {
            plane = next;
            dims.push(d);
            idle = 0;
        } else {
            idle += 1;
        }
    }
    let nilpotent = nilpotent_part(pair, &plane)?.dim() == plane.dim();
    Ok(DescentReport {
        plane,
        stabilizer_dims: dims,
        attempts,
        exhausted: attempts >= budget,
        nilpotent,
    })
}

/// Random element of `D(x) = K (c_p^2(x_s)_o + x_n)`.
pub fn class_sample(pair: &SymmetricPair, x: &[Q], rng: &mut impl Rng) -> Result<Element> {
    let g = pair.g();
    let (s, nil) = jordan_chevalley(g, x)?;
    let cs = pair.centralizer_p(&s);
    let c2 = pair.centralizer_p_of(&cs);
    for _ in 0..64 {
        let mut s2 = g.zero();
        for b in c2.basis() {
            crate::arith::axpy(&mut s2, &q(rng.gen_range(-6..=6)), b);
        }
        if pair.centralizer_p(&s2) == cs {
            let z0 = crate::arith::add_vec(&s2, &nil);
            return Ok(random_k_element(pair, rng, 4)?.mul_vec(&z0));
        }
    }
    Err(Error::SearchExhausted(
        "no generic element of the double centralizer found".into(),
    ))
}

/// Limit of the line through `x`: `t^-omega c(t) x` at `t = 0`.
pub fn element_limit(curve: &GroupCurve, x: &[Q]) -> Result<Vector> {
    let w = magnitude_order(curve, x)?;
    curve.apply(x).iter().map(|s| s.coeff(w)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureSample {
    pub source: DecompositionSignature,
    pub limits: BTreeSet<DecompositionSignature>,
}

/// Signatures of limits of sampled elements of `D(x)` under sampled arcs.
/// Each limit is re-derived under a translated arc, and each must lie in
/// the closure predicted by the combinatorial rule; violations are
/// falsified claims.
pub fn class_closure_sample(
    pair: &SymmetricPair,
    x: &[Q],
    samples: usize,
    rng: &mut impl Rng,
) -> Result<ClosureSample> {
    sl_square_degree(pair).ok_or_else(|| {
        Error::Unsupported("class closure sampling needs a square of sl_n".into())
    })?;
    let source = decomposition_signature(pair, x)?;
    let mut limits = BTreeSet::new();
    // The identity arc; the zero class is its own only limit.
    let x_p = pair.to_p(x)?;
    if is_zero_vec(&x_p) {
        limits.insert(source.clone());
        return Ok(ClosureSample { source, limits });
    }
    limits.insert(decomposition_signature(
        pair,
        &pair.from_p(&element_limit(&GroupCurve::identity(pair.dim_p()), &x_p)?),
    )?);
    for _ in 0..samples {
        let z = pair.to_p(&class_sample(pair, x, rng)?)?;
        if is_zero_vec(&z) {
            continue;
        }
        let factors = rng.gen_range(1..=3);
        let curve = random_curve(pair, rng, factors)?;
        let y = element_limit(&curve, &z)?;
        let sig = decomposition_signature(pair, &pair.from_p(&y))?;
        let k = random_k_element(pair, rng, 2)?;
        let moved = element_limit(&translate_curve(pair, &curve, &k)?, &z)?;
        let expected = restrict_to_p(pair, &k)?.mul_vec(&y);
        if moved != expected || decomposition_signature(pair, &pair.from_p(&moved))? != sig {
            return Err(Error::falsified(
                "limits are equivariant under translated arcs",
                format!("{sig}"),
            ));
        }
        if !in_closure(&sig, &source) {
            return Err(Error::falsified(
                "limits of a decomposition class lie in its closure",
                format!("{sig} from {source}"),
            ));
        }
        limits.insert(sig);
    }
    Ok(ClosureSample { source, limits })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureRelation {
    pub signatures: Vec<DecompositionSignature>,
    /// `(i, j)`: class `j` was reached as a limit of class `i`.
    pub edges: BTreeSet<(usize, usize)>,
    pub antisymmetric: bool,
    /// The transitive closure of the sampled edges agrees with the
    /// combinatorial closure rule.
    pub transitive_consistent: bool,
}

/// Sampled closure order on all decomposition classes of `sl_n`.
pub fn sampled_closure_relation(
    pair: &SymmetricPair,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<ClosureRelation> {
    let n = sl_square_degree(pair).ok_or_else(|| {
        Error::Unsupported("class closure sampling needs a square of sl_n".into())
    })?;
    let signatures = all_signatures(n);
    let mut edges = BTreeSet::new();
    for (i, sig) in signatures.iter().enumerate() {
        let x = signature_representative(pair, sig)?;
        let sample = class_closure_sample(pair, &x, samples, rng)?;
        for l in &sample.limits {
            let j = signatures.iter().position(|s| s == l).ok_or_else(|| {
                Error::falsified("finitely many decomposition classes", format!("{l}"))
            })?;
            edges.insert((i, j));
        }
    }
    let m = signatures.len();
    let mut reach = vec![vec![false; m]; m];
    for &(i, j) in &edges {
        reach[i][j] = true;
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let antisymmetric = (0..m).all(|i| (0..m).all(|j| i == j || !(reach[i][j] && reach[j][i])));
    let transitive_consistent =
        (0..m).all(|i| (0..m).all(|j| !reach[i][j] || in_closure(&signatures[j], &signatures[i])));
    Ok(ClosureRelation {
        signatures,
        edges,
        antisymmetric,
        transitive_consistent,
    })
}

#[cfg(test)]
mod tests;
