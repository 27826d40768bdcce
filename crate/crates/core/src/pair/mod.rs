//! Symmetric pairs `(g, theta)`, Cartan subspaces and restricted roots.

mod derived;
mod roots;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::arith::{is_zero_vec, min_poly, q, MatrixQ, Subspace, Vector, Q};
use crate::error::{Error, Result};
use crate::lie::{
    build_g2, build_product, classify_element, is_semisimple, pair_element, sl, so, sp, Element,
    ElementClass, LieAlgebra,
};

pub use derived::{centralizer_pair, DerivedMaps};
pub use roots::{
    restricted_roots, singular_kernels, RestrictedRootData, RootSpace, SingularKernel,
};

/// Base algebras available for Cartesian squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BaseAlgebra {
    Sl(usize),
    So(usize),
    Sp(usize),
    G2,
}

impl BaseAlgebra {
    pub fn build(self) -> Result<LieAlgebra> {
        match self {
            BaseAlgebra::Sl(n) => sl(n),
            BaseAlgebra::So(n) => so(n),
            BaseAlgebra::Sp(n) => sp(n),
            BaseAlgebra::G2 => build_g2(),
        }
    }

    /// Parses names such as `sl3`, `sp4`, `g2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "g2" {
            return Ok(BaseAlgebra::G2);
        }
        let bad = || {
            Error::InvalidArgument(format!(
                "unknown algebra {s:?}; expected sl<n>, so<n>, sp<n> or g2"
            ))
        };
        let (head, tail) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "sl" => Ok(BaseAlgebra::Sl(n)),
            "so" => Ok(BaseAlgebra::So(n)),
            "sp" => Ok(BaseAlgebra::Sp(n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for BaseAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseAlgebra::Sl(n) => write!(f, "sl{n}"),
            BaseAlgebra::So(n) => write!(f, "so{n}"),
            BaseAlgebra::Sp(n) => write!(f, "sp{n}"),
            BaseAlgebra::G2 => write!(f, "g2"),
        }
    }
}

/// How a pair was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    CartesianSquare(BaseAlgebra),
    Transpose(usize),
    /// Centralizer of a subspace of a Cartan subspace inside a larger pair.
    Centralizer {
        parent: String,
    },
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairKind::CartesianSquare(b) => write!(f, "square of {b}"),
            PairKind::Transpose(n) => write!(f, "(sl{n}, so{n})"),
            PairKind::Centralizer { parent } => write!(f, "centralizer pair in {parent}"),
        }
    }
}

/// `g = k + p` for an involution `theta`, with a chosen Cartan subspace.
#[derive(Clone)]
pub struct SymmetricPair {
    g: Arc<LieAlgebra>,
    theta: MatrixQ,
    kind: PairKind,
    k: Subspace,
    p: Subspace,
    cartan: Subspace,
    k_split: Option<Element>,
}

impl fmt::Debug for SymmetricPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SymmetricPair({}, dim p {}, rank {})",
            self.kind,
            self.p.dim(),
            self.rank()
        )
    }
}

impl SymmetricPair {
    /// Validates `theta` and the Cartan subspace spanned by `cartan`.
    ///
    /// `k_split`, if given, must be an element of `k` acting semisimply with
    /// rational eigenvalues; its nonzero eigenvectors in `k` are nilpotent and
    /// drive degenerations.
    pub fn new(
        g: Arc<LieAlgebra>,
        theta: MatrixQ,
        kind: PairKind,
        cartan: &[Element],
        k_split: Option<Element>,
    ) -> Result<Self> {
        let n = g.dim();
        if theta.rows() != n || theta.cols() != n {
            return Err(Error::Shape(
                "involution size differs from algebra dimension".into(),
            ));
        }
        if theta.mul(&theta) != MatrixQ::identity(n) {
            return Err(Error::InvalidArgument("theta is not an involution".into()));
        }
        let images: Vec<Element> = (0..n).map(|i| theta.col(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = theta.mul_vec(&g.bracket(&g.basis_element(i), &g.basis_element(j)));
                if lhs != g.bracket(&images[i], &images[j]) {
                    return Err(Error::InvalidArgument(format!(
                        "theta is not an automorphism on {}, {}",
                        g.labels()[i],
                        g.labels()[j]
                    )));
                }
            }
        }
        let id = MatrixQ::identity(n);
        let k = Subspace::kernel_of(&theta.sub(&id));
        let p = Subspace::kernel_of(&theta.add(&id));
        if k.dim() + p.dim() != n {
            return Err(Error::falsified(
                "Cartan decomposition",
                "eigenspaces of theta do not span g",
            ));
        }
        for (a, b, target, what) in [
            (&k, &k, &k, "[k,k]"),
            (&k, &p, &p, "[k,p]"),
            (&p, &p, &k, "[p,p]"),
        ] {
            if !target.contains_subspace(&g.bracket_span(a, b)) {
                return Err(Error::falsified(
                    "Cartan decomposition",
                    format!("{what} leaves its eigenspace"),
                ));
            }
        }
        let cartan = Subspace::span(n, cartan);
        let pair = SymmetricPair {
            g,
            theta,
            kind,
            k,
            p,
            cartan,
            k_split: None,
        };
        pair.validate_cartan(&pair.cartan)?;
        if let Some(y) = k_split {
            pair.validate_k_split(&y)?;
            return Ok(SymmetricPair {
                k_split: Some(y),
                ..pair
            });
        }
        Ok(pair)
    }

    fn validate_cartan(&self, a: &Subspace) -> Result<()> {
        if a.dim() == 0 {
            return Err(Error::InvalidArgument("Cartan subspace is zero".into()));
        }
        if !self.p.contains_subspace(a) {
            return Err(Error::InvalidArgument(
                "Cartan subspace is not inside p".into(),
            ));
        }
        if !self.g.is_abelian_span(a.basis()) {
            return Err(Error::InvalidArgument(
                "Cartan subspace is not abelian".into(),
            ));
        }
        for x in a.basis() {
            if !is_semisimple(&self.g, x)? {
                return Err(Error::InvalidArgument(
                    "Cartan subspace contains a non-semisimple element".into(),
                ));
            }
        }
        if &self.g.centralizer_of_subspace(a, &self.p) != a {
            return Err(Error::InvalidArgument(
                "Cartan subspace is not self-centralizing in p".into(),
            ));
        }
        Ok(())
    }

    fn validate_k_split(&self, y: &[Q]) -> Result<()> {
        if !self.k.contains(y) {
            return Err(Error::InvalidArgument("split element is not in k".into()));
        }
        let mp = min_poly(&self.g.ad(y))?;
        if !mp.is_squarefree()? || !mp.splits_over_q()? {
            return Err(Error::InvalidArgument(
                "split element of k is not split semisimple".into(),
            ));
        }
        Ok(())
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn g_arc(&self) -> Arc<LieAlgebra> {
        self.g.clone()
    }

    pub fn theta(&self) -> &MatrixQ {
        &self.theta
    }

    pub fn kind(&self) -> &PairKind {
        &self.kind
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    pub fn p(&self) -> &Subspace {
        &self.p
    }

    pub fn dim_p(&self) -> usize {
        self.p.dim()
    }

    pub fn rank(&self) -> usize {
        self.cartan.dim()
    }

    /// The chosen Cartan subspace, in coordinates of `g`.
    pub fn cartan(&self) -> &Subspace {
        &self.cartan
    }

    pub fn k_split(&self) -> Option<&Element> {
        self.k_split.as_ref()
    }

    /// Same pair with another validated Cartan subspace.
    pub fn with_cartan(&self, a: Subspace) -> Result<Self> {
        self.validate_cartan(&a)?;
        Ok(SymmetricPair {
            cartan: a,
            ..self.clone()
        })
    }

    /// `dim R = dim p - rank`.
    pub fn dim_reduction_variety(&self) -> usize {
        self.dim_p() - self.rank()
    }

    /// Coordinates of `x in p` in the echelon basis of `p`.
    pub fn to_p(&self, x: &[Q]) -> Result<Vector> {
        self.p
            .coords(x)
            .ok_or_else(|| Error::InvalidArgument("element is not in p".into()))
    }

    pub fn from_p(&self, c: &[Q]) -> Element {
        self.p.combine(c)
    }

    /// Projection to `p` along `k`: `(x - theta x) / 2`.
    pub fn project_p(&self, x: &[Q]) -> Element {
        let tx = self.theta.mul_vec(x);
        x.iter().zip(&tx).map(|(a, b)| (a - b) / q(2)).collect()
    }

    /// `c_p(x)`
    pub fn centralizer_p(&self, x: &[Q]) -> Subspace {
        self.g.centralizer_in(x, &self.p)
    }

    /// `c_p(s)` for a subspace `s`.
    pub fn centralizer_p_of(&self, s: &Subspace) -> Subspace {
        self.g.centralizer_of_subspace(s, &self.p)
    }

    /// `c_k(s)` for a subspace `s`.
    pub fn centralizer_k_of(&self, s: &Subspace) -> Subspace {
        self.g.centralizer_of_subspace(s, &self.k)
    }

    /// Eigenvectors in `k` of `ad(k_split)` with nonzero eigenvalue, grouped
    /// by eigenvalue; each is nilpotent.
    pub fn k_nilpotent_generators(&self) -> Result<Vec<(Q, Vec<Element>)>> {
        let y = self.k_split.as_ref().ok_or_else(|| {
            Error::Unsupported(format!("{} has no split element in k", self.kind))
        })?;
        let ad = self.g.ad(y);
        let mut out = Vec::new();
        for lambda in min_poly(&ad)?.rational_roots()? {
            if lambda.is_zero() {
                continue;
            }
            let shifted = ad.sub(&MatrixQ::identity(self.g.dim()).scale(&lambda));
            let eig = Subspace::kernel_of(&shifted).intersect(&self.k);
            if eig.dim() == 0 {
                continue;
            }
            for v in eig.basis() {
                if classify_element(&self.g, v)? != ElementClass::Nilpotent {
                    return Err(Error::falsified(
                        "nilpotent generators",
                        "eigenvector of a split element is not nilpotent",
                    ));
                }
            }
            out.push((lambda, eig.basis().to_vec()));
        }
        Ok(out)
    }

    /// Deterministic "generic" element `sum (i+1) a_i` of the Cartan subspace.
    pub fn generic_cartan_element(&self, step: i64) -> Element {
        let mut x = self.g.zero();
        let mut c = q(1);
        for b in self.cartan.basis() {
            crate::arith::axpy(&mut x, &c, b);
            c = c * q(step) + q(1);
        }
        x
    }
}

/// `g x g` with the swap involution. The Cartan subspace is `{(h, -h)}` for
/// the recorded split Cartan of `g`.
pub fn make_cartesian_square(base: BaseAlgebra) -> Result<SymmetricPair> {
    let g = base.build()?;
    let d = g.dim();
    let prod = build_product(&g, &g)?;
    let mut theta = MatrixQ::zeros(2 * d, 2 * d);
    for i in 0..d {
        theta[(i + d, i)] = q(1);
        theta[(i, i + d)] = q(1);
    }
    let h = g.split_cartan().ok_or_else(|| {
        Error::Unsupported(format!("{base} has no split Cartan subalgebra over Q"))
    })?;
    let cartan: Vec<Element> = h
        .iter()
        .map(|x| pair_element(x, &x.iter().map(|c| -c).collect::<Vec<_>>()))
        .collect();
    // a regular element, so every root vector of k is a generator
    let y = (2..)
        .map(|step: i64| {
            let mut y = g.zero();
            let mut c = q(1);
            for x in h {
                crate::arith::axpy(&mut y, &c, x);
                c *= q(step);
            }
            y
        })
        .take(16)
        .find(|y| Subspace::kernel_of(&g.ad(y)).dim() == h.len())
        .ok_or_else(|| Error::SearchExhausted(format!("no regular split element in {base}")))?;
    let k_split = pair_element(&y, &y);
    SymmetricPair::new(
        Arc::new(prod),
        theta,
        PairKind::CartesianSquare(base),
        &cartan,
        Some(k_split),
    )
}

/// `(sl_n, so_n)` with `theta(x) = -S x^T S`, `S = diag(1, -1, 1, ...)`.
///
/// Over the rationals the form `S` makes `so_n` isotropic, so `k` contains
/// nilpotents; `p` contains the diagonal traceless matrices as a split Cartan
/// subspace.
pub fn make_transpose_pair(n: usize) -> Result<SymmetricPair> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "transpose pair needs n >= 3, got {n}"
        )));
    }
    let g = sl(n)?;
    let s = MatrixQ::diagonal(
        &(0..n)
            .map(|i| q(if i % 2 == 0 { 1 } else { -1 }))
            .collect::<Vec<_>>(),
    );
    let d = g.dim();
    let mut theta = MatrixQ::zeros(d, d);
    for j in 0..d {
        let x = g.realize(&g.basis_element(j))?;
        let img = s.mul(&x.transpose()).mul(&s).scale(&q(-1));
        let c = g
            .coords_of_matrix(&img)?
            .ok_or_else(|| Error::falsified("transpose involution", "image leaves sl_n"))?;
        for (i, v) in c.into_iter().enumerate() {
            theta[(i, j)] = v;
        }
    }
    let cartan: Vec<Element> = g
        .split_cartan()
        .expect("sl_n records its diagonal")
        .to_vec();
    let mut y = MatrixQ::zeros(n, n);
    for i in 0..n / 2 {
        let c = q(i as i64 + 1);
        y[(2 * i, 2 * i + 1)] = c.clone();
        y[(2 * i + 1, 2 * i)] = c;
    }
    let k_split = g
        .coords_of_matrix(&y)?
        .expect("symmetric off-diagonal pattern lies in sl_n");
    SymmetricPair::new(
        Arc::new(g),
        theta,
        PairKind::Transpose(n),
        &cartan,
        Some(k_split),
    )
}

/// Random search for a Cartan subspace: `c_p(x)` for random `x in p` until it
/// is abelian, semisimple and self-centralizing.
pub fn find_cartan_subspace(
    pair: &SymmetricPair,
    rng: &mut impl Rng,
    tries: usize,
) -> Result<Subspace> {
    let g = pair.g();
    for _ in 0..tries {
        let c: Vector = (0..pair.dim_p())
            .map(|_| q(rng.gen_range(-2..=2)))
            .collect();
        let x = pair.from_p(&c);
        if is_zero_vec(&x) || !is_semisimple(g, &x)? {
            continue;
        }
        let a = pair.centralizer_p(&x);
        if pair.validate_cartan(&a).is_ok() {
            return Ok(a);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no Cartan subspace found in {tries} samples"
    )))
}

/// Named pair constructor used by the CLI and the checks: `sl3`, `g2`, ...
/// for Cartesian squares.
pub fn square_by_name(name: &str) -> Result<SymmetricPair> {
    make_cartesian_square(BaseAlgebra::parse(name)?)
}

#[cfg(test)]
mod tests;
