use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::arith::{axpy, dot, is_zero_vec, zero_vec, MatrixQ, Subspace, Vector, Q};
use crate::error::{Error, Result};

/// Coordinates over the basis of a [`LieAlgebra`].
pub type Element = Vector;

/// Faithful matrix realization together with a fast coordinate solver.
#[derive(Clone)]
struct Realization {
    mats: Vec<MatrixQ>,
    /// Matrix entries (flattened indices) that determine an element.
    pivots: Vec<usize>,
    /// Inverse of the basis restricted to `pivots`.
    solver: MatrixQ,
}

impl Realization {
    fn new(mats: Vec<MatrixQ>) -> Result<Self> {
        let dim = mats.len();
        let flat: Vec<Vector> = mats.iter().map(|m| m.entries().to_vec()).collect();
        let (_, pivots) = MatrixQ::from_rows(&flat).rref();
        if pivots.len() != dim {
            return Err(Error::InvalidArgument(
                "realization matrices are linearly dependent".into(),
            ));
        }
        // Row a of `restricted` holds entry pivots[a] of every basis matrix.
        let restricted = MatrixQ::from_rows(
            &pivots
                .iter()
                .map(|&p| flat.iter().map(|f| f[p].clone()).collect())
                .collect::<Vec<_>>(),
        );
        let solver = restricted.inverse()?;
        Ok(Realization {
            mats,
            pivots,
            solver,
        })
    }
}

/// Finite-dimensional Lie algebra over the rationals given by structure
/// constants, optionally with a faithful matrix realization.
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    /// `table[i * dim + j]` lists the nonzero `(k, c)` with `[e_i, e_j] = sum c e_k`.
    table: Vec<Vec<(usize, Q)>>,
    realization: Option<Realization>,
    split_cartan: Option<Vec<Element>>,
    killing: OnceLock<MatrixQ>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.name, self.dim())
    }
}

impl LieAlgebra {
    /// Builds an algebra from structure constants, checking antisymmetry and
    /// the Jacobi identity on all basis triples.
    pub fn from_structure_constants(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<(usize, Q)>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(Error::Shape(format!(
                "structure table of length {} for dim {dim}",
                table.len()
            )));
        }
        let g = LieAlgebra {
            name: name.into(),
            labels,
            table,
            realization: None,
            split_cartan: None,
            killing: OnceLock::new(),
        };
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    /// Builds the algebra spanned by linearly independent matrices closed
    /// under commutators; the matrices become the realization.
    pub fn from_matrices(
        name: impl Into<String>,
        labels: Vec<String>,
        mats: Vec<MatrixQ>,
    ) -> Result<Self> {
        let dim = mats.len();
        if labels.len() != dim {
            return Err(Error::Shape("label count differs from basis size".into()));
        }
        let real = Realization::new(mats)?;
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let c = real.mats[i].commutator(&real.mats[j]);
                let coords = solve_with(&real, &c).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "[{}, {}] leaves the span",
                        labels[i], labels[j]
                    ))
                })?;
                let entry: Vec<(usize, Q)> = sparse(&coords);
                table[j * dim + i] = entry.iter().map(|(k, c)| (*k, -c)).collect();
                table[i * dim + j] = entry;
            }
        }
        let mut g = Self::from_structure_constants(name, labels, table)?;
        g.realization = Some(real);
        Ok(g)
    }

    /// Uses the adjoint representation as realization (faithful when the
    /// center is trivial).
    pub fn with_adjoint_realization(mut self) -> Result<Self> {
        let mats: Vec<MatrixQ> = (0..self.dim())
            .map(|i| self.ad(&self.basis_element(i)))
            .collect();
        self.realization = Some(Realization::new(mats)?);
        Ok(self)
    }

    /// Records a split Cartan subalgebra, checking that it is abelian and
    /// acts semisimply with rational eigenvalues.
    pub fn with_split_cartan(mut self, basis: Vec<Element>) -> Result<Self> {
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                if !is_zero_vec(&self.bracket(x, y)) {
                    return Err(Error::InvalidArgument(
                        "split Cartan basis is not abelian".into(),
                    ));
                }
            }
            let mp = crate::arith::min_poly(&self.ad(x))?;
            if !mp.is_squarefree()? || !mp.splits_over_q()? {
                return Err(Error::InvalidArgument(
                    "split Cartan element is not split semisimple".into(),
                ));
            }
        }
        self.split_cartan = Some(basis);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        crate::arith::unit_vec(self.dim(), i)
    }

    pub fn zero(&self) -> Element {
        zero_vec(self.dim())
    }

    pub fn split_cartan(&self) -> Option<&[Element]> {
        self.split_cartan.as_deref()
    }

    /// Nonzero structure constants of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.table[i * self.dim() + j]
    }

    fn check_len(&self, x: &[Q]) {
        assert_eq!(
            x.len(),
            self.dim(),
            "element does not belong to {}",
            self.name
        );
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Element {
        self.check_len(x);
        self.check_len(y);
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)` acting on coordinate columns.
    pub fn ad(&self, x: &[Q]) -> MatrixQ {
        self.check_len(x);
        let n = self.dim();
        let mut m = MatrixQ::zeros(n, n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    m[(*k, j)] += a * c;
                }
            }
        }
        m
    }

    /// Gram matrix of the Killing form in the basis.
    pub fn killing_matrix(&self) -> &MatrixQ {
        self.killing.get_or_init(|| {
            let n = self.dim();
            let ads: Vec<MatrixQ> = (0..n).map(|i| self.ad(&self.basis_element(i))).collect();
            let mut k = MatrixQ::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v = ads[i].trace_of_product(&ads[j]);
                    k[(j, i)] = v.clone();
                    k[(i, j)] = v;
                }
            }
            k
        })
    }

    pub fn killing(&self, x: &[Q], y: &[Q]) -> Q {
        dot(x, &self.killing_matrix().mul_vec(y))
    }

    pub fn has_realization(&self) -> bool {
        self.realization.is_some()
    }

    /// Size of the realization matrices.
    pub fn realization_size(&self) -> Option<usize> {
        self.realization.as_ref().map(|r| r.mats[0].rows())
    }

    pub fn realize(&self, x: &[Q]) -> Result<MatrixQ> {
        self.check_len(x);
        let real = self.realization.as_ref().ok_or_else(|| {
            Error::Unsupported(format!("{} has no matrix realization", self.name))
        })?;
        let n = real.mats[0].rows();
        let mut m = MatrixQ::zeros(n, n);
        for (c, b) in x.iter().zip(&real.mats) {
            if !c.is_zero() {
                m.add_scaled(c, b);
            }
        }
        Ok(m)
    }

    /// Coordinates of a matrix in the realization, `None` if outside.
    pub fn coords_of_matrix(&self, m: &MatrixQ) -> Result<Option<Element>> {
        let real = self.realization.as_ref().ok_or_else(|| {
            Error::Unsupported(format!("{} has no matrix realization", self.name))
        })?;
        Ok(solve_with(real, m))
    }

    /// `{ y in v | [x, y] = 0 }`
    pub fn centralizer_in(&self, x: &[Q], v: &Subspace) -> Subspace {
        if v.dim() == 0 {
            return v.clone();
        }
        let imgs: Vec<Vector> = v.basis().iter().map(|b| self.bracket(x, b)).collect();
        let m = MatrixQ::from_cols(self.dim(), &imgs);
        let ker: Vec<Vector> = m.kernel().iter().map(|c| v.combine(c)).collect();
        Subspace::span(self.dim(), &ker)
    }

    /// `{ y in v | [y, u] = 0 for all u in s }`
    pub fn centralizer_of_subspace(&self, s: &Subspace, v: &Subspace) -> Subspace {
        s.basis()
            .iter()
            .fold(v.clone(), |acc, x| self.centralizer_in(x, &acc))
    }

    /// Span of `[x, y]` for `x` in `a`, `y` in `b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                out.push(self.bracket(x, y));
            }
        }
        Subspace::span(self.dim(), &out)
    }

    pub fn is_abelian_span(&self, vs: &[Element]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, x)| vs[i + 1..].iter().all(|y| is_zero_vec(&self.bracket(x, y))))
    }

    /// Linear combination of basis vectors given by labels.
    pub fn element(&self, terms: &[(&str, Q)]) -> Result<Element> {
        let mut x = self.zero();
        for (l, c) in terms {
            let i = self
                .label_index(l)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown basis label {l}")))?;
            x[i] += c;
        }
        Ok(x)
    }

    /// Human-readable form such as `2*h1 - e12`.
    pub fn format_element(&self, x: &[Q]) -> String {
        let parts: Vec<String> = x
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{}*{}", crate::arith::format_q(c), l))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn check_antisymmetry(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            if !self.bracket_basis(i, i).is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "[{0}, {0}] is nonzero",
                    self.labels[i]
                )));
            }
            for j in i + 1..n {
                let mut a = self.zero();
                for (k, c) in self.bracket_basis(i, j) {
                    a[*k] += c;
                }
                for (k, c) in self.bracket_basis(j, i) {
                    a[*k] += c;
                }
                if !is_zero_vec(&a) {
                    return Err(Error::InvalidArgument(format!(
                        "bracket of {} and {} is not antisymmetric",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let mut acc = self.zero();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, x) in self.bracket_basis(a, b) {
                            for (m, y) in self.bracket_basis(*l, c) {
                                acc[*m] += x * y;
                            }
                        }
                    }
                    if !is_zero_vec(&acc) {
                        return Err(Error::InvalidArgument(format!(
                            "Jacobi identity fails for {}, {}, {}",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn sparse(v: &[Q]) -> Vec<(usize, Q)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

fn solve_with(real: &Realization, m: &MatrixQ) -> Option<Element> {
    let entries = m.entries();
    let rhs: Vector = real.pivots.iter().map(|&p| entries[p].clone()).collect();
    let coords = real.solver.mul_vec(&rhs);
    let mut back = vec![Q::zero(); entries.len()];
    for (c, b) in coords.iter().zip(&real.mats) {
        axpy(&mut back, c, b.entries());
    }
    (back == entries).then_some(coords)
}
