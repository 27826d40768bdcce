//! Planes in `p`, Plücker vectors, the Killing quadric and the linear
//! families `Γ(v, w)` of planes pinched between two subspaces.

use itertools::Itertools;
use num_traits::Zero;
use rand::Rng;

use crate::arith::{is_zero_vec, normalize_first, q, MatrixQ, Subspace, Vector, Q};
use crate::error::{Error, Result};
use crate::lie::{semisimple_part, Element};
use crate::pair::{restricted_roots, singular_kernels, SymmetricPair};

/// Subspace of `p` in coordinates of the echelon basis of `p`, stored in
/// reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Plane {
    space: Subspace,
}

impl Plane {
    /// Plane spanned by independent elements of `p` (coordinates of `g`).
    pub fn from_basis(pair: &SymmetricPair, vectors: &[Element]) -> Result<Self> {
        let coords: Vec<Vector> = vectors
            .iter()
            .map(|v| pair.to_p(v))
            .collect::<Result<_>>()?;
        Self::from_p_coords(pair.dim_p(), &coords)
    }

    pub fn from_p_coords(dim_p: usize, rows: &[Vector]) -> Result<Self> {
        let space = Subspace::span(dim_p, rows);
        if space.dim() != rows.len() {
            return Err(Error::InvalidArgument(
                "plane basis is linearly dependent".into(),
            ));
        }
        Ok(Plane { space })
    }

    /// Plane from a subspace of `g` lying in `p`.
    pub fn from_subspace(pair: &SymmetricPair, s: &Subspace) -> Result<Self> {
        Self::from_basis(pair, s.basis())
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Canonical basis in `p` coordinates.
    pub fn basis_p(&self) -> &[Vector] {
        self.space.basis()
    }

    /// Canonical basis as elements of `g`.
    pub fn basis_g(&self, pair: &SymmetricPair) -> Vec<Element> {
        self.space.basis().iter().map(|c| pair.from_p(c)).collect()
    }

    pub fn to_subspace(&self, pair: &SymmetricPair) -> Subspace {
        Subspace::span(pair.g().dim(), &self.basis_g(pair))
    }

    pub fn contains_subspace_p(&self, s: &Subspace) -> bool {
        self.space.contains_subspace(s)
    }

    pub fn plucker(&self) -> PluckerVector {
        PluckerVector::from_rows(self.space.ambient(), self.space.basis())
    }
}

/// Maximal minors of a basis, indexed by increasing subsets of the ambient
/// coordinates, scaled so the first nonzero one is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PluckerVector {
    pub subsets: Vec<Vec<usize>>,
    pub coords: Vec<Q>,
}

impl PluckerVector {
    pub fn from_rows(ambient: usize, rows: &[Vector]) -> Self {
        let m = MatrixQ::from_rows(rows);
        let r = rows.len();
        let idx: Vec<usize> = (0..r).collect();
        let subsets: Vec<Vec<usize>> = (0..ambient).combinations(r).collect();
        let coords: Vec<Q> = subsets
            .iter()
            .map(|cols| m.submatrix(&idx, cols).determinant().expect("square"))
            .collect();
        PluckerVector {
            subsets,
            coords: normalize_first(&coords),
        }
    }

    /// Unnormalized coordinates normalized the same way.
    pub fn from_coords(subsets: Vec<Vec<usize>>, coords: &[Q]) -> Self {
        PluckerVector {
            subsets,
            coords: normalize_first(coords),
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }
}

/// True iff the basis elements of `u` commute pairwise; for a decomposable
/// point this is the vanishing of the section defining abelian planes.
pub fn is_anisotropic_subalgebra(pair: &SymmetricPair, u: &Plane) -> bool {
    pair.g().is_abelian_span(&u.basis_g(pair))
}

/// Determinant of the Killing Gram matrix of the canonical basis.
pub fn exterior_killing_value(pair: &SymmetricPair, u: &Plane) -> Q {
    let g = pair.g();
    let basis = u.basis_g(pair);
    let gram = MatrixQ::from_rows(
        &basis
            .iter()
            .map(|x| basis.iter().map(|y| g.killing(x, y)).collect())
            .collect::<Vec<Vector>>(),
    );
    gram.determinant().expect("square")
}

/// Nilpotent elements of an abelian plane: the kernel of the linear map
/// `x -> x_s` on `u`, in `p` coordinates.
pub fn nilpotent_part(pair: &SymmetricPair, u: &Plane) -> Result<Subspace> {
    if !is_anisotropic_subalgebra(pair, u) {
        return Err(Error::InvalidArgument("plane is not abelian".into()));
    }
    let g = pair.g();
    let s_parts: Vec<Element> = u
        .basis_g(pair)
        .iter()
        .map(|x| semisimple_part(g, x))
        .collect::<Result<_>>()?;
    let m = MatrixQ::from_cols(g.dim(), &s_parts);
    let ker: Vec<Vector> = m.kernel().iter().map(|c| u.space.combine(c)).collect();
    Ok(Subspace::span(pair.dim_p(), &ker))
}

/// Whether a reduction is special, decided by the Killing quadric and
/// cross-checked against the presence of nilpotent elements.
pub fn is_special_reduction(pair: &SymmetricPair, u: &Plane, known_in_r: bool) -> Result<bool> {
    if !known_in_r {
        return Err(Error::InvalidArgument(
            "special reductions are only defined for points of the variety of reductions".into(),
        ));
    }
    let on_quadric = exterior_killing_value(pair, u).is_zero();
    let has_nilpotent = nilpotent_part(pair, u)?.dim() > 0;
    if on_quadric != has_nilpotent {
        return Err(Error::falsified(
            "special reductions are cut out by the Killing quadric",
            format!("quadric test {on_quadric}, nilpotent test {has_nilpotent}"),
        ));
    }
    Ok(on_quadric)
}

/// `Γ(v, w) = { u in G(r, p) | v ⊂ u ⊂ w }`, subspaces in `p` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFamily {
    pub lower: Subspace,
    pub upper: Subspace,
    pub r: usize,
}

impl GammaFamily {
    pub fn new(lower: Subspace, upper: Subspace, r: usize) -> Result<Self> {
        if !upper.contains_subspace(&lower) {
            return Err(Error::InvalidArgument(
                "lower subspace is not inside the upper one".into(),
            ));
        }
        if lower.dim() > r || r > upper.dim() {
            return Err(Error::InvalidArgument(format!(
                "need dim v <= {r} <= dim w, got {} and {}",
                lower.dim(),
                upper.dim()
            )));
        }
        Ok(GammaFamily { lower, upper, r })
    }

    /// `dim(u/v) * dim(w/u)`
    pub fn dimension(&self) -> usize {
        (self.r - self.lower.dim()) * (self.upper.dim() - self.r)
    }

    /// A Grassmannian `G(a, b)` is a projective space iff `a <= 1` or `b - a <= 1`.
    pub fn is_linear(&self) -> bool {
        self.r - self.lower.dim() <= 1 || self.upper.dim() - self.r <= 1
    }

    /// Degree of the anticanonical bundle on a projective space `P^d`, `d + 1`.
    pub fn anticanonical_degree(&self) -> Option<usize> {
        self.is_linear().then(|| self.dimension() + 1)
    }

    pub fn contains(&self, u: &Plane) -> bool {
        u.dim() == self.r
            && u.space.contains_subspace(&self.lower)
            && self.upper.contains_subspace(&u.space)
    }

    /// Random member: `v` plus random combinations of a complement of `v` in `w`.
    pub fn sample(&self, rng: &mut impl Rng) -> Plane {
        let comp = self.lower.complement_in(&self.upper);
        let need = self.r - self.lower.dim();
        loop {
            let extra: Vec<Vector> = (0..need)
                .map(|_| {
                    let mut v = vec![Q::zero(); self.lower.ambient()];
                    for c in &comp {
                        crate::arith::axpy(&mut v, &q(rng.gen_range(-3..=3)), c);
                    }
                    v
                })
                .collect();
            let s = self.lower.with_vectors(&extra);
            if s.dim() == self.r {
                return Plane { space: s };
            }
        }
    }

    /// `Γ(v1 + v2, w1 ∩ w2)`, or `None` when it is empty.
    pub fn intersect(&self, o: &Self) -> Option<Self> {
        if self.r != o.r {
            return None;
        }
        let lower = self.lower.sum(&o.lower);
        let upper = self.upper.intersect(&o.upper);
        GammaFamily::new(lower, upper, self.r).ok()
    }

    pub fn is_single_point(&self) -> bool {
        self.lower.dim() == self.r
    }
}

/// Summary of the families `Γ(z) = Γ(z, c_p(z))` through a Cartan subspace.
#[derive(Clone, Debug)]
pub struct LinearFamilies {
    pub families: Vec<GammaFamily>,
    /// Every sampled member was abelian.
    pub members_abelian: bool,
    /// All pairwise intersections are exactly the Cartan subspace.
    pub transversal: bool,
}

/// The families `Γ(z)` over the root kernels `z` of the chosen Cartan
/// subspace, with their members sampled for commutativity and their
/// pairwise intersections compared with the base point.
pub fn maximal_linear_through(
    pair: &SymmetricPair,
    rng: &mut impl Rng,
    samples: usize,
) -> Result<LinearFamilies> {
    let data = restricted_roots(pair)?;
    let kernels = singular_kernels(pair, &data);
    let to_p = |s: &Subspace| -> Result<Subspace> {
        let rows: Vec<Vector> = s
            .basis()
            .iter()
            .map(|x| pair.to_p(x))
            .collect::<Result<_>>()?;
        Ok(Subspace::span(pair.dim_p(), &rows))
    };
    let a = to_p(pair.cartan())?;
    let mut families = Vec::new();
    for k in &kernels {
        families.push(GammaFamily::new(
            to_p(&k.z)?,
            to_p(&k.centralizer_p)?,
            pair.rank(),
        )?);
    }
    let base = Plane { space: a.clone() };
    let mut members_abelian = true;
    for f in &families {
        if !f.contains(&base) {
            return Err(Error::falsified(
                "families through a Cartan subspace",
                "family misses its base point",
            ));
        }
        for _ in 0..samples {
            members_abelian &= is_anisotropic_subalgebra(pair, &f.sample(rng));
        }
    }
    let mut transversal = true;
    for (i, f) in families.iter().enumerate() {
        for h in &families[i + 1..] {
            transversal &= matches!(f.intersect(h), Some(x) if x.is_single_point() && x.lower == a);
        }
    }
    Ok(LinearFamilies {
        families,
        members_abelian,
        transversal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{embed, pair_element};
    use crate::pair::{make_transpose_pair, square_by_name};
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(11)
    }

    /// `(x, -x)` in the square of `g` for a label of `g`.
    fn anti(pair: &SymmetricPair, label: &str) -> Element {
        let d = pair.g().dim() / 2;
        let i = pair.g().label_index(&format!("{label}@1")).unwrap();
        let x = embed(&crate::arith::unit_vec(d, i), 0, d);
        let neg: Vec<Q> = x.iter().map(|c| -c).collect();
        pair_element(&x, &neg)
    }

    #[test]
    fn canonical_planes() {
        let pair = square_by_name("sl3").unwrap();
        let (x, y) = (anti(&pair, "e12"), anti(&pair, "e13"));
        let u = Plane::from_basis(&pair, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(
            u,
            Plane::from_basis(&pair, &[y.clone(), x.clone()]).unwrap()
        );
        assert!(Plane::from_basis(&pair, &[x.clone(), x.clone()]).is_err());
        let c = Plane::from_subspace(&pair, pair.cartan()).unwrap();
        assert_eq!(c.dim(), 2);
        // A vector of k is rejected.
        let k0 = pair.k().basis()[0].clone();
        assert!(Plane::from_basis(&pair, &[k0]).is_err());
    }

    #[test]
    fn abelian_membership() {
        let pair = square_by_name("sl3").unwrap();
        let c = Plane::from_subspace(&pair, pair.cartan()).unwrap();
        assert!(is_anisotropic_subalgebra(&pair, &c));
        let u = Plane::from_basis(&pair, &[anti(&pair, "e12"), anti(&pair, "e13")]).unwrap();
        assert!(is_anisotropic_subalgebra(&pair, &u));
        let v = Plane::from_basis(&pair, &[anti(&pair, "e12"), anti(&pair, "e21")]).unwrap();
        assert!(!is_anisotropic_subalgebra(&pair, &v));
    }

    #[test]
    fn killing_values_and_special_reductions() {
        let pair = square_by_name("sl2").unwrap();
        let h = Plane::from_basis(&pair, &[anti(&pair, "h1")]).unwrap();
        assert_eq!(exterior_killing_value(&pair, &h), q(16));
        assert!(!is_special_reduction(&pair, &h, true).unwrap());
        let e = Plane::from_basis(&pair, &[anti(&pair, "e12")]).unwrap();
        assert_eq!(exterior_killing_value(&pair, &e), q(0));
        assert!(is_special_reduction(&pair, &e, true).unwrap());
        assert!(is_special_reduction(&pair, &e, false).is_err());
        let t = make_transpose_pair(3).unwrap();
        let c = Plane::from_subspace(&t, t.cartan()).unwrap();
        assert!(!exterior_killing_value(&t, &c).is_zero());
    }

    #[test]
    fn plucker_matches_minors_and_equality() {
        let pair = square_by_name("sl3").unwrap();
        let (x, y) = (anti(&pair, "e12"), anti(&pair, "h1"));
        let sum: Vec<Q> = x.iter().zip(&y).map(|(a, b)| a + b * q(3)).collect();
        let u = Plane::from_basis(&pair, &[x.clone(), y.clone()]).unwrap();
        let w = Plane::from_basis(&pair, &[sum, y]).unwrap();
        assert_eq!(u, w);
        assert_eq!(u.plucker(), w.plucker());
    }

    #[test]
    fn gamma_families() {
        let n = 8;
        let e = |i: usize| crate::arith::unit_vec(n, i);
        let v = Subspace::span(n, &[e(0)]);
        let w = Subspace::span(n, &[e(0), e(1), e(2), e(3)]);
        let f = GammaFamily::new(v.clone(), w.clone(), 2).unwrap();
        assert_eq!((f.dimension(), f.is_linear()), (2, true));
        assert_eq!(f.anticanonical_degree(), Some(3));
        let mut r = rng();
        for _ in 0..5 {
            assert!(f.contains(&f.sample(&mut r)));
        }
        let point = GammaFamily::new(w.clone(), w.clone(), 4).unwrap();
        assert_eq!(point.dimension(), 0);
        let all = GammaFamily::new(Subspace::zero(n), Subspace::full(n), 2).unwrap();
        assert_eq!((all.dimension(), all.is_linear()), (12, false));
        assert!(GammaFamily::new(w, v, 2).is_err());
    }

    #[test]
    fn families_through_cartan() {
        let mut r = rng();
        for (pair, count, dim) in [
            (square_by_name("sl3").unwrap(), 3, 2),
            (square_by_name("sp4").unwrap(), 4, 2),
            (make_transpose_pair(3).unwrap(), 3, 1),
        ] {
            let lf = maximal_linear_through(&pair, &mut r, 5).unwrap();
            assert_eq!(lf.families.len(), count);
            assert!(lf
                .families
                .iter()
                .all(|f| f.dimension() == dim && f.is_linear()));
            assert!(lf.members_abelian && lf.transversal);
        }
    }
}
