use num_traits::Zero;

use super::matrix::MatrixQ;
use super::rational::Q;
use super::{is_zero_vec, Vector};

/// Linear subspace of `Q^n`, stored as the nonzero rows of its reduced row
/// echelon basis. Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &MatrixQ::identity(ambient).row_vecs())
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        assert!(
            vectors.iter().all(|v| v.len() == ambient),
            "vector length differs from ambient"
        );
        let (r, pivots) = MatrixQ::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    /// Kernel of `m` as a subspace of `Q^{m.cols()}`.
    pub fn kernel_of(m: &MatrixQ) -> Self {
        Self::span(m.cols(), &m.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> MatrixQ {
        if self.basis.is_empty() {
            MatrixQ::zeros(0, self.ambient)
        } else {
            MatrixQ::from_rows(&self.basis)
        }
    }

    /// Coordinates of `v` in the echelon basis, assuming `v` lies in the span.
    pub fn coords_unchecked(&self, v: &[Q]) -> Vector {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Q]) -> Option<Vector> {
        let c = self.coords_unchecked(v);
        if self.combine(&c) == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn combine(&self, coeffs: &[Q]) -> Vector {
        let mut out = vec![Q::zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            super::axpy(&mut out, c, b);
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    pub fn with_vectors(&self, vs: &[Vector]) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(vs.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    /// Vectors `w` with `<w, v> = 0` for every `v` in the subspace.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        Subspace::kernel_of(&self.basis_matrix())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Basis of a complement of `self` inside `outer` (which must contain it).
    pub fn complement_in(&self, outer: &Subspace) -> Vec<Vector> {
        let mut cur = self.clone();
        let mut out = Vec::new();
        for v in outer.basis() {
            if !cur.contains(v) {
                cur = cur.with_vectors(std::slice::from_ref(v));
                out.push(v.clone());
            }
        }
        out
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, m: &MatrixQ) -> Subspace {
        let imgs: Vec<Vector> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(m.rows(), &imgs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), Subspace::span(3, &[v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.complement_in(&Subspace::full(3)).len(), 1);
    }

    #[test]
    fn coordinates() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let x = v(&[2, 5, 3]);
        let c = a.coords(&x).unwrap();
        assert_eq!(a.combine(&c), x);
        assert!(a.coords(&v(&[0, 0, 1])).is_none());
    }
}
