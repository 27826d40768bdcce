use std::sync::Arc;

use crate::arith::{MatrixQ, Subspace, Vector};
use crate::error::{Error, Result};
use crate::lie::{Element, LieAlgebra};

use super::{PairKind, SymmetricPair};

/// The pair `(c_g(s), theta)` for a subspace `s` of the Cartan subspace,
/// together with the inclusion of its coordinates into `g`.
pub fn centralizer_pair(pair: &SymmetricPair, s: &Subspace) -> Result<(SymmetricPair, MatrixQ)> {
    if !pair.cartan().contains_subspace(s) {
        return Err(Error::InvalidArgument(
            "subspace is not inside the Cartan subspace".into(),
        ));
    }
    let g = pair.g();
    let c = g.centralizer_of_subspace(s, &Subspace::full(g.dim()));
    let basis = c.basis().to_vec();
    let labels: Vec<String> = (1..=basis.len()).map(|i| format!("c{i}")).collect();
    let mats: Vec<MatrixQ> = basis.iter().map(|b| g.realize(b)).collect::<Result<_>>()?;
    let sub = LieAlgebra::from_matrices(format!("c({})", g.name()), labels, mats)?;
    let incl = MatrixQ::from_cols(g.dim(), &basis);
    let to_sub = |x: &[crate::arith::Q]| -> Result<Vector> {
        c.coords(x).ok_or_else(|| {
            Error::falsified(
                "centralizer pair",
                "theta does not preserve the centralizer",
            )
        })
    };
    let d = basis.len();
    let mut theta = MatrixQ::zeros(d, d);
    for (j, b) in basis.iter().enumerate() {
        for (i, v) in to_sub(&pair.theta().mul_vec(b))?.into_iter().enumerate() {
            theta[(i, j)] = v;
        }
    }
    let cartan: Vec<Element> = pair
        .cartan()
        .basis()
        .iter()
        .map(|a| to_sub(a))
        .collect::<Result<_>>()?;
    let k_split = match pair.k_split() {
        Some(y) if c.contains(y) => Some(to_sub(y)?),
        _ => None,
    };
    let kind = PairKind::Centralizer {
        parent: pair.kind().to_string(),
    };
    let sub_pair = SymmetricPair::new(Arc::new(sub), theta, kind, &cartan, k_split)?;
    Ok((sub_pair, incl))
}

/// `p(u) = u ∩ p'` and `j(v) = v + p_Z` between reductions of a pair and of
/// its derived pair, where `p_Z` is the central part of `p` and
/// `p' = p ∩ [g, g]`.
#[derive(Clone, Debug)]
pub struct DerivedMaps {
    pub p_center: Subspace,
    pub p_derived: Subspace,
}

impl DerivedMaps {
    pub fn new(pair: &SymmetricPair) -> Self {
        let g = pair.g();
        let full = Subspace::full(g.dim());
        let center = g.centralizer_of_subspace(&full, &full);
        let derived = g.bracket_span(&full, &full);
        DerivedMaps {
            p_center: center.intersect(pair.p()),
            p_derived: derived.intersect(pair.p()),
        }
    }

    pub fn is_center_free(&self) -> bool {
        self.p_center.dim() == 0
    }

    /// `u ∩ p'`; every reduction contains `p_Z`, so `u` must as well.
    pub fn project(&self, u: &Subspace) -> Result<Subspace> {
        if !u.contains_subspace(&self.p_center) {
            return Err(Error::InvalidArgument(
                "plane does not contain the central part of p".into(),
            ));
        }
        Ok(u.intersect(&self.p_derived))
    }

    /// `v + p_Z`
    pub fn include(&self, v: &Subspace) -> Subspace {
        v.sum(&self.p_center)
    }
}
