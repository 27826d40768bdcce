use num_traits::{Signed, Zero};

use crate::arith::{min_poly, normalize_first, proportional, MatrixQ, Subspace, Vector, Q};
use crate::error::{Error, Result};
use crate::lie::Element;

use super::SymmetricPair;

/// Root spaces attached to one positive restricted root `alpha`.
#[derive(Clone, Debug)]
pub struct RootSpace {
    /// Values of `alpha` on the echelon basis of the Cartan subspace.
    pub alpha: Vector,
    /// `alpha` evaluated at the generic element.
    pub generic_value: Q,
    pub g_plus: Subspace,
    pub g_minus: Subspace,
    /// `(g_alpha + g_-alpha) ∩ p`
    pub p_alpha: Subspace,
    /// `(g_alpha + g_-alpha) ∩ k`
    pub k_alpha: Subspace,
}

#[derive(Clone, Debug)]
pub struct RestrictedRootData {
    /// All roots, positive ones first in the order of `positive`.
    pub roots: Vec<Vector>,
    pub positive: Vec<RootSpace>,
    /// `c_k(a)`
    pub m: Subspace,
    /// The element of `a` used to separate root spaces.
    pub generic: Element,
}

impl RestrictedRootData {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.positive.iter().map(|r| r.p_alpha.dim()).collect()
    }

    /// Positive roots up to proportionality (drops `2 alpha` when both occur).
    pub fn reduced_positive(&self) -> Vec<&RootSpace> {
        let mut out: Vec<&RootSpace> = Vec::new();
        for r in &self.positive {
            if !out.iter().any(|s| proportional(&s.alpha, &r.alpha)) {
                out.push(r);
            }
        }
        out
    }
}

/// Joint eigenvalues of the Cartan basis on `e`, if `e` is a joint eigenspace.
fn joint_weight(pair: &SymmetricPair, e: &Subspace) -> Option<Vector> {
    let g = pair.g();
    let mut w = Vec::new();
    for a in pair.cartan().basis() {
        let ad = g.ad(a);
        let b0 = &e.basis()[0];
        let img = ad.mul_vec(b0);
        let k = b0.iter().position(|c| !c.is_zero())?;
        let c = &img[k] / &b0[k];
        for b in e.basis() {
            let img = ad.mul_vec(b);
            if img.iter().zip(b).any(|(x, y)| x != &(&c * y)) {
                return None;
            }
        }
        w.push(c);
    }
    Some(w)
}

/// Simultaneous eigenspace decomposition of `g` under the Cartan subspace.
pub fn restricted_roots(pair: &SymmetricPair) -> Result<RestrictedRootData> {
    let g = pair.g();
    let n = g.dim();
    'step: for step in 1..12 {
        let a0 = pair.generic_cartan_element(step);
        let ad0 = g.ad(&a0);
        let mp = min_poly(&ad0)?;
        if !mp.is_squarefree()? {
            return Err(Error::falsified(
                "restricted roots",
                "Cartan element is not semisimple",
            ));
        }
        let values = mp.rational_roots()?;
        if values.len() != mp.degree().unwrap_or(0) {
            return Err(Error::IrrationalSpectrum);
        }
        let mut spaces = Vec::new();
        let mut total = 0;
        for lambda in &values {
            let e = Subspace::kernel_of(&ad0.sub(&MatrixQ::identity(n).scale(lambda)));
            total += e.dim();
            let Some(w) = joint_weight(pair, &e) else {
                continue 'step;
            };
            spaces.push((lambda.clone(), w, e));
        }
        if total != n {
            return Err(Error::falsified(
                "restricted roots",
                "eigenspaces do not span g",
            ));
        }
        return assemble(pair, a0, spaces);
    }
    Err(Error::SearchExhausted(
        "no generic element separates the root spaces".into(),
    ))
}

fn assemble(
    pair: &SymmetricPair,
    a0: Element,
    spaces: Vec<(Q, Vector, Subspace)>,
) -> Result<RestrictedRootData> {
    let find = |lambda: &Q| spaces.iter().find(|(l, _, _)| l == lambda);
    let zero = find(&Q::zero())
        .ok_or_else(|| Error::falsified("restricted roots", "no zero weight space"))?;
    if &zero.2.intersect(pair.p()) != pair.cartan() {
        return Err(Error::falsified(
            "restricted roots",
            "c_p(a) differs from a",
        ));
    }
    let m = zero.2.intersect(pair.k());
    let mut positive = Vec::new();
    let mut sorted: Vec<&(Q, Vector, Subspace)> =
        spaces.iter().filter(|(l, _, _)| l.is_positive()).collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    for (lambda, w, e) in sorted {
        let (_, wn, en) = find(&-lambda).ok_or_else(|| {
            Error::falsified(
                "restricted roots",
                "root system is not closed under negation",
            )
        })?;
        if wn.iter().zip(w).any(|(x, y)| x != &-y) {
            return Err(Error::falsified(
                "restricted roots",
                "negative weight mismatch",
            ));
        }
        let sum = e.sum(en);
        positive.push(RootSpace {
            alpha: w.clone(),
            generic_value: lambda.clone(),
            g_plus: e.clone(),
            g_minus: en.clone(),
            p_alpha: sum.intersect(pair.p()),
            k_alpha: sum.intersect(pair.k()),
        });
    }
    let mut roots: Vec<Vector> = positive.iter().map(|r| r.alpha.clone()).collect();
    roots.extend(
        positive
            .iter()
            .map(|r| r.alpha.iter().map(|c| -c).collect::<Vector>()),
    );
    let data = RestrictedRootData {
        roots,
        positive,
        m,
        generic: a0,
    };
    check_decomposition(pair, &data)?;
    Ok(data)
}

/// Exact bookkeeping: `p = a + sum p_alpha`, `k = m + sum k_alpha`, the swap
/// property of `ad(a0)`, and nondegeneracy of the Killing form on `a`.
fn check_decomposition(pair: &SymmetricPair, data: &RestrictedRootData) -> Result<()> {
    let g = pair.g();
    let dp: usize = pair.rank() + data.positive.iter().map(|r| r.p_alpha.dim()).sum::<usize>();
    if dp != pair.dim_p() {
        return Err(Error::falsified(
            "p decomposition",
            format!("rank + sum dim p_alpha = {dp}, dim p = {}", pair.dim_p()),
        ));
    }
    let dk: usize = data.m.dim() + data.positive.iter().map(|r| r.k_alpha.dim()).sum::<usize>();
    if dk != pair.k().dim() {
        return Err(Error::falsified(
            "k decomposition",
            format!("dim m + sum dim k_alpha = {dk}, dim k = {}", pair.k().dim()),
        ));
    }
    let ad0 = g.ad(&data.generic);
    for r in &data.positive {
        if r.k_alpha.image(&ad0) != r.p_alpha || r.p_alpha.image(&ad0) != r.k_alpha {
            return Err(Error::falsified(
                "root space swap",
                "ad(a) does not exchange k_alpha and p_alpha",
            ));
        }
    }
    let basis = pair.cartan().basis();
    let gram = MatrixQ::from_rows(
        &basis
            .iter()
            .map(|x| basis.iter().map(|y| g.killing(x, y)).collect())
            .collect::<Vec<Vector>>(),
    );
    if gram.determinant()?.is_zero() {
        return Err(Error::falsified(
            "regular Cartan subspace",
            "Killing form degenerates on a",
        ));
    }
    Ok(())
}

/// Kernel `z = Ker alpha` of a positive root together with `c_p(z)`.
#[derive(Clone, Debug)]
pub struct SingularKernel {
    pub alpha: Vector,
    pub z: Subspace,
    pub centralizer_p: Subspace,
}

/// One kernel per positive root up to proportionality.
pub fn singular_kernels(pair: &SymmetricPair, data: &RestrictedRootData) -> Vec<SingularKernel> {
    let basis = pair.cartan().basis();
    let n = pair.g().dim();
    data.reduced_positive()
        .into_iter()
        .map(|r| {
            let row = MatrixQ::from_rows(std::slice::from_ref(&r.alpha));
            let zs: Vec<Vector> = row
                .kernel()
                .iter()
                .map(|c| {
                    let mut x = vec![Q::zero(); n];
                    for (ci, b) in c.iter().zip(basis) {
                        crate::arith::axpy(&mut x, ci, b);
                    }
                    x
                })
                .collect();
            let z = Subspace::span(n, &zs);
            let centralizer_p = pair.centralizer_p_of(&z);
            SingularKernel {
                alpha: normalize_first(&r.alpha),
                z,
                centralizer_p,
            }
        })
        .collect()
}
