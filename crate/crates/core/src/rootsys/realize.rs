use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use super::{build_root_system, AbelianRootSet, CartanType, Family, Root, RootSystem};
use crate::arith::{min_poly, proportional, q, MatrixQ, Subspace, Vector, Q};
use crate::error::{Error, Result};
use crate::grassmann::{is_anisotropic_subalgebra, maximal_linear_through, Plane};
use crate::lie::{pair_element, Element, LieAlgebra};
use crate::pair::{make_cartesian_square, restricted_roots, BaseAlgebra, SymmetricPair};

/// Root vectors of a built algebra with a split Cartan subalgebra, matched
/// with the abstract root system of its type.
pub struct BuiltRoots {
    pub base: BaseAlgebra,
    pub root_system: RootSystem,
    pub square: SymmetricPair,
    g: LieAlgebra,
    vectors: HashMap<Root, Element>,
}

fn type_of(base: BaseAlgebra) -> Result<CartanType> {
    match base {
        BaseAlgebra::Sl(n) if n >= 2 => CartanType::new(Family::A, n - 1),
        BaseAlgebra::Sp(n) if n >= 4 && n % 2 == 0 => CartanType::new(Family::C, n / 2),
        BaseAlgebra::G2 => CartanType::new(Family::G, 2),
        other => Err(Error::Unsupported(format!(
            "no split Cartan subalgebra recorded for {other}"
        ))),
    }
}

/// Root vectors `(weight, vector)` of `g` for its split Cartan basis.
fn weight_vectors(g: &LieAlgebra) -> Result<Vec<(Vector, Element)>> {
    let h = g
        .split_cartan()
        .ok_or_else(|| Error::Unsupported(format!("{} has no split Cartan basis", g.name())))?
        .to_vec();
    let r = h.len();
    for step in 1..6i64 {
        let mut h0 = g.zero();
        let mut c = q(1);
        for b in &h {
            crate::arith::axpy(&mut h0, &c, b);
            c *= q(step * 10 + 1);
        }
        let ad0 = g.ad(&h0);
        let mut out = Vec::new();
        let mut ok = true;
        for lambda in min_poly(&ad0)?.rational_roots()? {
            let shifted = ad0.sub(&MatrixQ::identity(g.dim()).scale(&lambda));
            let ker = Subspace::kernel_of(&shifted);
            if lambda.is_zero() {
                ok &= ker.dim() == r;
                continue;
            }
            if ker.dim() != 1 {
                ok = false;
                break;
            }
            let e = ker.basis()[0].clone();
            let k = e.iter().position(|x| !x.is_zero()).expect("nonzero");
            let w: Vector = h.iter().map(|b| &g.ad(b).mul_vec(&e)[k] / &e[k]).collect();
            out.push((w, e));
        }
        if ok && out.len() + r == g.dim() {
            return Ok(out);
        }
    }
    Err(Error::SearchExhausted(
        "no regular element among the trial Cartan elements".into(),
    ))
}

/// Matches the weights of `base` with the abstract roots of its type: the
/// simple roots of the positive system cut out by the trial element are
/// paired with the abstract simple roots by their Cartan integers, and
/// every weight must land on a root.
pub fn realize_roots(base: BaseAlgebra) -> Result<BuiltRoots> {
    let t = type_of(base)?;
    let rs = build_root_system(t)?;
    let g = base.build()?;
    let h = g
        .split_cartan()
        .expect("checked in weight_vectors")
        .to_vec();
    let weights = weight_vectors(&g)?;
    let r = h.len();
    let gram_h = MatrixQ::from_rows(
        &h.iter()
            .map(|x| h.iter().map(|y| g.killing(x, y)).collect())
            .collect::<Vec<Vector>>(),
    );
    let gram_inv = gram_h.inverse()?;
    let form =
        |a: &[Q], b: &[Q]| -> Q { a.iter().zip(gram_inv.mul_vec(b)).map(|(x, y)| x * y).sum() };
    let generic: Vec<Q> = (0..r).map(|i| q(1i64 << (3 * i as u32))).collect();
    let value = |w: &[Q]| -> Q { w.iter().zip(&generic).map(|(a, b)| a * b).sum() };
    if weights.iter().any(|(w, _)| value(w).is_zero()) {
        return Err(Error::SearchExhausted(
            "trial functional is not regular on the weights".into(),
        ));
    }
    let positive: Vec<&Vector> = weights
        .iter()
        .map(|(w, _)| w)
        .filter(|w| value(w).is_positive())
        .collect();
    let simple: Vec<&Vector> = positive
        .iter()
        .filter(|w| {
            !positive
                .iter()
                .any(|a| positive.iter().any(|b| crate::arith::add_vec(a, b) == ***w))
        })
        .copied()
        .collect();
    if simple.len() != r {
        return Err(Error::falsified(
            "root realization",
            format!("{} simple weights for rank {r}", simple.len()),
        ));
    }
    let built_cartan = cartan_integers(&simple, &form)?;
    let abstract_cartan = rs.cartan_matrix();
    let sigma = (0..r)
        .permutations(r)
        .find(|s| (0..r).all(|i| (0..r).all(|j| built_cartan[i][j] == abstract_cartan[s[i]][s[j]])))
        .ok_or_else(|| {
            Error::falsified(
                "root realization",
                "Cartan integers of the built algebra match no numbering",
            )
        })?;
    let simple_mat =
        MatrixQ::from_cols(r, &simple.iter().map(|w| (*w).clone()).collect::<Vec<_>>());
    let mut vectors = HashMap::new();
    for (w, e) in &weights {
        let c = simple_mat.solve(w).ok_or_else(|| {
            Error::falsified("root realization", "weight outside the root lattice")
        })?;
        let mut root = vec![0i64; r];
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_integer() {
                return Err(Error::falsified(
                    "root realization",
                    "non-integral simple-root coordinates",
                ));
            }
            root[sigma[i]] = ci.to_integer().to_i64().expect("small");
        }
        if !rs.is_root(&root) {
            return Err(Error::falsified(
                "root realization",
                format!("weight {root:?} is not an abstract root"),
            ));
        }
        vectors.insert(root, e.clone());
    }
    if vectors.len() != rs.num_roots() {
        return Err(Error::falsified(
            "root realization",
            format!("{} weights for {} roots", vectors.len(), rs.num_roots()),
        ));
    }
    let square = make_cartesian_square(base)?;
    Ok(BuiltRoots {
        base,
        root_system: rs,
        square,
        g,
        vectors,
    })
}

/// `2 (a_i, a_j) / (a_i, a_i)`, which must be integers.
fn cartan_integers(simple: &[&Vector], form: &impl Fn(&[Q], &[Q]) -> Q) -> Result<Vec<Vec<i64>>> {
    simple
        .iter()
        .map(|a| {
            simple
                .iter()
                .map(|b| {
                    let c = q(2) * form(a, b) / form(a, a);
                    if c.is_integer() {
                        Ok(c.to_integer().to_i64().expect("small"))
                    } else {
                        Err(Error::falsified(
                            "Cartan integers",
                            format!("non-integral value {c}"),
                        ))
                    }
                })
                .collect()
        })
        .collect()
}

/// Type of the restricted root system of a pair, from the Killing form on
/// its Cartan subspace; components joined by `x`. A non-reduced system
/// (some `2 alpha` is a root) of indivisible type `B_r` is named `BC_r`.
pub fn restricted_root_type(pair: &SymmetricPair) -> Result<String> {
    let data = restricted_roots(pair)?;
    let g = pair.g();
    let a = pair.cartan().basis();
    let gram = MatrixQ::from_rows(
        &a.iter()
            .map(|x| a.iter().map(|y| g.killing(x, y)).collect())
            .collect::<Vec<Vector>>(),
    );
    let gram_inv = gram.inverse()?;
    let form =
        |u: &[Q], v: &[Q]| -> Q { u.iter().zip(gram_inv.mul_vec(v)).map(|(x, y)| x * y).sum() };
    let pos: Vec<&Vector> = data.positive.iter().map(|s| &s.alpha).collect();
    let half = |v: &Vector| -> Vector { v.iter().map(|x| x / q(2)).collect() };
    let indivisible: Vec<&Vector> = pos
        .iter()
        .filter(|v| !pos.contains(&&half(v)))
        .copied()
        .collect();
    let non_reduced = indivisible.len() < pos.len();
    let simple: Vec<&Vector> = indivisible
        .iter()
        .filter(|w| {
            !pos.iter()
                .any(|x| pos.iter().any(|y| crate::arith::add_vec(x, y) == ***w))
        })
        .copied()
        .collect();
    if simple.len() != pair.rank() {
        return Err(Error::falsified(
            "restricted roots",
            format!("{} simple roots for rank {}", simple.len(), pair.rank()),
        ));
    }
    let types = super::identify_type(&cartan_integers(&simple, &form)?)?;
    let names: Vec<String> = types
        .iter()
        .map(|t| match (non_reduced, t.family) {
            (true, Family::B) => format!("BC{}", t.rank),
            (true, Family::A) if t.rank == 1 => "BC1".to_string(),
            (true, _) => format!("{t} (non-reduced)"),
            _ => t.to_string(),
        })
        .collect();
    Ok(names.join("x"))
}

impl BuiltRoots {
    pub fn root_vector(&self, beta: &[i64]) -> Option<&Element> {
        self.vectors.get(beta)
    }

    /// `[e_beta, e_gamma] != 0` exactly when `beta + gamma` is a root, for
    /// all pairs of positive roots.
    pub fn brackets_match_sums(&self) -> bool {
        let pos = self.root_system.positive_roots();
        pos.iter().all(|b| {
            pos.iter().all(|c| {
                let s: Root = b.iter().zip(c).map(|(x, y)| x + y).collect();
                let br = self.g.bracket(&self.vectors[b], &self.vectors[c]);
                br.iter().all(|x| x.is_zero()) != self.root_system.is_root(&s)
            })
        })
    }

    /// The plane of anti-diagonal copies `(e, -e)` of the root vectors in the
    /// square.
    pub fn plane_of(&self, set: &AbelianRootSet) -> Result<Plane> {
        let elems: Vec<Element> = set
            .roots(&self.root_system)
            .iter()
            .map(|b| {
                let e = &self.vectors[b];
                let neg: Vec<Q> = e.iter().map(|x| -x).collect();
                pair_element(e, &neg)
            })
            .collect();
        Plane::from_basis(&self.square, &elems)
    }
}

/// Whether the root vectors of an abelian root set span an abelian plane of
/// the square of the built algebra.
pub fn realize_abelian_set(built: &BuiltRoots, set: &AbelianRootSet) -> Result<bool> {
    let u = built.plane_of(set)?;
    Ok(u.dim() == set.len() && is_anisotropic_subalgebra(&built.square, &u))
}

/// One maximal linear family `Γ(z)` through a Cartan subspace.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyDegree {
    pub alpha: Vec<String>,
    /// `m_Γ`
    pub dim: usize,
    /// `m_Γ + 1`
    pub degree: usize,
    /// Sum of `dim p_beta` over positive roots `beta` proportional to `alpha`.
    pub multiplicity: usize,
}

/// The families through the pair's Cartan subspace with their
/// anticanonical degrees; the dimension of each family is checked against
/// the restricted-root multiplicities.
pub fn anticanonical_degrees(
    pair: &SymmetricPair,
    rng: &mut impl Rng,
    samples: usize,
) -> Result<Vec<FamilyDegree>> {
    let fams = maximal_linear_through(pair, rng, samples)?;
    if !fams.members_abelian {
        return Err(Error::falsified(
            "linear families",
            "a sampled member is not abelian",
        ));
    }
    let data = restricted_roots(pair)?;
    let kernels = crate::pair::singular_kernels(pair, &data);
    let mut out = Vec::new();
    for (f, k) in fams.families.iter().zip(&kernels) {
        let multiplicity: usize = data
            .positive
            .iter()
            .filter(|s| proportional(&s.alpha, &k.alpha))
            .map(|s| s.p_alpha.dim())
            .sum();
        let degree = f.anticanonical_degree().ok_or_else(|| {
            Error::falsified("linear families", "a family is not a projective space")
        })?;
        if f.dimension() != multiplicity {
            return Err(Error::falsified(
                "family dimension",
                format!(
                    "dim Γ(z) = {} but the multiplicities sum to {multiplicity}",
                    f.dimension()
                ),
            ));
        }
        out.push(FamilyDegree {
            alpha: k.alpha.iter().map(crate::arith::format_q).collect(),
            dim: f.dimension(),
            degree,
            multiplicity,
        });
    }
    Ok(out)
}
