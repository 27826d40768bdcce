//! Lie algebras by structure constants with faithful matrix realizations.

mod algebra;
mod classical;
mod g2;
mod jordan;

pub use algebra::{Element, LieAlgebra};
pub use classical::{
    build_classical, build_product, embed, pair_element, sl, so, sp, split, ClassicalKind,
};
pub use g2::build_g2;
pub use jordan::{
    classify_element, exp_ad, exp_nilpotent, is_nilpotent, is_semisimple, jordan_chevalley,
    jordan_chevalley_matrix, semisimple_part, ElementClass,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{add_vec, is_zero_vec, q, scale_vec, Subspace, Q};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn el(g: &LieAlgebra, terms: &[(&str, i64)]) -> Element {
        let t: Vec<(&str, Q)> = terms.iter().map(|(l, c)| (*l, q(*c))).collect();
        g.element(&t).unwrap()
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(sl(2).unwrap().dim(), 3);
        assert_eq!(so(3).unwrap().dim(), 3);
        assert_eq!(sp(4).unwrap().dim(), 10);
        assert_eq!(sl(4).unwrap().dim(), 15);
        assert_eq!(so(5).unwrap().dim(), 10);
        assert!(sl(1).is_err());
        assert!(sp(3).is_err());
    }

    #[test]
    fn sl2_brackets_match_commutators() {
        let g = sl(2).unwrap();
        let (h, e, f) = (
            el(&g, &[("h1", 1)]),
            el(&g, &[("e12", 1)]),
            el(&g, &[("e21", 1)]),
        );
        assert_eq!(g.bracket(&e, &f), h);
        assert_eq!(g.bracket(&h, &e), scale_vec(&q(2), &e));
        assert!(is_zero_vec(&g.bracket(&e, &e)));
        // Oracle: matrix commutator in the realization.
        let c = g.realize(&e).unwrap().commutator(&g.realize(&f).unwrap());
        assert_eq!(g.coords_of_matrix(&c).unwrap().unwrap(), h);
    }

    #[test]
    fn killing_values() {
        let g = sl(2).unwrap();
        let (h, e) = (el(&g, &[("h1", 1)]), el(&g, &[("e12", 1)]));
        assert_eq!(g.killing(&h, &h), q(8));
        assert_eq!(g.killing(&e, &e), q(0));
    }

    #[test]
    fn product_is_blockwise() {
        let s = sl(2).unwrap();
        let p = build_product(&s, &s).unwrap();
        assert_eq!(p.dim(), 6);
        let x = embed(&el(&s, &[("e12", 1)]), 0, 6);
        let y = embed(&el(&s, &[("e21", 1)]), 3, 6);
        assert!(is_zero_vec(&p.bracket(&x, &y)));
        // Oracle: trace form of the adjoint action of each factor.
        let k = p.killing_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k[(i, j + 3)], q(0));
                assert_eq!(k[(i, j)], s.killing_matrix()[(i, j)]);
            }
        }
    }

    #[test]
    fn g2_shape() {
        let g = build_g2().unwrap();
        assert_eq!(g.dim(), 14);
        let cartan = g.split_cartan().unwrap();
        assert_eq!(cartan.len(), 2);
        // Roots: weights of the Cartan on the remaining basis vectors.
        let mut roots = Vec::new();
        for i in 2..14 {
            let b = g.basis_element(i);
            let w: Vec<Q> = cartan
                .iter()
                .map(|h| {
                    let img = g.bracket(h, &b);
                    assert_eq!(
                        img,
                        scale_vec(&img[i], &b),
                        "basis vector is a weight vector"
                    );
                    img[i].clone()
                })
                .collect();
            roots.push(w);
        }
        roots.sort();
        roots.dedup();
        assert_eq!(roots.len(), 12);
        let c = Subspace::full(14);
        assert_eq!(
            g.centralizer_of_subspace(&Subspace::span(14, cartan), &c)
                .dim(),
            2
        );
    }

    #[test]
    fn centralizers_in_sl2() {
        let g = sl(2).unwrap();
        let full = Subspace::full(3);
        let (h, e) = (el(&g, &[("h1", 1)]), el(&g, &[("e12", 1)]));
        assert_eq!(g.centralizer_in(&h, &full), Subspace::span(3, &[h]));
        assert_eq!(g.centralizer_in(&e, &full), Subspace::span(3, &[e]));
        assert_eq!(g.centralizer_in(&g.zero(), &full), full);
    }

    #[test]
    fn jordan_examples() {
        let g = sl(2).unwrap();
        let e = el(&g, &[("e12", 1)]);
        assert_eq!(jordan_chevalley(&g, &e).unwrap(), (g.zero(), e.clone()));
        let he = el(&g, &[("h1", 1), ("e12", 1)]);
        assert_eq!(jordan_chevalley(&g, &he).unwrap(), (he.clone(), g.zero()));
        assert_eq!(classify_element(&g, &e).unwrap(), ElementClass::Nilpotent);
        assert_eq!(
            classify_element(&g, &el(&g, &[("h1", 1)])).unwrap(),
            ElementClass::Semisimple
        );
        let g3 = sl(3).unwrap();
        // diag(1, 1, -2) = h1 + 2 h2, plus E12.
        let x = el(&g3, &[("h1", 1), ("h2", 2), ("e12", 1)]);
        assert_eq!(classify_element(&g3, &x).unwrap(), ElementClass::Mixed);
        let (s, n) = jordan_chevalley(&g3, &x).unwrap();
        assert_eq!(s, el(&g3, &[("h1", 1), ("h2", 2)]));
        assert_eq!(n, el(&g3, &[("e12", 1)]));
    }

    #[test]
    fn irrational_spectrum_is_exact() {
        let g = sl(2).unwrap();
        // e + 2f has eigenvalues +-sqrt(2).
        let x = el(&g, &[("e12", 1), ("e21", 2)]);
        assert_eq!(classify_element(&g, &x).unwrap(), ElementClass::Semisimple);
        assert_eq!(jordan_chevalley(&g, &x).unwrap(), (x.clone(), g.zero()));
        // blocks [[0, 2], [1, 0]] twice, plus E13 + E24 commuting with them
        let g4 = sl(4).unwrap();
        let s = el(&g4, &[("e12", 2), ("e21", 1), ("e34", 2), ("e43", 1)]);
        let n = el(&g4, &[("e13", 1), ("e24", 1)]);
        assert!(is_zero_vec(&g4.bracket(&s, &n)));
        let x = crate::arith::add_vec(&s, &n);
        assert_eq!(classify_element(&g4, &x).unwrap(), ElementClass::Mixed);
        assert_eq!(jordan_chevalley(&g4, &x).unwrap(), (s, n));
    }

    fn random_element(g: &LieAlgebra, rng: &mut impl Rng) -> Element {
        (0..g.dim()).map(|_| q(rng.gen_range(-3..=3))).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn killing_invariance(seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for g in [sl(3).unwrap(), sp(4).unwrap()] {
                let (x, y, z) = (random_element(&g, &mut rng), random_element(&g, &mut rng), random_element(&g, &mut rng));
                let lhs = g.killing(&g.bracket(&z, &x), &y) + g.killing(&x, &g.bracket(&z, &y));
                prop_assert_eq!(lhs, q(0));
            }
        }

        #[test]
        fn jordan_parts(seed in any::<u64>()) {
            // Elements of a fixed Borel of sl3 with rational diagonal.
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = sl(3).unwrap();
            let mut x = g.zero();
            for l in ["h1", "h2", "e12", "e13", "e23"] {
                x[g.label_index(l).unwrap()] = q(rng.gen_range(-2..=2));
            }
            let (s, n) = jordan_chevalley(&g, &x).unwrap();
            prop_assert_eq!(add_vec(&s, &n), x);
            prop_assert!(is_zero_vec(&g.bracket(&s, &n)));
            prop_assert!(is_semisimple(&g, &s).unwrap());
            prop_assert!(is_nilpotent(&g, &n).unwrap());
        }

        #[test]
        fn jordan_additive_on_commuting(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3) {
            // x = a*diag(1,1,-2) + b*E12 and y = c*diag(1,1,-2) + d*E12 commute.
            let g = sl(3).unwrap();
            let x = el(&g, &[("h1", a), ("h2", 2 * a), ("e12", b)]);
            let y = el(&g, &[("h1", c), ("h2", 2 * c), ("e12", d)]);
            prop_assert!(is_zero_vec(&g.bracket(&x, &y)));
            let (sx, nx) = jordan_chevalley(&g, &x).unwrap();
            let (sy, ny) = jordan_chevalley(&g, &y).unwrap();
            let (s, n) = jordan_chevalley(&g, &add_vec(&x, &y)).unwrap();
            prop_assert_eq!(s, add_vec(&sx, &sy));
            prop_assert_eq!(n, add_vec(&nx, &ny));
        }
    }
}
