use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::analysis::{centralizer_map, from_first_factor};
use crate::arith::{add_vec, q, scale_vec};
use crate::pair::{make_transpose_pair, square_by_name};

fn v(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| q(x)).collect()
}

fn toy_plane() -> Plane {
    Plane::from_p_coords(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap()
}

fn diagonal_copy(pair: &SymmetricPair, label: &str) -> Element {
    pair.g()
        .element(&[(&format!("{label}@1"), q(1)), (&format!("{label}@2"), q(1))])
        .unwrap()
}

fn anti_copy(pair: &SymmetricPair, label: &str) -> Vector {
    let x = pair
        .g()
        .element(&[
            (&format!("{label}@1"), q(1)),
            (&format!("{label}@2"), q(-1)),
        ])
        .unwrap();
    pair.to_p(&x).unwrap()
}

fn cartan_plane(pair: &SymmetricPair) -> Plane {
    Plane::from_subspace(pair, pair.cartan()).unwrap()
}

#[test]
fn identity_curve() {
    let c = GroupCurve::identity(3);
    let a = toy_plane();
    assert_eq!(magnitude_order(&c, &v(&[0, 2, -1])).unwrap(), 0);
    let flag = magnitude_flag(&c, &a).unwrap();
    assert_eq!(flag.jumps, vec![0]);
    assert_eq!(flag.levels, vec![a.space().clone()]);
    assert_eq!(magnitude_basis(&c, &a, None).unwrap(), a.basis_p().to_vec());
    assert_eq!(limit_plane(&c, &a).unwrap(), a);
    assert!(non_adapted_basis(&c, &a).unwrap().is_none());
    assert!(magnitude_order(&c, &v(&[0, 0, 0])).is_err());
}

#[test]
fn diagonal_toy_curve() {
    let c = GroupCurve::diagonal(&[0, 1, 2]);
    let a = toy_plane();
    assert_eq!(magnitude_order(&c, &v(&[1, 1, 0])).unwrap(), 0);
    assert_eq!(magnitude_order(&c, &v(&[0, 1, 1])).unwrap(), 1);
    let flag = magnitude_flag(&c, &a).unwrap();
    assert_eq!(flag.jumps, vec![0, 1]);
    assert_eq!(flag.levels[1], Subspace::span(3, &[v(&[0, 1, 1])]));
    assert_eq!(flag.level(2).dim(), 0);
    let basis = magnitude_basis(&c, &a, None).unwrap();
    assert!(flag.levels[1].contains(&basis[1]));
    assert!(satisfies_wedge_additivity(&c, &basis).unwrap());
    let frame = c.frame(&[v(&[1, 1, 0]), v(&[0, 1, 1])]);
    let minors = frame.maximal_minors().unwrap();
    let vals: Vec<i64> = minors.iter().map(|(_, d)| d.valuation().unwrap()).collect();
    assert_eq!(vals, vec![1, 2, 3]);
    assert_eq!(frame.wedge_valuation().unwrap(), 1);
    let lim = tempered_limit(&c, &a, None).unwrap();
    let expected = Plane::from_p_coords(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
    assert_eq!(lim.plane, Some(expected.clone()));
    assert_eq!(limit_plane(&c, &a).unwrap(), expected);
    assert_eq!(lim.orders, vec![0, 1]);
    assert_eq!(lim.profile, vec![(0, 0), (1, 1)]);
    let bad = non_adapted_basis(&c, &a).unwrap().unwrap();
    let profile = additivity_profile(&c, &bad).unwrap();
    assert!(profile.iter().any(|(w, s)| w != s));
    assert!(!satisfies_wedge_additivity(&c, &bad).unwrap());
}

#[test]
fn shift_moves_jumps_only() {
    let c = GroupCurve::diagonal(&[0, 1, 2]);
    let a = toy_plane();
    let f = magnitude_flag(&c, &a).unwrap();
    let g = magnitude_flag(&c.shift(-3), &a).unwrap();
    assert_eq!(g.jumps, vec![-3, -2]);
    assert_eq!(f.levels, g.levels);
}

#[test]
fn levels_match_direct_orders() {
    let c = GroupCurve::diagonal(&[-1, 0, 2, 2]);
    let a =
        Plane::from_p_coords(4, &[v(&[1, 1, 0, 1]), v(&[0, 1, 1, 0]), v(&[0, 0, 1, -1])]).unwrap();
    let flag = magnitude_flag(&c, &a).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let coeffs: Vec<Q> = (0..3).map(|_| q(rng.gen_range(-3..=3))).collect();
        let x = a.space().combine(&coeffs);
        if is_zero_vec(&x) {
            continue;
        }
        let w = magnitude_order(&c, &x).unwrap();
        for k in w - 2..=w + 2 {
            assert_eq!(flag.level(k).contains(&x), w >= k, "k = {k}, omega = {w}");
        }
    }
}

#[test]
fn split_basis_can_fail_for_general_arcs() {
    // c = [[1, -1], [0, t]] sends e1 + e2 to (0, t): the order-1 level is
    // the diagonal line, which no coordinate vector spans.
    let m = MatrixL::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => Series::one(),
        (0, 1) => Series::constant(q(-1)),
        (1, 1) => Series::monomial(q(1), 1),
        _ => Series::zero(),
    });
    let c = GroupCurve::new(m).unwrap();
    let a = Plane::from_p_coords(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
    let split = [
        Subspace::span(2, &[v(&[1, 0])]),
        Subspace::span(2, &[v(&[0, 1])]),
    ];
    assert!(matches!(
        magnitude_basis(&c, &a, Some(&split)),
        Err(Error::Falsified { .. })
    ));
    assert!(magnitude_basis(&c, &a, None).is_ok());
}

#[test]
fn sl2_square_degeneration() {
    let pair = square_by_name("sl2").unwrap();
    let y = diagonal_copy(&pair, "e12");
    let c = curve_from_generators(&pair, &[(y, -1)]).unwrap();
    assert_eq!(c.dim(), 3);
    assert!(c.preserves_bracket(pair.g()).unwrap());
    assert!(c.matrix().min_valuation().unwrap().unwrap() < 0);
    let a = cartan_plane(&pair);
    let e = anti_copy(&pair, "e12");
    let lim = limit_plane(&c, &a).unwrap();
    assert_eq!(lim, Plane::from_p_coords(3, &[e]).unwrap());
    let (_, report) = rigidity_check(&pair, &c, &a).unwrap();
    assert!(report.nilpotent_limit);
    assert_eq!(report.semisimple_span_dim, 0);
    assert!(curve_from_generators(&pair, &[]).unwrap().matrix() == &MatrixL::identity(3));
    let h = pair.g().element(&[("h1@1", q(1)), ("h1@2", q(1))]).unwrap();
    assert!(matches!(
        curve_from_generators(&pair, &[(h, -1)]),
        Err(Error::NotNilpotent(_))
    ));
}

#[test]
fn sl3_square_rigidity() {
    let pair = square_by_name("sl3").unwrap();
    let c = curve_from_generators(&pair, &[(diagonal_copy(&pair, "e13"), -1)]).unwrap();
    let a = cartan_plane(&pair);
    let (lim, report) = rigidity_check(&pair, &c, &a).unwrap();
    let kernel = from_first_factor(&pair, &MatrixQ::diagonal(&[q(1), q(-2), q(1)])).unwrap();
    assert!(lim.space().contains(&pair.to_p(&kernel).unwrap()));
    assert!(lim.space().contains(&anti_copy(&pair, "e13")));
    assert_eq!(report.semisimple_span_dim, 1);
    assert_eq!(report.semisimple_indices.len(), 1);
    assert!(report.frame_additive && report.exhibited_by_split_basis);
    let (_, id) = rigidity_check(&pair, &GroupCurve::identity(pair.dim_p()), &a).unwrap();
    assert_eq!(id.semisimple_span_dim, 2);
}

#[test]
fn reparametrization_invariance() {
    let pair = square_by_name("sl3").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = cartan_plane(&pair);
    for _ in 0..4 {
        let c = random_curve(&pair, &mut rng, 2).unwrap();
        let lim = limit_plane(&c, &a).unwrap();
        let u = Series::from_terms(&[(0, q(1)), (1, q(rng.gen_range(-3..=3))), (2, q(2))]);
        let again =
            crate::arith::with_budget_escalation(8, |b| limit_plane(&c.reparametrize(&u, b)?, &a))
                .unwrap();
        assert_eq!(lim, again);
    }
}

#[test]
fn random_limits_stay_abelian_and_cj_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for pair in [
        square_by_name("sl2").unwrap(),
        square_by_name("sl3").unwrap(),
        make_transpose_pair(3).unwrap(),
    ] {
        let a = cartan_plane(&pair);
        for _ in 0..5 {
            let factors = rng.gen_range(1..=3);
            let c = random_curve(&pair, &mut rng, factors).unwrap();
            let (lim, _) = rigidity_check(&pair, &c, &a).unwrap();
            assert!(is_anisotropic_subalgebra(&pair, &lim));
            if let Some(bad) = non_adapted_basis(&c, &a).unwrap() {
                assert!(!satisfies_wedge_additivity(&c, &bad).unwrap());
            }
        }
    }
}

#[test]
fn translated_curves_move_limits() {
    let pair = square_by_name("sl2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = random_curve(&pair, &mut rng, 2).unwrap();
    let k = random_k_element(&pair, &mut rng, 3).unwrap();
    let tc = translate_curve(&pair, &c, &k).unwrap();
    assert!(tc.preserves_bracket(pair.g()).unwrap());
    let x = pair
        .to_p(
            &pair
                .g()
                .element(&[("h1@1", q(1)), ("h1@2", q(-1))])
                .unwrap(),
        )
        .unwrap();
    let y = element_limit(&c, &x).unwrap();
    assert_eq!(
        element_limit(&tc, &x).unwrap(),
        restrict_to_p(&pair, &k).unwrap().mul_vec(&y)
    );
}

#[test]
fn descent_reaches_nilpotent_planes() {
    let pair = square_by_name("sl2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let line = Plane::from_p_coords(
        3,
        &[add_vec(
            &anti_copy(&pair, "h1"),
            &scale_vec(&q(3), &anti_copy(&pair, "e21")),
        )],
    )
    .unwrap();
    let r = descend_to_closed(&pair, &line, &mut rng, 40).unwrap();
    assert!(r.nilpotent);
    assert_eq!(*r.stabilizer_dims.last().unwrap(), 2);
    let again = descend_to_closed(&pair, &r.plane, &mut rng, 40).unwrap();
    assert_eq!(again.plane, r.plane);
    assert_eq!(again.stabilizer_dims.len(), 1);

    let pair = square_by_name("sl3").unwrap();
    for seed in 0..3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = descend_to_closed(&pair, &cartan_plane(&pair), &mut rng, 200).unwrap();
        assert!(r.nilpotent, "seed {seed}: {:?}", r.stabilizer_dims);
        assert!(r.stabilizer_dims.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn regular_semisimple_class_reaches_regular_nilpotent() {
    let pair = square_by_name("sl2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = pair
        .g()
        .element(&[("h1@1", q(1)), ("h1@2", q(-1))])
        .unwrap();
    let s = class_closure_sample(&pair, &x, 12, &mut rng).unwrap();
    let reg_nil = DecompositionSignature::new(2, vec![(2, vec![2])]).unwrap();
    assert!(s.limits.contains(&reg_nil));
    assert!(s.limits.contains(&s.source));
    let c = centralizer_map(&pair, &x).unwrap();
    assert_eq!(c, cartan_plane(&pair));
}

#[test]
fn sl3_closure_order_is_a_partial_order() {
    let pair = square_by_name("sl3").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let rel = sampled_closure_relation(&pair, 6, &mut rng).unwrap();
    assert_eq!(rel.signatures.len(), 6);
    assert!(rel.antisymmetric);
    assert!(rel.transitive_consistent);
    assert!((0..6).all(|i| rel.edges.contains(&(i, i))));
}

#[test]
fn constant_magnitude_bases_need_not_be_additive() {
    // c = [[1, t], [t, 0]]: omega(c e1) = 0, omega(c e2) = 1, but
    // c e1 ∧ c e2 = -t^2 and both frame vectors tend to e1.
    let m = MatrixL::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => Series::one(),
        (0, 1) | (1, 0) => Series::monomial(q(1), 1),
        _ => Series::zero(),
    });
    let c = GroupCurve::new(m).unwrap();
    let a = Plane::from_p_coords(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
    assert_eq!(magnitude_flag(&c, &a).unwrap().jumps, vec![0, 1]);
    let lim = tempered_limit(&c, &a, None).unwrap();
    assert_eq!(lim.profile, vec![(0, 0), (2, 1)]);
    assert!(!lim.is_additive());
    assert_eq!(lim.plane, None);
    assert_eq!(limit_plane(&c, &a).unwrap(), a);
}
