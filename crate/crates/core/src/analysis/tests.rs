use rand::SeedableRng;

use super::*;
use crate::arith::{is_zero_vec, qf};
use crate::grassmann::is_special_reduction;
use crate::pair::{make_transpose_pair, restricted_roots, singular_kernels, square_by_name};

fn diag(xs: &[i64]) -> MatrixQ {
    MatrixQ::diagonal(&xs.iter().map(|&x| q(x)).collect::<Vec<_>>())
}

fn sq(n: usize) -> SymmetricPair {
    square_by_name(&format!("sl{n}")).unwrap()
}

fn elem(pair: &SymmetricPair, m: &MatrixQ) -> Element {
    from_first_factor(pair, m).unwrap()
}

#[test]
fn regularity() {
    let p3 = sq(3);
    let x = elem(&p3, &diag(&[1, 2, -3]));
    assert!(is_regular(&p3, &x).unwrap());
    assert_eq!(
        centralizer_map(&p3, &x).unwrap(),
        Plane::from_subspace(&p3, p3.cartan()).unwrap()
    );
    assert!(!is_regular(&p3, &p3.g().zero()).unwrap());
    let p2 = sq(2);
    let e = elem(&p2, &MatrixQ::unit(2, 0, 1));
    assert!(is_regular(&p2, &e).unwrap());
    let c = centralizer_map(&p2, &e).unwrap();
    assert_eq!(c, Plane::from_basis(&p2, std::slice::from_ref(&e)).unwrap());
    assert!(is_special_reduction(&p2, &c, true).unwrap());
    let scaled: Vec<Q> = e.iter().map(|v| v * qf(-5, 3)).collect();
    assert_eq!(centralizer_map(&p2, &scaled).unwrap(), c);
    assert_eq!(
        centralizer_map(&p3, &elem(&p3, &diag(&[1, 1, -2]))).unwrap_err(),
        Error::NotRegular
    );
}

#[test]
fn centralizer_map_is_k_equivariant() {
    let pair = sq(3);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let x = elem(&pair, &diag(&[1, 2, -3]).add(&MatrixQ::unit(3, 0, 2)));
    let c = centralizer_map(&pair, &x).unwrap();
    for _ in 0..5 {
        let k = random_k_element(&pair, &mut rng, 3).unwrap();
        let kx = k.mul_vec(&x);
        let kc = Plane::from_basis(
            &pair,
            &c.basis_g(&pair)
                .iter()
                .map(|b| k.mul_vec(b))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(centralizer_map(&pair, &kx).unwrap(), kc);
    }
}

#[test]
fn signature_examples() {
    let pair = sq(3);
    let s1 = decomposition_signature(&pair, &elem(&pair, &diag(&[1, 2, -3]))).unwrap();
    let s2 = decomposition_signature(&pair, &elem(&pair, &diag(&[4, 5, -9]))).unwrap();
    assert_eq!(s1, s2);
    assert_eq!(s1.blocks, vec![(1, vec![1]), (1, vec![1]), (1, vec![1])]);
    let s3 = decomposition_signature(&pair, &elem(&pair, &diag(&[1, 1, -2]))).unwrap();
    assert_eq!(s3.blocks, vec![(2, vec![1, 1]), (1, vec![1])]);
    let nil = elem(&pair, &MatrixQ::unit(3, 0, 1));
    let s4 = decomposition_signature(&pair, &nil).unwrap();
    assert_eq!(s4.blocks, vec![(3, vec![2, 1])]);
    let t = make_transpose_pair(3).unwrap();
    assert!(decomposition_signature(&t, &t.cartan().basis()[0]).is_err());
}

#[test]
fn signature_constant_on_k_orbits() {
    let pair = sq(3);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let x = elem(&pair, &diag(&[1, 1, -2]).add(&MatrixQ::unit(3, 0, 1)));
    let s = decomposition_signature(&pair, &x).unwrap();
    for _ in 0..5 {
        let k = random_k_element(&pair, &mut rng, 4).unwrap();
        assert_eq!(decomposition_signature(&pair, &k.mul_vec(&x)).unwrap(), s);
    }
}

#[test]
fn genericity_rule() {
    let sig = |blocks: Vec<(usize, Vec<usize>)>| DecompositionSignature::new(3, blocks).unwrap();
    let regular_ss = sig(vec![(1, vec![1]), (1, vec![1]), (1, vec![1])]);
    let regular_nil = sig(vec![(3, vec![3])]);
    let zero = sig(vec![(3, vec![1, 1, 1])]);
    let sub_ss = sig(vec![(2, vec![1, 1]), (1, vec![1])]);
    let mixed = sig(vec![(2, vec![2]), (1, vec![1])]);
    let minimal_nil = sig(vec![(3, vec![2, 1])]);
    assert_eq!(
        signature_genericity(&regular_ss, &regular_nil),
        Genericity::MoreGeneral
    );
    assert_eq!(
        signature_genericity(&regular_nil, &regular_ss),
        Genericity::LessGeneral
    );
    assert_eq!(signature_genericity(&mixed, &mixed), Genericity::Equal);
    assert_eq!(
        signature_genericity(&mixed, &sub_ss),
        Genericity::MoreGeneral
    );
    assert_eq!(
        signature_genericity(&mixed, &regular_nil),
        Genericity::MoreGeneral
    );
    assert_eq!(
        signature_genericity(&sub_ss, &regular_nil),
        Genericity::Incomparable
    );
    assert_eq!(
        signature_genericity(&sub_ss, &minimal_nil),
        Genericity::MoreGeneral
    );
    assert_eq!(
        signature_genericity(&minimal_nil, &zero),
        Genericity::MoreGeneral
    );
    assert_eq!(all_signatures(3).len(), 6);
    assert!(dominates(&[3], &[2, 1]) && !dominates(&[2, 1], &[3]));
}

#[test]
fn subvarieties() {
    let pair = sq(3);
    let whole = make_subvariety(&pair, pair.cartan()).unwrap();
    assert_eq!(whole.pair.dim_p(), 2);
    assert_eq!(whole.pair.dim_reduction_variety(), 0);
    let zero = make_subvariety(&pair, &Subspace::zero(pair.g().dim())).unwrap();
    assert_eq!(zero.pair.dim_p(), pair.dim_p());
    let data = restricted_roots(&pair).unwrap();
    let z = singular_kernels(&pair, &data)[0].z.clone();
    let sub = make_subvariety(&pair, &z).unwrap();
    assert_eq!(sub.pair.rank(), 2);
    assert_eq!(sub.pair.dim_reduction_variety(), 2);
    let a = Plane::from_subspace(&pair, pair.cartan()).unwrap();
    assert!(sub.contains(&pair, &a));
    let inner = sub.to_sub_plane(&pair, &a).unwrap();
    assert_eq!(sub.from_sub_plane(&pair, &inner).unwrap(), a);
    let v = sub.maps.project(inner.space()).map(|_| ());
    assert!(
        v.is_err(),
        "sub planes live in p coordinates, not g coordinates"
    );
}

#[test]
fn jacobian_matches_centralizer() {
    for (n, m) in [
        (2, diag(&[1, -1])),
        (3, diag(&[1, 2, -3]).add(&MatrixQ::unit(3, 0, 1))),
        (3, MatrixQ::unit(3, 0, 1).add(&MatrixQ::unit(3, 1, 2))),
    ] {
        let pair = sq(n);
        let x = elem(&pair, &m);
        let j = jacobian_map(&pair, &x).unwrap();
        assert_eq!(j, centralizer_map(&pair, &x).unwrap().plucker());
    }
    let pair = sq(3);
    assert!(jacobian_map(&pair, &elem(&pair, &diag(&[1, 1, -2])))
        .unwrap()
        .is_zero());
}

#[test]
fn nonalgebraic_plane() {
    let w = nonalgebraic_witness(5).unwrap();
    assert!(w.abelian && !w.cj_closed && w.dim_matches_rank);
    assert!(nonalgebraic_witness(4).is_err());
    let first = &w.plane.basis_g(&w.pair)[0];
    assert!(!is_zero_vec(first));
}

#[test]
fn representatives_have_their_signature() {
    for n in [2, 3, 4] {
        let pair = sq(n);
        for sig in all_signatures(n) {
            let x = signature_representative(&pair, &sig).unwrap();
            assert_eq!(decomposition_signature(&pair, &x).unwrap(), sig);
        }
    }
}
