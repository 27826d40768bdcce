use rand::SeedableRng;

use super::*;
use crate::arith::Subspace;

#[test]
fn square_dimensions() {
    for (name, dim_p, rank) in [("sl2", 3, 1), ("sl3", 8, 2), ("g2", 14, 2), ("sp4", 10, 2)] {
        let pair = square_by_name(name).unwrap();
        assert_eq!((pair.dim_p(), pair.rank()), (dim_p, rank), "{name}");
        assert_eq!(pair.k().dim(), dim_p);
    }
}

#[test]
fn transpose_dimensions() {
    let p3 = make_transpose_pair(3).unwrap();
    assert_eq!((p3.k().dim(), p3.dim_p(), p3.rank()), (3, 5, 2));
    let p4 = make_transpose_pair(4).unwrap();
    assert_eq!((p4.dim_p(), p4.rank()), (9, 3));
    let t = p3.theta();
    assert_eq!(t.mul(t), MatrixQ::identity(8));
    assert!(make_transpose_pair(2).is_err());
}

#[test]
fn reduction_variety_dimensions() {
    assert_eq!(make_transpose_pair(3).unwrap().dim_reduction_variety(), 3);
    assert_eq!(square_by_name("sl2").unwrap().dim_reduction_variety(), 2);
    assert_eq!(square_by_name("g2").unwrap().dim_reduction_variety(), 12);
}

#[test]
fn random_cartan_search() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for pair in [
        make_transpose_pair(3).unwrap(),
        square_by_name("sl2").unwrap(),
    ] {
        let a = find_cartan_subspace(&pair, &mut rng, 50).unwrap();
        assert_eq!(a.dim(), pair.rank());
        assert_eq!(pair.centralizer_p_of(&a), a);
        assert!(pair.with_cartan(a).is_ok());
    }
}

#[test]
fn diagonal_is_cartan_for_transpose_pair() {
    let pair = make_transpose_pair(3).unwrap();
    let g = pair.g();
    let diag: Vec<Element> = ["h1", "h2"]
        .iter()
        .map(|l| g.basis_element(g.label_index(l).unwrap()))
        .collect();
    assert_eq!(pair.cartan(), &Subspace::span(g.dim(), &diag));
}

#[test]
fn roots_of_square_sl3() {
    let pair = square_by_name("sl3").unwrap();
    let data = restricted_roots(&pair).unwrap();
    assert_eq!(data.roots.len(), 6);
    assert_eq!(data.positive.len(), 3);
    // Each restricted root space of the square is two copies of a root space.
    assert_eq!(data.multiplicities(), vec![2, 2, 2]);
    for r in &data.roots {
        let neg: Vector = r.iter().map(|c| -c).collect();
        assert!(data.roots.contains(&neg));
    }
}

#[test]
fn roots_of_transpose_pair() {
    let pair = make_transpose_pair(3).unwrap();
    let data = restricted_roots(&pair).unwrap();
    assert_eq!(data.positive.len(), 3);
    assert_eq!(data.multiplicities(), vec![1, 1, 1]);
    assert_eq!(data.m.dim(), 0);
}

#[test]
fn roots_of_square_g2_and_sp4() {
    assert_eq!(
        restricted_roots(&square_by_name("g2").unwrap())
            .unwrap()
            .positive
            .len(),
        6
    );
    assert_eq!(
        restricted_roots(&square_by_name("sp4").unwrap())
            .unwrap()
            .positive
            .len(),
        4
    );
}

#[test]
fn singular_kernels_of_squares() {
    let pair = square_by_name("sl3").unwrap();
    let data = restricted_roots(&pair).unwrap();
    let ks = singular_kernels(&pair, &data);
    assert_eq!(ks.len(), 3);
    for k in &ks {
        assert_eq!(k.z.dim(), 1);
        assert_eq!(k.centralizer_p.dim(), 4);
    }
    let pair = square_by_name("sl2").unwrap();
    let ks = singular_kernels(&pair, &restricted_roots(&pair).unwrap());
    assert_eq!(ks.len(), 1);
    assert_eq!(ks[0].z.dim(), 0);
    assert_eq!(ks[0].centralizer_p, *pair.p());
}

#[test]
fn nilpotent_generators_exist() {
    for pair in [
        make_transpose_pair(3).unwrap(),
        square_by_name("sl2").unwrap(),
    ] {
        let gens = pair.k_nilpotent_generators().unwrap();
        assert!(!gens.is_empty());
    }
}

#[test]
fn derived_maps_center_free() {
    let pair = square_by_name("sl3").unwrap();
    let maps = DerivedMaps::new(&pair);
    assert!(maps.is_center_free());
    assert_eq!(maps.project(pair.cartan()).unwrap(), *pair.cartan());
    assert_eq!(maps.include(pair.cartan()), *pair.cartan());
}

#[test]
fn derived_maps_on_kernel_centralizer() {
    let pair = square_by_name("sl3").unwrap();
    let data = restricted_roots(&pair).unwrap();
    let z = &singular_kernels(&pair, &data)[0].z;
    let (sub, incl) = centralizer_pair(&pair, z).unwrap();
    assert_eq!(sub.g().dim(), 8);
    assert_eq!(sub.dim_p(), 4);
    let maps = DerivedMaps::new(&sub);
    assert_eq!(maps.p_center.dim(), 1);
    assert_eq!(maps.p_derived.dim(), 3);
    // The central part of p is z itself.
    assert_eq!(maps.p_center.image(&incl), *z);
    let u = sub.cartan();
    let v = maps.project(u).unwrap();
    assert_eq!(v.dim(), 1);
    assert_eq!(maps.include(&v), *u);
    let bad = Subspace::span(sub.g().dim(), &maps.p_derived.basis()[..2]);
    assert!(maps.project(&bad).is_err());
}

#[test]
fn every_root_vector_of_k_is_a_generator() {
    for (name, roots) in [("sl3", 6), ("sp4", 8), ("g2", 12)] {
        let pair = square_by_name(name).unwrap();
        let gens: usize = pair
            .k_nilpotent_generators()
            .unwrap()
            .iter()
            .map(|(_, v)| v.len())
            .sum();
        assert_eq!(gens, roots, "{name}");
        let data = restricted_roots(&pair).unwrap();
        for k in singular_kernels(&pair, &data) {
            let (sub, _) = centralizer_pair(&pair, &k.z).unwrap();
            assert!(!sub.k_nilpotent_generators().unwrap().is_empty(), "{name}");
        }
    }
}
