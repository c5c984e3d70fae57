mod common;

use std::collections::BTreeMap;

use mapspace_core::analysis::{collapse_witness, example62_dimension};
use mapspace_core::{
    betti_table, e2_page, Example62Reading, Field, GeneratorKind, GradedAlgebra, Grading, SpaceSpec, Variant,
};

fn each_configuration(check: impl Fn(SpaceSpec) -> common::Check) {
    for space in common::configurations() {
        if let Err(e) = check(space) {
            panic!("{e}");
        }
    }
}

#[test]
fn d_squared_vanishes_on_full_bases() {
    each_configuration(|s| common::d_squared_zero(s, 30));
}

#[test]
fn signed_leibniz_on_random_pairs() {
    each_configuration(|s| common::leibniz_random(s, 30, 200, 11 + s.n as u64));
}

#[test]
fn basis_monomials_graded_commute() {
    each_configuration(|s| common::koszul_commutativity(s, 15));
}

#[test]
fn products_associate() {
    each_configuration(|s| common::associativity_random(s, 30, 100, 3));
}

#[test]
fn sparse_rank_matches_dense_oracle() {
    each_configuration(|s| common::sparse_dense_rank(s, 30, 200));
}

#[test]
fn iota_powers_follow_the_leibniz_formula() {
    each_configuration(|s| common::iota_power_differential(&e2_page(s, 30).unwrap(), s.n, 10));
}

#[test]
fn grading_conversion_is_an_involution() {
    each_configuration(|s| common::grading_involution(s, 30));
}

#[test]
fn tensor_dimensions_convolve() {
    let f = Field::Prime(3);
    let mut a = GradedAlgebra::new(f);
    a.declare_generator("x", 2, 1, GeneratorKind::Polynomial).unwrap();
    a.declare_generator("y", 3, 0, GeneratorKind::Exterior).unwrap();
    let mut b = GradedAlgebra::new(f);
    b.declare_generator("z", 4, 1, GeneratorKind::Polynomial).unwrap();
    b.declare_generator("w", -2, 0, GeneratorKind::Truncated(3)).unwrap();
    let t = a.tensor(&b).unwrap();
    for degree in -6..=20 {
        for weight in 0..=5 {
            let mut expected = 0;
            for d1 in -6..=26 {
                for w1 in 0..=weight {
                    let da = a.enumerate_basis(d1, w1).unwrap().len();
                    let db = b.enumerate_basis(degree - d1, weight - w1).unwrap().len();
                    expected += da * db;
                }
            }
            assert_eq!(
                t.enumerate_basis(degree, weight).unwrap().len(),
                expected,
                "({degree}, {weight})"
            );
        }
    }
}

#[test]
fn tables_ignore_component_order_and_thread_count() {
    let space = SpaceSpec::new(2, Field::Prime(2), Variant::Loop).unwrap();
    let forward: Vec<i64> = (-4..=4).collect();
    let backward: Vec<i64> = forward.iter().rev().copied().collect();
    let reference = betti_table(space, &forward, 30, Grading::Ordinary).unwrap();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let t = pool.install(|| betti_table(space, &backward, 30, Grading::Ordinary).unwrap());
        assert_eq!(t, reference, "{threads} threads");
    }
    let per_component: BTreeMap<i64, _> = forward
        .iter()
        .map(|&k| (k, betti_table(space, &[k], 30, Grading::Ordinary).unwrap().column(k)))
        .collect();
    for (k, column) in per_component {
        assert_eq!(column, reference.column(k));
    }
}

#[test]
fn collapse_pass_means_equality_at_every_cell() {
    for (n, p) in [(2, 3), (1, 2)] {
        for variant in [Variant::Loop, Variant::Hol] {
            let space = SpaceSpec::new(n, Field::Prime(p), variant).unwrap();
            let e2 = mapspace_core::e2_table(space, &[0, 1, 2], 30, Grading::Ordinary).unwrap();
            let einf = betti_table(space, &[0, 1, 2], 30, Grading::Ordinary).unwrap();
            assert_eq!(e2, einf);
        }
    }
}

#[test]
fn mod_three_collapse_pattern_at_n_one() {
    // 3 divides k(n+1) = 2k only when 3 divides k.
    let space = SpaceSpec::new(1, Field::Prime(3), Variant::Loop).unwrap();
    assert!(collapse_witness(space, 1, 30).unwrap().is_some());
    assert!(collapse_witness(space, 2, 30).unwrap().is_some());
    assert!(collapse_witness(space, 3, 30).unwrap().is_none());
    assert!(collapse_witness(space, -3, 30).unwrap().is_none());
}

#[test]
fn mod_three_collapses_everywhere_at_n_two() {
    // 3 divides n+1, so the differential vanishes identically.
    let page = e2_page(SpaceSpec::new(2, Field::Prime(3), Variant::Loop).unwrap(), 30).unwrap();
    assert!(page.differential().is_zero());
}

#[test]
fn counting_formula_with_unit_block_matches_engine() {
    let space = SpaceSpec::new(2, Field::Prime(2), Variant::Loop).unwrap();
    let ks: Vec<i64> = (-4..=4).collect();
    let t = betti_table(space, &ks, 30, Grading::Ordinary).unwrap();
    for &k in &ks {
        for d in 0..=30 {
            assert_eq!(
                example62_dimension(2, d, k, Example62Reading::WithUnitBlock).unwrap(),
                t.get(k, d),
                "k={k} degree {d}"
            );
        }
    }
}

#[test]
fn counting_formula_as_printed_misses_even_unit_block() {
    // The u-free monomials ι^{2j} c² Q are cycles and not boundaries, but the
    // printed cⁿ block only carries odd ι-exponents.
    let space = SpaceSpec::new(2, Field::Prime(2), Variant::Loop).unwrap();
    let t = betti_table(space, &[0, 1], 30, Grading::Ordinary).unwrap();
    assert_eq!(t.get(0, 0), 1);
    assert_eq!(example62_dimension(2, 0, 0, Example62Reading::AsPrinted).unwrap(), 0);
    for d in 0..=30 {
        assert_eq!(
            example62_dimension(2, d, 1, Example62Reading::AsPrinted).unwrap(),
            t.get(1, d),
            "odd components agree, degree {d}"
        );
    }
}
