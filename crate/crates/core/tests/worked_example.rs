mod common;

use common::*;
use connsum_core::homology::{is_cohen_macaulay, is_gorenstein, AbelianGroup, Field};
use connsum_core::polytope::{cut, extended_matrix, CutSpec, Inequality, LabeledPolytope, RationalPolytope};
use connsum_core::simplicial::{connected_sum, is_strong_connected_sum};
use connsum_core::stanley_reisner::{
    compare_annihilator, verify_connected_sum_ring, verify_fiber_product, HilbertSeries, SRPresentation,
};
use connsum_core::tor::{koszul_tor, verify_tor_fiber_product, TorTable, DEFAULT_D_MAX};
use num_bigint::BigInt;

fn table(k: &connsum_core::SimplicialComplex, d_max: usize) -> TorTable {
    koszul_tor(&SRPresentation::new(k), &spec(&example_b()), 2, d_max).unwrap()
}

fn z2(count: usize) -> AbelianGroup {
    AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(2); count] }
}

/// Side-2 square `0 ≤ x, y ≤ 2` with facets H1: x ≥ 0, H2: y ≥ 0, H3: x ≤ 2, H4: y ≤ 2.
fn square() -> RationalPolytope {
    RationalPolytope::new(
        2,
        vec![
            Inequality::new(vec![1, 0], 0),
            Inequality::new(vec![0, 1], 0),
            Inequality::new(vec![-1, 0], 2),
            Inequality::new(vec![0, -1], 2),
        ],
    )
    .unwrap()
}

#[test]
fn sum_of_the_fixture_is_the_four_cycle() {
    let sum = connected_sum(&example_k1(), &example_k2(), &example_z()).unwrap();
    assert_eq!(sum, example_k());
    assert_eq!(example_k1().intersection(&example_k2()).unwrap(), example_w());
    assert!(is_strong_connected_sum(&example_k1(), &example_k2(), &example_z()).unwrap().strong);
}

#[test]
fn square_cut_reproduces_the_fixture() {
    let c = CutSpec::new(vec![-1, 1], 1).unwrap();
    let r = cut(&square(), &c).unwrap();
    assert!(r.checks.all(), "{:?}", r.checks);
    assert_eq!(r.k_plus, example_k1());
    assert_eq!(r.k_minus, example_k2());
    assert_eq!(r.k_delta, example_k());
    assert_eq!(r.z_o, example_z());

    let labelled = LabeledPolytope::new(square(), vec![1, 2, 2, 1]).unwrap();
    let b = extended_matrix(&labelled, &c).unwrap();
    let expected: Vec<Vec<BigInt>> =
        example_b().into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
    assert_eq!(b.to_rows(), expected);
}

#[test]
fn hilbert_series_of_the_fixture() {
    assert_eq!(HilbertSeries::of_complex(&example_k1()).to_string(), "(1+3t^2+t^4)/(1-t^2)^2");
    assert_eq!(HilbertSeries::of_complex(&example_k()).to_string(), "(1+2t^2+t^4)/(1-t^2)^2");
    assert_eq!(HilbertSeries::of_complex(&example_w()).to_string(), "(1+t^2)/(1-t^2)^2");
}

#[test]
fn ring_sequences_are_exact_on_the_fixture() {
    assert!(verify_fiber_product(&example_k1(), &example_k2(), 8).unwrap().all_exact());
    assert!(verify_connected_sum_ring(&example_k1(), &example_k2(), &example_z(), 8).unwrap().all_hold());
    let k = example_k1().union(&example_k2()).unwrap();
    assert!(compare_annihilator(&k, &example_w(), 4).unwrap().agree());
}

#[test]
fn gorenstein_verdicts_on_the_fixture() {
    for k in [example_k1(), example_k2(), example_k()] {
        assert!(is_gorenstein(&k, Field::Rational));
    }
    assert!(is_cohen_macaulay(&example_w(), Field::Rational));
}

#[test]
fn tor_one_vanishes_for_w_and_k1() {
    for k in [example_w(), example_k1()] {
        let t = table(&k, DEFAULT_D_MAX);
        assert!(t.vanishes(1));
        assert!(t.vanishes(2));
    }
}

#[test]
fn tor_one_of_the_triangle_has_two_torsion() {
    // regression values from the Koszul computation, cross-checked below over F_p
    let t = table(&example_k2(), DEFAULT_D_MAX);
    assert_eq!(t.first_nonzero(1), Some(4));
    for d in 4..=DEFAULT_D_MAX {
        assert_eq!(t.get(1, d), z2(d - 3), "degree {d}");
    }
}

#[test]
fn tor_one_of_the_sum_has_two_torsion_from_degree_four() {
    let t = table(&example_k(), DEFAULT_D_MAX);
    assert_eq!(t.first_nonzero(1), Some(4));
    assert_eq!(t.get(1, 4), z2(1));
}

#[test]
fn tor_fiber_product_report_on_the_fixture() {
    let r = verify_tor_fiber_product(&example_k1(), &example_k2(), &example_z(), &spec(&example_b()), DEFAULT_D_MAX).unwrap();
    assert!(r.hypotheses.w && r.hypotheses.k1);
    assert!(!r.hypotheses.k2);
    assert_eq!(r.conclusions.union_criterion, Some(true));
    assert!(r.conclusions.fiber_product_exact());
    assert!(r.conclusions.ideal_sequence_exact());
    assert_eq!(r.conclusions.sum_tor1_witness, Some(4));
    for t in [&r.tables.w, &r.tables.k1, &r.tables.k2, &r.tables.union, &r.tables.sum] {
        assert!(t.euler.as_ref().unwrap().holds);
        assert!(t.franz_puppe_consistent);
    }
}

/// Universal coefficients: `dim H_q(C ⊗ F_p) = rank H_q + #{p | t in H_q} + #{p | t in H_{q-1}}`.
fn predicted_mod_p(t: &TorTable, q: usize, d: usize, p: i64) -> usize {
    let divisible = |g: AbelianGroup| g.torsion.iter().filter(|x| (*x % BigInt::from(p)) == BigInt::from(0)).count();
    let below = if q == 0 { 0 } else { divisible(t.get(q - 1, d)) };
    t.get(q, d).free_rank + divisible(t.get(q, d)) + below
}

#[test]
fn integral_tor_matches_dense_oracle_mod_p() {
    for k in [example_w(), example_k1(), example_k2(), example_k()] {
        let t = table(&k, 7);
        for d in 0..=7 {
            for q in 0..=2 {
                for p in [2, 3, 10_007] {
                    let oracle = oracle_koszul_dim(&k, &example_b(), q, d, p);
                    assert_eq!(oracle, predicted_mod_p(&t, q, d, p), "{k:?} q={q} d={d} p={p}");
                }
            }
        }
    }
}
