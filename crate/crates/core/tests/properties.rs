mod common;

use common::*;
use connsum_core::face::Face;
use connsum_core::homology::{is_cohen_macaulay, is_gorenstein, Field};
use connsum_core::matrix::{smith_normal_form, IntegerMatrix};
use connsum_core::random::{random_full_rank_matrix, random_gorenstein_strong_sum, random_subcomplex, random_valid_z};
use connsum_core::simplicial::{connected_sum, strong_z, strong_z_by_closure, SimplicialComplex};
use connsum_core::stanley_reisner::{HilbertSeries, MonomialModule};
use connsum_core::tor::{SubringSpec, TorReport};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex_strategy(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_m).prop_flat_map(|m| {
        prop::collection::vec(1u64..(1u64 << m), 0..6).prop_map(move |masks| {
            SimplicialComplex::from_facets(m, masks.into_iter().map(Face::from_bits)).unwrap()
        })
    })
}

fn complex_with_sub(max_m: usize) -> impl Strategy<Value = (SimplicialComplex, SimplicialComplex)> {
    (complex_strategy(max_m), any::<u64>()).prop_map(|(k, seed)| {
        let w = random_subcomplex(&mut ChaCha8Rng::seed_from_u64(seed), &k);
        (k, w)
    })
}

fn pair_strategy(max_m: usize) -> impl Strategy<Value = (SimplicialComplex, SimplicialComplex)> {
    (1..=max_m).prop_flat_map(|m| {
        let side = prop::collection::vec(1u64..(1u64 << m), 0..5);
        (side.clone(), side).prop_map(move |(a, b)| {
            let mk = |v: Vec<u64>| SimplicialComplex::from_facets(m, v.into_iter().map(Face::from_bits)).unwrap();
            (mk(a), mk(b))
        })
    })
}

fn permutation(m: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (1..=m).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn strong_z_characterizations_agree((k, w) in complex_with_sub(6)) {
        prop_assert_eq!(strong_z(&k, &w).unwrap(), strong_z_by_closure(&k, &w).unwrap());
    }

    #[test]
    fn connected_sum_removes_exactly_the_open_neighborhood((k1, k2) in pair_strategy(6), seed in any::<u64>()) {
        let z = random_valid_z(&mut ChaCha8Rng::seed_from_u64(seed), &k1, &k2);
        let sum = connected_sum(&k1, &k2, &z).unwrap();
        let union = k1.union(&k2).unwrap();
        let removed = union.open_neighborhood(&z);
        prop_assert!(sum.is_subcomplex_of(&union));
        for f in union.faces() {
            prop_assert_eq!(sum.contains(f), !removed.contains(f));
        }
    }

    #[test]
    fn hilbert_series_counts_monomials(k in complex_strategy(5)) {
        let h = HilbertSeries::of_complex(&k);
        let ring = MonomialModule::ring(&k);
        for d in 0..=5 {
            let oracle = oracle_monomials(&k, d).len();
            prop_assert_eq!(h.coefficient(d), oracle as i64);
            prop_assert_eq!(ring.dimension(d), oracle);
        }
    }

    #[test]
    fn hilbert_series_is_additive((k1, k2) in pair_strategy(6)) {
        let sum = |a: &SimplicialComplex, b: &SimplicialComplex| {
            let (x, y) = (HilbertSeries::of_complex(a).coefficients(12), HilbertSeries::of_complex(b).coefficients(12));
            x.iter().zip(&y).map(|(p, q)| p + q).collect::<Vec<i64>>()
        };
        let union = k1.union(&k2).unwrap();
        let meet = k1.intersection(&k2).unwrap();
        prop_assert_eq!(sum(&k1, &k2), sum(&union, &meet));
    }

    #[test]
    fn ring_verdicts_survive_relabeling(k in complex_strategy(6), seed in any::<u64>()) {
        let perm = permutation(k.vertex_count(), seed);
        let relabeled = k.relabel(&perm).unwrap();
        for field in [Field::Rational, Field::Prime(2)] {
            prop_assert_eq!(is_cohen_macaulay(&k, field), is_cohen_macaulay(&relabeled, field));
            prop_assert_eq!(is_gorenstein(&k, field), is_gorenstein(&relabeled, field));
        }
    }

    #[test]
    fn smith_form_reconstructs_the_matrix(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..5)) {
        let m = IntegerMatrix::from_rows(&rows).unwrap();
        let snf = smith_normal_form(&m);
        prop_assert!(snf.verify(&m));
        let factors = snf.invariant_factors();
        prop_assert!(factors.windows(2).all(|w| (&w[1] % &w[0]) == 0.into()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn koszul_tor_passes_its_self_checks(k in complex_strategy(5), n in 1usize..=2, seed in any::<u64>()) {
        let m = k.vertex_count();
        prop_assume!(n <= m);
        let b = random_full_rank_matrix(&mut ChaCha8Rng::seed_from_u64(seed), n, m, 2);
        let s = SubringSpec::new(b).unwrap();
        let r = TorReport::compute(&k, &s, n, 5).unwrap();
        prop_assert!(r.euler.as_ref().unwrap().holds);
        prop_assert!(r.franz_puppe_consistent);
    }

    #[test]
    fn strong_sums_of_gorenstein_complexes_are_gorenstein(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_gorenstein_strong_sum(&mut rng);
        let w = s.k1.intersection(&s.k2).unwrap();
        prop_assume!(is_gorenstein(&s.k1, Field::Rational) && is_gorenstein(&s.k2, Field::Rational));
        prop_assume!(is_cohen_macaulay(&w, Field::Rational));
        let sum = connected_sum(&s.k1, &s.k2, &s.z).unwrap();
        prop_assert!(is_gorenstein(&sum, Field::Rational), "{} {:?}", s.origin, sum);
    }
}

#[test]
fn exhaustive_strong_z_on_three_vertices() {
    // every complex on 3 vertices and every subcomplex
    let m = 3;
    let nonempty: Vec<Face> = (1u64..8).map(Face::from_bits).collect();
    for mask in 0u32..(1 << nonempty.len()) {
        let faces = nonempty.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| *f);
        let Ok(k) = SimplicialComplex::from_faces(m, faces.chain([Face::from_bits(0)])) else { continue };
        for sub in 0u32..(1 << nonempty.len()) {
            if sub & !mask != 0 {
                continue;
            }
            let wf = nonempty.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).map(|(_, f)| *f);
            let Ok(w) = SimplicialComplex::from_faces(m, wf.chain([Face::from_bits(0)])) else { continue };
            assert_eq!(strong_z(&k, &w).unwrap(), strong_z_by_closure(&k, &w).unwrap());
        }
    }
}
