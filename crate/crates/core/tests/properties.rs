mod common;

use hfg::invariants::{alpha_degree, generator_patterns, hilbert_from_resolution, resolution};
use hfg::linalg::{rank_bareiss, rank_multimodular};
use hfg::verify::vanishing_order;
use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;

#[test]
fn hadamard_transform_round_trip() {
    transform_round_trip().unwrap();
}

#[test]
fn vanishing_order_is_additive() {
    vanishing_additivity().unwrap();
}

#[test]
fn alpha_tuple_sums_to_scheme_degree() {
    degree_bookkeeping().unwrap();
}

#[test]
fn generator_count_and_extreme_degrees() {
    generator_count().unwrap();
}

#[test]
fn one_more_generator_than_syzygy() {
    corner_counts().unwrap();
}

#[test]
fn tuple_family_is_totally_ordered() {
    total_order().unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn symbolic_alpha_scales(g in grid(), t in 1u32..=6) {
        prop_assert_eq!(alpha_degree(&g.symbolic(t).unwrap()), u64::from(t) * alpha_degree(&g));
    }

    #[test]
    fn hilbert_from_resolution_stabilises(g in grid()) {
        let res = resolution(&g);
        let top = res.max_syzygy_twist();
        for d in top.saturating_sub(2)..top + 4 {
            let forms = ((d + 2) * (d + 1) / 2) as i64;
            prop_assert_eq!(hilbert_from_resolution(&res, d), forms - g.scheme_degree() as i64);
        }
    }

    #[test]
    fn patterns_vanish_on_the_grid(m in prop::collection::vec(1u32..=3, 1..=2), n in prop::collection::vec(1u32..=3, 1..=3)) {
        let g = hfg::FatGrid::from_multiplicities(&m, &n).unwrap();
        for pat in generator_patterns(&g) {
            let f = g.expand_pattern(&pat).unwrap();
            for (p, mult) in g.fat_points() {
                prop_assert!(vanishing_order(&f, &p).unwrap().at_least(mult));
            }
        }
    }

    #[test]
    fn ranks_agree(rows in prop::collection::vec(prop::collection::vec(-20i64..=20, 5), 1..=6), scale in 1i64..=1_000_000) {
        // a repeated scaled row keeps the rank below full
        let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let extra: Vec<BigInt> = m[0].iter().map(|x| x * scale).collect();
        m.push(extra);
        prop_assert_eq!(rank_bareiss(&m), rank_multimodular(&m));
    }

    #[test]
    fn lines_through_a_point_vanish_once(p in any_point(), q in any_point()) {
        prop_assume!(p != q);
        let l = hfg::projective::line_through(&p, &q).unwrap().form();
        prop_assert_eq!(vanishing_order(&l, &p).unwrap().finite(), Some(1));
    }
}
