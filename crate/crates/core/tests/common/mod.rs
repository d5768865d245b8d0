#![allow(dead_code)]

use hfg::ideal::{hadamard_transform, Ideal};
use hfg::invariants::{
    alpha_degree, alpha_tuple, beta_degree, corner_sets, generator_patterns, is_totally_ordered, s_tuples,
};
use hfg::verify::vanishing_order;
use hfg::{FatGrid, GeneratorPattern, Monomial, Point, Polynomial, Rational, VariableBlock};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 256;

pub fn pt(c: [i64; 3]) -> Point {
    Point::from_ints(c).unwrap()
}

pub fn poly(s: &str) -> Polynomial {
    hfg::poly::parse_polynomial(s, &VariableBlock::plane()).unwrap()
}

pub fn ideal(gens: &[&str]) -> Ideal {
    Ideal::new(&VariableBlock::plane(), gens.iter().map(|g| poly(g)).collect()).unwrap()
}

/// Unsorted multiplicity vectors of length 1..=4.
pub fn mults() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=6, 1..=4)
}

pub fn grid() -> impl Strategy<Value = FatGrid> {
    (mults(), mults()).prop_map(|(m, n)| FatGrid::from_multiplicities(&m, &n).unwrap())
}

pub fn point_off_lines() -> impl Strategy<Value = Point> {
    ([1i64..=7, 1i64..=7, 1i64..=7], [any::<bool>(), any::<bool>()]).prop_map(|(c, s)| {
        let sign = |b: bool| if b { -1 } else { 1 };
        pt([c[0], sign(s[0]) * c[1], sign(s[1]) * c[2]])
    })
}

pub fn any_point() -> impl Strategy<Value = Point> {
    [-4i64..=4, -4i64..=4, -4i64..=4]
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(pt)
}

/// Nonzero homogeneous forms of degree 1..=4 with small integer coefficients.
pub fn form() -> impl Strategy<Value = Polynomial> {
    (1u32..=4)
        .prop_flat_map(|d| {
            let n = Monomial::all_of_degree(3, d).len();
            (Just(d), prop::collection::vec(-3i64..=3, n))
        })
        .prop_filter_map("nonzero", |(d, coeffs)| {
            let b = VariableBlock::plane();
            let f = Polynomial::from_terms(
                &b,
                Monomial::all_of_degree(3, d)
                    .into_iter()
                    .zip(coeffs)
                    .map(|(m, c)| (m, Rational::from_integer(c.into()))),
            );
            (!f.is_zero()).then_some(f)
        })
}

/// A form that often vanishes at `p`: powers of lines through `p` times a generic factor.
pub fn form_at(p: Point) -> impl Strategy<Value = Polynomial> {
    const AUX: [[i64; 3]; 5] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]];
    (0u32..=3, 0u32..=2, form(), 0usize..4, 0usize..4).prop_map(move |(a, b, g, i, j)| {
        let others: Vec<Point> = AUX.iter().map(|&c| pt(c)).filter(|q| q != &p).collect();
        let l1 = hfg::projective::line_through(&p, &others[i]).unwrap().form();
        let l2 = hfg::projective::line_through(&p, &others[j]).unwrap().form();
        &(&g * &l1.pow(a)) * &l2.pow(b)
    })
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn transform_round_trip() -> Result<(), String> {
    run((form(), point_off_lines()), |(f, p)| {
        let there = hadamard_transform(&f, &p).unwrap();
        let back = hadamard_transform(&there, &p.reciprocal().unwrap()).unwrap();
        prop_assert_eq!(back, f);
        Ok(())
    })
}

pub fn vanishing_additivity() -> Result<(), String> {
    let s = any_point().prop_flat_map(|p| (Just(p.clone()), form_at(p.clone()), form_at(p)));
    run(s, |(p, f, g)| {
        let (a, b) = (vanishing_order(&f, &p).unwrap(), vanishing_order(&g, &p).unwrap());
        let ab = vanishing_order(&(&f * &g), &p).unwrap();
        prop_assert_eq!(ab.finite(), Some(a.finite().unwrap() + b.finite().unwrap()));
        Ok(())
    })
}

pub fn degree_bookkeeping() -> Result<(), String> {
    run(grid(), |g| {
        prop_assert_eq!(alpha_tuple(&g).sum(), g.scheme_degree());
        prop_assert_eq!(
            alpha_tuple(&g).len() as u32,
            g.m().iter().map(|m| m + g.n()[g.s() - 1] - 1).sum::<u32>()
        );
        Ok(())
    })
}

pub fn generator_count() -> Result<(), String> {
    run(grid(), |g| {
        let pats = generator_patterns(&g);
        prop_assert_eq!(pats.len() as u32, g.m()[g.r() - 1] + g.n()[g.s() - 1]);
        let degs: Vec<u64> = pats.iter().map(|p| u64::from(p.degree())).collect();
        prop_assert_eq!(degs.iter().copied().min(), Some(alpha_degree(&g)));
        prop_assert_eq!(degs.iter().copied().max(), Some(beta_degree(&g)));
        prop_assert!(pats.iter().all(|p| p.degree() > 0));
        Ok(())
    })
}

pub fn corner_counts() -> Result<(), String> {
    run(grid(), |g| {
        let cs = corner_sets(&alpha_tuple(&g)).unwrap();
        prop_assert_eq!(cs.v.len() + 1, cs.c.len());
        prop_assert_eq!(cs.c.len(), generator_patterns(&g).len());
        Ok(())
    })
}

pub fn total_order() -> Result<(), String> {
    run(grid(), |g| {
        prop_assert!(is_totally_ordered(&s_tuples(&g)));
        Ok(())
    })
}

pub type Suite = (&'static str, fn() -> Result<(), String>);

/// Name and runner of every property suite.
pub fn property_suites() -> Vec<Suite> {
    vec![
        ("Hadamard-transform round trip", transform_round_trip),
        ("vanishing-order additivity", vanishing_additivity),
        ("alpha-tuple degree bookkeeping", degree_bookkeeping),
        ("generator count = m_r + n_s", generator_count),
        ("|V| = |C| - 1", corner_counts),
        ("total order of the tuple family", total_order),
    ]
}

/// Every grid with r, s <= 2 and multiplicities <= 2, plus the 1x1 grids up to multiplicity 3.
pub fn small_grid_family() -> Vec<FatGrid> {
    let short: Vec<Vec<u32>> = vec![vec![1], vec![2], vec![1, 1], vec![1, 2], vec![2, 2]];
    let mut out = Vec::new();
    for m in &short {
        for n in &short {
            if m.len() <= n.len() {
                out.push(FatGrid::from_multiplicities(m, n).unwrap());
            }
        }
    }
    for m in 1..=3u32 {
        for n in 1..=3u32 {
            if m.max(n) == 3 {
                out.push(FatGrid::from_multiplicities(&[m], &[n]).unwrap());
            }
        }
    }
    out
}

pub fn example_grid() -> FatGrid {
    FatGrid::from_multiplicities(&[2, 3, 3], &[2, 3, 4, 4]).unwrap()
}

pub fn pattern(h: &[u32], v: &[u32]) -> (Vec<u32>, Vec<u32>) {
    (h.to_vec(), v.to_vec())
}

pub fn shape(p: &GeneratorPattern) -> (Vec<u32>, Vec<u32>) {
    (p.h_exponents.clone(), p.v_exponents.clone())
}
