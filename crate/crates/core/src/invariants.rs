//! Closed-form invariants of a Hadamard fat grid.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fatgrid::{FatGrid, GeneratorPattern};
use crate::poly::{format_rational, Rational};

/// `t_ij(h) = (mult_ij − h)_+` for every row `i` and `h = 0..max_j mult_ij − 1`.
pub fn s_tuples_from_matrix(mult: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for row in mult {
        let top = row.iter().copied().max().unwrap_or(0);
        for h in 0..top {
            out.push(row.iter().map(|&m| m.saturating_sub(h)).collect());
        }
    }
    out
}

/// The tuple family 𝒮 of the grid, `h = 0..m_i + n_s − 2` for each row.
pub fn s_tuples(g: &FatGrid) -> Vec<Vec<u32>> {
    s_tuples_from_matrix(g.mult())
}

/// Pairwise comparability after deduplication: of any two tuples one
/// dominates the other entry by entry.
pub fn is_totally_ordered(tuples: &[Vec<u32>]) -> bool {
    let mut ts: Vec<&Vec<u32>> = tuples.iter().collect();
    ts.sort();
    ts.dedup();
    ts.iter().enumerate().all(|(i, a)| {
        ts[i + 1..].iter().all(|b| {
            a.len() == b.len()
                && (a.iter().zip(b.iter()).all(|(x, y)| x <= y) || a.iter().zip(b.iter()).all(|(x, y)| x >= y))
        })
    })
}

/// The descending tuple 𝒜 of all `a_{i,h}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct AlphaTuple {
    entries: Vec<u64>,
}

impl AlphaTuple {
    pub fn new(mut entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain("the alpha tuple is empty".into()));
        }
        if entries.contains(&0) {
            return Err(Error::Domain("alpha tuple entries must be positive".into()));
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(AlphaTuple { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().sum()
    }
}

pub fn alpha_tuple(g: &FatGrid) -> AlphaTuple {
    let entries = s_tuples(g)
        .iter()
        .map(|t| t.iter().map(|&x| u64::from(x)).sum())
        .collect();
    AlphaTuple::new(entries).expect("grid tuples are nonempty and positive")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerSets {
    /// Sorted by first coordinate.
    pub c: Vec<(u64, u64)>,
    pub v: Vec<(u64, u64)>,
}

/// `C = {(m,0), (0,α_1)} ∪ {(i−1, α_i) : α_i < α_{i−1}}` and
/// `V = {(m, α_m)} ∪ {(i−1, α_{i−1}) : α_i < α_{i−1}}`, with `i` over the interior positions.
pub fn corner_sets(a: &AlphaTuple) -> Result<CornerSets> {
    let e = a.entries();
    if e.is_empty() {
        return Err(Error::Domain("corner sets of an empty tuple".into()));
    }
    if e.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::Domain("alpha tuple is not non-increasing".into()));
    }
    let m = e.len() as u64;
    let mut c = vec![(0, e[0])];
    let mut v = Vec::new();
    for i in 1..e.len() {
        if e[i] < e[i - 1] {
            c.push((i as u64, e[i]));
            v.push((i as u64, e[i - 1]));
        }
    }
    c.push((m, 0));
    v.push((m, e[e.len() - 1]));
    Ok(CornerSets { c, v })
}

/// Total-degree twists of the length-two resolution, each list sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionShifts {
    pub generator_twists: Vec<u64>,
    pub syzygy_twists: Vec<u64>,
}

impl ResolutionShifts {
    pub fn from_corners(cs: &CornerSets) -> Self {
        let mut generator_twists: Vec<u64> = cs.c.iter().map(|(a, b)| a + b).collect();
        let mut syzygy_twists: Vec<u64> = cs.v.iter().map(|(a, b)| a + b).collect();
        generator_twists.sort_unstable();
        syzygy_twists.sort_unstable();
        ResolutionShifts {
            generator_twists,
            syzygy_twists,
        }
    }

    pub fn max_syzygy_twist(&self) -> u64 {
        self.syzygy_twists.iter().copied().max().unwrap_or(0)
    }
}

pub fn resolution(g: &FatGrid) -> ResolutionShifts {
    ResolutionShifts::from_corners(&corner_sets(&alpha_tuple(g)).expect("grid tuple is valid"))
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// `dim I_d = Σ_C C(d−c+2, 2) − Σ_V C(d−v+2, 2)`.
pub fn hilbert_from_resolution(shifts: &ResolutionShifts, d: u64) -> i64 {
    let d = d as i64;
    let gens: i64 = shifts.generator_twists.iter().map(|&c| binom2(d - c as i64 + 2)).sum();
    let syz: i64 = shifts.syzygy_twists.iter().map(|&v| binom2(d - v as i64 + 2)).sum();
    gens - syz
}

/// `a_i = m_{r−i+1} + n_s − 1`.
pub fn h_shifts(g: &FatGrid) -> Vec<i64> {
    let ns = i64::from(*g.n().last().expect("nonempty"));
    g.m().iter().rev().map(|&m| i64::from(m) + ns - 1).collect()
}

/// `b_j = n_{s−j+1} − n_s`.
pub fn v_shifts(g: &FatGrid) -> Vec<i64> {
    let ns = i64::from(*g.n().last().expect("nonempty"));
    g.n().iter().rev().map(|&n| i64::from(n) - ns).collect()
}

/// The `m_r + n_s` minimal generator patterns, `k = 0..m_r + n_s − 1`.
pub fn generator_patterns(g: &FatGrid) -> Vec<GeneratorPattern> {
    let (a, b) = (h_shifts(g), v_shifts(g));
    let top = g.m().last().expect("nonempty") + g.n().last().expect("nonempty");
    (0..top).map(|k| GeneratorPattern::from_shifts(&a, &b, k)).collect()
}

/// `α = Σ m_i + Σ_{i≤r} n_{s−i+1} − r`.
pub fn alpha_degree(g: &FatGrid) -> u64 {
    let m: u64 = g.m().iter().map(|&x| u64::from(x)).sum();
    let n: u64 = g.n().iter().rev().take(g.r()).map(|&x| u64::from(x)).sum();
    m + n - g.r() as u64
}

/// `β = max{Σ_j (m_r + n_j − 1), Σ_i (n_s + m_i − 1)}`.
pub fn beta_degree(g: &FatGrid) -> u64 {
    let mr = u64::from(*g.m().last().expect("nonempty"));
    let ns = u64::from(*g.n().last().expect("nonempty"));
    let cols: u64 = g.n().iter().map(|&n| mr + u64::from(n) - 1).sum();
    let rows: u64 = g.m().iter().map(|&m| ns + u64::from(m) - 1).sum();
    cols.max(rows)
}

pub fn waldschmidt(g: &FatGrid) -> Rational {
    Rational::from_integer(BigInt::from(alpha_degree(g)))
}

/// How one symbolic pattern `k̄` factors as a product of `t` patterns of the grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub k_bar: u32,
    pub parts: Vec<u32>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerEvidence {
    pub t: u32,
    pub symbolic_patterns: usize,
    /// Every symbolic pattern written as a product of `t` grid patterns.
    pub factorizations: Vec<Factorization>,
    /// Number of `t`-fold products of grid patterns examined.
    pub products_checked: usize,
    /// Products divisible by some symbolic pattern.
    pub products_contained: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResurgenceCertificate {
    pub t_max: u32,
    pub per_t: Vec<PowerEvidence>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub rho: Option<Rational>,
}

impl ResurgenceCertificate {
    pub fn pass(&self) -> bool {
        self.rho.is_some()
    }
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

/// Splits `k` into `t` parts differing by at most one, largest first.
fn balanced_split(k: u32, t: u32) -> Vec<u32> {
    let (q, rem) = (k / t, k % t);
    (0..t).map(|l| if l < rem { q + 1 } else { q }).collect()
}

/// Non-decreasing `t`-element multisets of `0..n`.
fn multisets(n: u32, t: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t as usize);
    fn rec(n: u32, t: u32, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == t as usize {
            out.push(cur.clone());
            return;
        }
        for k in lo..n {
            cur.push(k);
            rec(n, t, k, cur, out);
            cur.pop();
        }
    }
    rec(n, t, 0, &mut cur, &mut out);
    out
}

fn power_evidence(g: &FatGrid, t: u32) -> Result<PowerEvidence> {
    let base = generator_patterns(g);
    let sym = generator_patterns(&g.symbolic(t)?);
    let product = |ks: &[u32]| {
        ks.iter()
            .skip(1)
            .fold(base[ks[0] as usize].clone(), |acc, &k| acc.times(&base[k as usize]))
    };
    let factorizations: Vec<Factorization> = sym
        .iter()
        .map(|p| {
            let parts = balanced_split(p.k, t);
            let prod = product(&parts);
            let matches = prod.h_exponents == p.h_exponents && prod.v_exponents == p.v_exponents;
            Factorization {
                k_bar: p.k,
                parts,
                matches,
            }
        })
        .collect();
    let products = multisets(base.len() as u32, t);
    let products_contained = products
        .iter()
        .filter(|ks| {
            let prod = product(ks);
            sym.iter().any(|p| p.divides(&prod))
        })
        .count();
    let expected_len = t as usize * (base.len() - 1) + 1;
    let pass =
        sym.len() == expected_len && factorizations.iter().all(|f| f.matches) && products_contained == products.len();
    Ok(PowerEvidence {
        t,
        symbolic_patterns: sym.len(),
        factorizations,
        products_checked: products.len(),
        products_contained,
        pass,
    })
}

/// Checks, for each `t ≤ t_max`, that the minimal generators of the `t`-th
/// symbolic power are exactly products of `t` minimal generators of the grid,
/// and that every such product lies in the symbolic power. Then `I^t = I^{(t)}`
/// for all these `t`, and ρ = 1 is reported.
pub fn resurgence_certificate(g: &FatGrid, t_max: u32) -> Result<ResurgenceCertificate> {
    if t_max == 0 {
        return Err(Error::InvalidInput("t_max must be at least 1".into()));
    }
    let per_t = (1..=t_max)
        .into_par_iter()
        .map(|t| power_evidence(g, t))
        .collect::<Result<Vec<_>>>()?;
    let rho = per_t
        .iter()
        .all(|e| e.pass)
        .then(|| Rational::from_integer(BigInt::from(1)));
    Ok(ResurgenceCertificate { t_max, per_t, rho })
}

/// Everything the `invariants` command reports.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub alpha_tuple: AlphaTuple,
    #[serde(rename = "C")]
    pub c: Vec<(u64, u64)>,
    #[serde(rename = "V")]
    pub v: Vec<(u64, u64)>,
    pub generator_twists: Vec<u64>,
    pub syzygy_twists: Vec<u64>,
    pub generators: Vec<String>,
    pub alpha: u64,
    pub beta: u64,
    pub waldschmidt: String,
    pub resurgence: Option<String>,
}

pub fn invariant_report(g: &FatGrid, t_max: u32) -> Result<InvariantReport> {
    let a = alpha_tuple(g);
    let cs = corner_sets(&a)?;
    let shifts = ResolutionShifts::from_corners(&cs);
    let cert = resurgence_certificate(g, t_max)?;
    Ok(InvariantReport {
        alpha_tuple: a,
        c: cs.c,
        v: cs.v,
        generator_twists: shifts.generator_twists,
        syzygy_twists: shifts.syzygy_twists,
        generators: generator_patterns(g).iter().map(GeneratorPattern::describe).collect(),
        alpha: alpha_degree(g),
        beta: beta_degree(g),
        waldschmidt: format_rational(&waldschmidt(g)),
        resurgence: cert.rho.as_ref().map(format_rational),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> FatGrid {
        FatGrid::from_multiplicities(&[2, 3, 3], &[2, 3, 4, 4]).unwrap()
    }

    fn unit() -> FatGrid {
        FatGrid::from_multiplicities(&[1], &[1]).unwrap()
    }

    #[test]
    fn example_alpha_tuple() {
        let a = alpha_tuple(&example());
        assert_eq!(
            a.entries(),
            &[21, 21, 17, 17, 17, 13, 13, 13, 9, 9, 9, 5, 5, 5, 2, 2, 2]
        );
        assert_eq!(a.sum(), example().scheme_degree());
        assert_eq!(alpha_tuple(&unit()).entries(), &[1]);
    }

    #[test]
    fn example_corner_sets() {
        let cs = corner_sets(&alpha_tuple(&example())).unwrap();
        assert_eq!(cs.v, vec![(2, 21), (5, 17), (8, 13), (11, 9), (14, 5), (17, 2)]);
        assert_eq!(cs.c, vec![(0, 21), (2, 17), (5, 13), (8, 9), (11, 5), (14, 2), (17, 0)]);
    }

    #[test]
    fn small_corner_sets() {
        let one = corner_sets(&AlphaTuple::new(vec![1]).unwrap()).unwrap();
        assert_eq!(one.c, vec![(0, 1), (1, 0)]);
        assert_eq!(one.v, vec![(1, 1)]);
        let flat = corner_sets(&AlphaTuple::new(vec![3, 3]).unwrap()).unwrap();
        assert_eq!(flat.c, vec![(0, 3), (2, 0)]);
        assert_eq!(flat.v, vec![(2, 3)]);
        let strict = corner_sets(&AlphaTuple::new(vec![5, 4, 2, 1]).unwrap()).unwrap();
        assert_eq!(strict.c.len(), 5);
        assert!(AlphaTuple::new(vec![]).is_err());
    }

    #[test]
    fn example_resolution() {
        let res = resolution(&example());
        assert_eq!(res.generator_twists, vec![16, 16, 17, 17, 18, 19, 21]);
        assert_eq!(res.syzygy_twists, vec![19, 19, 20, 21, 22, 23]);
        let one = resolution(&unit());
        assert_eq!((one.generator_twists, one.syzygy_twists), (vec![1, 1], vec![2]));
    }

    #[test]
    fn example_patterns() {
        let g = example();
        let pats = generator_patterns(&g);
        assert_eq!(pats.len(), 7);
        assert_eq!(pats[1].h_exponents, vec![5, 5, 4]);
        assert_eq!(pats[1].v_exponents, vec![1, 1, 0, 0]);
        let mut degs: Vec<u32> = pats.iter().map(GeneratorPattern::degree).collect();
        assert_eq!(degs, vec![17, 16, 16, 17, 18, 19, 21]);
        degs.sort_unstable();
        let twists: Vec<u32> = resolution(&g).generator_twists.iter().map(|&t| t as u32).collect();
        assert_eq!(degs, twists);
        let u = generator_patterns(&unit());
        assert_eq!(
            u.iter().map(GeneratorPattern::describe).collect::<Vec<_>>(),
            vec!["H1", "V1"]
        );
    }

    #[test]
    fn alpha_beta_waldschmidt() {
        let g = example();
        assert_eq!(alpha_degree(&g), 16);
        assert_eq!(beta_degree(&g), 21);
        assert_eq!(waldschmidt(&g), Rational::from_integer(16.into()));
        assert_eq!((alpha_degree(&unit()), beta_degree(&unit())), (1, 1));
    }

    #[test]
    fn tuples_are_ordered_on_grids_only() {
        assert_eq!(s_tuples(&unit()), vec![vec![1]]);
        assert!(is_totally_ordered(&s_tuples(&unit())));
        assert!(is_totally_ordered(&s_tuples(&example())));
        let anti = s_tuples_from_matrix(&[vec![1, 3], vec![3, 1]]);
        assert!(!is_totally_ordered(&anti));
    }

    #[test]
    fn hilbert_from_shifts() {
        let one = resolution(&unit());
        assert_eq!(hilbert_from_resolution(&one, 0), 0);
        assert_eq!(hilbert_from_resolution(&one, 1), 2);
        let res = resolution(&example());
        assert_eq!(hilbert_from_resolution(&res, 15), 0);
        assert_eq!(hilbert_from_resolution(&res, 16), 2);
        for d in 21..40u64 {
            let d = d as i64;
            assert_eq!(hilbert_from_resolution(&res, d as u64), (d + 2) * (d + 1) / 2 - 180);
        }
    }

    #[test]
    fn certificate_for_example() {
        let cert = resurgence_certificate(&example(), 3).unwrap();
        assert!(cert.pass());
        assert_eq!(cert.per_t[1].symbolic_patterns, 13);
        assert_eq!(cert.per_t[2].products_checked, 84);
        assert!(resurgence_certificate(&example(), 0).is_err());
    }

    #[test]
    fn splits_and_multisets() {
        assert_eq!(balanced_split(7, 3), vec![3, 2, 2]);
        assert_eq!(multisets(3, 2).len(), 6);
    }

    #[test]
    fn report_json_keys() {
        let json = serde_json::to_value(invariant_report(&example(), 2).unwrap()).unwrap();
        assert_eq!(json["alpha"], 16);
        assert_eq!(json["waldschmidt"], "16/1");
        assert_eq!(json["resurgence"], "1/1");
        assert_eq!(json["C"][0], serde_json::json!([0, 21]));
    }
}
