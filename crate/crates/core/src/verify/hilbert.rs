use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fatgrid::FatGrid;
use crate::linalg;
use crate::poly::Rational;
use crate::projective::Point;

use super::vanishing::binomial;

/// Affine coordinates of the points in the chart `x_k = 1`, recentred near the
/// origin to keep matrix entries small. Translating the chart is an invertible
/// change of basis on forms of degree `d`, so ranks are unaffected.
fn chart(points: &[(Point, u32)]) -> Result<Vec<([Rational; 2], u32)>> {
    let k = (0..3)
        .find(|&k| points.iter().all(|(p, _)| !p.coords()[k].is_zero()))
        .ok_or_else(|| Error::Domain("no coordinate is nonzero at every point".into()))?;
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let affine: Vec<[Rational; 2]> = points
        .iter()
        .map(|(p, _)| {
            let c = p.coords();
            [&c[others[0]] / &c[k], &c[others[1]] / &c[k]]
        })
        .collect();
    let n = Rational::from_integer(BigInt::from(points.len().max(1)));
    let centre: Vec<Rational> = (0..2)
        .map(|a| (affine.iter().map(|q| q[a].clone()).sum::<Rational>() / &n).round())
        .collect();
    Ok(affine
        .into_iter()
        .zip(points)
        .map(|(q, (_, m))| ([&q[0] - &centre[0], &q[1] - &centre[1]], *m))
        .collect())
}

/// Rows: one per point and per `α` with `|α| < m`, the coefficient of `y^α`
/// in `f(q + y)`. Columns: the affine monomials of degree at most `d`.
fn condition_matrix(points: &[([Rational; 2], u32)], d: u32) -> Vec<Vec<Rational>> {
    let columns: Vec<(u32, u32)> = (0..=d).flat_map(|t| (0..=t).map(move |b2| (t - b2, b2))).collect();
    let mut rows = Vec::new();
    for (q, m) in points {
        let powers: Vec<Vec<Rational>> = q
            .iter()
            .map(|x| {
                let mut acc = vec![Rational::one()];
                for _ in 0..d {
                    let next = acc.last().expect("nonempty") * x;
                    acc.push(next);
                }
                acc
            })
            .collect();
        for order in 0..*m {
            for a2 in 0..=order {
                let a1 = order - a2;
                rows.push(
                    columns
                        .iter()
                        .map(|&(b1, b2)| {
                            if b1 < a1 || b2 < a2 {
                                return Rational::zero();
                            }
                            let c = binomial(b1, a1) * binomial(b2, a2);
                            Rational::from_integer(BigInt::from(c))
                                * &powers[0][(b1 - a1) as usize]
                                * &powers[1][(b2 - a2) as usize]
                        })
                        .collect(),
                );
            }
        }
    }
    rows
}

fn forms_of_degree(d: u32) -> u64 {
    u64::from(d + 2) * u64::from(d + 1) / 2
}

/// `dim I_d` for the fat-point scheme `Σ m_i P_i`, by exact rank of the
/// vanishing conditions.
pub fn hilbert_function_fat_points(points: &[(Point, u32)], d: u32, budget: &Budget) -> Result<u64> {
    let n_rows: u64 = points.iter().map(|(_, m)| u64::from(*m) * u64::from(m + 1) / 2).sum();
    let n_cols = forms_of_degree(d);
    if n_rows > budget.matrix_rows as u64 || n_cols > budget.matrix_cols as u64 {
        return Err(Error::BudgetExceeded(format!(
            "condition matrix {n_rows}x{n_cols} exceeds the {}x{} budget",
            budget.matrix_rows, budget.matrix_cols
        )));
    }
    let local = chart(points)?;
    let m = condition_matrix(&local, d);
    let rank = linalg::rank_rational(&m) as u64;
    Ok(n_cols - rank)
}

/// `dim I_d` of the grid ideal.
pub fn hilbert_function_oracle(g: &FatGrid, d: u32, budget: &Budget) -> Result<u64> {
    hilbert_function_fat_points(&g.fat_points(), d, budget)
}

/// The oracle Hilbert function for `d = 0..=top`.
pub fn hilbert_series_oracle(g: &FatGrid, top: u32, budget: &Budget) -> Result<Vec<u64>> {
    let points = g.fat_points();
    (0..=top)
        .into_par_iter()
        .map(|d| hilbert_function_fat_points(&points, d, budget))
        .collect()
}

/// Least degree of a nonzero form vanishing to the given orders.
pub fn oracle_initial_degree(points: &[(Point, u32)], budget: &Budget) -> Result<u32> {
    // terminates once C(d+2,2) exceeds the number of conditions
    let mut d = 0;
    while hilbert_function_fat_points(points, d, budget)? == 0 {
        d += 1;
    }
    Ok(d)
}
