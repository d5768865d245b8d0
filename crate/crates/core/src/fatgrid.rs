//! Hadamard fat grids: two weighted collinear point sets off the coordinate
//! lines, the grid of their Hadamard products with multiplicities
//! `m_i + n_j − 1`, and the horizontal/vertical grid lines through it.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Polynomial, VariableBlock};
use crate::projective::{is_collinear, Line, Point};

/// Collinear points off Δ₁ with positive multiplicities, sorted so the
/// multiplicities are non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPointSet {
    points: Vec<Point>,
    mults: Vec<u32>,
    line: Option<Line>,
}

impl WeightedPointSet {
    /// The supporting line is inferred; a single point gets one at grid build time.
    pub fn new(points: Vec<Point>, mults: Vec<u32>) -> Result<Self> {
        Self::build(points, mults, None)
    }

    pub fn with_line(points: Vec<Point>, mults: Vec<u32>, line: Line) -> Result<Self> {
        Self::build(points, mults, Some(line))
    }

    fn build(points: Vec<Point>, mults: Vec<u32>, line: Option<Line>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid(
                "a weighted point set needs at least one point".into(),
            ));
        }
        if points.len() != mults.len() {
            return Err(Error::InvalidGrid(format!(
                "{} points but {} multiplicities",
                points.len(),
                mults.len()
            )));
        }
        if let Some(m) = mults.iter().find(|&&m| m == 0) {
            return Err(Error::InvalidGrid(format!("multiplicity {m} is not positive")));
        }
        for p in &points {
            if !p.is_off_coordinate_lines() {
                return Err(Error::InvalidGrid(format!("point {p} lies on a coordinate line")));
            }
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::InvalidGrid(format!("point {p} is repeated")));
            }
        }
        if !is_collinear(&points) {
            return Err(Error::InvalidGrid("points are not collinear".into()));
        }
        let line = match line {
            Some(l) => {
                if let Some(p) = points.iter().find(|p| !p.is_on(&l)) {
                    return Err(Error::InvalidGrid(format!("point {p} is not on the line {l}")));
                }
                Some(l)
            }
            None if points.len() >= 2 => Some(Line::through(&points[0], &points[1])?),
            None => None,
        };
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by_key(|&i| mults[i]);
        Ok(WeightedPointSet {
            points: order.iter().map(|&i| points[i].clone()).collect(),
            mults: order.iter().map(|&i| mults[i]).collect(),
            line,
        })
    }

    /// `P_i = [1 : 1 : i+1]` on `x0 − x1 = 0`.
    pub fn default_rows(mults: &[u32]) -> Result<Self> {
        let points = (1..=mults.len() as i64)
            .map(|i| Point::from_ints([1, 1, i + 1]))
            .collect::<Result<_>>()?;
        Self::with_line(points, mults.to_vec(), Line::from_ints([1, -1, 0])?)
    }

    /// `Q_j = [1 : j+1 : 1]` on `x0 − x2 = 0`.
    pub fn default_cols(mults: &[u32]) -> Result<Self> {
        let points = (1..=mults.len() as i64)
            .map(|j| Point::from_ints([1, j + 1, 1]))
            .collect::<Result<_>>()?;
        Self::with_line(points, mults.to_vec(), Line::from_ints([1, 0, -1])?)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn line(&self) -> Option<&Line> {
        self.line.as_ref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn with_mults(&self, mults: Vec<u32>) -> Result<Self> {
        Self::build(self.points.clone(), mults, self.line.clone())
    }
}

/// Auxiliary points used to pick a line through a lone point.
fn auxiliary_points() -> impl Iterator<Item = Point> {
    const AUX: [[i64; 3]; 8] = [
        [1, 1, 1],
        [1, 2, 3],
        [1, 3, 2],
        [2, 1, 3],
        [1, 2, 5],
        [1, 5, 2],
        [3, 5, 7],
        [2, 7, 3],
    ];
    AUX.into_iter().map(|c| Point::from_ints(c).expect("nonzero"))
}

fn line_candidates(set: &WeightedPointSet) -> Vec<Line> {
    match &set.line {
        Some(l) => vec![l.clone()],
        None => auxiliary_points()
            .filter(|a| a != &set.points[0])
            .filter_map(|a| Line::through(&set.points[0], &a).ok())
            .collect(),
    }
}

/// A Hadamard fat grid `HFG(P_M, Q_N)` with `r ≤ s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatGrid {
    rows: WeightedPointSet,
    cols: WeightedPointSet,
    row_line: Line,
    col_line: Line,
    points: Vec<Vec<Point>>,
    mult: Vec<Vec<u32>>,
    h_lines: Vec<Line>,
    v_lines: Vec<Line>,
    swapped: bool,
}

impl FatGrid {
    /// Builds the grid, swapping the two sets when needed so that `r ≤ s`.
    pub fn build(p_m: WeightedPointSet, q_n: WeightedPointSet) -> Result<Self> {
        let (rows, cols, swapped) = if p_m.len() > q_n.len() {
            (q_n, p_m, true)
        } else {
            (p_m, q_n, false)
        };
        let mut last_err = None;
        for row_line in line_candidates(&rows) {
            for col_line in line_candidates(&cols) {
                match Self::assemble(&rows, &cols, &row_line, &col_line, swapped) {
                    Ok(g) => return Ok(g),
                    Err(e) => last_err = Some(e),
                }
            }
        }
        Err(last_err.unwrap_or_else(|| Error::InvalidGrid("no admissible grid lines".into())))
    }

    /// Grid on the default point sets for the given multiplicities.
    pub fn from_multiplicities(m: &[u32], n: &[u32]) -> Result<Self> {
        let (m, n) = if m.len() > n.len() { (n, m) } else { (m, n) };
        Self::build(WeightedPointSet::default_rows(m)?, WeightedPointSet::default_cols(n)?)
    }

    fn assemble(
        rows: &WeightedPointSet,
        cols: &WeightedPointSet,
        row_line: &Line,
        col_line: &Line,
        swapped: bool,
    ) -> Result<Self> {
        let (r, s) = (rows.len(), cols.len());
        let mut points = Vec::with_capacity(r);
        for p in &rows.points {
            let mut row = Vec::with_capacity(s);
            for q in &cols.points {
                row.push(
                    p.hadamard(q)
                        .ok_or_else(|| Error::InvalidGrid(format!("Hadamard product {p} ⋆ {q} is undefined")))?,
                );
            }
            points.push(row);
        }
        let flat: Vec<&Point> = points.iter().flatten().collect();
        for (i, p) in flat.iter().enumerate() {
            if flat[..i].contains(p) {
                return Err(Error::InvalidGrid(format!("grid point {p} occurs twice")));
            }
        }
        let mult = rows
            .mults
            .iter()
            .map(|&m| cols.mults.iter().map(|&n| m + n - 1).collect())
            .collect();
        let h_lines: Vec<Line> = (0..r)
            .map(|i| col_line.hadamard_point(&rows.points[r - 1 - i]))
            .collect::<Result<_>>()?;
        let v_lines: Vec<Line> = (0..s)
            .map(|j| row_line.hadamard_point(&cols.points[s - 1 - j]))
            .collect::<Result<_>>()?;
        if h_lines.iter().any(|h| v_lines.contains(h)) {
            return Err(Error::InvalidGrid(
                "a horizontal grid line coincides with a vertical one".into(),
            ));
        }
        for (i, row) in points.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let on_h: Vec<usize> = (0..r).filter(|&k| p.is_on(&h_lines[k])).collect();
                let on_v: Vec<usize> = (0..s).filter(|&k| p.is_on(&v_lines[k])).collect();
                if on_h != [r - 1 - i] || on_v != [s - 1 - j] {
                    return Err(Error::InvalidGrid(format!(
                        "grid point {p} does not lie on exactly one horizontal and one vertical line"
                    )));
                }
            }
        }
        Ok(FatGrid {
            rows: rows.clone(),
            cols: cols.clone(),
            row_line: row_line.clone(),
            col_line: col_line.clone(),
            points,
            mult,
            h_lines,
            v_lines,
            swapped,
        })
    }

    pub fn r(&self) -> usize {
        self.rows.len()
    }

    pub fn s(&self) -> usize {
        self.cols.len()
    }

    pub fn rows(&self) -> &WeightedPointSet {
        &self.rows
    }

    pub fn cols(&self) -> &WeightedPointSet {
        &self.cols
    }

    /// Sorted `M = (m_1 ≤ … ≤ m_r)`.
    pub fn m(&self) -> &[u32] {
        &self.rows.mults
    }

    /// Sorted `N = (n_1 ≤ … ≤ n_s)`.
    pub fn n(&self) -> &[u32] {
        &self.cols.mults
    }

    /// `ℓ_P`, the line of the row points.
    pub fn row_line(&self) -> &Line {
        &self.row_line
    }

    /// `ℓ_Q`, the line of the column points.
    pub fn col_line(&self) -> &Line {
        &self.col_line
    }

    /// `points()[i][j] = P_i ⋆ Q_j`.
    pub fn points(&self) -> &[Vec<Point>] {
        &self.points
    }

    /// `mult()[i][j] = m_i + n_j − 1`.
    pub fn mult(&self) -> &[Vec<u32>] {
        &self.mult
    }

    /// `H_i = ℓ_Q ⋆ P_{r−i+1}`; the grid row `i` lies on `H_{r−i+1}`.
    pub fn h_lines(&self) -> &[Line] {
        &self.h_lines
    }

    /// `V_j = ℓ_P ⋆ Q_{s−j+1}`; the grid column `j` lies on `V_{s−j+1}`.
    pub fn v_lines(&self) -> &[Line] {
        &self.v_lines
    }

    /// Whether the input sets were exchanged to get `r ≤ s`.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Grid points with their multiplicities, row by row.
    pub fn fat_points(&self) -> Vec<(Point, u32)> {
        self.points
            .iter()
            .zip(&self.mult)
            .flat_map(|(ps, ms)| ps.iter().cloned().zip(ms.iter().copied()))
            .collect()
    }

    /// `Σ m_ij`.
    pub fn multiplicity_sum(&self) -> u32 {
        self.mult.iter().flatten().sum()
    }

    /// Degree of the fat-point scheme, `Σ C(m_ij + 1, 2)`.
    pub fn scheme_degree(&self) -> u64 {
        self.mult
            .iter()
            .flatten()
            .map(|&m| u64::from(m) * u64::from(m + 1) / 2)
            .sum()
    }

    /// The grid of the `t`-th symbolic power: `M' = t·m_i − (t−1)`, `N' = t·n_j`.
    pub fn symbolic(&self, t: u32) -> Result<FatGrid> {
        if t == 0 {
            return Err(Error::InvalidInput("symbolic power requires t >= 1".into()));
        }
        let rows = self
            .rows
            .with_mults(self.rows.mults.iter().map(|&m| t * m - (t - 1)).collect())?;
        let cols = self.cols.with_mults(self.cols.mults.iter().map(|&n| t * n).collect())?;
        let mut g = Self::assemble(&rows, &cols, &self.row_line, &self.col_line, self.swapped)?;
        g.swapped = self.swapped;
        Ok(g)
    }

    /// Product of grid-line forms with the pattern's exponents.
    pub fn expand_pattern(&self, pat: &GeneratorPattern) -> Result<Polynomial> {
        if pat.h_exponents.len() != self.r() || pat.v_exponents.len() != self.s() {
            return Err(Error::InvalidInput(format!(
                "pattern shape {}x{} does not match a {}x{} grid",
                pat.h_exponents.len(),
                pat.v_exponents.len(),
                self.r(),
                self.s()
            )));
        }
        if pat.degree() == 0 {
            return Err(Error::InvalidInput(format!("pattern k={} is the constant 1", pat.k)));
        }
        let block = VariableBlock::plane();
        let mut f = Polynomial::one(&block);
        for (line, &e) in self
            .h_lines
            .iter()
            .zip(&pat.h_exponents)
            .chain(self.v_lines.iter().zip(&pat.v_exponents))
        {
            if e > 0 {
                f = &f * &line.form().pow(e);
            }
        }
        Ok(f)
    }

    /// `⋂ I(P_i ⋆ Q_j)^{m_ij}` by Gröbner-basis intersection.
    pub fn ideal_by_intersection(&self, budget: &Budget) -> Result<Ideal> {
        self.check_budget(budget)?;
        let powers = self.point_powers()?;
        fold_tree(powers)
    }

    pub(crate) fn check_budget(&self, budget: &Budget) -> Result<()> {
        let total = self.multiplicity_sum();
        if total > budget.grid_degree {
            return Err(Error::BudgetExceeded(format!(
                "grid multiplicity sum {total} exceeds the Gröbner budget {}",
                budget.grid_degree
            )));
        }
        Ok(())
    }

    pub(crate) fn point_powers(&self) -> Result<Vec<Ideal>> {
        self.fat_points().par_iter().map(|(p, m)| p.ideal().power(*m)).collect()
    }
}

/// Pairwise intersection in a balanced tree.
pub(crate) fn fold_tree(mut ideals: Vec<Ideal>) -> Result<Ideal> {
    if ideals.is_empty() {
        return Err(Error::InvalidInput("empty intersection".into()));
    }
    while ideals.len() > 1 {
        let mut next = Vec::with_capacity(ideals.len().div_ceil(2));
        let mut it = ideals.chunks(2);
        for pair in &mut it {
            next.push(match pair {
                [a, b] => a.intersection(b)?.canonical()?,
                [a] => a.clone(),
                _ => unreachable!(),
            });
        }
        ideals = next;
    }
    Ok(ideals.pop().expect("one ideal"))
}

/// Left-to-right intersection, used to check that fold order does not matter.
#[cfg(test)]
pub(crate) fn fold_left(ideals: &[Ideal]) -> Result<Ideal> {
    let (first, rest) = ideals
        .split_first()
        .ok_or_else(|| Error::InvalidInput("empty intersection".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, i| acc.intersection(i)?.canonical())
}

pub fn build_grid(p_m: WeightedPointSet, q_n: WeightedPointSet) -> Result<FatGrid> {
    FatGrid::build(p_m, q_n)
}

pub fn symbolic_grid(g: &FatGrid, t: u32) -> Result<FatGrid> {
    g.symbolic(t)
}

pub fn grid_ideal_intersection(g: &FatGrid, budget: &Budget) -> Result<Ideal> {
    g.ideal_by_intersection(budget)
}

pub fn expand_pattern(g: &FatGrid, pat: &GeneratorPattern) -> Result<Polynomial> {
    g.expand_pattern(pat)
}

/// Exponents of one minimal generator `H_1^{(a_1−k)+}⋯H_r^{(a_r−k)+} · V_1^{(b_1+k)+}⋯V_s^{(b_s+k)+}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorPattern {
    pub k: u32,
    pub h_exponents: Vec<u32>,
    pub v_exponents: Vec<u32>,
}

impl GeneratorPattern {
    /// Pattern `k` for the shifts `a_i = m_{r−i+1} + n_s − 1` and `b_j = n_{s−j+1} − n_s`.
    pub fn from_shifts(a: &[i64], b: &[i64], k: u32) -> Self {
        let k64 = i64::from(k);
        GeneratorPattern {
            k,
            h_exponents: a.iter().map(|&ai| (ai - k64).max(0) as u32).collect(),
            v_exponents: b.iter().map(|&bj| (bj + k64).max(0) as u32).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.h_exponents.iter().sum::<u32>() + self.v_exponents.iter().sum::<u32>()
    }

    /// Exponent-wise divisibility of the corresponding products of line forms.
    pub fn divides(&self, other: &GeneratorPattern) -> bool {
        self.h_exponents.iter().zip(&other.h_exponents).all(|(a, b)| a <= b)
            && self.v_exponents.iter().zip(&other.v_exponents).all(|(a, b)| a <= b)
    }

    /// Exponent-wise product.
    pub fn times(&self, other: &GeneratorPattern) -> GeneratorPattern {
        GeneratorPattern {
            k: self.k + other.k,
            h_exponents: self
                .h_exponents
                .iter()
                .zip(&other.h_exponents)
                .map(|(a, b)| a + b)
                .collect(),
            v_exponents: self
                .v_exponents
                .iter()
                .zip(&other.v_exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `H_1^6 H_2^6 H_3^5 · V_1^1`, omitting zero exponents.
    pub fn describe(&self) -> String {
        let part = |name: char, exps: &[u32]| -> Vec<String> {
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("{name}{}", i + 1)
                    } else {
                        format!("{name}{}^{e}", i + 1)
                    }
                })
                .collect()
        };
        let h = part('H', &self.h_exponents);
        let v = part('V', &self.v_exponents);
        match (h.is_empty(), v.is_empty()) {
            (false, false) => format!("{} * {}", h.join("*"), v.join("*")),
            (false, true) => h.join("*"),
            (true, false) => v.join("*"),
            (true, true) => "1".into(),
        }
    }
}
