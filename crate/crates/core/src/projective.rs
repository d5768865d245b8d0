//! Points and lines of the projective plane over the rationals, the
//! coordinate strata Δ₀ ⊂ Δ₁, and Hadamard products of points and lines.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{format_rational, parse_rational, Polynomial, Rational, VariableBlock};

fn normalize(mut coords: [Rational; 3]) -> Option<[Rational; 3]> {
    let lead = coords.iter().find(|c| !c.is_zero())?.clone();
    if !lead.is_one() {
        for c in &mut coords {
            *c = &*c / &lead;
        }
    }
    Some(coords)
}

/// A point `[p0 : p1 : p2]`, scaled so its first nonzero coordinate is 1.
/// Equal points have identical coordinate triples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: [Rational; 3],
}

impl Point {
    pub fn new(coords: [Rational; 3]) -> Result<Self> {
        normalize(coords)
            .map(|coords| Point { coords })
            .ok_or_else(|| Error::InvalidInput("a projective point needs a nonzero coordinate".into()))
    }

    pub fn from_ints(coords: [i64; 3]) -> Result<Self> {
        Self::new(coords.map(crate::poly::rat))
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    /// Parses `p0:p1:p2` with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected p0:p1:p2, got {s:?}")));
        }
        let c = [
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        ];
        Self::new(c)
    }

    pub fn from_strings(coords: &[String]) -> Result<Self> {
        if coords.len() != 3 {
            return Err(Error::Parse(format!(
                "a point needs 3 coordinates, got {}",
                coords.len()
            )));
        }
        Self::new([
            parse_rational(&coords[0])?,
            parse_rational(&coords[1])?,
            parse_rational(&coords[2])?,
        ])
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }

    /// Number of nonzero coordinates minus one: the point lies in Δ_i iff this is ≤ i.
    pub fn delta_index(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count() - 1
    }

    pub fn is_off_coordinate_lines(&self) -> bool {
        self.delta_index() == 2
    }

    /// Coordinate-wise product; `None` when every product vanishes.
    pub fn hadamard(&self, other: &Point) -> Option<Point> {
        let prod = [
            &self.coords[0] * &other.coords[0],
            &self.coords[1] * &other.coords[1],
            &self.coords[2] * &other.coords[2],
        ];
        normalize(prod).map(|coords| Point { coords })
    }

    /// `1/P`, defined off the coordinate lines.
    pub fn reciprocal(&self) -> Result<Point> {
        if !self.is_off_coordinate_lines() {
            return Err(Error::Domain(format!(
                "reciprocal of {self} is undefined: zero coordinate"
            )));
        }
        Point::new([self.coords[0].recip(), self.coords[1].recip(), self.coords[2].recip()])
    }

    /// Ideal of the point: two independent linear forms spanning the
    /// annihilator of the coordinate vector, in reduced echelon form.
    pub fn ideal(&self) -> Ideal {
        let block = VariableBlock::plane();
        let gens = self
            .annihilator()
            .iter()
            .map(|row| Polynomial::linear(&block, row))
            .collect();
        Ideal::new(&block, gens).expect("plane block")
    }

    /// Rows of the reduced echelon basis of `{c : c · p = 0}`.
    fn annihilator(&self) -> Vec<[Rational; 3]> {
        // p is normalized: pivot is the first nonzero coordinate, equal to 1
        let pivot = self.coords.iter().position(|c| !c.is_zero()).expect("nonzero point");
        let free: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        let mut rows: Vec<[Rational; 3]> = free
            .iter()
            .map(|&f| {
                // c_f = 1, c_pivot = -p_f
                let mut row = [Rational::zero(), Rational::zero(), Rational::zero()];
                row[f] = Rational::one();
                row[pivot] = -self.coords[f].clone();
                row
            })
            .collect();
        rref(&mut rows);
        rows
    }

    pub fn eval_form(&self, coeffs: &[Rational; 3]) -> Rational {
        coeffs.iter().zip(&self.coords).map(|(a, b)| a * b).sum()
    }

    pub fn is_on(&self, line: &Line) -> bool {
        self.eval_form(&line.coeffs).is_zero()
    }
}

fn rref(rows: &mut [[Rational; 3]]) {
    let mut lead = 0;
    for r in 0..rows.len() {
        while lead < 3 {
            if let Some(i) = (r..rows.len()).find(|&i| !rows[i][lead].is_zero()) {
                rows.swap(r, i);
                let inv = rows[r][lead].recip();
                for c in rows[r].iter_mut() {
                    *c = &*c * &inv;
                }
                let pivot = rows[r].clone();
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != r && !row[lead].is_zero() {
                        let f = row[lead].clone();
                        for (c, v) in row.iter_mut().zip(&pivot) {
                            *c -= v * &f;
                        }
                    }
                }
                lead += 1;
                break;
            }
            lead += 1;
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(short_rational).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn short_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A line `l0 x0 + l1 x1 + l2 x2 = 0`, normalized like a point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Line {
    coeffs: [Rational; 3],
}

impl Line {
    pub fn new(coeffs: [Rational; 3]) -> Result<Self> {
        normalize(coeffs)
            .map(|coeffs| Line { coeffs })
            .ok_or_else(|| Error::InvalidInput("a line needs a nonzero coefficient".into()))
    }

    pub fn from_ints(coeffs: [i64; 3]) -> Result<Self> {
        Self::new(coeffs.map(crate::poly::rat))
    }

    pub fn coeffs(&self) -> &[Rational; 3] {
        &self.coeffs
    }

    /// The defining linear form.
    pub fn form(&self) -> Polynomial {
        Polynomial::linear(&VariableBlock::plane(), &self.coeffs)
    }

    /// The unique line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Result<Line> {
        if p == q {
            return Err(Error::InvalidInput(format!(
                "no unique line through the equal points {p} and {q}"
            )));
        }
        Line::new(cross(p.coords(), q.coords()))
    }

    /// `L ⋆ P`: the line whose form is the Hadamard transform of `L` by `P`.
    /// It contains `Q ⋆ P` for every `Q` on `L`.
    pub fn hadamard_point(&self, p: &Point) -> Result<Line> {
        if !p.is_off_coordinate_lines() {
            return Err(Error::Domain(format!(
                "Hadamard product of a line with {p} on a coordinate line"
            )));
        }
        Line::new([
            &self.coeffs[0] / &p.coords()[0],
            &self.coeffs[1] / &p.coords()[1],
            &self.coeffs[2] / &p.coords()[2],
        ])
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} = 0}}", self.form())
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn det3(a: &[Rational; 3], b: &[Rational; 3], c: &[Rational; 3]) -> Rational {
    cross(a, b).iter().zip(c).map(|(x, y)| x * y).sum()
}

pub fn hadamard_point(p: &Point, q: &Point) -> Option<Point> {
    p.hadamard(q)
}

pub fn line_through(p: &Point, q: &Point) -> Result<Line> {
    Line::through(p, q)
}

pub fn hadamard_line_point(l: &Line, p: &Point) -> Result<Line> {
    l.hadamard_point(p)
}

/// True iff all points lie on a common line (vacuously for fewer than three).
pub fn is_collinear(points: &[Point]) -> bool {
    let Some(first) = points.first() else { return true };
    let Some(second) = points.iter().find(|q| *q != first) else {
        return true;
    };
    points
        .iter()
        .all(|r| det3(first.coords(), second.coords(), r.coords()).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, ratio};

    fn pt(c: [i64; 3]) -> Point {
        Point::from_ints(c).unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(pt([2, 4, 6]), pt([1, 2, 3]));
        assert_eq!(pt([0, -3, 6]).coords()[2], crate::poly::rat(-2));
        assert!(Point::from_ints([0, 0, 0]).is_err());
        assert_eq!(Point::parse("2:2:3").unwrap().coords()[2], ratio(3, 2));
    }

    #[test]
    fn hadamard_products_of_points() {
        assert_eq!(
            pt([1, 2, 3]).hadamard(&pt([2, 1, 1])).unwrap(),
            Point::parse("1:1:3/2").unwrap()
        );
        let p = pt([0, 5, 7]);
        assert_eq!(p.hadamard(&pt([1, 1, 1])).unwrap(), p);
        assert_eq!(pt([1, 0, 0]).hadamard(&pt([0, 1, 0])), None);
    }

    #[test]
    fn delta_strata() {
        assert_eq!(pt([1, 0, 0]).delta_index(), 0);
        assert_eq!(pt([1, 1, 0]).delta_index(), 1);
        assert_eq!(pt([1, 2, 3]).delta_index(), 2);
    }

    #[test]
    fn reciprocals() {
        assert_eq!(pt([1, 2, 4]).reciprocal().unwrap(), Point::parse("1:1/2:1/4").unwrap());
        assert_eq!(pt([1, 1, 1]).reciprocal().unwrap(), pt([1, 1, 1]));
        let p = pt([3, 5, 7]);
        assert_eq!(p.reciprocal().unwrap().reciprocal().unwrap(), p);
        assert!(pt([1, 0, 2]).reciprocal().is_err());
    }

    #[test]
    fn point_ideals() {
        let b = VariableBlock::plane();
        let i = pt([1, 0, 0]).ideal();
        let expect: Vec<Polynomial> = ["x1", "x2"].iter().map(|s| parse_polynomial(s, &b).unwrap()).collect();
        assert_eq!(i.gens(), &expect[..]);
        let j = pt([1, 1, 1]).ideal();
        let alt = Ideal::new(
            &b,
            vec![
                parse_polynomial("x0 - x1", &b).unwrap(),
                parse_polynomial("x1 - x2", &b).unwrap(),
            ],
        )
        .unwrap();
        assert!(j.equals(&alt).unwrap());
        for p in [pt([1, 2, 3]), pt([0, 1, 5]), pt([0, 0, 1]), pt([4, 0, -1])] {
            let ideal = p.ideal();
            assert_eq!(ideal.gens().len(), 2);
            for g in ideal.gens() {
                assert!(g.eval(p.coords()).is_zero());
            }
        }
    }

    #[test]
    fn lines_and_collinearity() {
        let l = Line::through(&pt([1, 0, 0]), &pt([0, 1, 0])).unwrap();
        assert_eq!(l, Line::from_ints([0, 0, 1]).unwrap());
        let (a, b) = (pt([1, 2, 3]), pt([4, 5, 6]));
        let ab = Line::through(&a, &b).unwrap();
        assert!(a.is_on(&ab) && b.is_on(&ab));
        assert!(Line::through(&a, &a).is_err());
        assert!(is_collinear(&[a.clone(), b.clone(), pt([7, 8, 9])]));
        assert!(!is_collinear(&[pt([1, 2, 3]), pt([2, 7, 1]), pt([5, 1, 4])]));
    }

    #[test]
    fn hadamard_of_line_and_point() {
        let l = Line::from_ints([1, 1, 1]).unwrap();
        assert_eq!(l.hadamard_point(&pt([1, 1, 1])).unwrap(), l);
        let l = Line::from_ints([1, -1, 0]).unwrap();
        let image = l.hadamard_point(&pt([1, 2, 3])).unwrap();
        assert_eq!(image, Line::new([ratio(1, 1), ratio(-1, 2), ratio(0, 1)]).unwrap());
        for q in [pt([1, 1, 5]), pt([2, 2, -7])] {
            assert!(q.is_on(&l));
            assert!(q.hadamard(&pt([1, 2, 3])).unwrap().is_on(&image));
        }
        assert!(l.hadamard_point(&pt([1, 0, 3])).is_err());
    }
}
