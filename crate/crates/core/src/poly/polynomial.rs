use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::format_rational;
use super::{Monomial, MonomialOrder, Rational};
use crate::error::{Error, Result};

/// Ordered list of variable names. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableBlock {
    names: Arc<[String]>,
}

impl VariableBlock {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidInput("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate variable name {n:?}")));
            }
        }
        Ok(Self { names: names.into() })
    }

    /// The block `x0, x1, x2` of the projective plane.
    pub fn plane() -> Self {
        Self::new(["x0", "x1", "x2"]).expect("distinct names")
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Appends fresh variables named after `self` with the given suffix; the
    /// suffix is repeated until no name clashes.
    pub fn extend_with_copy(&self, blocks: &[&str]) -> Self {
        let mut names: Vec<String> = self.names.to_vec();
        for suffix in blocks {
            let mut tag = suffix.to_string();
            loop {
                let fresh: Vec<String> = self.names.iter().map(|n| format!("{n}{tag}")).collect();
                if fresh.iter().all(|f| !names.contains(f)) {
                    names.extend(fresh);
                    break;
                }
                tag.push_str(suffix);
            }
        }
        Self { names: names.into() }
    }

    pub fn extend_with(&self, extra: &[&str]) -> Result<Self> {
        Self::new(self.names.iter().cloned().chain(extra.iter().map(|s| s.to_string())))
    }

    /// Prefix of the first `len` variables.
    pub fn prefix(&self, len: usize) -> Self {
        Self {
            names: self.names[..len].to_vec().into(),
        }
    }

    pub(crate) fn describe(&self) -> String {
        self.names.join(",")
    }
}

impl fmt::Debug for VariableBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.describe())
    }
}

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    block: VariableBlock,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(block: &VariableBlock) -> Self {
        Self {
            block: block.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(block: &VariableBlock, c: Rational) -> Self {
        let mut p = Self::zero(block);
        p.add_term(Monomial::one(block.arity()), c);
        p
    }

    pub fn one(block: &VariableBlock) -> Self {
        Self::constant(block, Rational::one())
    }

    pub fn var(block: &VariableBlock, index: usize) -> Self {
        Self::monomial(block, Monomial::var(block.arity(), index), Rational::one())
    }

    pub fn monomial(block: &VariableBlock, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.arity(), block.arity(), "monomial arity does not match block");
        let mut p = Self::zero(block);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(block: &VariableBlock, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(block);
        for (m, c) in terms {
            assert_eq!(m.arity(), block.arity(), "monomial arity does not match block");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(block: &VariableBlock, coeffs: &[Rational]) -> Self {
        assert_eq!(coeffs.len(), block.arity());
        Self::from_terms(
            block,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(block.arity(), i), c.clone())),
        )
    }

    pub fn block(&self) -> &VariableBlock {
        &self.block
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms sorted descending in `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.block);
        }
        Self {
            block: self.block.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient in `order`.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        Self {
            block: self.block.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.block);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.block.arity());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        total
    }

    /// Maps variable `i` of `self` to variable `positions[i]` of `target`.
    pub fn embed(&self, target: &VariableBlock, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.block.arity());
        let n = target.arity();
        Self::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[positions[i]] += x;
                }
                (Monomial::new(e), c.clone())
            }),
        )
    }

    /// Restricts to the first `target.arity()` variables if no other variable occurs.
    pub fn restrict_prefix(&self, target: &VariableBlock) -> Option<Self> {
        let k = target.arity();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            if m.exponents()[k..].iter().any(|&e| e > 0) {
                return None;
            }
            out.terms.insert(Monomial::new(m.exponents()[..k].to_vec()), c.clone());
        }
        Some(out)
    }

    /// Substitutes `x_i -> polys[i]`; all `polys` share one target block.
    pub fn compose(&self, polys: &[Polynomial]) -> Polynomial {
        assert_eq!(polys.len(), self.block.arity());
        let target = polys[0].block().clone();
        let mut powers: Vec<Vec<Polynomial>> = polys.iter().map(|p| vec![Polynomial::one(p.block())]).collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &polys[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    term = &term * &powers[i][e];
                }
            }
            out = &out + &term;
        }
        out
    }

    pub(crate) fn check_block(&self, block: &VariableBlock) -> Result<()> {
        if &self.block != block {
            return Err(Error::BlockMismatch {
                expected: block.describe(),
                found: self.block.describe(),
            });
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.block, rhs.block, "block mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.block, rhs.block, "block mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.block, rhs.block, "block mismatch in multiplication");
        let mut out = Polynomial::zero(&self.block);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    /// Terms in descending grevlex order, e.g. `x0^2 - 1/2*x1*x2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms(MonomialOrder::GrevLex).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(if abs.is_integer() {
                    abs.numer().to_string()
                } else {
                    format_rational(&abs)
                });
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.block.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.block.names()[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat, ratio};
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(&VariableBlock::plane(), i)
    }

    #[test]
    fn arithmetic_cancels_and_drops_zeros() {
        let p = &x(0) + &x(1);
        let q = &p - &x(1);
        assert_eq!(q, x(0));
        assert!((&p - &p).is_zero());
        assert_eq!((&p * &p).len(), 3);
    }

    #[test]
    fn power_matches_repeated_product() {
        let p = &(&x(0) - &x(1)) + &x(2).scale(&rat(2));
        assert_eq!(p.pow(3), &(&p * &p) * &p);
        assert_eq!(p.pow(0), Polynomial::one(&VariableBlock::plane()));
    }

    #[test]
    fn homogeneity_and_degrees() {
        let p = &x(0) * &x(1);
        assert!(p.is_homogeneous());
        let q = &p + &x(2);
        assert!(!q.is_homogeneous());
        assert_eq!(q.degree(), Some(2));
        assert_eq!(q.min_degree(), Some(1));
    }

    #[test]
    fn display_is_readable() {
        let p = &(&x(0).pow(2) - &(&x(1) * &x(2)).scale(&ratio(1, 2)))
            + &Polynomial::constant(&VariableBlock::plane(), rat(3));
        assert_eq!(p.to_string(), "x0^2 - 1/2*x1*x2 + 3");
    }

    #[test]
    fn embed_and_restrict_round_trip() {
        let big = VariableBlock::plane().extend_with_copy(&["'"]);
        assert_eq!(big.arity(), 6);
        let p = &x(0) * &x(2);
        let e = p.embed(&big, &[3, 4, 5]);
        assert!(e.restrict_prefix(&VariableBlock::plane()).is_none());
        let f = p.embed(&big, &[0, 1, 2]);
        assert_eq!(f.restrict_prefix(&VariableBlock::plane()).unwrap(), p);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(VariableBlock::new(["a", "b", "a"]).is_err());
    }

    #[test]
    fn compose_substitutes() {
        // (x0 + x1)∘(x0 -> x0 + 1, x1 -> x1, x2 -> x2)
        let b = VariableBlock::plane();
        let p = &x(0) + &x(1);
        let shifted = &x(0) + &Polynomial::one(&b);
        let r = p.compose(&[shifted, x(1), x(2)]);
        assert_eq!(r, &(&x(0) + &x(1)) + &Polynomial::one(&b));
    }
}
