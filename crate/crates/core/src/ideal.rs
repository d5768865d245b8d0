//! Ideal presentations and the ideal algebra built on elimination:
//! sums, products, powers, intersections, joins and Hadamard products.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate, GroebnerBasis};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, VariableBlock};
use crate::projective::Point;

/// A finite generating set together with a write-once cache of reduced
/// Gröbner bases, one per monomial order.
#[derive(Clone)]
pub struct Ideal {
    block: VariableBlock,
    gens: Vec<Polynomial>,
    cache: Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(block: &VariableBlock, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            g.check_block(block)?;
        }
        Ok(Self::from_checked(block, gens))
    }

    fn from_checked(block: &VariableBlock, gens: Vec<Polynomial>) -> Self {
        Ideal {
            block: block.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn block(&self) -> &VariableBlock {
        &self.block
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(&order) {
            return Ok(b.clone());
        }
        let basis = Arc::new(buchberger(&self.block, &self.gens, order)?);
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(cache.entry(order).or_insert(basis).clone())
    }

    /// Reduced graded-reverse-lex basis.
    pub fn basis(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner(MonomialOrder::GrevLex)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.basis()?.contains(f)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.same_block(other)?;
        let b = other.basis()?;
        for g in &self.gens {
            if !b.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals via their reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.same_block(other)?;
        Ok(self.basis()?.polys() == other.basis()?.polys())
    }

    /// Minimum degree of a nonzero element, for homogeneous ideals.
    pub fn initial_degree(&self) -> Result<Option<u32>> {
        Ok(self.basis()?.polys().iter().filter_map(Polynomial::min_degree).min())
    }

    fn same_block(&self, other: &Ideal) -> Result<()> {
        if self.block != other.block {
            return Err(Error::BlockMismatch {
                expected: self.block.describe(),
                found: other.block.describe(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_block(other)?;
        Ok(Ideal::from_checked(
            &self.block,
            self.gens.iter().chain(&other.gens).cloned().collect(),
        ))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_block(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ok(Ideal::from_checked(&self.block, dedup(gens)))
    }

    /// All `m`-fold products of generators. `m = 0` is rejected.
    pub fn power(&self, m: u32) -> Result<Ideal> {
        if m == 0 {
            return Err(Error::InvalidInput("ideal power requires m >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.same_block(other)?;
        let n = self.block.arity();
        let ext = self.block.extend_with(&[&fresh_name(&self.block, "t")])?;
        let positions: Vec<usize> = (0..n).collect();
        let t = Polynomial::var(&ext, n);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for f in &self.gens {
            gens.push(&t * &f.embed(&ext, &positions));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.embed(&ext, &positions));
        }
        let basis = buchberger(&ext, &gens, MonomialOrder::BlockElimination { kept: n })?;
        Ok(Ideal::from_checked(&self.block, eliminate(&basis, &self.block)?))
    }

    /// The join `I * J`: eliminate `y, z` from `I(y) + J(z) + (x_i − y_i − z_i)`.
    pub fn join(&self, other: &Ideal) -> Result<Ideal> {
        self.two_block_elimination(other, |x, y, z| &(x - y) - z)
    }

    /// The Hadamard product `I ⋆ J`: eliminate `y, z` from `I(y) + J(z) + (x_i − y_i z_i)`.
    pub fn hadamard(&self, other: &Ideal) -> Result<Ideal> {
        self.two_block_elimination(other, |x, y, z| x - &(y * z))
    }

    fn two_block_elimination(
        &self,
        other: &Ideal,
        relation: impl Fn(&Polynomial, &Polynomial, &Polynomial) -> Polynomial,
    ) -> Result<Ideal> {
        self.same_block(other)?;
        let n = self.block.arity();
        let ext = self.block.extend_with_copy(&["'", "''"]);
        let ys: Vec<usize> = (n..2 * n).collect();
        let zs: Vec<usize> = (2 * n..3 * n).collect();
        let mut gens = Vec::new();
        gens.extend(self.gens.iter().map(|f| f.embed(&ext, &ys)));
        gens.extend(other.gens.iter().map(|g| g.embed(&ext, &zs)));
        for i in 0..n {
            let x = Polynomial::var(&ext, i);
            let y = Polynomial::var(&ext, n + i);
            let z = Polynomial::var(&ext, 2 * n + i);
            gens.push(relation(&x, &y, &z));
        }
        let basis = buchberger(&ext, &gens, MonomialOrder::BlockElimination { kept: n })?;
        Ok(Ideal::from_checked(&self.block, eliminate(&basis, &self.block)?))
    }

    /// Ideal generated by the reduced grevlex basis.
    pub fn canonical(&self) -> Result<Ideal> {
        Ok(Ideal::from_checked(&self.block, self.basis()?.polys().to_vec()))
    }
}

fn fresh_name(block: &VariableBlock, base: &str) -> String {
    let mut name = base.to_string();
    while block.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

fn dedup(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Free-function forms of the ideal algebra.
pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.equals(j)
}

pub fn ideal_power(i: &Ideal, m: u32) -> Result<Ideal> {
    i.power(m)
}

pub fn ideal_intersection(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.intersection(j)
}

pub fn join_ideals(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.join(j)
}

pub fn hadamard_ideals(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.hadamard(j)
}

/// The irrelevant ideal power `m^t` of the plane: all monomials of degree `t`.
pub fn irrelevant_power(t: u32) -> Result<Ideal> {
    monomial_power(&VariableBlock::plane(), t)
}

pub fn monomial_power(block: &VariableBlock, t: u32) -> Result<Ideal> {
    if t == 0 {
        return Err(Error::InvalidInput("irrelevant power requires t >= 1".into()));
    }
    let gens = Monomial::all_of_degree(block.arity(), t)
        .into_iter()
        .map(|m| Polynomial::monomial(block, m, Rational::one()))
        .collect();
    Ideal::new(block, gens)
}

/// `f^{⋆P}`: the coefficient of `X^I` becomes `a_I / P^I`.
pub fn hadamard_transform(f: &Polynomial, p: &Point) -> Result<Polynomial> {
    if f.block().arity() != 3 {
        return Err(Error::InvalidInput(
            "Hadamard transform is defined on the plane block".into(),
        ));
    }
    if p.coords().iter().any(Zero::is_zero) {
        return Err(Error::Domain(format!(
            "Hadamard transform by {p} is undefined: the point lies on a coordinate line"
        )));
    }
    if !f.is_homogeneous() {
        return Err(Error::InvalidInput(
            "Hadamard transform requires a homogeneous polynomial".into(),
        ));
    }
    let inv: Vec<Rational> = p.coords().iter().map(|c| c.recip()).collect();
    Ok(Polynomial::from_terms(
        f.block(),
        f.terms().map(|(m, a)| {
            let mut c = a.clone();
            for (x, &e) in inv.iter().zip(m.exponents()) {
                for _ in 0..e {
                    c *= x;
                }
            }
            (m.clone(), c)
        }),
    ))
}

/// Generators transformed one by one; by the transform theorem they generate `I(P) ⋆ I`.
pub fn hadamard_transform_ideal(i: &Ideal, p: &Point) -> Result<Ideal> {
    let gens = i
        .gens()
        .iter()
        .map(|g| hadamard_transform(g, p))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(i.block(), gens)
}
