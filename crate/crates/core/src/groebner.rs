//! Buchberger's algorithm with the Gebauer–Möller pair criteria and sugar
//! selection, producing reduced monic Gröbner bases over the rationals.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, VariableBlock};

/// Polynomial as a term vector sorted ascending in a fixed order, so the
/// leading term sits at the end.
#[derive(Clone, Debug)]
pub(crate) struct Sparse {
    terms: Vec<(Monomial, Rational)>,
}

impl Sparse {
    pub(crate) fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sparse { terms }
    }

    pub(crate) fn to_poly(&self, block: &VariableBlock) -> Polynomial {
        Polynomial::from_terms(block, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, a) in &mut self.terms {
                    *a *= &inv;
                }
            }
        }
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// `self - c * m * g`, where the leading terms are known to cancel.
    fn sub_cancelling(&self, c: &Rational, m: &Monomial, g: &Sparse, order: MonomialOrder) -> Sparse {
        let a = &self.terms[..self.terms.len() - 1];
        let b = &g.terms[..g.terms.len() - 1];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = b[j].0.mul(m);
            if i == a.len() {
                out.push((bm, -(c * &b[j].1)));
                j += 1;
                continue;
            }
            match order.cmp(&a[i].0, &bm) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((bm, -(c * &b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].1 - c * &b[j].1;
                    if !v.is_zero() {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Sparse { terms: out }
    }
}

/// Reduces `p` modulo monic `basis`. With `full`, every term is reduced;
/// otherwise stops at the first irreducible leading term.
fn reduce(p: Sparse, basis: &[&Sparse], order: MonomialOrder, full: bool) -> Sparse {
    let mut p = p;
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((lm, lc)) = p.lead() {
        let divisor = basis.iter().find(|g| g.lm().divides(lm));
        match divisor {
            Some(g) => {
                let q = g.lm().quotient_of(lm).expect("divides");
                let c = lc.clone();
                p = p.sub_cancelling(&c, &q, g, order);
            }
            None if full => rem.push(p.terms.pop().expect("nonempty")),
            None => break,
        }
    }
    if full {
        rem.reverse();
        p.terms.extend(rem);
    }
    p
}

fn s_polynomial(f: &Sparse, g: &Sparse, lcm: &Monomial, order: MonomialOrder) -> Sparse {
    // f, g monic: lcm/lm(f) * f - lcm/lm(g) * g
    let uf = f.lm().quotient_of(lcm).expect("lcm");
    let ug = g.lm().quotient_of(lcm).expect("lcm");
    let fu = Sparse {
        terms: f.terms.iter().map(|(m, c)| (m.mul(&uf), c.clone())).collect(),
    };
    fu.sub_cancelling(&Rational::one(), &ug, g, order)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<Sparse>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn new(order: MonomialOrder) -> Self {
        Engine {
            order,
            polys: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn active_basis(&self) -> Vec<&Sparse> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.polys[i].lm().degree();
        let sj = self.sugar[j] + lcm.degree() - self.polys[j].lm().degree();
        si.max(sj)
    }

    /// Gebauer–Möller update after appending a new basis element `h`.
    fn insert(&mut self, h_poly: Sparse, sugar: u32) {
        let h = self.polys.len();
        let lm_h = h_poly.lm().clone();
        self.polys.push(h_poly);
        self.sugar.push(sugar);
        self.active.push(true);

        let candidates: Vec<(usize, Monomial)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| (g, lm_h.lcm(self.polys[g].lm())))
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, lcm)) in candidates.iter().enumerate() {
            let coprime = lm_h.is_coprime(self.polys[*g].lm());
            let dominated_rest = candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(lcm));
            let dominated_kept = kept.iter().any(|(_, l2)| l2.divides(lcm));
            if coprime || (!dominated_rest && !dominated_kept) {
                kept.push((*g, lcm.clone()));
            }
        }
        // product criterion
        let fresh: Vec<(usize, Monomial)> = kept
            .into_iter()
            .filter(|(g, _)| !lm_h.is_coprime(self.polys[*g].lm()))
            .collect();

        // drop old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lcm_ih = polys[p.i].lm().lcm(&lm_h);
            let lcm_jh = polys[p.j].lm().lcm(&lm_h);
            !(lm_h.divides(&p.lcm) && lcm_ih != p.lcm && lcm_jh != p.lcm)
        });

        for (g, lcm) in fresh {
            let sugar = self.pair_sugar(g, h, &lcm);
            self.pairs.push(Pair { i: g, j: h, lcm, sugar });
        }

        for g in 0..h {
            if self.active[g] && lm_h.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                pa.sugar.cmp(&pb.sugar).then_with(|| order.cmp(&pa.lcm, &pb.lcm))
            })
            .expect("nonempty");
        Some(self.pairs.swap_remove(best))
    }

    fn add_generator(&mut self, p: Sparse) {
        let sugar = p.degree();
        let basis = self.active_basis();
        let mut r = reduce(p, &basis, self.order, false);
        if r.is_zero() {
            return;
        }
        r.make_monic();
        self.insert(r, sugar);
    }

    fn run(&mut self) {
        while let Some(pair) = self.next_pair() {
            let s = s_polynomial(&self.polys[pair.i], &self.polys[pair.j], &pair.lcm, self.order);
            let basis = self.active_basis();
            let mut r = reduce(s, &basis, self.order, false);
            if r.is_zero() {
                continue;
            }
            r.make_monic();
            self.insert(r, pair.sugar);
        }
    }

    /// Minimal, tail-reduced, monic basis sorted by descending leading monomial.
    fn finish(self) -> Vec<Sparse> {
        let order = self.order;
        let mut minimal: Vec<Sparse> = Vec::new();
        let active: Vec<Sparse> = self
            .polys
            .into_iter()
            .zip(self.active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        for (i, p) in active.iter().enumerate() {
            let redundant = active
                .iter()
                .enumerate()
                .any(|(j, q)| j != i && q.lm().divides(p.lm()) && (q.lm() != p.lm() || j < i));
            if !redundant {
                minimal.push(p.clone());
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<&Sparse> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q)
                .collect();
            let mut r = reduce(minimal[i].clone(), &others, order, true);
            r.make_monic();
            reduced.push(r);
        }
        reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
        reduced
    }
}

/// A reduced monic Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    block: VariableBlock,
    polys: Vec<Polynomial>,
    sparse: Vec<Sparse>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.block == other.block && self.polys == other.polys
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn block(&self) -> &VariableBlock {
        &self.block
    }

    /// Basis elements, sorted by descending leading monomial.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sparse.iter().map(|s| s.lm().clone()).collect()
    }

    /// True for the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.sparse.len() == 1 && self.sparse[0].lm().is_one()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        f.check_block(&self.block)?;
        let basis: Vec<&Sparse> = self.sparse.iter().collect();
        Ok(reduce(Sparse::from_poly(f, self.order), &basis, self.order, true).to_poly(&self.block))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Computes the reduced monic Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(block: &VariableBlock, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    for g in gens {
        g.check_block(block)?;
    }
    let mut inputs: Vec<Sparse> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = Sparse::from_poly(g, order);
            s.make_monic();
            s
        })
        .collect();
    // smaller generators first keeps early reductions cheap
    inputs.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| order.cmp(a.lm(), b.lm())));

    let mut engine = Engine::new(order);
    for s in inputs {
        engine.add_generator(s);
        if engine.polys.last().is_some_and(|p| p.lm().is_one()) {
            break;
        }
    }
    engine.run();
    let sparse = engine.finish();
    let polys = sparse.iter().map(|s| s.to_poly(block)).collect();
    Ok(GroebnerBasis {
        order,
        block: block.clone(),
        polys,
        sparse,
    })
}

/// Multivariate division remainder of `f` by an arbitrary divisor list.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Result<Polynomial> {
    let block = f.block().clone();
    let mut divisors = Vec::with_capacity(basis.len());
    for g in basis {
        g.check_block(&block)?;
        if g.is_zero() {
            continue;
        }
        let mut s = Sparse::from_poly(g, order);
        s.make_monic();
        divisors.push(s);
    }
    let refs: Vec<&Sparse> = divisors.iter().collect();
    Ok(reduce(Sparse::from_poly(f, order), &refs, order, true).to_poly(&block))
}

/// Elements of an elimination basis that only involve the first `kept` variables,
/// restricted to that prefix block.
pub fn eliminate(basis: &GroebnerBasis, kept: &VariableBlock) -> Result<Vec<Polynomial>> {
    match basis.order {
        MonomialOrder::BlockElimination { kept: k } if k == kept.arity() => {}
        MonomialOrder::Lex => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "order {} does not eliminate down to {} variables",
                other.name(),
                kept.arity()
            )))
        }
    }
    Ok(basis.polys.iter().filter_map(|p| p.restrict_prefix(kept)).collect())
}
