use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VariableBlock};
use crate::projective::Point;

/// Order of vanishing; the zero polynomial vanishes to infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VanishingOrder {
    Finite(u32),
    Infinite,
}

impl VanishingOrder {
    pub fn at_least(self, m: u32) -> bool {
        match self {
            VanishingOrder::Finite(k) => k >= m,
            VanishingOrder::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            VanishingOrder::Finite(k) => Some(k),
            VanishingOrder::Infinite => None,
        }
    }
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::Finite(k) => write!(f, "{k}"),
            VanishingOrder::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `m` with `f ∈ I(P)^m`: set the last nonzero coordinate of `P` to 1,
/// move `P` to the origin and read off the lowest degree present.
pub fn vanishing_order(f: &Polynomial, p: &Point) -> Result<VanishingOrder> {
    if f.block().arity() != 3 {
        return Err(Error::InvalidInput(
            "vanishing order is defined on the plane block".into(),
        ));
    }
    if f.is_zero() {
        return Ok(VanishingOrder::Infinite);
    }
    if !f.is_homogeneous() {
        return Err(Error::InvalidInput(
            "vanishing order requires a homogeneous polynomial".into(),
        ));
    }
    let c = p.coords();
    let k = (0..3).rev().find(|&i| !c[i].is_zero()).expect("nonzero point");
    let block = VariableBlock::plane();
    let subs: Vec<Polynomial> = (0..3)
        .map(|i| {
            let shift = Polynomial::constant(&block, &c[i] / &c[k]);
            if i == k {
                shift
            } else {
                &Polynomial::var(&block, i) + &shift
            }
        })
        .collect();
    let local = f.compose(&subs);
    Ok(local
        .min_degree()
        .map_or(VanishingOrder::Infinite, VanishingOrder::Finite))
}

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * u64::from(n - i) / u64::from(i + 1))
}
