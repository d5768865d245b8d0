use std::cmp::Ordering;

use super::Monomial;

/// Term orders used by the Gröbner engine.
///
/// `BlockElimination { kept }` keeps the first `kept` variables and eliminates
/// the rest: any monomial with a positive exponent in an eliminated variable
/// is larger than every monomial in the kept variables alone. Inside each
/// block the order is graded reverse lexicographic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    BlockElimination {
        kept: usize,
    },
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| u32::from(e)).sum();
    let db: u32 = b.iter().map(|&e| u32::from(e)).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::BlockElimination { kept } => {
                let kept = kept.min(a.len());
                grevlex(&a[kept..], &b[kept..]).then_with(|| grevlex(&a[..kept], &b[..kept]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::BlockElimination { kept } => format!("elim({kept})"),
        }
    }
}
