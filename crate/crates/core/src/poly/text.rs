//! Text and JSON encodings of polynomials.
//!
//! Text: `c*x0^a*x1^b - 3/2*x2 + 1`. JSON: a list of `["num/den", [e0, e1, e2]]`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational};
use super::{Monomial, MonomialOrder, Polynomial, Rational, VariableBlock};
use crate::error::{Error, Result};

/// One JSON-encoded term: coefficient string and exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm(pub String, pub Vec<u16>);

pub fn parse_polynomial(text: &str, block: &VariableBlock) -> Result<Polynomial> {
    let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Polynomial::zero(block);
    let bytes = src.as_bytes();
    let mut start = 0;
    let mut i = 0;
    // split at top-level signs that are not the first character of a term
    let mut pieces: Vec<(bool, &str)> = Vec::new();
    let mut negative = false;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        negative = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && i > start && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' && bytes[i - 1] != b'/'
        {
            pieces.push((negative, &src[start..i]));
            negative = c == b'-';
            start = i + 1;
        }
        i += 1;
    }
    pieces.push((negative, &src[start..]));

    for (neg, piece) in pieces {
        let (m, mut c) = parse_term(piece, block)?;
        if neg {
            c = -c;
        }
        out.add_term(m, c);
    }
    Ok(out)
}

fn parse_term(piece: &str, block: &VariableBlock) -> Result<(Monomial, Rational)> {
    if piece.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut coeff = Rational::one();
    let mut exps = vec![0u16; block.arity()];
    for factor in piece.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term {piece:?}")));
        }
        let first = factor.chars().next().unwrap();
        if first.is_ascii_digit() || first == '-' || first == '+' {
            coeff *= parse_rational(factor)?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u16 = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (n, e)
            }
            None => (factor, 1),
        };
        let idx = block
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
        exps[idx] += exp;
    }
    Ok((Monomial::new(exps), coeff))
}

pub fn polynomial_to_json(p: &Polynomial) -> Vec<JsonTerm> {
    p.sorted_terms(MonomialOrder::GrevLex)
        .into_iter()
        .map(|(m, c)| JsonTerm(format_rational(c), m.exponents().to_vec()))
        .collect()
}

pub fn polynomial_from_json(terms: &[JsonTerm], block: &VariableBlock) -> Result<Polynomial> {
    let mut out = Polynomial::zero(block);
    for JsonTerm(c, e) in terms {
        if e.len() != block.arity() {
            return Err(Error::Parse(format!(
                "exponent vector of length {} in a block of arity {}",
                e.len(),
                block.arity()
            )));
        }
        out.add_term(Monomial::new(e.clone()), parse_rational(c)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::rational::ratio;
    use super::*;

    #[test]
    fn parses_text_terms() {
        let b = VariableBlock::plane();
        let p = parse_polynomial("3/2*x0^2*x1 - x2 + 4", &b).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 1, 0])), ratio(3, 2));
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 0, 1])), ratio(-1, 1));
        assert_eq!(p.coefficient(&Monomial::one(3)), ratio(4, 1));
        assert_eq!(parse_polynomial("-x0 + x0", &b).unwrap(), Polynomial::zero(&b));
    }

    #[test]
    fn display_output_parses_back() {
        let b = VariableBlock::plane();
        let p = parse_polynomial("16*x1 - 27*x2 + 1/3*x0*x1^4", &b).unwrap();
        assert_eq!(parse_polynomial(&p.to_string(), &b).unwrap(), p);
    }

    #[test]
    fn rejects_unknown_variables_and_garbage() {
        let b = VariableBlock::plane();
        assert!(parse_polynomial("y0 + x1", &b).is_err());
        assert!(parse_polynomial("x0**x1", &b).is_err());
        assert!(parse_polynomial("x0^a", &b).is_err());
        assert!(parse_polynomial("", &b).is_err());
    }

    #[test]
    fn json_terms() {
        let b = VariableBlock::plane();
        let p = parse_polynomial("x0 - 1/2*x1", &b).unwrap();
        let j = polynomial_to_json(&p);
        assert_eq!(j[0], JsonTerm("1/1".into(), vec![1, 0, 0]));
        assert_eq!(j[1], JsonTerm("-1/2".into(), vec![0, 1, 0]));
        assert_eq!(polynomial_from_json(&j, &b).unwrap(), p);
        assert!(polynomial_from_json(&[JsonTerm("1".into(), vec![1, 0])], &b).is_err());
    }
}
