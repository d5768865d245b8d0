//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod order;
mod polynomial;
mod rational;
mod text;

pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use polynomial::{Polynomial, VariableBlock};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use text::{parse_polynomial, polynomial_from_json, polynomial_to_json, JsonTerm};
