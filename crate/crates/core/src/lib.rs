//! Exact computations with Hadamard fat grids in the projective plane.
//!
//! The crate has two halves. The closed-form side ([`fatgrid`], [`invariants`])
//! builds a grid from two weighted collinear point sets and reads off its
//! minimal resolution, minimal generators, initial degree, Waldschmidt
//! constant and resurgence. The oracle side ([`groebner`], [`ideal`],
//! [`verify`]) recomputes the same objects from scratch with Gröbner-basis
//! elimination and exact linear algebra.

pub mod budget;
pub mod error;
pub mod fatgrid;
pub mod groebner;
pub mod ideal;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod projective;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use fatgrid::{FatGrid, GeneratorPattern, WeightedPointSet};

pub use ideal::Ideal;
pub use poly::{Monomial, MonomialOrder, Polynomial, Rational, VariableBlock};
pub use projective::{Line, Point};
