//! Exact arithmetic foundation: rationals, polynomials in one and three
//! variables, rational functions, linear algebra over ℚ and real-root tools.

pub mod linalg;
pub mod multipoly;
pub mod numeric;
pub mod ratfunc;
pub mod rational;
pub mod unipoly;

pub use linalg::QMatrix;
pub use multipoly::{Monomial, MultiPoly};
pub use ratfunc::RationalFunction;
pub use rational::{int, parse_rational, rat, Rational};
pub use unipoly::{poly_gcd, real_root_count, squarefree_decomposition, UniPoly};
