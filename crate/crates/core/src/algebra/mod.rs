//! Exact arithmetic: rationals, multivariate and univariate polynomials,
//! univariate rational functions, linear algebra over a field and real-root
//! counting.

mod linalg;
mod param;
mod poly;
mod ratfun;
mod rational;
mod unipoly;

pub use linalg::{Field, Matrix, QMatrix, Rref, Subspace};
pub use param::{solve_param_linear, ParamSolution, ParamSolveOutcome};
pub use poly::{Monomial, Polynomial};
pub(crate) use poly::monomials_of_weighted_degree;
pub use ratfun::RationalFunction;
pub use rational::{int, rat, rational_root, Rational};
pub use unipoly::{sturm_count, UniPoly};
