//! Exact algebraic restrictions of differential forms to quasi-homogeneous
//! monomial curves.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is computed over exact
//! rationals: graded quotient spaces of forms modulo zero algebraic
//! restrictions, the Lie action of liftable vector fields, Moser homotopy
//! reductions, the discrete symplectic invariants of a restriction, and the
//! verification machinery for classification tables of normal forms.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod atlas;
mod error;
pub mod forms;
pub mod invariants;
pub mod restriction;
pub mod symmetry;

pub use error::{Error, Result};

pub use algebra::{int, rat, Monomial, Polynomial, Rational, RationalFunction, UniPoly};
pub use forms::{DifferentialForm, PolyMap, VectorField, Weights};
pub use restriction::{AlgRestriction, MonomialCurve, RestrictionBasis, RestrictionSpace};
