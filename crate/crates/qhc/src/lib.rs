//! Command-line front end, expression syntax and classification atlas for
//! algebraic restrictions to quasi-homogeneous monomial curves.

pub mod atlas;
pub mod syntax;
pub mod cli;
pub mod emit;
