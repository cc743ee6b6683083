//! Algebraic restrictions of differential forms to monomial curves.

mod basis;
mod classical;
mod piece;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, UniPoly};
use crate::forms::{representable, Weights};
use crate::{Error, Result};

pub use basis::{
    closed2_restriction_basis, min_qdeg_part, AlgRestriction, BasisElement, RestrictionBasis, RestrictionSpace,
};
pub use classical::classical_representatives;
pub use piece::{restriction_quotient, vanishing_ideal_piece, zero_restriction_basis, GradedPiece};

/// The curve `t ↦ (t^{λ_1}, …, t^{λ_s}, 0, …, 0)` in `m` coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialCurve {
    weights: Weights,
}

impl MonomialCurve {
    /// Weights must be strictly increasing, independent over the
    /// non-negative integers and coprime (otherwise the parameterization is
    /// not injective and the semigroup has no conductor).
    pub fn new(lambdas: &[u32], ambient: usize) -> Result<Self> {
        let weights = Weights::new(lambdas, ambient, true)?;
        if lambdas.iter().fold(0, |g, &l| num_integer::gcd(g, l)) != 1 {
            return Err(Error::InvalidWeights(format!("{:?} is not coprime", lambdas)));
        }
        Ok(MonomialCurve { weights })
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn lambdas(&self) -> &[u32] {
        self.weights.curve()
    }

    /// Number of generators `s`.
    pub fn s(&self) -> usize {
        self.lambdas().len()
    }

    pub fn ambient(&self) -> usize {
        self.weights.ambient()
    }

    pub fn with_ambient(&self, ambient: usize) -> Result<Self> {
        MonomialCurve::new(self.lambdas(), ambient)
    }

    pub fn in_semigroup(&self, n: u32) -> bool {
        representable(n, self.lambdas())
    }

    /// Least `c` with every integer `>= c` in the semigroup. Assumes the
    /// weights are coprime.
    pub fn conductor(&self) -> u32 {
        let l1 = self.lambdas()[0];
        let mut run = 0;
        let mut n = 0;
        loop {
            if self.in_semigroup(n) {
                run += 1;
                if run == l1 {
                    return n + 1 - l1;
                }
            } else {
                run = 0;
            }
            n += 1;
        }
    }

    /// Integers missing from the semigroup.
    pub fn gaps(&self) -> Vec<u32> {
        (1..self.conductor()).filter(|&n| !self.in_semigroup(n)).collect()
    }

    /// Components of the curve as polynomials in `t`.
    pub fn images(&self) -> Vec<UniPoly> {
        let mut v: Vec<UniPoly> = self.lambdas().iter().map(|&l| UniPoly::monomial(One::one(), l)).collect();
        v.resize(self.ambient(), UniPoly::zero());
        v
    }

    /// `p ∘ f`.
    pub fn pull(&self, p: &Polynomial) -> Result<UniPoly> {
        p.substitute(&self.images())
    }

    pub fn vanishes_on_curve(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.pull(p)?.is_zero())
    }

    /// Monomials `x^α` in the curve coordinates with `Σ λ_i α_i = n`, in
    /// ascending graded-lex order.
    pub fn monomial_lifts(&self, n: u32) -> Vec<crate::algebra::Monomial> {
        crate::algebra::monomials_of_weighted_degree(self.lambdas(), n)
            .into_iter()
            .map(|m| m.extend(self.ambient()))
            .collect()
    }
}

/// Vector with one `1` at position `i`.
pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<crate::algebra::Rational> {
    let mut v = vec![Zero::zero(); n];
    v[i] = One::one();
    v
}
