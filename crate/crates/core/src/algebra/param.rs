use alloc::vec::Vec;

use num_traits::Zero;

use super::{sturm_count, Matrix, Rational, RationalFunction, UniPoly};
use crate::{Error, Result};

/// A solution over the field of rational functions in `t`.
#[derive(Clone, PartialEq, Debug)]
pub struct ParamSolution {
    pub values: Vec<RationalFunction>,
    /// Number of distinct real poles in `[0, 1]`, per component.
    pub poles_in_unit_interval: Vec<usize>,
}

impl ParamSolution {
    pub fn feasible_on_unit_interval(&self) -> bool {
        self.poles_in_unit_interval.iter().all(|&n| n == 0)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum ParamSolveOutcome {
    Inconsistent,
    Solved(ParamSolution),
}

/// Solves `A(t) x = b(t)` over `Q(t)` with free variables set to zero.
pub fn solve_param_linear(a: &[Vec<UniPoly>], b: &[UniPoly]) -> Result<ParamSolveOutcome> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    let cols = a.first().map_or(0, Vec::len);
    if let Some(r) = a.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
    }
    let m = Matrix::from_rows(
        cols,
        a.iter()
            .map(|r| r.iter().cloned().map(RationalFunction::from_poly).collect())
            .collect(),
    );
    let rhs: Vec<_> = b.iter().cloned().map(RationalFunction::from_poly).collect();
    let Some(values) = m.solve(&rhs) else {
        return Ok(ParamSolveOutcome::Inconsistent);
    };
    let poles_in_unit_interval = values
        .iter()
        .map(|v| unit_interval_roots(v.denom()))
        .collect::<Result<_>>()?;
    Ok(ParamSolveOutcome::Solved(ParamSolution { values, poles_in_unit_interval }))
}

/// Distinct real roots in the closed interval `[0, 1]`.
fn unit_interval_roots(p: &UniPoly) -> Result<usize> {
    let zero = Rational::zero();
    let at_zero = usize::from(p.eval(&zero).is_zero());
    Ok(sturm_count(p, &zero, &Rational::from_integer(1.into()))? + at_zero)
}
