//! Liftable vector fields, their action on algebraic restrictions, orbit
//! tangent spaces, Moser homotopies and curve symmetries.

mod fields;
mod maps;

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{solve_param_linear, Field, Matrix, ParamSolveOutcome, Rational, RationalFunction, Subspace, UniPoly};
use crate::restriction::{min_qdeg_part, AlgRestriction, RestrictionBasis};
use crate::Result;

pub use fields::{
    admissible_shifts, check_lift_identity, field_from_monomials, lift_choices, liftability_factor, liftable_field,
    LiftPolicy, LiftableField,
};
pub use maps::{check_symmetry, pullback_restriction, scaling_constant, scaling_symmetry, CurveSymmetry, Scaling};

/// `[L_X ω]_f` for a representative `ω` of `a`.
pub fn lie_action(basis: &RestrictionBasis, x: &LiftableField, a: &AlgRestriction) -> Result<AlgRestriction> {
    liftability_factor(basis.curve(), &x.field)?;
    let rep = basis.representative(a)?;
    basis.project(&rep.lie_derivative(&x.field)?)
}

/// `L_{X_s} a_j` for every admissible `s ≤ K(f) − r_min` and every basis
/// element.
#[derive(Clone, Debug)]
pub struct ActionTable {
    pub shifts: Vec<u32>,
    pub labels: Vec<alloc::string::String>,
    /// `entries[row][col]`.
    pub entries: Vec<Vec<AlgRestriction>>,
}

impl ActionTable {
    pub fn entry(&self, shift: u32, label: &str) -> Option<&AlgRestriction> {
        let r = self.shifts.iter().position(|&s| s == shift)?;
        let c = self.labels.iter().position(|l| l == label)?;
        Some(&self.entries[r][c])
    }
}

pub fn action_table(basis: &RestrictionBasis, policy: LiftPolicy) -> Result<ActionTable> {
    let top = basis.k_f().saturating_sub(basis.min_qdeg());
    let shifts = admissible_shifts(basis.curve(), top);
    let mut entries = Vec::with_capacity(shifts.len());
    for &s in &shifts {
        let x = liftable_field(basis.curve(), s, policy)?;
        let row = basis
            .labels()
            .iter()
            .map(|l| lie_action(basis, &x, &basis.element(l)?))
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    Ok(ActionTable { shifts, labels: basis.labels().iter().map(|s| (*s).into()).collect(), entries })
}

/// Span of `L_{X_s} a` over the admissible shifts that can act nontrivially.
#[derive(Clone, Debug)]
pub struct TangentSpace {
    pub base: AlgRestriction,
    pub shifts: Vec<u32>,
    pub vectors: Vec<AlgRestriction>,
    span: Subspace,
}

impl TangentSpace {
    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    pub fn contains(&self, v: &AlgRestriction) -> bool {
        v.basis_fingerprint() == self.base.basis_fingerprint() && self.span.contains(v.coords())
    }
}

/// Shifts `s ≤ K(f) − r` with `r` the minimal quasi-degree of the support.
fn relevant_shifts(basis: &RestrictionBasis, a: &AlgRestriction) -> Result<Vec<u32>> {
    Ok(match min_qdeg_part(basis, a)? {
        None => Vec::new(),
        Some((r, _)) => admissible_shifts(basis.curve(), basis.k_f().saturating_sub(r)),
    })
}

pub fn orbit_tangent_space(basis: &RestrictionBasis, a: &AlgRestriction, policy: LiftPolicy) -> Result<TangentSpace> {
    let shifts = relevant_shifts(basis, a)?;
    let mut span = Subspace::new(basis.dim());
    let mut vectors = Vec::new();
    for &s in &shifts {
        let v = lie_action(basis, &liftable_field(basis.curve(), s, policy)?, a)?;
        span.insert(v.coords());
        vectors.push(v);
    }
    Ok(TangentSpace { base: a.clone(), shifts, vectors, span })
}

pub fn is_modulus(basis: &RestrictionBasis, a: &AlgRestriction, direction: &AlgRestriction) -> Result<bool> {
    Ok(!orbit_tangent_space(basis, a, LiftPolicy::Grlex)?.contains(direction))
}

/// Outcome of the homotopy `A_t = a − t·kill`.
#[derive(Clone, PartialEq, Debug)]
pub struct HomotopyResult {
    /// Solvable over `Q(t)` with no pole of any `b_s` on `[0, 1]`.
    pub feasible: bool,
    /// Solvable over `Q(t)` at all.
    pub consistent: bool,
    pub shifts: Vec<u32>,
    /// `b_s(t)`, one per shift; empty when inconsistent.
    pub coefficients: Vec<RationalFunction>,
    /// Poles on `[0, 1]` per coefficient.
    pub poles: Vec<usize>,
}

impl HomotopyResult {
    pub fn coefficient(&self, shift: u32) -> Option<&RationalFunction> {
        self.coefficients.get(self.shifts.iter().position(|&s| s == shift)?)
    }
}

/// Columns `L_{X_s} a` and `L_{X_s} kill` for the homotopy system.
fn homotopy_columns(
    basis: &RestrictionBasis,
    a: &AlgRestriction,
    kill: &AlgRestriction,
    shifts: &[u32],
) -> Result<Vec<(AlgRestriction, AlgRestriction)>> {
    shifts
        .iter()
        .map(|&s| {
            let x = liftable_field(basis.curve(), s, LiftPolicy::Grlex)?;
            Ok((lie_action(basis, &x, a)?, lie_action(basis, &x, kill)?))
        })
        .collect()
}

/// Solves `Σ_s b_s(t) L_{X_s} A_t = kill` with `A_t = a − t·kill`.
pub fn moser_reduce(basis: &RestrictionBasis, a: &AlgRestriction, kill: &AlgRestriction) -> Result<HomotopyResult> {
    kill.sub(a)?;
    // A_t is supported in the union of the supports of a and kill
    let r = [a, kill].iter().filter_map(|x| min_qdeg_part(basis, x).ok().flatten().map(|p| p.0)).min();
    let shifts = match r {
        Some(r) => admissible_shifts(basis.curve(), basis.k_f().saturating_sub(r)),
        None => Vec::new(),
    };
    let cols = homotopy_columns(basis, a, kill, &shifts)?;
    let n = basis.dim();
    let rows: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| {
            cols.iter()
                .map(|(la, lk)| UniPoly::new(vec![la.coords()[i].clone(), -lk.coords()[i].clone()]))
                .collect()
        })
        .collect();
    let rhs: Vec<UniPoly> = kill.coords().iter().map(|c| UniPoly::constant(c.clone())).collect();
    if shifts.is_empty() {
        let ok = kill.is_zero();
        return Ok(HomotopyResult { feasible: ok, consistent: ok, shifts, coefficients: Vec::new(), poles: Vec::new() });
    }
    Ok(match solve_param_linear(&rows, &rhs)? {
        ParamSolveOutcome::Inconsistent => {
            HomotopyResult { feasible: false, consistent: false, shifts, coefficients: Vec::new(), poles: Vec::new() }
        }
        ParamSolveOutcome::Solved(sol) => HomotopyResult {
            feasible: sol.feasible_on_unit_interval(),
            consistent: true,
            shifts,
            coefficients: sol.values,
            poles: sol.poles_in_unit_interval,
        },
    })
}

/// Recomputes `Σ b_s(t) L_{X_s}(a − t·kill) − kill` coordinatewise over
/// `Q(t)` and reports whether it vanishes identically.
pub fn verify_homotopy(
    basis: &RestrictionBasis,
    a: &AlgRestriction,
    kill: &AlgRestriction,
    result: &HomotopyResult,
) -> Result<bool> {
    if !result.consistent {
        return Ok(false);
    }
    let cols = homotopy_columns(basis, a, kill, &result.shifts)?;
    for i in 0..basis.dim() {
        let mut acc = RationalFunction::constant(-kill.coords()[i].clone());
        for ((la, lk), b) in cols.iter().zip(&result.coefficients) {
            let entry = RationalFunction::from_poly(UniPoly::new(vec![la.coords()[i].clone(), -lk.coords()[i].clone()]));
            acc = acc.add_elem(&entry.mul_elem(b));
        }
        if !acc.numer().is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates of `a − t·kill` at a rational `t`.
pub fn homotopy_point(a: &AlgRestriction, kill: &AlgRestriction, t: &Rational) -> Result<AlgRestriction> {
    a.sub(&kill.scale(t))
}

/// Dimension of the span of given restrictions.
pub fn span_dim(vs: &[AlgRestriction]) -> usize {
    let Some(first) = vs.first() else { return 0 };
    let rows: Vec<Vec<Rational>> = vs.iter().map(|v| v.coords().to_vec()).collect();
    Matrix::from_rows(first.coords().len(), rows).rank()
}
