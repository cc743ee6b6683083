use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{Monomial, Polynomial, Rational, UniPoly};
use crate::forms::VectorField;
use crate::restriction::MonomialCurve;
use crate::{Error, Result};

/// How the monomial `m` of weight `λ_i + s` in component `i` of `X_s` is
/// chosen when several exist.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum LiftPolicy {
    /// Graded-lex minimal exponent vector.
    #[default]
    Grlex,
    /// The explicit fields used in the classical tables for `(4,5,6,7)`,
    /// `(4,5,6)` and `(4,5,7)`; grlex elsewhere.
    Classical,
}

/// A vector field `X_s` with `X_s ∘ f = t^{s+1} df/dt`.
#[derive(Clone, PartialEq, Debug)]
pub struct LiftableField {
    pub shift: u32,
    pub field: VectorField,
    pub policy: LiftPolicy,
}

/// `0` and every `s ≥ 1` up to `bound` with `λ_i + s` in the semigroup for
/// all `i`.
pub fn admissible_shifts(curve: &MonomialCurve, bound: u32) -> Vec<u32> {
    (0..=bound)
        .filter(|&s| s == 0 || curve.lambdas().iter().all(|&l| curve.in_semigroup(l + s)))
        .collect()
}

fn mono(m: usize, exps: &[u32]) -> Monomial {
    let mut e = exps.to_vec();
    e.resize(m, 0);
    Monomial::new(e)
}

/// Component monomials of the classical fields, if recorded.
fn classical_lift(curve: &MonomialCurve, s: u32) -> Option<Vec<Monomial>> {
    let m = curve.ambient();
    let euler_times = |exps: &[u32]| -> Vec<Monomial> {
        (0..curve.s()).map(|i| mono(m, exps).mul(&Monomial::var(m, i))).collect()
    };
    match curve.lambdas() {
        [4, 5, 6, 7] => {
            let table = |n: u32| -> Option<Monomial> {
                let e: &[u32] = match n {
                    4 => &[1],
                    5 => &[0, 1],
                    6 => &[0, 0, 1],
                    7 => &[0, 0, 0, 1],
                    8 => &[2],
                    9 => &[1, 1],
                    10 => &[1, 0, 1],
                    11 => &[1, 0, 0, 1],
                    12 => &[3],
                    13 => &[2, 1],
                    _ => return None,
                };
                Some(mono(m, e))
            };
            if s == 0 {
                return None;
            }
            curve.lambdas().iter().map(|&l| table(l + s)).collect()
        }
        [4, 5, 6] => match s {
            4 => Some(euler_times(&[1])),
            5 => Some(euler_times(&[0, 1])),
            6 => Some(euler_times(&[0, 0, 1])),
            7 => Some(alloc::vec![mono(m, &[0, 1, 1]), mono(m, &[0, 0, 2]), mono(m, &[2, 1])]),
            8 => Some(euler_times(&[2])),
            9 => Some(euler_times(&[1, 1])),
            10 => Some(euler_times(&[1, 0, 1])),
            _ => None,
        },
        [4, 5, 7] => match s {
            3 => Some(alloc::vec![mono(m, &[0, 0, 1]), mono(m, &[2]), mono(m, &[0, 2])]),
            4 => Some(euler_times(&[1])),
            5 => Some(euler_times(&[0, 1])),
            6 => Some(alloc::vec![mono(m, &[0, 2]), mono(m, &[1, 0, 1]), mono(m, &[2, 1])]),
            7 => Some(euler_times(&[0, 0, 1])),
            8 => Some(euler_times(&[2])),
            9 => Some(euler_times(&[1, 1])),
            _ => None,
        },
        _ => None,
    }
}

/// All choices of component monomials for `X_s` (one list per curve
/// coordinate); the field is `Σ λ_i m_i ∂/∂x_i`.
pub fn lift_choices(curve: &MonomialCurve, s: u32) -> Vec<Vec<Monomial>> {
    curve.lambdas().iter().map(|&l| curve.monomial_lifts(l + s)).collect()
}

/// Builds `X_s` from one monomial per curve coordinate.
pub fn field_from_monomials(curve: &MonomialCurve, monos: &[Monomial]) -> VectorField {
    let m = curve.ambient();
    let mut comps: Vec<Polynomial> = Vec::with_capacity(m);
    for (i, mo) in monos.iter().enumerate() {
        comps.push(Polynomial::term(mo.clone(), Rational::from_integer(curve.lambdas()[i].into())));
    }
    comps.resize(m, Polynomial::zero(m));
    VectorField::new(comps).expect("components live in the ambient ring")
}

pub fn liftable_field(curve: &MonomialCurve, s: u32, policy: LiftPolicy) -> Result<LiftableField> {
    if s == 0 {
        return Ok(LiftableField { shift: 0, field: VectorField::euler(curve.weights()), policy });
    }
    let choices = lift_choices(curve, s);
    for (i, c) in choices.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::NoMonomialLift { shift: s, weight: curve.lambdas()[i] + s });
        }
    }
    let monos = match policy {
        LiftPolicy::Classical => classical_lift(curve, s),
        LiftPolicy::Grlex => None,
    }
    .unwrap_or_else(|| choices.iter().map(|c| c[0].clone()).collect());
    let field = field_from_monomials(curve, &monos);
    let out = LiftableField { shift: s, field, policy };
    debug_assert!(check_lift_identity(curve, &out.field, s).is_ok());
    Ok(out)
}

/// Verifies `X ∘ f = t^{s+1} df/dt` by substitution.
pub fn check_lift_identity(curve: &MonomialCurve, x: &VectorField, s: u32) -> Result<()> {
    let images = curve.images();
    for (i, c) in x.components().iter().enumerate() {
        let lhs = c.substitute(&images)?;
        let rhs = if i < curve.s() {
            let l = curve.lambdas()[i];
            UniPoly::monomial(Rational::from_integer(l.into()), l + s)
        } else {
            UniPoly::zero()
        };
        if lhs != rhs {
            return Err(Error::NotLiftable(format!("component {} gives {} instead of {}", i + 1, lhs, rhs)));
        }
    }
    Ok(())
}

/// Checks that `X ∘ f = h(t) df/dt` for a polynomial `h` and returns `h`.
pub fn liftability_factor(curve: &MonomialCurve, x: &VectorField) -> Result<UniPoly> {
    if x.dim() != curve.ambient() {
        return Err(Error::DimensionMismatch { expected: curve.ambient(), found: x.dim() });
    }
    let images = curve.images();
    let l1 = curve.lambdas()[0];
    let first = x.components()[0].substitute(&images)?;
    // h = first / (λ_1 t^{λ_1 - 1})
    let shift = (l1 - 1) as usize;
    if first.ord().is_some_and(|o| o < shift) {
        return Err(Error::NotLiftable("first component vanishes to too low an order".into()));
    }
    let inv = Rational::from_integer(l1.into()).recip();
    let h = UniPoly::new(first.coeffs().iter().skip(shift).map(|c| c * &inv).collect());
    for (i, c) in x.components().iter().enumerate() {
        let lhs = c.substitute(&images)?;
        let rhs = if i < curve.s() {
            let l = curve.lambdas()[i];
            &h * &UniPoly::monomial(Rational::from_integer(l.into()), l - 1)
        } else {
            UniPoly::zero()
        };
        if lhs != rhs {
            return Err(Error::NotLiftable(format!("component {} is not tangent to the curve", i + 1)));
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn curve(l: &[u32]) -> MonomialCurve {
        MonomialCurve::new(l, l.len()).unwrap()
    }

    #[test]
    fn shifts() {
        assert_eq!(admissible_shifts(&curve(&[4, 5, 6, 7]), 6), alloc::vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(admissible_shifts(&curve(&[4, 5, 6]), 10), alloc::vec![0, 4, 5, 6, 7, 8, 9, 10]);
        assert_eq!(admissible_shifts(&curve(&[4, 5, 7]), 9), alloc::vec![0, 3, 4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn fields() {
        let c = curve(&[4, 5, 6, 7]);
        let x1 = liftable_field(&c, 1, LiftPolicy::Grlex).unwrap();
        assert_eq!(x1.field.to_string(), "4*x2*d/dx1 + 5*x3*d/dx2 + 6*x4*d/dx3 + 7*x1^2*d/dx4");
        let c7 = curve(&[4, 5, 7]);
        let x3 = liftable_field(&c7, 3, LiftPolicy::Classical).unwrap();
        assert_eq!(x3.field.to_string(), "4*x3*d/dx1 + 5*x1^2*d/dx2 + 7*x2^2*d/dx3");
        let e = liftable_field(&c, 0, LiftPolicy::Grlex).unwrap();
        assert_eq!(e.field.to_string(), "4*x1*d/dx1 + 5*x2*d/dx2 + 6*x3*d/dx3 + 7*x4*d/dx4");
        assert!(matches!(liftable_field(&curve(&[4, 5, 6]), 1, LiftPolicy::Grlex), Err(Error::NoMonomialLift { .. })));
        for s in 0..=6 {
            let f = liftable_field(&c, s, LiftPolicy::Classical).unwrap();
            check_lift_identity(&c, &f.field, s).unwrap();
            assert_eq!(liftability_factor(&c, &f.field).unwrap(), UniPoly::monomial(Rational::from_integer(1.into()), s + 1));
        }
    }
}
