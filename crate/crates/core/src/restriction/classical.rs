use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::MonomialCurve;
use crate::algebra::{Monomial, Polynomial, Rational};
use crate::forms::DifferentialForm;

/// `x^exps dx_{i+1} ∧ dx_{j+1}` in `m` variables.
fn mono2(m: usize, exps: &[u32], i: usize, j: usize) -> DifferentialForm {
    let mut e = exps.to_vec();
    e.resize(m, 0);
    DifferentialForm::term(m, &[i, j], Polynomial::term(Monomial::new(e), Rational::from_integer(1.into())))
}

/// The classical labelled representatives for the semigroups `(4,5,6,7)`,
/// `(4,5,6)` and `(4,5,7)`; `None` for any other curve.
pub fn classical_representatives(curve: &MonomialCurve) -> Option<Vec<(String, DifferentialForm)>> {
    let m = curve.ambient();
    let f = |label: &str, form: DifferentialForm| (label.to_string(), form);
    let reps = match curve.lambdas() {
        [4, 5, 6, 7] => alloc::vec![
            f("a9", mono2(m, &[], 0, 1)),
            f("a10", mono2(m, &[], 0, 2)),
            f("a11+", mono2(m, &[], 1, 2)),
            f("a11-", mono2(m, &[], 0, 3)),
            f("a12", mono2(m, &[], 1, 3)),
            f("a13+", mono2(m, &[], 2, 3)),
            f("a13-", mono2(m, &[1], 0, 1)),
            f("a14", mono2(m, &[1], 0, 2)),
            f("a15-", mono2(m, &[1], 0, 3)),
        ],
        [4, 5, 6] => alloc::vec![
            f("a9", mono2(m, &[], 0, 1)),
            f("a10", mono2(m, &[], 0, 2)),
            f("a11", mono2(m, &[], 1, 2)),
            f("a13", mono2(m, &[1], 0, 1)),
            f("a14", mono2(m, &[1], 0, 2)),
            f("a15", mono2(m, &[0, 1], 0, 2).add(&mono2(m, &[1], 1, 2)).ok()?),
            f("a17", mono2(m, &[0, 0, 1], 1, 2)),
            f("a19", mono2(m, &[0, 2], 0, 1)),
        ],
        [4, 5, 7] => alloc::vec![
            f("a9", mono2(m, &[], 0, 1)),
            f("a11", mono2(m, &[], 0, 2)),
            f("a12", mono2(m, &[], 1, 2)),
            f("a13", mono2(m, &[1], 0, 1)),
            f("a14", mono2(m, &[0, 1], 0, 1)),
            f("a15", mono2(m, &[1], 0, 2)),
            f("a16", mono2(m, &[0, 1], 0, 2).add(&mono2(m, &[1], 1, 2)).ok()?),
            f("a17", mono2(m, &[0, 1], 1, 2)),
            f("a18", mono2(m, &[0, 0, 1], 0, 2)),
        ],
        _ => return None,
    };
    Some(reps)
}
