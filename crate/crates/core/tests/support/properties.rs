//! Randomized algebraic identities, 1000 cases each from a fixed seed.
#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use qhc_core::atlas::{atlas_basis, identification_map};
use qhc_core::invariants::{pmqd_compare, PmqdVerdict};
use qhc_core::restriction::{restriction_quotient, vanishing_ideal_piece, GradedPiece};
use qhc_core::symmetry::{
    admissible_shifts, field_from_monomials, lie_action, lift_choices, liftable_field, pullback_restriction,
    LiftPolicy, LiftableField,
};
use qhc_core::{
    int, DifferentialForm, Monomial, MonomialCurve, PolyMap, Polynomial, Rational, RestrictionBasis, UniPoly,
    VectorField,
};

const SEED: [u8; 32] = *b"quasi-homogeneous-curve-restrict";
const SEMIGROUPS: [&[u32]; 3] = [&[4, 5, 6, 7], &[4, 5, 6], &[4, 5, 7]];

fn runner() -> TestRunner {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

/// (coefficient, exponents) pairs.
fn poly_spec(dim: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    vec((-4i64..=4, vec(0u32..=2, dim)), 0..=3)
}

fn poly(dim: usize, spec: &[(i64, Vec<u32>)]) -> Polynomial {
    Polynomial::from_terms(dim, spec.iter().map(|(c, e)| (Monomial::new(e.clone()), int(*c))))
}

/// A k-form as a list of (sorted index set, coefficient spec).
fn form_spec(dim: usize, k: usize) -> impl Strategy<Value = Vec<(Vec<usize>, Vec<(i64, Vec<u32>)>)>> {
    vec((proptest::sample::subsequence((0..dim).collect::<Vec<_>>(), k), poly_spec(dim)), 0..=3)
}

fn form(dim: usize, k: usize, spec: &[(Vec<usize>, Vec<(i64, Vec<u32>)>)]) -> DifferentialForm {
    let mut w = DifferentialForm::zero(dim, k);
    for (idx, p) in spec {
        let term = if k == 0 { DifferentialForm::function(poly(dim, p)) } else { DifferentialForm::term(dim, idx, poly(dim, p)) };
        w = w.add(&term).unwrap();
    }
    w
}

fn sized_form(k: usize) -> impl Strategy<Value = (usize, usize, Vec<(Vec<usize>, Vec<(i64, Vec<u32>)>)>)> {
    (k.max(2)..=4usize).prop_flat_map(move |d| (Just(d), Just(k), form_spec(d, k)))
}

pub fn d_squared_vanishes() -> Result<(), String> {
    check((0usize..=3).prop_flat_map(sized_form), |(d, k, s)| {
        let w = form(d, k, &s);
        prop_assert!(w.ext_der().ext_der().is_zero());
        Ok(())
    })
}

pub fn leibniz_rule() -> Result<(), String> {
    let strat = (2usize..=4).prop_flat_map(|d| (Just(d), 0..=2usize, 0..=2usize)).prop_flat_map(|(d, k, l)| {
        (Just(d), Just(k), Just(l), form_spec(d, k), form_spec(d, l))
    });
    check(strat, |(d, k, l, a, b)| {
        let (a, b) = (form(d, k, &a), form(d, l, &b));
        let lhs = a.wedge(&b).unwrap().ext_der();
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let rhs = a.ext_der().wedge(&b).unwrap().add(&a.wedge(&b.ext_der()).unwrap().scale(&sign)).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

/// Monomials of weighted degree `deg`.
fn monomials_of_degree(weights: &[u32], deg: i64) -> Vec<Monomial> {
    fn go(w: &[u32], i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while (e * w[i]) as i64 <= left {
            cur.push(e);
            go(w, i + 1, left - (e * w[i]) as i64, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if deg >= 0 {
        go(weights, 0, deg, &mut Vec::new(), &mut out);
    }
    out
}

fn weights_strategy() -> impl Strategy<Value = Vec<u32>> {
    vec(1u32..=6, 2..=3).prop_map(|mut w| {
        w.sort_unstable();
        w.dedup();
        w
    })
}

/// Random quasi-homogeneous k-form of quasi-degree `deg` from picks into
/// the finite list of terms.
fn qh_form(weights: &qhc_core::Weights, k: usize, deg: i64, picks: &[(u64, i64)]) -> DifferentialForm {
    let w = weights.all();
    let n = w.len();
    let mut terms = Vec::new();
    for idx in subsets(n, k) {
        let rest = deg - idx.iter().map(|&i| w[i] as i64).sum::<i64>();
        for m in monomials_of_degree(w, rest) {
            terms.push((idx.clone(), m));
        }
    }
    let mut out = DifferentialForm::zero(n, k);
    if terms.is_empty() {
        return out;
    }
    for (p, c) in picks {
        let (idx, m) = &terms[(*p as usize) % terms.len()];
        let t = Polynomial::term(m.clone(), int(*c));
        let piece = if k == 0 { DifferentialForm::function(t) } else { DifferentialForm::term(n, idx, t) };
        out = out.add(&piece).unwrap();
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

fn qh_field(weights: &qhc_core::Weights, deg: i64, picks: &[(u64, i64)]) -> VectorField {
    let w = weights.all();
    let n = w.len();
    let mut comps = vec![Polynomial::zero(n); n];
    let options: Vec<(usize, Monomial)> =
        (0..n).flat_map(|i| monomials_of_degree(w, deg + w[i] as i64).into_iter().map(move |m| (i, m))).collect();
    if !options.is_empty() {
        for (p, c) in picks {
            let (i, m) = &options[(*p as usize) % options.len()];
            comps[*i] = &comps[*i] + &Polynomial::term(m.clone(), int(*c));
        }
    }
    VectorField::new(comps).unwrap()
}

pub fn cartan_grading() -> Result<(), String> {
    let picks = || vec((any::<u64>(), -3i64..=3), 1..=3);
    let strat = (weights_strategy(), 0usize..=2, 0i64..=14, -6i64..=8, picks(), picks());
    check(strat, |(lambdas, k, j, i, pw, px)| {
        let weights = qhc_core::Weights::new(&lambdas, lambdas.len(), false).unwrap();
        let w = qh_form(&weights, k, j, &pw);
        let x = qh_field(&weights, i, &px);
        let l = w.lie_derivative(&x).unwrap();
        if !l.is_zero() {
            prop_assert_eq!(l.quasi_degree(&weights), Some((i + j) as u32));
        }
        // L_E ω = δ ω for the Euler field
        if !w.is_zero() {
            let e = VectorField::euler(&weights);
            prop_assert_eq!(w.lie_derivative(&e).unwrap(), w.scale(&int(j)));
        }
        // L_X commutes with d
        prop_assert_eq!(l.ext_der(), w.ext_der().lie_derivative(&x).unwrap());
        Ok(())
    })
}

thread_local! {
    static PIECES: RefCell<HashMap<(usize, usize, u32), GradedPiece>> = RefCell::new(HashMap::new());
}

fn curve(k: usize) -> MonomialCurve {
    MonomialCurve::new(SEMIGROUPS[k], SEMIGROUPS[k].len()).unwrap()
}

fn quotient(k: usize, deg: usize, qdeg: u32, w: &DifferentialForm) -> Vec<Rational> {
    PIECES.with(|p| {
        p.borrow_mut()
            .entry((k, deg, qdeg))
            .or_insert_with(|| restriction_quotient(&curve(k), deg, qdeg))
            .quotient_coords(w)
            .unwrap()
    })
}

pub fn equal_quasi_degree_monomials_have_equal_restrictions() -> Result<(), String> {
    let strat = (0usize..3, 0u32..=14, any::<u64>(), any::<u64>(), any::<u64>());
    check(strat, |(k, base, p1, p2, pij)| {
        let c = curve(k);
        let w = c.weights().all().to_vec();
        let n = w.len();
        let pairs = subsets(n, 2);
        let ij = &pairs[(pij as usize) % pairs.len()];
        let ms = monomials_of_degree(&w, base as i64);
        prop_assume!(!ms.is_empty());
        let s = &ms[(p1 as usize) % ms.len()];
        let p = &ms[(p2 as usize) % ms.len()];
        let qdeg = base + w[ij[0]] + w[ij[1]];
        let ws = DifferentialForm::term(n, ij, Polynomial::term(s.clone(), int(1)));
        let wp = DifferentialForm::term(n, ij, Polynomial::term(p.clone(), int(1)));
        prop_assert_eq!(quotient(k, 2, qdeg, &ws), quotient(k, 2, qdeg, &wp));
        Ok(())
    })
}

/// Random polynomial in the vanishing ideal of the curve, mixing degrees.
fn vanishing_poly(c: &MonomialCurve, picks: &[(u32, u64, u64, i64)]) -> Polynomial {
    let n = c.ambient();
    let mut out = Polynomial::zero(n);
    for (e, g, m, coef) in picks {
        let gens = vanishing_ideal_piece(c, *e);
        if gens.is_empty() {
            continue;
        }
        let g = &gens[(*g as usize) % gens.len()];
        let exps: Vec<u32> = (0..n).map(|i| ((*m >> (2 * i)) & 1) as u32).collect();
        out = &out + &g.mul_monomial(&Monomial::new(exps), &int(*coef));
    }
    out
}

pub fn zero_restrictions_have_zero_graded_parts() -> Result<(), String> {
    let picks = || vec((8u32..=16, any::<u64>(), any::<u64>(), -3i64..=3), 1..=3);
    let strat = (0usize..3, picks(), picks(), any::<u64>(), any::<u64>());
    check(strat, |(k, pa, pb, ij, l)| {
        let c = curve(k);
        let n = c.ambient();
        let pairs = subsets(n, 2);
        let ij = &pairs[(ij as usize) % pairs.len()];
        let alpha = DifferentialForm::term(n, ij, vanishing_poly(&c, &pa));
        let beta = DifferentialForm::term(n, &[(l as usize) % n], vanishing_poly(&c, &pb));
        let w = alpha.add(&beta.ext_der()).unwrap();
        for (d, part) in w.graded_parts(c.weights()) {
            prop_assert!(quotient(k, 2, d, &part).iter().all(|x| *x == int(0)), "degree {}", d);
        }
        Ok(())
    })
}

thread_local! {
    static BASES: Vec<RestrictionBasis> = SEMIGROUPS.iter().map(|s| atlas_basis(s).unwrap()).collect();
}

fn random_restriction(b: &RestrictionBasis, coords: &[i64]) -> qhc_core::AlgRestriction {
    b.restriction(coords.iter().cycle().take(b.dim()).map(|&c| int(c)).collect()).unwrap()
}

pub fn lie_action_is_independent_of_lift_choice() -> Result<(), String> {
    let strat = (0usize..3, any::<u64>(), vec(any::<u64>(), 4), vec(-3i64..=3, 9));
    check(strat, |(k, ps, choice, coords)| {
        BASES.with(|bases| {
            let b = &bases[k];
            let c = b.curve();
            let shifts: Vec<u32> = admissible_shifts(c, b.k_f() - b.min_qdeg()).into_iter().filter(|&s| s > 0).collect();
            let s = shifts[(ps as usize) % shifts.len()];
            let options = lift_choices(c, s);
            let monos: Vec<Monomial> =
                options.iter().zip(&choice).map(|(o, p)| o[(*p as usize) % o.len()].clone()).collect();
            let x = LiftableField { shift: s, field: field_from_monomials(c, &monos), policy: LiftPolicy::Grlex };
            let a = random_restriction(b, &coords);
            let reference = lie_action(b, &liftable_field(c, s, LiftPolicy::Grlex).unwrap(), &a).unwrap();
            prop_assert_eq!(lie_action(b, &x, &a).unwrap(), reference);
            Ok(())
        })
    })
}

pub fn fields_vanishing_on_the_curve_act_trivially() -> Result<(), String> {
    let picks = || vec((8u32..=16, any::<u64>(), any::<u64>(), -3i64..=3), 1..=2);
    let strat = (0usize..3, vec(picks(), 4), vec(-3i64..=3, 9));
    check(strat, |(k, comps, coords)| {
        BASES.with(|bases| {
            let b = &bases[k];
            let c = b.curve();
            let x = VectorField::new((0..c.ambient()).map(|i| vanishing_poly(c, &comps[i])).collect()).unwrap();
            let y = LiftableField { shift: 0, field: x, policy: LiftPolicy::Grlex };
            let a = random_restriction(b, &coords);
            prop_assert!(lie_action(b, &y, &a).unwrap().is_zero());
            Ok(())
        })
    })
}

/// `g(φ(t))` truncated at `t^top`, `φ(t) = k·t·(1 + Σ b_j t^{σ_j})` with
/// `σ_j` in the semigroup.
fn reparameterized(c: &MonomialCurve, k: &Rational, bumps: &[(u32, i64)], top: usize) -> Vec<UniPoly> {
    let mut phi = UniPoly::monomial(k.clone(), 1);
    for (sigma, b) in bumps {
        phi = &phi + &UniPoly::monomial(k * int(*b), sigma + 1);
    }
    c.lambdas().iter().map(|&l| phi.pow(l).truncate(top)).collect()
}

pub fn pmqd_scales_under_symmetries() -> Result<(), String> {
    let ks = [int(1), int(2), int(-1), Rational::new(1.into(), 2.into()), int(-2), Rational::new((-2).into(), 3.into())];
    let strat = (0usize..3, 0usize..ks.len(), vec((0usize..4, -2i64..=2), 0..=2), vec(-3i64..=3, 9));
    check(strat, |(k, ki, bumps, coords)| {
        BASES.with(|bases| {
            let b = &bases[k];
            let c = b.curve();
            let sgens: Vec<u32> = c.lambdas().to_vec();
            let bumps: Vec<(u32, i64)> = bumps.iter().map(|(i, v)| (sgens[i % sgens.len()], *v)).collect();
            let top = (b.k_f() - b.min_qdeg() + c.lambdas()[c.s() - 1]) as usize;
            let target = reparameterized(c, &ks[ki], &bumps, top);
            let phi: PolyMap = identification_map(c.lambdas(), &target).unwrap();
            let a = random_restriction(b, &coords);
            prop_assume!(!a.is_zero());
            let r = b.support(&a).unwrap()[0];
            let pulled = pullback_restriction(b, &phi, &a).unwrap();
            let expected = num_traits::pow(ks[ki].clone(), r as usize);
            prop_assert_eq!(pmqd_compare(b, &a, &pulled).unwrap(), PmqdVerdict::Proportional(expected));
            Ok(())
        })
    })
}

pub const ALL: [(&str, fn() -> Result<(), String>); 8] = [
    ("d^2 = 0", d_squared_vanishes),
    ("Leibniz rule", leibniz_rule),
    ("Cartan grading", cartan_grading),
    ("equal quasi-degree monomials", equal_quasi_degree_monomials_have_equal_restrictions),
    ("graded zero restrictions", zero_restrictions_have_zero_graded_parts),
    ("lift-choice independence", lie_action_is_independent_of_lift_choice),
    ("vanishing fields act trivially", fields_vanishing_on_the_curve_act_trivially),
    ("pmqd scaling", pmqd_scales_under_symmetries),
];
