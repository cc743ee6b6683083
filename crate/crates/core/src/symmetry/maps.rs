use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::{rational_root, Rational, UniPoly};
use crate::forms::PolyMap;
use crate::restriction::{AlgRestriction, MonomialCurve, RestrictionBasis};
use crate::{Error, Result};

/// A verified local symmetry `Φ ∘ f = f ∘ φ` (checked on jets).
#[derive(Clone, PartialEq, Debug)]
pub struct CurveSymmetry {
    /// Leading coefficient `c` of `φ(t) = c t + …`.
    pub scale: Rational,
    /// `φ` truncated at `t^order`.
    pub reparam: UniPoly,
    pub order: usize,
}

/// `(1 + u)^{α}` modulo `t^{n+1}`, for `u` with zero constant term.
fn binomial_series(u: &UniPoly, alpha: &Rational, n: usize) -> UniPoly {
    let mut out = UniPoly::one();
    let mut coeff = Rational::one();
    let mut power = UniPoly::one();
    for k in 0..n {
        coeff = coeff * (alpha - Rational::from_integer(k.into())) / Rational::from_integer((k + 1).into());
        power = (&power * u).truncate(n + 1);
        if power.is_zero() {
            break;
        }
        out = &out + &power.scale(&coeff);
    }
    out
}

/// Checks that `Φ` preserves the image of the curve and has invertible
/// linear part; `φ` is recovered from the first component.
pub fn check_symmetry(curve: &MonomialCurve, phi: &PolyMap) -> Result<CurveSymmetry> {
    let m = curve.ambient();
    if phi.source_dim() != m || phi.target_dim() != m {
        return Err(Error::DimensionMismatch { expected: m, found: phi.target_dim() });
    }
    let not = |why: alloc::string::String| Error::NotSymmetry(why);
    if !phi.has_invertible_linear_part() {
        return Err(not("linear part is singular".into()));
    }
    let images = curve.images();
    let pulled = phi.components().iter().map(|c| c.substitute(&images)).collect::<Result<Vec<_>>>()?;
    let l1 = curve.lambdas()[0];
    let n = pulled.iter().filter_map(UniPoly::degree).max().unwrap_or(0).max(*curve.lambdas().last().unwrap() as usize);
    let p1 = &pulled[0];
    if p1.ord() != Some(l1 as usize) {
        return Err(not(format!("first component pulls back to {}", p1)));
    }
    let c1 = p1.coeff(l1 as usize);
    // p1 = c1 t^{λ1} (1 + u)
    let u = &UniPoly::new(p1.coeffs().iter().skip(l1 as usize).map(|c| c / &c1).collect()) - &UniPoly::one();
    let root = binomial_series(&u, &Rational::new(1.into(), l1.into()), n);
    let Some(a) = rational_root(&c1, l1) else {
        return Err(not(format!("leading coefficient {} has no rational {}-th root", c1, l1)));
    };
    let candidates = if l1 % 2 == 0 { alloc::vec![a.clone(), -a] } else { alloc::vec![a] };
    'cand: for a in candidates {
        let reparam = (&UniPoly::monomial(a.clone(), 1) * &root).truncate(n + 1);
        for (i, p) in pulled.iter().enumerate() {
            let expected = if i < curve.s() { reparam.pow(curve.lambdas()[i]).truncate(n) } else { UniPoly::zero() };
            if p.truncate(n) != expected {
                continue 'cand;
            }
        }
        return Ok(CurveSymmetry { scale: a, reparam, order: n });
    }
    Err(not("components do not share a reparameterization".into()))
}

/// The constant `c` in `φ(t) = c t + …`.
pub fn scaling_constant(curve: &MonomialCurve, phi: &PolyMap) -> Result<Rational> {
    Ok(check_symmetry(curve, phi)?.scale)
}

/// `[Φ^* ω]` for a representative `ω` of `a`.
pub fn pullback_restriction(basis: &RestrictionBasis, phi: &PolyMap, a: &AlgRestriction) -> Result<AlgRestriction> {
    check_symmetry(basis.curve(), phi)?;
    basis.project(&basis.representative(a)?.pullback(phi)?)
}

/// Result of trying to normalize `value · a_r` to `a_r`.
#[derive(Clone, PartialEq, Debug)]
pub enum Scaling {
    /// `Ψ^*(value · a_r) = a_r`.
    Map(PolyMap),
    /// Negative value at even `r`: only `|value|` can be scaled away and
    /// `value · a_r` normalizes to `sign · a_r`; `map` does so when the root
    /// is rational.
    NormalizeToSign { sign: i8, map: Option<PolyMap> },
    /// `value^{1/r}` is irrational; coordinates scale by `value^{-λ_i/r}`.
    Symbolic { r: u32, value: Rational },
}

fn diagonal_for(curve: &MonomialCurve, root: &Rational) -> PolyMap {
    let inv = root.recip();
    let mut scales: Vec<Rational> = curve.lambdas().iter().map(|&l| num_traits::pow(inv.clone(), l as usize)).collect();
    scales.resize(curve.ambient(), Rational::one());
    PolyMap::diagonal(&scales)
}

pub fn scaling_symmetry(basis: &RestrictionBasis, label: &str, value: &Rational) -> Result<Scaling> {
    if value.is_zero() {
        return Err(Error::Input("scaling value must be nonzero".into()));
    }
    let r = basis.elements()[basis.index_of(label)?].qdeg;
    let curve = basis.curve();
    if value.is_negative() && r % 2 == 0 {
        let map = rational_root(&value.abs(), r).map(|root| diagonal_for(curve, &root));
        return Ok(Scaling::NormalizeToSign { sign: -1, map });
    }
    Ok(match rational_root(value, r) {
        Some(root) => Scaling::Map(diagonal_for(curve, &root)),
        None => Scaling::Symbolic { r, value: value.clone() },
    })
}
