//! Discrete symplectic invariants of algebraic restrictions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Matrix, Polynomial, Rational, UniPoly};
use crate::restriction::{min_qdeg_part, AlgRestriction, GradedPiece, RestrictionBasis};
use crate::symmetry::{orbit_tangent_space, LiftPolicy};
use crate::{Error, Result};

/// A non-negative integer or `∞`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{}", n),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Lagrangian tangency order; undefined by the algebraic formula when the
/// index of isotropy is 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TangencyOrder {
    Finite(u32),
    Infinite,
    NotApplicable,
}

impl fmt::Display for TangencyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangencyOrder::Finite(n) => write!(f, "{}", n),
            TangencyOrder::Infinite => f.write_str("inf"),
            TangencyOrder::NotApplicable => f.write_str("n/a"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct InvariantReport {
    pub multiplicity: usize,
    pub isotropy: Order,
    pub tangency: TangencyOrder,
    pub min_qdeg: Option<u32>,
    pub min_part: Option<AlgRestriction>,
}

pub fn invariants(basis: &RestrictionBasis, a: &AlgRestriction) -> Result<InvariantReport> {
    let part = min_qdeg_part(basis, a)?;
    Ok(InvariantReport {
        multiplicity: symplectic_multiplicity(basis, a)?,
        isotropy: index_of_isotropy(basis, a)?,
        tangency: lagrangian_tangency_order(basis, a)?,
        min_qdeg: part.as_ref().map(|p| p.0),
        min_part: part.map(|p| p.1),
    })
}

/// Codimension of the orbit tangent space.
pub fn symplectic_multiplicity(basis: &RestrictionBasis, a: &AlgRestriction) -> Result<usize> {
    Ok(basis.dim() - orbit_tangent_space(basis, a, LiftPolicy::Grlex)?.dim())
}

/// The affine family of quasi-homogeneous 1-forms `α` with `[dα] = a^{(d)}`,
/// as a linear system on the coordinates of `α` in `V¹_d`.
struct Primitives {
    v1: GradedPiece,
    /// Rows indexed by basis coordinates, one column per `e_j`: `[d e_j]`.
    class: Vec<Vec<Rational>>,
    target: Vec<Rational>,
}

impl Primitives {
    fn new(basis: &RestrictionBasis, a: &AlgRestriction, d: u32) -> Result<Self> {
        let v1 = GradedPiece::new(basis.curve(), 1, d);
        let part = basis.graded_part(a, d)?;
        let cols = (0..v1.full_dim())
            .map(|j| basis.project(&v1.element_form(j).ext_der()))
            .collect::<Result<Vec<_>>>()?;
        let class = (0..basis.dim()).map(|i| cols.iter().map(|c| c.coords()[i].clone()).collect()).collect();
        Ok(Primitives { v1, class, target: part.coords().to_vec() })
    }

    /// Is there a primitive whose coordinates also satisfy `extra · x = 0`?
    fn feasible(&self, extra: &[Vec<Rational>]) -> bool {
        let n = self.v1.full_dim();
        let mut rows = self.class.clone();
        rows.extend(extra.iter().cloned());
        let mut rhs = self.target.clone();
        rhs.extend(core::iter::repeat_n(Rational::zero(), extra.len()));
        Matrix::from_rows(n, rows).solve(&rhs).is_some()
    }
}

/// Maximal vanishing order at the origin over closed representatives,
/// minimized over the nonzero graded parts.
pub fn index_of_isotropy(basis: &RestrictionBasis, a: &AlgRestriction) -> Result<Order> {
    let mut best = Order::Infinite;
    for d in basis.support(a)? {
        let prim = Primitives::new(basis, a, d)?;
        let v2 = basis.space().piece2(d).ok_or(Error::OutsideBasis { qdeg: d, bound: basis.space().bound() })?;
        // V²_d coordinates of d e_j
        let dcols: Vec<Vec<Rational>> =
            (0..prim.v1.full_dim()).map(|j| v2.vector(&prim.v1.element_form(j).ext_der())).collect::<Result<_>>()?;
        let degree_of = |k: usize| v2.elements()[k].1.degree();
        let top = (0..v2.full_dim()).map(degree_of).max().unwrap_or(0);
        let mut q = 0;
        while q < top {
            // all coefficients of degree <= q vanish
            let extra: Vec<Vec<Rational>> = (0..v2.full_dim())
                .filter(|&k| degree_of(k) <= q)
                .map(|k| dcols.iter().map(|c| c[k].clone()).collect())
                .collect();
            if !prim.feasible(&extra) {
                break;
            }
            q += 1;
        }
        best = best.min(Order::Finite(q));
    }
    Ok(best)
}

/// Maximal order of vanishing along the curve of a primitive 1-form,
/// minimized over the nonzero graded parts; not applicable when `ι = 0`.
pub fn lagrangian_tangency_order(basis: &RestrictionBasis, a: &AlgRestriction) -> Result<TangencyOrder> {
    match index_of_isotropy(basis, a)? {
        Order::Infinite => return Ok(TangencyOrder::Infinite),
        Order::Finite(0) => return Ok(TangencyOrder::NotApplicable),
        Order::Finite(_) => {}
    }
    let curve = basis.curve();
    let w = curve.weights().all().to_vec();
    let mut best: Option<u32> = None;
    for d in basis.support(a)? {
        let prim = Primitives::new(basis, a, d)?;
        // coefficient i of α pulls back to c_i t^{d - w_i}
        let m = curve.ambient();
        let mut pull = vec![vec![Rational::zero(); prim.v1.full_dim()]; m];
        for (j, (idx, mono)) in prim.v1.elements().iter().enumerate() {
            if !mono.involves_from(curve.s()) {
                pull[idx[0]][j] = Rational::one();
            }
        }
        let mut orders: Vec<u32> = (0..m).filter(|&i| w[i] <= d).map(|i| d - w[i]).collect();
        orders.sort_unstable();
        orders.dedup();
        let mut lt = None;
        for &q in orders.iter().rev() {
            // every coefficient pulling back to order < q vanishes
            let extra: Vec<Vec<Rational>> =
                (0..m).filter(|&i| w[i] <= d && d - w[i] < q).map(|i| pull[i].clone()).collect();
            if prim.feasible(&extra) {
                lt = Some(q);
                break;
            }
        }
        let lt = lt.ok_or(Error::NotClosed { qdeg: d })?;
        best = Some(best.map_or(lt, |b| b.min(lt)));
    }
    Ok(best.map_or(TangencyOrder::Infinite, TangencyOrder::Finite))
}

/// `min_i ord_t(H_i ∘ f)` for an explicit parameterization.
pub fn tangency_order(curve: &[UniPoly], hs: &[Polynomial]) -> Result<Order> {
    let mut best = Order::Infinite;
    for h in hs {
        if let Some(o) = h.substitute(curve)?.ord() {
            best = best.min(Order::Finite(o as u32));
        }
    }
    Ok(best)
}

#[derive(Clone, PartialEq, Debug)]
pub enum PmqdVerdict {
    /// `part₂ = c · part₁`.
    Proportional(Rational),
    NotProportional,
    BothZero,
    OneZero,
}

pub fn pmqd_compare(basis: &RestrictionBasis, a1: &AlgRestriction, a2: &AlgRestriction) -> Result<PmqdVerdict> {
    a1.sub(a2)?;
    let (p1, p2) = match (min_qdeg_part(basis, a1)?, min_qdeg_part(basis, a2)?) {
        (None, None) => return Ok(PmqdVerdict::BothZero),
        (None, _) | (_, None) => return Ok(PmqdVerdict::OneZero),
        (Some(p1), Some(p2)) => (p1, p2),
    };
    if p1.0 != p2.0 {
        return Ok(PmqdVerdict::NotProportional);
    }
    let (x, y) = (p1.1.coords(), p2.1.coords());
    let k = x.iter().position(|c| !c.is_zero()).expect("nonzero part");
    let c = &y[k] / &x[k];
    if c.is_zero() || x.iter().zip(y).any(|(u, v)| &(u * &c) != v) {
        return Ok(PmqdVerdict::NotProportional);
    }
    Ok(PmqdVerdict::Proportional(c))
}

type Dense = Vec<Vec<Rational>>;

/// Skew matrix of the constant part of a 2-form on the first `s` coordinates.
fn constant_part(form: &crate::DifferentialForm, s: usize) -> Dense {
    let mut m = vec![vec![Rational::zero(); s]; s];
    for (idx, p) in form.terms() {
        if idx[0] < s && idx[1] < s {
            let c = p.constant_term();
            m[idx[1]][idx[0]] = -c.clone();
            m[idx[0]][idx[1]] = c;
        }
    }
    m
}

fn rank(m: &Dense) -> usize {
    Matrix::from_rows(m.len(), m.clone()).rank()
}

/// Maximal rank on the curve coordinates of the constant part over all
/// representatives of `a`.
pub fn max_constant_rank(basis: &RestrictionBasis, a: &AlgRestriction) -> Result<usize> {
    let curve = basis.curve();
    let s = curve.s();
    let base = constant_part(&basis.representative(a)?, s);
    let l = curve.lambdas();
    let mut adjust: Vec<Dense> = Vec::new();
    let mut degrees: Vec<u32> = (0..s).flat_map(|i| (i + 1..s).map(move |j| l[i] + l[j])).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        if let Some(p) = basis.space().piece2(d) {
            for z in p.zero_forms() {
                let c = constant_part(&z, s);
                if c.iter().flatten().any(|x| !x.is_zero()) {
                    adjust.push(c);
                }
            }
        }
    }
    let mut best = rank(&base);
    // the generic rank of an affine family is attained off a proper
    // algebraic subset, so a handful of distinct integer points suffices
    for p in 1..=(2 * s as i64 + 2) {
        if adjust.is_empty() {
            break;
        }
        let mut m = base.clone();
        for (k, z) in adjust.iter().enumerate() {
            let t = Rational::from_integer(num_traits::pow(p, k + 1).into());
            for (row, zrow) in m.iter_mut().zip(z) {
                for (x, y) in row.iter_mut().zip(zrow) {
                    *x += y * &t;
                }
            }
        }
        best = best.max(rank(&m));
    }
    Ok(best)
}

/// Representability by a symplectic form on `R^{2n}` with `r = s`.
pub fn representable_by_symplectic(basis: &RestrictionBasis, a: &AlgRestriction, n: usize) -> Result<bool> {
    let r = basis.curve().s();
    let need = (2 * r).saturating_sub(2 * n);
    Ok(max_constant_rank(basis, a)? >= need)
}
