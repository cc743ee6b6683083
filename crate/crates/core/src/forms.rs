//! Polynomial differential forms, vector fields and maps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{Monomial, Polynomial, Rational};
use crate::{Error, Result};

/// Weights of the ambient coordinates: `λ_1 < … < λ_s` on the curve
/// coordinates, `λ_s + 1` on every further coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weights {
    curve: Vec<u32>,
    all: Vec<u32>,
}

impl Weights {
    /// Checks positivity and strict increase; `independent` additionally
    /// rejects a `λ_j` that is a non-negative integer combination of the
    /// others.
    pub fn new(curve: &[u32], ambient: usize, independent: bool) -> Result<Self> {
        if curve.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        if curve[0] == 0 {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        if curve.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidWeights(format!("{:?} is not strictly increasing", curve)));
        }
        if ambient < curve.len() {
            return Err(Error::InvalidWeights(format!(
                "ambient dimension {} is smaller than the number of weights {}",
                ambient,
                curve.len()
            )));
        }
        if independent {
            for (j, &l) in curve.iter().enumerate() {
                let others: Vec<u32> = curve.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &w)| w).collect();
                if representable(l, &others) {
                    return Err(Error::InvalidWeights(format!(
                        "{} is a non-negative integer combination of the other weights",
                        l
                    )));
                }
            }
        }
        let off = curve[curve.len() - 1] + 1;
        let mut all = curve.to_vec();
        all.resize(ambient, off);
        Ok(Weights { curve: curve.to_vec(), all })
    }

    pub fn curve(&self) -> &[u32] {
        &self.curve
    }

    /// Weights of all ambient coordinates.
    pub fn all(&self) -> &[u32] {
        &self.all
    }

    pub fn ambient(&self) -> usize {
        self.all.len()
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.all[i]
    }
}

/// Whether `n` is a non-negative integer combination of `gens`.
pub(crate) fn representable(n: u32, gens: &[u32]) -> bool {
    let mut reach = vec![false; n as usize + 1];
    reach[0] = true;
    for k in 1..=n as usize {
        reach[k] = gens.iter().any(|&g| g as usize <= k && g > 0 && reach[k - g as usize]);
    }
    reach[n as usize]
}

/// Sign of the permutation sorting `a ++ b` (both strictly increasing), or
/// `None` when they share an index.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, inversions % 2 == 1))
}

/// Polynomial differential `k`-form in `dim` variables. Index tuples are
/// 0-based and strictly increasing; zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferentialForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

impl DifferentialForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        DifferentialForm { dim, degree, terms: BTreeMap::new() }
    }

    pub fn function(p: Polynomial) -> Self {
        let mut f = Self::zero(p.nvars(), 0);
        f.add_term(Vec::new(), p);
        f
    }

    /// `dx_{i+1}`
    pub fn dx(dim: usize, i: usize) -> Self {
        Self::term(dim, &[i], Polynomial::one(dim))
    }

    /// `p · dx_{i_1} ∧ … ∧ dx_{i_k}` for arbitrary (unsorted, possibly
    /// repeated) indices.
    pub fn term(dim: usize, indices: &[usize], p: Polynomial) -> Self {
        let mut f = Self::zero(dim, indices.len());
        let mut sorted = indices.to_vec();
        let mut odd = false;
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return f;
        }
        f.add_term(sorted, if odd { -&p } else { p });
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms keyed by increasing index tuples, in ascending tuple order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Polynomial {
        self.terms.get(indices).cloned().unwrap_or_else(|| Polynomial::zero(self.dim))
    }

    /// Adds `p · dx_I` for a strictly increasing tuple `I`.
    pub fn add_term(&mut self, indices: Vec<usize>, p: Polynomial) {
        debug_assert_eq!(indices.len(), self.degree);
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.get(&indices) {
            Some(q) => q + &p,
            None => p,
        };
        if sum.is_zero() {
            self.terms.remove(&indices);
        } else {
            self.terms.insert(indices, sum);
        }
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: o.dim });
        }
        if self.degree != o.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, found: o.degree });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut out = self.clone();
        for (k, p) in &o.terms {
            out.add_term(k.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_poly(&Polynomial::constant(self.dim, c.clone()))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, q) in &self.terms {
            out.add_term(k.clone(), q * p);
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: o.dim });
        }
        let mut out = Self::zero(self.dim, self.degree + o.degree);
        if self.degree + o.degree > self.dim {
            return Ok(out);
        }
        for (a, p) in &self.terms {
            for (b, q) in &o.terms {
                if let Some((idx, odd)) = merge_sign(a, b) {
                    let c = p * q;
                    out.add_term(idx, if odd { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn ext_der(&self) -> Self {
        let mut out = Self::zero(self.dim, self.degree + 1);
        if self.degree >= self.dim {
            return out;
        }
        for (idx, p) in &self.terms {
            for j in 0..self.dim {
                if let Some((new, odd)) = merge_sign(&[j], idx) {
                    let dp = p.derivative(j);
                    out.add_term(new, if odd { -&dp } else { dp });
                }
            }
        }
        out
    }

    /// Contraction `i_X ω`; zero on functions.
    pub fn interior(&self, x: &VectorField) -> Result<Self> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        if self.degree == 0 {
            return Ok(Self::zero(self.dim, 0));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (idx, p) in &self.terms {
            for (r, &i) in idx.iter().enumerate() {
                let mut rest = idx.clone();
                rest.remove(r);
                let c = p * &x.components[i];
                out.add_term(rest, if r % 2 == 1 { -&c } else { c });
            }
        }
        Ok(out)
    }

    /// `L_X ω = i_X dω + d(i_X ω)`.
    pub fn lie_derivative(&self, x: &VectorField) -> Result<Self> {
        let a = self.ext_der().interior(x)?;
        let b = self.interior(x)?.ext_der();
        if self.degree == 0 {
            return Ok(a);
        }
        a.add(&b)
    }

    /// `Φ^*ω`; `ω` lives on the target of `Φ`.
    pub fn pullback(&self, phi: &PolyMap) -> Result<Self> {
        if phi.target_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: phi.target_dim() });
        }
        let n = phi.source_dim();
        let differentials: Vec<DifferentialForm> =
            phi.components.iter().map(|c| DifferentialForm::function(c.clone()).ext_der()).collect();
        let mut out = Self::zero(n, self.degree);
        for (idx, p) in &self.terms {
            let mut acc = DifferentialForm::function(p.compose(&phi.components)?);
            for &i in idx {
                acc = acc.wedge(&differentials[i])?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Quasi-degree of a single term.
    pub fn term_qdeg(weights: &[u32], indices: &[usize], m: &Monomial) -> u32 {
        m.weighted_degree(weights) + indices.iter().map(|&i| weights[i]).sum::<u32>()
    }

    /// Quasi-homogeneous parts keyed by quasi-degree.
    pub fn graded_parts(&self, weights: &Weights) -> BTreeMap<u32, DifferentialForm> {
        let w = weights.all();
        let mut out: BTreeMap<u32, DifferentialForm> = BTreeMap::new();
        for (idx, p) in &self.terms {
            for (m, c) in p.terms() {
                let d = Self::term_qdeg(w, idx, m);
                out.entry(d)
                    .or_insert_with(|| Self::zero(self.dim, self.degree))
                    .add_term(idx.clone(), Polynomial::term(m.clone(), c.clone()));
            }
        }
        out
    }

    /// The quasi-degree if the form is nonzero and quasi-homogeneous.
    pub fn quasi_degree(&self, weights: &Weights) -> Option<u32> {
        let parts = self.graded_parts(weights);
        if parts.len() == 1 {
            parts.keys().next().copied()
        } else {
            None
        }
    }

    /// Embeds into more ambient variables.
    pub fn extend(&self, dim: usize) -> Self {
        let mut out = Self::zero(dim.max(self.dim), self.degree);
        for (idx, p) in &self.terms {
            out.add_term(idx.clone(), p.extend(dim));
        }
        out
    }

    /// Monomial terms `(indices, monomial, coefficient)`.
    pub fn monomial_terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Monomial, &Rational)> {
        self.terms.iter().flat_map(|(idx, p)| p.terms().map(move |(m, c)| (idx, m, c)))
    }

    /// Smallest ordinary degree of a coefficient monomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.values().filter_map(Polynomial::order).min()
    }
}

impl fmt::Display for DifferentialForm {
    /// E.g. `-2*x2*dx1^dx2 + x1*dx1^dx3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.degree == 0 {
            return write!(f, "{}", self.coefficient(&[]));
        }
        let mut first = true;
        for (idx, p) in &self.terms {
            for (m, c) in p.terms().rev() {
                let abs = c.abs();
                if first {
                    if c.is_negative() {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if c.is_negative() { " - " } else { " + " })?;
                }
                first = false;
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                if !m.is_one() {
                    write!(f, "{}*", m)?;
                }
                for (k, i) in idx.iter().enumerate() {
                    if k > 0 {
                        f.write_str("^")?;
                    }
                    write!(f, "dx{}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// Polynomial vector field `Σ X_i ∂/∂x_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if let Some(c) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: c.nvars() });
        }
        Ok(VectorField { components })
    }

    pub fn zero(dim: usize) -> Self {
        VectorField { components: vec![Polynomial::zero(dim); dim] }
    }

    /// `Σ λ_i x_i ∂/∂x_i` over all ambient coordinates.
    pub fn euler(weights: &Weights) -> Self {
        let n = weights.ambient();
        VectorField {
            components: (0..n)
                .map(|i| Polynomial::var(n, i).scale(&Rational::from_integer(weights.weight(i).into())))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.dim() != o.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: o.dim() });
        }
        Ok(VectorField { components: self.components.iter().zip(&o.components).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField { components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    /// Directional derivative `X(p)`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.dim());
        for (i, x) in self.components.iter().enumerate() {
            out = &out + &(x * &p.derivative(i));
        }
        out
    }

    /// Quasi-degree `δ` when every component `i` is weighted homogeneous of
    /// degree `δ + w_i` (zero components are ignored).
    pub fn quasi_degree(&self, weights: &Weights) -> Option<i64> {
        let mut deg = None;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = c.homogeneous_degree(weights.all())? as i64 - weights.weight(i) as i64;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

impl fmt::Display for VectorField {
    /// E.g. `4*x2*d/dx1 + 5*x3*d/dx2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let simple = c.num_terms() == 1;
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if simple {
                write!(f, "{}*d/dx{}", c, i + 1)?;
            } else {
                write!(f, "({})*d/dx{}", c, i + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Polynomial map `x ↦ (Φ_1(x), …, Φ_m(x))` from `source_dim` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    source_dim: usize,
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(source_dim: usize, components: Vec<Polynomial>) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| c.nvars() != source_dim) {
            return Err(Error::DimensionMismatch { expected: source_dim, found: c.nvars() });
        }
        if components.iter().any(|c| !c.constant_term().is_zero()) {
            return Err(Error::Input("map components must vanish at the origin".into()));
        }
        Ok(PolyMap { source_dim, components })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap { source_dim: n, components: (0..n).map(|i| Polynomial::var(n, i)).collect() }
    }

    /// `x_i ↦ c_i x_i`.
    pub fn diagonal(scales: &[Rational]) -> Self {
        let n = scales.len();
        PolyMap {
            source_dim: n,
            components: scales.iter().enumerate().map(|(i, c)| Polynomial::var(n, i).scale(c)).collect(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        let comps = self.components.iter().map(|c| c.compose(&inner.components)).collect::<Result<_>>()?;
        Ok(PolyMap { source_dim: inner.source_dim, components: comps })
    }

    /// Jacobian at the origin, `target × source`.
    pub fn linear_part(&self) -> crate::algebra::QMatrix {
        let mut m = crate::algebra::QMatrix::zeros(self.target_dim(), self.source_dim);
        for (i, c) in self.components.iter().enumerate() {
            for j in 0..self.source_dim {
                m.set(i, j, c.coeff(&Monomial::var(self.source_dim, j)));
            }
        }
        m
    }

    pub fn has_invertible_linear_part(&self) -> bool {
        self.target_dim() == self.source_dim && self.linear_part().rank() == self.source_dim
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};
    use alloc::string::ToString;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn dx(n: usize, i: usize) -> DifferentialForm {
        DifferentialForm::dx(n, i)
    }

    fn w4567() -> Weights {
        Weights::new(&[4, 5, 6, 7], 4, true).unwrap()
    }

    #[test]
    fn weights_validation() {
        assert!(Weights::new(&[4, 5, 6, 7], 4, true).is_ok());
        assert!(Weights::new(&[2, 4], 2, true).is_err());
        assert!(Weights::new(&[5, 4], 2, false).is_err());
        assert_eq!(Weights::new(&[4, 5, 6], 5, true).unwrap().all(), &[4, 5, 6, 7, 7]);
    }

    #[test]
    fn wedge_examples() {
        let n = 3;
        assert_eq!(dx(n, 0).wedge(&dx(n, 1)).unwrap().to_string(), "dx1^dx2");
        assert!(dx(n, 0).wedge(&dx(n, 0)).unwrap().is_zero());
        let a = dx(n, 0).mul_poly(&x(n, 0));
        let b = dx(n, 1).wedge(&dx(n, 2)).unwrap();
        assert_eq!(a.wedge(&b).unwrap().to_string(), "x1*dx1^dx2^dx3");
        assert_eq!(dx(n, 1).wedge(&dx(n, 0)).unwrap().to_string(), "-dx1^dx2");
    }

    #[test]
    fn ext_der_examples() {
        let n = 4;
        let w = dx(n, 0).mul_poly(&(&x(n, 0) * &x(n, 1)));
        assert_eq!(w.ext_der().to_string(), "-x1*dx1^dx2");
        let g = &x(n, 1).pow(2) - &(&x(n, 0) * &x(n, 2));
        let w = dx(n, 0).mul_poly(&g);
        assert_eq!(w.ext_der().to_string(), "-2*x2*dx1^dx2 + x1*dx1^dx3");
        assert!(dx(n, 1).mul_poly(&x(n, 1).pow(2)).ext_der().is_zero());
    }

    #[test]
    fn interior_examples() {
        let n = 2;
        let e1 = VectorField::new(vec![Polynomial::one(n), Polynomial::zero(n)]).unwrap();
        let w = dx(n, 0).wedge(&dx(n, 1)).unwrap();
        assert_eq!(w.interior(&e1).unwrap(), dx(n, 1));
        let e = VectorField::new(vec![x(n, 0).scale(&int(4)), x(n, 1).scale(&int(5))]).unwrap();
        assert_eq!(w.interior(&e).unwrap().to_string(), "-5*x2*dx1 + 4*x1*dx2");
        let f = DifferentialForm::function(x(n, 0));
        assert!(f.interior(&e).unwrap().is_zero());
    }

    #[test]
    fn lie_examples() {
        let w = w4567();
        let e = VectorField::euler(&w);
        let om = dx(4, 0).wedge(&dx(4, 1)).unwrap();
        assert_eq!(om.lie_derivative(&e).unwrap(), om.scale(&int(9)));
        let c = DifferentialForm::function(Polynomial::constant(4, int(3)));
        assert!(c.lie_derivative(&e).unwrap().is_zero());
    }

    #[test]
    fn pullback_examples() {
        // curve map t -> (t^4, t^5)
        let t = Polynomial::var(1, 0);
        let curve = PolyMap::new(1, vec![t.pow(4), t.pow(5)]).unwrap();
        let om = dx(2, 0).wedge(&dx(2, 1)).unwrap();
        assert!(om.pullback(&curve).unwrap().is_zero());

        let c = int(3);
        let scales: Vec<_> = [4u32, 5, 6, 7].iter().map(|&l| num_traits::pow(c.clone(), l as usize)).collect();
        let psi = PolyMap::diagonal(&scales);
        let om = dx(4, 0).wedge(&dx(4, 1)).unwrap();
        assert_eq!(om.pullback(&psi).unwrap(), om.scale(&num_traits::pow(c, 9)));

        let (c1, c2) = (rat(2, 3), int(5));
        let n = 4;
        let f = PolyMap::new(n, vec![x(n, 0), &x(n, 1) + &x(n, 3).scale(&c1), x(n, 2), x(n, 3).scale(&c2)]).unwrap();
        let om0 = dx(n, 0).wedge(&dx(n, 1)).unwrap().add(&dx(n, 2).wedge(&dx(n, 3)).unwrap()).unwrap();
        assert_eq!(om0.pullback(&f).unwrap().to_string(), "dx1^dx2 + 2/3*dx1^dx4 + 5*dx3^dx4");
    }

    #[test]
    fn graded_examples() {
        let w = w4567();
        let om = dx(4, 0).wedge(&dx(4, 1)).unwrap();
        let om2 = om.add(&om.mul_poly(&x(4, 0))).unwrap();
        let parts = om2.graded_parts(&w);
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![9, 13]);
        let a = dx(4, 0).wedge(&dx(4, 2)).unwrap().mul_poly(&x(4, 0));
        assert_eq!(a.quasi_degree(&w), Some(14));
        assert!(DifferentialForm::zero(4, 2).graded_parts(&w).is_empty());
    }
}
