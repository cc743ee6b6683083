use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{int, Rational, UniPoly};
use crate::{Error, Result};

/// Exponent vector `x_1^{e_1} ⋯ x_m^{e_m}`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors lexicographically (so `x1 > x2 > ⋯` among variables).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Ordinary (total) degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exps.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Pads with zero exponents up to `nvars` variables.
    pub fn extend(&self, nvars: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(nvars.max(self.exps.len()), 0);
        Monomial { exps }
    }

    /// Whether any of the variables with index `>= first` occurs.
    pub fn involves_from(&self, first: usize) -> bool {
        self.exps.iter().skip(first).any(|&e| e > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// All monomials in `weights.len()` variables of weighted degree `degree`,
/// in ascending graded-lex order.
pub(crate) fn monomials_of_weighted_degree(weights: &[u32], degree: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        let w = weights[i];
        let mut e = 0;
        loop {
            if e * w > left {
                break;
            }
            cur[i] = e;
            rec(weights, i + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, degree, &mut cur, &mut out);
    out.sort();
    out
}

/// Multivariate polynomial with rational coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(nvars: usize, it: I) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(m, c);
                return;
            }
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * int(e as i64));
        }
        out
    }

    /// Lowest ordinary degree among the terms, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// The weighted degree if the polynomial is nonzero and weighted
    /// homogeneous.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Splits into weighted homogeneous parts.
    pub fn graded_parts(&self, weights: &[u32]) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(weights))
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Embeds into a ring with more variables.
    pub fn extend(&self, nvars: usize) -> Polynomial {
        let nvars = nvars.max(self.nvars);
        Polynomial {
            nvars,
            terms: self.terms.iter().map(|(m, c)| (m.extend(nvars), c.clone())).collect(),
        }
    }

    /// Substitutes `images[i]` for `x_i`; all images must live in a common ring.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: images.len() });
        }
        let target = images.first().map_or(0, Polynomial::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::DimensionMismatch { expected: target, found: bad.nvars });
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Substitutes one univariate polynomial in `t` per variable.
    pub fn substitute(&self, images: &[UniPoly]) -> Result<UniPoly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: images.len() });
        }
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = UniPoly::constant(c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    acc = &acc * &images[i].pow(e);
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut out = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            out += v;
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars.max(rhs.nvars));
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

/// Writes a rational coefficient in front of a non-constant factor:
/// `1` is dropped, `-1` becomes `-`, everything else is followed by `*`.
pub(crate) fn write_coeff_prefix(f: &mut fmt::Formatter<'_>, c: &Rational, first: bool) -> fmt::Result {
    let abs = c.abs();
    if first {
        if c.is_negative() {
            f.write_str("-")?;
        }
    } else if c.is_negative() {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    if !abs.is_one() {
        write!(f, "{}*", abs)?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Terms in descending graded-lex order, e.g. `x2^2 - x1*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if m.is_one() {
                if k == 0 {
                    write!(f, "{}", c)?;
                } else if c.is_negative() {
                    write!(f, " - {}", c.abs())?;
                } else {
                    write!(f, " + {}", c)?;
                }
            } else {
                write_coeff_prefix(f, c, k == 0)?;
                write!(f, "{}", m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use alloc::string::ToString;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![1, 0, 1]);
        let b = Monomial::new(vec![0, 2, 0]);
        let c = Monomial::new(vec![3, 0, 0]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::var(3, 0) > Monomial::var(3, 1));
    }

    #[test]
    fn weighted_enumeration() {
        let ms = monomials_of_weighted_degree(&[4, 5, 6, 7], 12);
        let shown: Vec<_> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x3^2", "x2*x4", "x1^3"]);
        assert!(monomials_of_weighted_degree(&[4, 5, 6], 7).is_empty());
    }

    #[test]
    fn substitution_examples() {
        let t4 = UniPoly::monomial(rat(1, 1), 4);
        let t5 = UniPoly::monomial(rat(1, 1), 5);
        let t6 = UniPoly::monomial(rat(1, 1), 6);
        let t7 = UniPoly::monomial(rat(1, 1), 7);
        let p = &x(3, 1).pow(2) - &(&x(3, 0) * &x(3, 2));
        assert!(p.substitute(&[t4.clone(), t5.clone(), t6.clone()]).unwrap().is_zero());
        let q = x(4, 3);
        assert!(q.substitute(&[t4.clone(), t5.clone(), t6.clone(), UniPoly::zero()]).unwrap().is_zero());
        let r = &x(4, 0) * &x(4, 1);
        assert_eq!(r.substitute(&[t4.clone(), t5.clone(), t6.clone(), t7]).unwrap(), UniPoly::monomial(rat(1, 1), 9));
        assert_eq!(
            r.substitute(&[t4, t5, t6]),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        );
    }

    #[test]
    fn display() {
        let p = &(&x(3, 1).pow(2) - &(&x(3, 0) * &x(3, 2))) + &Polynomial::constant(3, rat(-3, 2));
        assert_eq!(p.to_string(), "-x1*x3 + x2^2 - 3/2");
        assert_eq!(x(2, 0).scale(&rat(-1, 1)).to_string(), "-x1");
    }

    #[test]
    fn compose_and_derivative() {
        // (x1 + x2)^2 with x1 -> y1*y2, x2 -> y2
        let p = (&x(2, 0) + &x(2, 1)).pow(2);
        let images = [&x(2, 0) * &x(2, 1), x(2, 1)];
        let q = p.compose(&images).unwrap();
        let expected = (&(&x(2, 0) * &x(2, 1)) + &x(2, 1)).pow(2);
        assert_eq!(q, expected);
        assert_eq!(p.derivative(0), (&x(2, 0) + &x(2, 1)).scale(&rat(2, 1)));
    }
}
