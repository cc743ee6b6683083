use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::write_coeff_prefix;
use super::{int, Rational};
use crate::{Error, Result};

/// Univariate polynomial in `t`, coefficients stored in ascending order with
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, e: u32) -> Self {
        let mut coeffs = vec![Rational::zero(); e as usize + 1];
        coeffs[e as usize] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Drops all terms of degree `> n`.
    pub fn truncate(&self, n: usize) -> UniPoly {
        UniPoly::new(self.coeffs.iter().take(n + 1).cloned().collect())
    }

    /// Composition `self(q(t))`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for i in (dd..n).rev() {
            let q = &rem[i] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * c;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Number of sign variations of the Sturm chain evaluated at `x`.
    fn variations(chain: &[UniPoly], x: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn sturm_count(p: &UniPoly, a: &Rational, b: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a >= b {
        return Ok(0);
    }
    let g = p.gcd(&p.derivative());
    let sq = p.div_rem(&g).0;
    if sq.degree() == Some(0) {
        return Ok(0);
    }
    let mut chain = vec![sq.clone(), sq.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    // With zero entries skipped, V(x) equals V(x + eps) at a root x of the
    // squarefree chain head, so the difference counts exactly (a, b].
    Ok(UniPoly::variations(&chain, a) - UniPoly::variations(&chain, b))
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    /// Ascending powers, e.g. `t^5 + 2*t^7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e == 0 {
                write!(f, "{}", c)?;
            } else {
                write_coeff_prefix(f, c, first)?;
                if e == 1 {
                    f.write_str("t")?;
                } else {
                    write!(f, "t^{}", e)?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use alloc::string::ToString;

    fn lin(root: Rational) -> UniPoly {
        UniPoly::new(vec![-root, Rational::one()])
    }

    #[test]
    fn sturm_examples() {
        let t2m1 = UniPoly::new(vec![int(-1), int(0), int(1)]);
        assert_eq!(sturm_count(&t2m1, &int(0), &int(2)), Ok(1));
        let t2p1 = UniPoly::new(vec![int(1), int(0), int(1)]);
        assert_eq!(sturm_count(&t2p1, &int(0), &int(1)), Ok(0));
        let two = &lin(rat(1, 4)) * &lin(rat(3, 4));
        assert_eq!(sturm_count(&two, &int(0), &int(1)), Ok(2));
        assert_eq!(sturm_count(&UniPoly::zero(), &int(0), &int(1)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn sturm_endpoints() {
        let p = &lin(int(0)) * &lin(int(1));
        // (0, 1] contains 1 but not 0
        assert_eq!(sturm_count(&p, &int(0), &int(1)), Ok(1));
        let sq = p.pow(3);
        assert_eq!(sturm_count(&sq, &int(0), &int(1)), Ok(1));
        assert_eq!(sturm_count(&sq, &int(-1), &int(1)), Ok(2));
        assert_eq!(sturm_count(&sq, &int(-1), &int(0)), Ok(1));
    }

    #[test]
    fn division_and_gcd() {
        let a = &lin(int(2)) * &lin(rat(1, 3));
        let b = &lin(int(2)) * &lin(int(5));
        assert_eq!(a.gcd(&b), lin(int(2)));
        let (q, r) = a.div_rem(&lin(int(2)));
        assert!(r.is_zero());
        assert_eq!(q, lin(rat(1, 3)));
    }

    #[test]
    fn display() {
        let p = &UniPoly::monomial(int(1), 5) + &UniPoly::monomial(rat(-3, 2), 7);
        assert_eq!(p.to_string(), "t^5 - 3/2*t^7");
        assert_eq!((&UniPoly::t() + &UniPoly::one()).to_string(), "1 + t");
    }
}
