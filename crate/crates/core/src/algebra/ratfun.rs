use core::fmt;

use num_traits::Zero;

use super::{Field, Rational, UniPoly};

/// Quotient `num / den` of univariate polynomials in `t`, kept reduced with
/// a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    /// Panics if `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading().recip();
        RationalFunction { num: n.scale(&lead), den: d.scale(&lead) }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl Field for RationalFunction {
    fn zero_elem() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn one_elem() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone());
        }
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self.add_elem(&o.neg_elem())
    }
    fn mul_elem(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }
    fn neg_elem(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
    fn inv_elem(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn reduces() {
        let t = UniPoly::t();
        let tm = UniPoly::new(vec![rat(-1, 2), int(1)]);
        let r = RationalFunction::new(&t * &tm, tm.scale(&int(3)));
        assert_eq!(r, RationalFunction::from_poly(t.scale(&rat(1, 3))));
        let s = RationalFunction::new(UniPoly::one(), tm.scale(&int(2)));
        assert_eq!(s.to_string(), "(1/2)/(-1/2 + t)");
        assert_eq!(s.mul_elem(&s.inv_elem()), RationalFunction::one_elem());
        assert!(s.sub_elem(&s).is_zero_elem());
    }
}
