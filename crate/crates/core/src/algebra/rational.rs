use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact `k`-th root of `q` when it is rational (real root; negative `q`
/// only for odd `k`).
pub fn rational_root(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return rational_root(&-q, k).map(|r| -r);
    }
    let n = int_root(q.numer(), k)?;
    let d = int_root(q.denom(), k)?;
    Some(Rational::new(n, d))
}

fn int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(rational_root(&rat(512, 27), 3), Some(rat(8, 3)));
        assert_eq!(rational_root(&int(-32), 5), Some(int(-2)));
        assert_eq!(rational_root(&int(-1), 10), None);
        assert_eq!(rational_root(&int(2), 2), None);
        assert_eq!(rational_root(&int(1), 9), Some(int(1)));
    }
}
