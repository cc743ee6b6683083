use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_traits::Zero;

use super::MonomialCurve;
use crate::algebra::{monomials_of_weighted_degree, Matrix, Monomial, Polynomial, Rational, Subspace};
use crate::forms::DifferentialForm;
use crate::{Error, Result};

/// Basis of the polynomials of weighted degree `e` vanishing on the curve.
pub fn vanishing_ideal_piece(curve: &MonomialCurve, e: u32) -> Vec<Polynomial> {
    let m = curve.ambient();
    let monos = monomials_of_weighted_degree(curve.weights().all(), e);
    if monos.is_empty() {
        return Vec::new();
    }
    // every monomial pulls back to 0 or to t^e
    let row: Vec<Rational> = monos
        .iter()
        .map(|mo| {
            if mo.involves_from(curve.s()) {
                Rational::zero()
            } else {
                Rational::from_integer(1.into())
            }
        })
        .collect();
    let red = Matrix::from_rows(monos.len(), vec![row]).rref();
    red.kernel
        .into_iter()
        .map(|v| Polynomial::from_terms(m, monos.iter().cloned().zip(v)))
        .collect()
}

/// Strictly increasing `k`-tuples from `0..m`.
pub(crate) fn index_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, 0, &mut Vec::new(), &mut out);
    out
}

/// The quasi-homogeneous `k`-forms of one quasi-degree `d`, the subspace
/// `Z` of those with zero algebraic restriction, and canonical coordinates
/// on the quotient `A = V / Z`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    ambient: usize,
    k: usize,
    qdeg: u32,
    elements: Vec<(Vec<usize>, Monomial)>,
    index: BTreeMap<(Vec<usize>, Monomial), usize>,
    zero: Subspace,
}

impl GradedPiece {
    pub fn new(curve: &MonomialCurve, k: usize, qdeg: u32) -> GradedPiece {
        let m = curve.ambient();
        let s = curve.s();
        let w = curve.weights().all();
        let mut elements = Vec::new();
        for idx in index_tuples(m, k) {
            let wi: u32 = idx.iter().map(|&i| w[i]).sum();
            if wi > qdeg {
                continue;
            }
            for mo in monomials_of_weighted_degree(w, qdeg - wi) {
                elements.push((idx.clone(), mo));
            }
        }
        // Column order decides which monomial forms survive as quotient
        // representatives (the non-pivot columns): off-curve terms and high
        // ordinary degree are eliminated first.
        elements.sort_by(|(ia, ma), (ib, mb)| {
            let off = |i: &Vec<usize>, mo: &Monomial| mo.involves_from(s) || i.iter().any(|&j| j >= s);
            (Reverse(off(ia, ma)), Reverse(ma.degree()), ma, Reverse(ia)).cmp(&(
                Reverse(off(ib, mb)),
                Reverse(mb.degree()),
                mb,
                Reverse(ib),
            ))
        });
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut piece = GradedPiece { ambient: m, k, qdeg, elements, index, zero: Subspace::new(0) };
        let mut zero = Subspace::new(piece.elements.len());
        if !piece.elements.is_empty() {
            for idx in index_tuples(m, k) {
                let wi: u32 = idx.iter().map(|&i| w[i]).sum();
                if wi > qdeg {
                    continue;
                }
                for p in vanishing_ideal_piece(curve, qdeg - wi) {
                    let f = DifferentialForm::term(m, &idx, p);
                    zero.insert(&piece.vector(&f).expect("generator has the piece's quasi-degree"));
                }
            }
            if k >= 1 {
                for idx in index_tuples(m, k - 1) {
                    let wi: u32 = idx.iter().map(|&i| w[i]).sum();
                    if wi > qdeg {
                        continue;
                    }
                    for p in vanishing_ideal_piece(curve, qdeg - wi) {
                        let f = DifferentialForm::term(m, &idx, p).ext_der();
                        zero.insert(&piece.vector(&f).expect("differential preserves quasi-degree"));
                    }
                }
            }
        }
        piece.zero = zero;
        piece
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn qdeg(&self) -> u32 {
        self.qdeg
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Monomial forms spanning `V`, in column order.
    pub fn elements(&self) -> &[(Vec<usize>, Monomial)] {
        &self.elements
    }

    pub fn full_dim(&self) -> usize {
        self.elements.len()
    }

    pub fn zero_dim(&self) -> usize {
        self.zero.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.full_dim() - self.zero_dim()
    }

    pub fn zero_space(&self) -> &Subspace {
        &self.zero
    }

    /// Coordinates of a quasi-homogeneous form of this piece in `V`.
    pub fn vector(&self, form: &DifferentialForm) -> Result<Vec<Rational>> {
        if form.dim() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: form.dim() });
        }
        if form.degree() != self.k {
            return Err(Error::Input(format!("expected a {}-form, got a {}-form", self.k, form.degree())));
        }
        let mut v = vec![Rational::zero(); self.elements.len()];
        for (idx, mo, c) in form.monomial_terms() {
            let Some(&j) = self.index.get(&(idx.clone(), mo.clone())) else {
                return Err(Error::Input(format!("form term is not of quasi-degree {}", self.qdeg)));
            };
            v[j] += c;
        }
        Ok(v)
    }

    pub fn element_form(&self, j: usize) -> DifferentialForm {
        let (idx, mo) = &self.elements[j];
        DifferentialForm::term(self.ambient, idx, Polynomial::term(mo.clone(), Rational::from_integer(1.into())))
    }

    pub fn vector_to_form(&self, v: &[Rational]) -> DifferentialForm {
        let mut f = DifferentialForm::zero(self.ambient, self.k);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (idx, mo) = &self.elements[j];
                f.add_term(idx.clone(), Polynomial::term(mo.clone(), c.clone()));
            }
        }
        f
    }

    /// Canonical coordinates of the class of `form` in `A`.
    pub fn quotient_coords(&self, form: &DifferentialForm) -> Result<Vec<Rational>> {
        Ok(self.zero.quotient_coords(&self.vector(form)?))
    }

    /// Monomial forms whose classes form the canonical basis of `A`.
    pub fn representatives(&self) -> Vec<DifferentialForm> {
        self.zero.free_columns().into_iter().map(|j| self.element_form(j)).collect()
    }

    /// `Σ c_j · representative_j`.
    pub fn lift(&self, coords: &[Rational]) -> DifferentialForm {
        let mut v = vec![Rational::zero(); self.elements.len()];
        for (c, j) in coords.iter().zip(self.zero.free_columns()) {
            v[j] = c.clone();
        }
        self.vector_to_form(&v)
    }

    /// Echelon basis of `Z` as forms.
    pub fn zero_forms(&self) -> Vec<DifferentialForm> {
        self.zero.basis().iter().map(|v| self.vector_to_form(v)).collect()
    }
}

/// Spanning set (echelon basis) of the `k`-forms of quasi-degree `d` with
/// zero algebraic restriction.
pub fn zero_restriction_basis(curve: &MonomialCurve, k: usize, d: u32) -> Vec<DifferentialForm> {
    GradedPiece::new(curve, k, d).zero_forms()
}

pub fn restriction_quotient(curve: &MonomialCurve, k: usize, d: u32) -> GradedPiece {
    GradedPiece::new(curve, k, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};
    use alloc::string::ToString;

    fn curve(l: &[u32]) -> MonomialCurve {
        MonomialCurve::new(l, l.len()).unwrap()
    }

    #[test]
    fn zero_restriction_examples() {
        let c = curve(&[4, 5, 6, 7]);
        let z = zero_restriction_basis(&c, 2, 14);
        assert_eq!(z.len(), 1);
        let w = &z[0];
        // proportional to x1 dx1^dx3 - 2 x2 dx1^dx2
        let expected = w.coefficient(&[0, 2]).constant_term();
        assert!(expected.is_zero());
        let x1 = Polynomial::var(4, 0);
        let x2 = Polynomial::var(4, 1);
        let target = DifferentialForm::term(4, &[0, 2], x1).sub(&DifferentialForm::term(4, &[0, 1], x2.scale(&int(2)))).unwrap();
        let piece = GradedPiece::new(&c, 2, 14);
        assert!(piece.zero_space().contains(&piece.vector(&target).unwrap()));
        assert!(zero_restriction_basis(&c, 2, 11).is_empty());

        let c = curve(&[4, 5, 6]);
        let p = GradedPiece::new(&c, 2, 16);
        assert_eq!(p.zero_dim(), 2);
        assert_eq!(p.full_dim(), 2);
    }

    #[test]
    fn quotient_examples() {
        let c = curve(&[4, 5, 6, 7]);
        let p = GradedPiece::new(&c, 2, 11);
        assert_eq!(p.quotient_dim(), 2);
        let reps: Vec<_> = p.representatives().iter().map(|f| f.to_string()).collect();
        assert_eq!(reps.len(), 2);
        assert!(reps.contains(&"dx2^dx3".into()) && reps.contains(&"dx1^dx4".into()));
        assert_eq!(GradedPiece::new(&curve(&[4, 5, 6]), 2, 12).quotient_dim(), 0);
        assert_eq!(GradedPiece::new(&curve(&[4, 5, 7]), 2, 10).quotient_dim(), 0);
    }

    #[test]
    fn ideal_pieces() {
        let c = curve(&[4, 5, 6]);
        let i10 = vanishing_ideal_piece(&c, 10);
        assert_eq!(i10.len(), 1);
        assert!(c.vanishes_on_curve(&i10[0]).unwrap());
        assert!(vanishing_ideal_piece(&c, 9).is_empty());
        let c = MonomialCurve::new(&[4, 5, 6], 4).unwrap();
        let i7 = vanishing_ideal_piece(&c, 7);
        assert_eq!(i7, vec![Polynomial::var(4, 3)]);
        let _ = rat(1, 2);
    }
}
