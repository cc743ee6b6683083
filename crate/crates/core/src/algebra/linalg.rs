use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// The operations Gaussian elimination needs.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, o: &Self) -> Self;
    fn sub_elem(&self, o: &Self) -> Self;
    fn mul_elem(&self, o: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// Multiplicative inverse; only called on nonzero elements.
    fn inv_elem(&self) -> Self;
}

impl Field for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn inv_elem(&self) -> Self {
        self.recip()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type QMatrix = Matrix<Rational>;

/// Result of reduced row-echelon reduction.
#[derive(Clone, PartialEq, Debug)]
pub struct Rref<F> {
    /// Reduced matrix; zero rows are kept at the bottom.
    pub reduced: Matrix<F>,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    /// One kernel vector per free column, with a 1 in that column.
    pub kernel: Vec<Vec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero_elem(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one_elem());
        }
        m
    }

    /// Builds from row vectors, all of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero_elem() && !b.is_zero_elem())
                    .fold(F::zero_elem(), |acc, (a, b)| acc.add_elem(&a.mul_elem(b)))
            })
            .collect()
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows);
        let mut out: Matrix<F> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero_elem() {
                        let v = out.get(i, j).add_elem(&a.mul_elem(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact reduced row-echelon form with kernel basis.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero_elem()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv_elem();
            for j in c..m.cols {
                let v = m.get(r, j).mul_elem(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero_elem() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero_elem() {
                        continue;
                    }
                    let v = m.get(i, j).sub_elem(&factor.mul_elem(rv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut kernel = Vec::new();
        let mut is_pivot = vec![false; m.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..m.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![F::zero_elem(); m.cols];
            v[free] = F::one_elem();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = m.get(i, free).neg_elem();
            }
            kernel.push(v);
        }
        Rref { rank: pivots.len(), reduced: m, pivots, kernel }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// One solution of `self * x = b` (free variables zero), or `None`.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero_elem(); self.cols];
        for (i, &p) in red.pivots.iter().enumerate() {
            x[p] = red.reduced.get(i, self.cols).clone();
        }
        Some(x)
    }
}

impl<F: Field + fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Fully reduced echelon basis of a subspace of `Q^dim`, grown one vector
/// at a time. Rows are sparse and keyed by pivot column.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    dim: usize,
    rows: BTreeMap<usize, Vec<(usize, Rational)>>,
}

impl Subspace {
    pub fn new(dim: usize) -> Subspace {
        Subspace { dim, rows: BTreeMap::new() }
    }

    pub fn span<I: IntoIterator<Item = Vec<Rational>>>(dim: usize, vectors: I) -> Subspace {
        let mut s = Subspace::new(dim);
        for v in vectors {
            s.insert(&v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Basis rows as dense vectors, ordered by pivot.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows
            .values()
            .map(|r| {
                let mut v = vec![Rational::zero(); self.dim];
                for (c, x) in r {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    /// Reduces `v` modulo the subspace; the result vanishes on all pivots and
    /// is the same for all vectors of one coset.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        let mut out = v.to_vec();
        for (&p, row) in &self.rows {
            if Zero::is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (col, x) in row {
                out[*col] -= &c * x;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let red = self.reduce(v);
        let Some(p) = red.iter().position(|x| !Zero::is_zero(x)) else {
            return false;
        };
        let inv = red[p].recip();
        let row: Vec<(usize, Rational)> = red
            .iter()
            .enumerate()
            .filter(|(_, x)| !Zero::is_zero(*x))
            .map(|(c, x)| (c, x * &inv))
            .collect();
        for other in self.rows.values_mut() {
            let Some(k) = other.iter().position(|(c, _)| *c == p) else {
                continue;
            };
            let f = other[k].1.clone();
            let mut merged: BTreeMap<usize, Rational> = other.drain(..).collect();
            for (c, x) in &row {
                let e = merged.entry(*c).or_insert_with(Rational::zero);
                *e -= &f * x;
            }
            *other = merged.into_iter().filter(|(_, x)| !Zero::is_zero(x)).collect();
        }
        self.rows.insert(p, row);
        true
    }

    /// Coordinates on the non-pivot columns after reduction: a canonical
    /// coordinate system on the quotient `Q^dim / self`.
    pub fn quotient_coords(&self, v: &[Rational]) -> Vec<Rational> {
        let red = self.reduce(v);
        (0..self.dim).filter(|c| !self.is_pivot(*c)).map(|c| red[c].clone()).collect()
    }

    /// Non-pivot columns, i.e. the representatives of the quotient basis.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.is_pivot(*c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn q(rows: &[&[i64]]) -> QMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rref_examples() {
        let id = QMatrix::identity(3).rref();
        assert_eq!(id.rank, 3);
        assert!(id.kernel.is_empty());
        let z = QMatrix::zeros(2, 4).rref();
        assert_eq!(z.rank, 0);
        assert_eq!(z.kernel.len(), 4);
        let m = q(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(m.rank, 1);
        assert_eq!(m.kernel, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn solve_and_subspace() {
        let m = q(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[int(3), int(1)]), Some(vec![int(2), int(1)]));
        let s = q(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[int(1), int(3)]), None);
        let sub = Subspace::span(3, vec![vec![int(1), int(2), int(0)]]);
        assert!(sub.contains(&[rat(1, 2), int(1), int(0)]));
        assert!(!sub.contains(&[int(0), int(1), int(0)]));
        assert_eq!(sub.reduce(&[int(1), int(0), int(5)]), vec![int(0), int(-2), int(5)]);
        assert_eq!(sub.quotient_coords(&[int(1), int(0), int(5)]), vec![int(-2), int(5)]);
        let mut grow = Subspace::new(3);
        assert!(grow.insert(&[int(0), int(1), int(1)]));
        assert!(grow.insert(&[int(1), int(1), int(0)]));
        assert!(!grow.insert(&[int(1), int(2), int(1)]));
        // fully reduced: first row has no entry in the second pivot column
        assert_eq!(grow.basis(), vec![vec![int(1), int(0), int(-1)], vec![int(0), int(1), int(1)]]);
    }
}
