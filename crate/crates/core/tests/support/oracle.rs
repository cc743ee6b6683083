//! Brute-force dimension of the space of restrictions of quasi-homogeneous
//! 2-forms: all monomial 2-forms of a quasi-degree against every
//! zero-restriction generator, ranked by one Gaussian elimination.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use qhc_core::Rational;

type Exps = Vec<u32>;

fn monomials(w: &[u32], deg: i64) -> Vec<Exps> {
    fn go(w: &[u32], i: usize, left: i64, cur: &mut Exps, out: &mut Vec<Exps>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0u32;
        while (e * w[i]) as i64 <= left {
            cur.push(e);
            go(w, i + 1, left - (e * w[i]) as i64, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if deg >= 0 {
        go(w, 0, deg, &mut Vec::new(), &mut out);
    }
    out
}

/// Polynomials vanishing on `t ↦ (t^{w_1}, …)` of weight `e`: differences of
/// monomials of equal weight (they all pull back to `t^e`).
fn vanishing(w: &[u32], e: i64) -> Vec<BTreeMap<Exps, Rational>> {
    let ms = monomials(w, e);
    ms.iter()
        .skip(1)
        .map(|m| {
            let mut p = BTreeMap::new();
            p.insert(m.clone(), Rational::one());
            p.insert(ms[0].clone(), -Rational::one());
            p
        })
        .collect()
}

/// A 2-form as coefficients keyed by `(i, j, exponents)` with `i < j`.
type Form2 = BTreeMap<(usize, usize, Exps), Rational>;

fn add(f: &mut Form2, i: usize, j: usize, e: Exps, c: Rational) {
    let (key, c) = if i < j { ((i, j, e), c) } else { ((j, i, e), -c) };
    let v = f.entry(key).or_insert_with(Rational::zero);
    *v += c;
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        let pivot: Vec<Rational> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// `dim A²_d` for the curve with weights `w` in its own coordinates.
pub fn dim_a2(w: &[u32], d: u32) -> usize {
    let n = w.len();
    let d = d as i64;
    let mut basis: Vec<(usize, usize, Exps)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in monomials(w, d - (w[i] + w[j]) as i64) {
                basis.push((i, j, m));
            }
        }
    }
    if basis.is_empty() {
        return 0;
    }
    let index: BTreeMap<_, _> = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
    let mut gens: Vec<Form2> = Vec::new();
    // h dx_i ^ dx_j with h vanishing
    for i in 0..n {
        for j in i + 1..n {
            for h in vanishing(w, d - (w[i] + w[j]) as i64) {
                let mut f = Form2::new();
                for (e, c) in h {
                    add(&mut f, i, j, e, c);
                }
                gens.push(f);
            }
        }
    }
    // d(h dx_k) = sum_l dh/dx_l dx_l ^ dx_k with h vanishing
    for k in 0..n {
        for h in vanishing(w, d - w[k] as i64) {
            let mut f = Form2::new();
            for (e, c) in &h {
                for l in 0..n {
                    if e[l] == 0 || l == k {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[l] -= 1;
                    add(&mut f, l, k, e2, c * Rational::from_integer(e[l].into()));
                }
            }
            gens.push(f);
        }
    }
    let rows: Vec<Vec<Rational>> = gens
        .iter()
        .map(|f| {
            let mut row = vec![Rational::zero(); basis.len()];
            for (key, c) in f {
                row[index[key]] += c;
            }
            row
        })
        .collect();
    basis.len() - rank(rows)
}
