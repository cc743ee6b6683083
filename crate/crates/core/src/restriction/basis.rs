use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{GradedPiece, MonomialCurve};
use crate::algebra::{Matrix, QMatrix, Rational, Subspace};
use crate::forms::DifferentialForm;
use crate::{Error, Result};

/// The graded pieces of algebraic restrictions of 2- and 3-forms up to a
/// quasi-degree bound, and the closed part of each 2-form piece.
#[derive(Clone, Debug)]
pub struct RestrictionSpace {
    curve: MonomialCurve,
    bound: u32,
    pieces2: BTreeMap<u32, GradedPiece>,
    pieces3: BTreeMap<u32, GradedPiece>,
    /// Kernel of `d: A²_d → A³_d` in canonical `A²_d` coordinates.
    closed: BTreeMap<u32, Subspace>,
}

impl RestrictionSpace {
    /// `conductor + 3 λ_s + λ_{s-1}`
    pub fn default_bound(curve: &MonomialCurve) -> u32 {
        let l = curve.lambdas();
        let s = l.len();
        let prev = if s >= 2 { l[s - 2] } else { 0 };
        curve.conductor() + 3 * l[s - 1] + prev
    }

    /// Length of the trailing window of vanishing 2-form pieces that
    /// certifies a bound.
    pub fn window(curve: &MonomialCurve) -> u32 {
        2 * curve.lambdas()[curve.s() - 1]
    }

    /// Computes every piece up to `bound` and checks that the closed part of
    /// `A²_d` vanishes on the trailing window `(bound - 2λ_s, bound]`. Without
    /// an explicit bound, the default one is raised until the window is clear.
    pub fn new(curve: &MonomialCurve, bound: Option<u32>) -> Result<Self> {
        if bound.is_some() {
            return Self::with_bound(curve, bound.unwrap());
        }
        let mut bound = Self::default_bound(curve);
        loop {
            match Self::with_bound(curve, bound) {
                Err(Error::BoundExhausted { qdeg, .. }) if qdeg + Self::window(curve) > bound => {
                    bound = qdeg + Self::window(curve)
                }
                other => return other,
            }
        }
    }

    fn with_bound(curve: &MonomialCurve, bound: u32) -> Result<Self> {
        let mut pieces2 = BTreeMap::new();
        let mut pieces3 = BTreeMap::new();
        let mut closed = BTreeMap::new();
        let mut last_nonzero = None;
        for d in 0..=bound {
            let p2 = GradedPiece::new(curve, 2, d);
            if p2.quotient_dim() == 0 {
                continue;
            }
            let p3 = GradedPiece::new(curve, 3, d);
            let kernel = closed_kernel(&p2, &p3)?;
            if kernel.rank() > 0 {
                last_nonzero = Some(d);
                closed.insert(d, kernel);
            }
            pieces2.insert(d, p2);
            if p3.quotient_dim() > 0 {
                pieces3.insert(d, p3);
            }
        }
        let window = Self::window(curve);
        if let Some(d) = last_nonzero {
            if d + window > bound {
                return Err(Error::BoundExhausted { bound, qdeg: d });
            }
        }
        Ok(RestrictionSpace { curve: curve.clone(), bound, pieces2, pieces3, closed })
    }

    pub fn curve(&self) -> &MonomialCurve {
        &self.curve
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Nonzero pieces of `A²`.
    pub fn pieces2(&self) -> &BTreeMap<u32, GradedPiece> {
        &self.pieces2
    }

    pub fn piece2(&self, d: u32) -> Option<&GradedPiece> {
        self.pieces2.get(&d)
    }

    pub fn piece3(&self, d: u32) -> Option<&GradedPiece> {
        self.pieces3.get(&d)
    }

    /// Closed subspace of `A²_d`, if nonzero.
    pub fn closed(&self, d: u32) -> Option<&Subspace> {
        self.closed.get(&d)
    }

    pub fn closed_degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.closed.keys().copied()
    }

    /// Canonical `A²_d` coordinates of a quasi-homogeneous 2-form of
    /// quasi-degree `d`, after checking that its restriction is closed.
    /// Returns `None` when the class is zero.
    pub(crate) fn class_coords(&self, d: u32, form: &DifferentialForm) -> Result<Option<Vec<Rational>>> {
        if d > self.bound {
            // beyond the certified bound: compute on demand
            let p2 = GradedPiece::new(&self.curve, 2, d);
            let coords = p2.quotient_coords(form)?;
            if coords.iter().all(Zero::is_zero) {
                return Ok(None);
            }
            let p3 = GradedPiece::new(&self.curve, 3, d);
            if p3.quotient_coords(&form.ext_der())?.iter().any(|c| !c.is_zero()) {
                return Err(Error::NotClosed { qdeg: d });
            }
            return Err(Error::OutsideBasis { qdeg: d, bound: self.bound });
        }
        let Some(p2) = self.pieces2.get(&d) else {
            return Ok(None);
        };
        let coords = p2.quotient_coords(form)?;
        if coords.iter().all(Zero::is_zero) {
            return Ok(None);
        }
        if let Some(p3) = self.pieces3.get(&d) {
            if p3.quotient_coords(&form.ext_der())?.iter().any(|c| !c.is_zero()) {
                return Err(Error::NotClosed { qdeg: d });
            }
        }
        Ok(Some(coords))
    }

    /// Brings a 2-form into the space's ambient dimension. Forms in another
    /// ambient dimension are first cut down to the curve coordinates: every
    /// term involving an off-curve coordinate has zero restriction.
    pub(crate) fn normalize_ambient(&self, form: &DifferentialForm) -> Result<DifferentialForm> {
        let m = self.curve.ambient();
        if form.dim() == m {
            return Ok(form.clone());
        }
        let s = self.curve.s();
        if form.dim() < s {
            return Err(Error::DimensionMismatch { expected: m, found: form.dim() });
        }
        let mut out = DifferentialForm::zero(m, form.degree());
        for (idx, mo, c) in form.monomial_terms() {
            if idx.iter().any(|&i| i >= s) || mo.involves_from(s) {
                continue;
            }
            let mut exps = mo.exponents()[..s].to_vec();
            exps.resize(m, 0);
            out.add_term(
                idx.clone(),
                crate::algebra::Polynomial::term(crate::algebra::Monomial::new(exps), c.clone()),
            );
        }
        Ok(out)
    }
}

/// Kernel of the map induced by `d` from `A²_d` to `A³_d`.
fn closed_kernel(p2: &GradedPiece, p3: &GradedPiece) -> Result<Subspace> {
    let n = p2.quotient_dim();
    let reps = p2.representatives();
    if p3.quotient_dim() == 0 {
        return Ok(Subspace::span(n, (0..n).map(|i| super::unit_vector(n, i))));
    }
    let mut cols = Vec::with_capacity(n);
    for r in &reps {
        cols.push(p3.quotient_coords(&r.ext_der())?);
    }
    let m = Matrix::from_rows(n, (0..p3.quotient_dim()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect());
    Ok(Subspace::span(n, m.rref().kernel))
}

/// One basis element of the algebraic restrictions of closed 2-forms.
#[derive(Clone, PartialEq, Debug)]
pub struct BasisElement {
    pub label: String,
    pub qdeg: u32,
    pub representative: DifferentialForm,
    /// Canonical `A²_qdeg` coordinates of the class.
    pub class: Vec<Rational>,
}

/// A basis of the algebraic restrictions of closed 2-forms, graded by
/// quasi-degree, together with the machinery to project forms onto it.
#[derive(Clone, Debug)]
pub struct RestrictionBasis {
    space: RestrictionSpace,
    elements: Vec<BasisElement>,
    /// For each degree: indices of its elements and the matrix whose columns
    /// are their classes.
    by_degree: BTreeMap<u32, (Vec<usize>, QMatrix)>,
    fingerprint: u64,
}

impl RestrictionBasis {
    /// Canonical basis: echelon vectors of each closed piece, labelled
    /// `a{d}` or `a{d}.{i}`.
    pub fn canonical(space: RestrictionSpace) -> Result<Self> {
        let mut elems = Vec::new();
        for (&d, closed) in &space.closed {
            let p2 = &space.pieces2[&d];
            let basis = closed.basis();
            let many = basis.len() > 1;
            for (i, v) in basis.into_iter().enumerate() {
                let label = if many { format!("a{}.{}", d, i + 1) } else { format!("a{}", d) };
                elems.push(BasisElement { label, qdeg: d, representative: p2.lift(&v), class: v });
            }
        }
        Self::from_elements(space, elems)
    }

    /// Basis given by labelled closed 2-forms; each must be quasi-homogeneous
    /// and together they must form a basis degree by degree.
    pub fn with_representatives(space: RestrictionSpace, reps: Vec<(String, DifferentialForm)>) -> Result<Self> {
        let mut elems = Vec::new();
        for (label, form) in reps {
            let form = space.normalize_ambient(&form)?;
            let qdeg = form
                .quasi_degree(space.curve.weights())
                .ok_or_else(|| Error::Input(format!("representative of {} is not quasi-homogeneous", label)))?;
            let class = space
                .class_coords(qdeg, &form)?
                .ok_or_else(|| Error::Input(format!("representative of {} has zero restriction", label)))?;
            elems.push(BasisElement { label, qdeg, representative: form, class });
        }
        elems.sort_by_key(|e| e.qdeg);
        for (&d, closed) in &space.closed {
            let count = elems.iter().filter(|e| e.qdeg == d).count();
            if count != closed.rank() {
                return Err(Error::Input(format!(
                    "quasi-degree {} needs {} representatives, got {}",
                    d,
                    closed.rank(),
                    count
                )));
            }
        }
        if let Some(e) = elems.iter().find(|e| !space.closed.contains_key(&e.qdeg)) {
            return Err(Error::Input(format!("no closed restrictions in quasi-degree {} ({})", e.qdeg, e.label)));
        }
        Self::from_elements(space, elems)
    }

    fn from_elements(space: RestrictionSpace, elements: Vec<BasisElement>) -> Result<Self> {
        let mut by_degree: BTreeMap<u32, (Vec<usize>, QMatrix)> = BTreeMap::new();
        for &d in space.closed.keys() {
            let idx: Vec<usize> = (0..elements.len()).filter(|&i| elements[i].qdeg == d).collect();
            let n = space.pieces2[&d].quotient_dim();
            let m = Matrix::from_rows(
                idx.len(),
                (0..n).map(|r| idx.iter().map(|&i| elements[i].class[r].clone()).collect()).collect(),
            );
            if m.rank() != idx.len() {
                return Err(Error::Input(format!("representatives in quasi-degree {} are linearly dependent", d)));
            }
            by_degree.insert(d, (idx, m));
        }
        let fingerprint = fingerprint(&space.curve, &elements);
        Ok(RestrictionBasis { space, elements, by_degree, fingerprint })
    }

    pub fn space(&self) -> &RestrictionSpace {
        &self.space
    }

    pub fn curve(&self) -> &MonomialCurve {
        &self.space.curve
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Top quasi-degree of the basis.
    pub fn k_f(&self) -> u32 {
        self.elements.iter().map(|e| e.qdeg).max().unwrap_or(0)
    }

    pub fn min_qdeg(&self) -> u32 {
        self.elements.iter().map(|e| e.qdeg).min().unwrap_or(0)
    }

    pub fn qdegs(&self) -> Vec<u32> {
        self.elements.iter().map(|e| e.qdeg).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|e| e.label.as_str()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn zero(&self) -> AlgRestriction {
        AlgRestriction { fingerprint: self.fingerprint, coords: vec![Rational::zero(); self.dim()] }
    }

    /// The restriction with the given coordinates.
    pub fn restriction(&self, coords: Vec<Rational>) -> Result<AlgRestriction> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: coords.len() });
        }
        Ok(AlgRestriction { fingerprint: self.fingerprint, coords })
    }

    /// `Σ c · a_label`.
    pub fn combination(&self, terms: &[(&str, Rational)]) -> Result<AlgRestriction> {
        let mut a = self.zero();
        for (label, c) in terms {
            let i = self.index_of(label)?;
            a.coords[i] += c;
        }
        Ok(a)
    }

    pub fn element(&self, label: &str) -> Result<AlgRestriction> {
        self.combination(&[(label, Rational::from_integer(1.into()))])
    }

    fn check(&self, a: &AlgRestriction) -> Result<()> {
        if a.fingerprint != self.fingerprint {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    /// A closed 2-form representing `a`.
    pub fn representative(&self, a: &AlgRestriction) -> Result<DifferentialForm> {
        self.check(a)?;
        let m = self.curve().ambient();
        let mut out = DifferentialForm::zero(m, 2);
        for (e, c) in self.elements.iter().zip(&a.coords) {
            if !c.is_zero() {
                out = out.add(&e.representative.scale(c))?;
            }
        }
        Ok(out)
    }

    /// Coordinates of `[ω]_f`.
    pub fn project(&self, form: &DifferentialForm) -> Result<AlgRestriction> {
        if form.degree() != 2 {
            return Err(Error::Input(format!("expected a 2-form, got a {}-form", form.degree())));
        }
        let form = self.space.normalize_ambient(form)?;
        let mut a = self.zero();
        for (d, part) in form.graded_parts(self.curve().weights()) {
            let Some(class) = self.space.class_coords(d, &part)? else {
                continue;
            };
            let Some((idx, m)) = self.by_degree.get(&d) else {
                // a closed class in a degree without closed restrictions
                // cannot occur; `class_coords` has already rejected it
                return Err(Error::NotClosed { qdeg: d });
            };
            let x = m.solve(&class).ok_or(Error::NotClosed { qdeg: d })?;
            for (&i, c) in idx.iter().zip(x) {
                a.coords[i] = c;
            }
        }
        Ok(a)
    }

    /// Zeroes all coordinates outside quasi-degree `d`.
    pub fn graded_part(&self, a: &AlgRestriction, d: u32) -> Result<AlgRestriction> {
        self.check(a)?;
        let coords = self
            .elements
            .iter()
            .zip(&a.coords)
            .map(|(e, c)| if e.qdeg == d { c.clone() } else { Rational::zero() })
            .collect();
        Ok(AlgRestriction { fingerprint: self.fingerprint, coords })
    }

    /// Quasi-degrees with a nonzero graded part, ascending.
    pub fn support(&self, a: &AlgRestriction) -> Result<Vec<u32>> {
        self.check(a)?;
        let mut out: Vec<u32> =
            self.elements.iter().zip(&a.coords).filter(|(_, c)| !c.is_zero()).map(|(e, _)| e.qdeg).collect();
        out.dedup();
        Ok(out)
    }
}

fn fingerprint(curve: &MonomialCurve, elements: &[BasisElement]) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |bytes: &[u8]| {
        for b in bytes {
            h ^= *b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for l in curve.lambdas() {
        feed(&l.to_le_bytes());
    }
    feed(&(curve.ambient() as u64).to_le_bytes());
    for e in elements {
        feed(e.label.as_bytes());
        feed(&e.qdeg.to_le_bytes());
        feed(format!("{}", e.representative).as_bytes());
    }
    h
}

/// Coordinates of an algebraic restriction in a [`RestrictionBasis`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgRestriction {
    fingerprint: u64,
    coords: Vec<Rational>,
}

impl AlgRestriction {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn basis_fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &AlgRestriction) -> Result<AlgRestriction> {
        if self.fingerprint != o.fingerprint {
            return Err(Error::BasisMismatch);
        }
        Ok(AlgRestriction {
            fingerprint: self.fingerprint,
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &AlgRestriction) -> Result<AlgRestriction> {
        self.add(&o.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> AlgRestriction {
        AlgRestriction { fingerprint: self.fingerprint, coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

/// Minimal quasi-degree `r` with `a^{(r)} ≠ 0` and that part; `None` for 0.
pub fn min_qdeg_part(basis: &RestrictionBasis, a: &AlgRestriction) -> Result<Option<(u32, AlgRestriction)>> {
    let Some(&r) = basis.support(a)?.first() else {
        return Ok(None);
    };
    Ok(Some((r, basis.graded_part(a, r)?)))
}

/// Canonical basis with the default (or given) quasi-degree bound.
pub fn closed2_restriction_basis(curve: &MonomialCurve, max_qdeg: Option<u32>) -> Result<RestrictionBasis> {
    RestrictionBasis::canonical(RestrictionSpace::new(curve, max_qdeg)?)
}
