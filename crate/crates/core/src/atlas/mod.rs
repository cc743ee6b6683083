//! Normal-form classification tables and their verification.
//!
//! An entry lists an algebraic restriction with parameters, the expected
//! invariants and one or more explicit curve templates in `R^{2n}`. Verifying
//! an entry at a parameter sample rebuilds the local diffeomorphism `F` with
//! `F ∘ g = template` and checks that `F^*ω_0` restricts to the listed class.

mod expr;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

pub use expr::{parse_sum, Atom, ParamExpr, Sample};

use crate::algebra::{Monomial, Polynomial, Rational, Subspace, UniPoly};
use crate::forms::{DifferentialForm, PolyMap};
use crate::invariants::{invariants, pmqd_compare, representable_by_symplectic, Order, PmqdVerdict, TangencyOrder};
use crate::restriction::{min_qdeg_part, classical_representatives, AlgRestriction, MonomialCurve, RestrictionBasis, RestrictionSpace};
use crate::symmetry::is_modulus;
use crate::{Error, Result};

/// `param ∉ excluded`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constraint {
    pub param: String,
    pub excluded: Vec<Rational>,
}

impl Constraint {
    pub fn holds(&self, sample: &Sample) -> bool {
        sample.get(&self.param).is_none_or(|v| !self.excluded.contains(v))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.excluded.iter().map(|v| v.to_string()).collect();
        write!(f, "{} != {}", self.param, vals.join(","))
    }
}

/// Lagrangian tangency order as listed. For rows with index of isotropy 0 the
/// algebraic formula does not apply and the listed value is taken as given.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpectedTangency {
    Order(Order),
    Asserted(u32),
}

impl fmt::Display for ExpectedTangency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedTangency::Order(o) => write!(f, "{}", o),
            ExpectedTangency::Asserted(n) => write!(f, "{}", n),
        }
    }
}

/// `restriction param = factor · template param`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamLink {
    pub restriction: String,
    pub factor: Rational,
    pub template: String,
}

/// A curve `t ↦ (P_1(t), …, P_{2n}(t))` whose coefficients depend on the
/// template parameters.
#[derive(Clone, PartialEq, Debug)]
pub struct Template {
    pub label: String,
    pub n: usize,
    /// `components[i]` is `Σ coeff · t^k`; missing trailing components are 0.
    pub components: Vec<Vec<(ParamExpr, u32)>>,
    /// Parameters not listed here have the same value in both.
    pub links: Vec<ParamLink>,
    /// Stored identification map `F` in `2n` variables with coefficients in
    /// the template parameters; empty when not stored.
    pub map: Vec<Vec<(ParamExpr, Monomial)>>,
}

/// Parses a parameterized polynomial like `"x2 + c1*x4"` in `m` variables.
pub fn parse_param_poly(text: &str, m: usize) -> Result<Vec<(ParamExpr, Monomial)>> {
    let mut out = Vec::new();
    for (c, atom) in parse_sum(text)? {
        let Some(Atom::X(v)) = atom else {
            return Err(Error::Input(format!("map component {:?} must be a sum of multiples of monomials in x", text)));
        };
        let mut e = vec![0u32; m];
        for (i, k) in v {
            if i >= m {
                return Err(Error::Input(format!("variable x{} out of range in {:?}", i + 1, text)));
            }
            e[i] = k;
        }
        out.push((c, Monomial::new(e)));
    }
    Ok(out)
}

/// Prints a parameterized polynomial in the syntax of [`parse_param_poly`].
pub fn param_poly_string(p: &[(ParamExpr, Monomial)]) -> String {
    let mut s = String::new();
    for (k, (c, m)) in p.iter().enumerate() {
        let atom = Atom::X(m.exponents().iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (i, *e)).collect());
        let cs = c.to_string();
        let term = match cs.as_str() {
            "1" => atom.to_string(),
            "-1" => format!("-{}", atom),
            _ if c.terms().count() > 1 => format!("({})*{}", cs, atom),
            _ => format!("{}*{}", cs, atom),
        };
        match (k, term.strip_prefix('-')) {
            (0, _) => s.push_str(&term),
            (_, Some(rest)) => s.push_str(&format!(" - {}", rest)),
            (_, None) => s.push_str(&format!(" + {}", term)),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl Template {
    /// Builds a template from component strings like `"t^5 + c1*t^7"` and
    /// links like `("c1", "-c2")`.
    pub fn parse(label: &str, n: usize, components: &[&str], links: &[(&str, &str)]) -> Result<Template> {
        if components.len() > 2 * n {
            return Err(Error::Input(format!("template {} has {} components for n = {}", label, components.len(), n)));
        }
        let mut comps = Vec::new();
        for c in components {
            let mut terms = Vec::new();
            for (coef, atom) in parse_sum(c)? {
                match atom {
                    Some(Atom::T(k)) if k > 0 => terms.push((coef, k)),
                    _ => return Err(Error::Input(format!("template component {:?} must be a sum of multiples of t^k, k > 0", c))),
                }
            }
            comps.push(terms);
        }
        let mut out = Vec::new();
        for (r, e) in links {
            out.push(parse_link(r, e)?);
        }
        Ok(Template { label: label.to_string(), n, components: comps, links: out, map: Vec::new() })
    }

    /// Attaches a stored map given as component strings.
    pub fn with_map(mut self, components: &[&str]) -> Result<Template> {
        if components.len() != 2 * self.n {
            return Err(Error::Input(format!("map of template {} needs {} components", self.label, 2 * self.n)));
        }
        self.map = components.iter().map(|c| parse_param_poly(c, 2 * self.n)).collect::<Result<_>>()?;
        Ok(self)
    }

    /// The stored map at template parameters.
    pub fn map_at(&self, template_sample: &Sample) -> Result<PolyMap> {
        let m = 2 * self.n;
        let comps = self
            .map
            .iter()
            .map(|c| {
                let mut p = Polynomial::zero(m);
                for (coef, mono) in c {
                    p.add_term(mono.clone(), coef.eval(template_sample)?);
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(m, comps)
    }

    /// Template parameter values for a sample of the restriction parameters.
    pub fn template_sample(&self, sample: &Sample) -> Result<Sample> {
        let mut out = sample.clone();
        for l in &self.links {
            out.remove(&l.restriction);
        }
        for l in &self.links {
            let v = sample.get(&l.restriction).ok_or_else(|| Error::Input(format!("no value for parameter {}", l.restriction)))?;
            out.insert(l.template.clone(), v / &l.factor);
        }
        Ok(out)
    }

    /// Components evaluated at template parameters, padded to `2n`.
    pub fn curve(&self, template_sample: &Sample) -> Result<Vec<UniPoly>> {
        let mut out = Vec::with_capacity(2 * self.n);
        for c in &self.components {
            let mut p = UniPoly::zero();
            for (coef, k) in c {
                p = &p + &UniPoly::monomial(coef.eval(template_sample)?, *k);
            }
            out.push(p);
        }
        out.resize(2 * self.n, UniPoly::zero());
        Ok(out)
    }
}

fn parse_link(restriction: &str, expr: &str) -> Result<ParamLink> {
    let e = ParamExpr::parse(expr)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((ps, q)), None) if ps.len() == 1 => {
            Ok(ParamLink { restriction: restriction.to_string(), factor: q.clone(), template: ps[0].clone() })
        }
        _ => Err(Error::Input(format!("parameter link {} = {:?} must be a multiple of one parameter", restriction, expr))),
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct NormalFormEntry {
    pub semigroup: Vec<u32>,
    pub row: u32,
    /// `Σ coeff · label`.
    pub restriction: Vec<(ParamExpr, String)>,
    /// Continuous parameters.
    pub params: Vec<String>,
    /// Parameters ranging over `{1, -1}` (the `±` of the tables).
    pub signs: Vec<String>,
    pub constraints: Vec<Constraint>,
    /// Listed as realizable in `R^4`, with the constraints that apply there.
    pub n2: Option<Vec<Constraint>>,
    /// Smallest `n` for which the entry is listed.
    pub min_n: usize,
    pub multiplicity: usize,
    pub isotropy: Order,
    pub tangency: ExpectedTangency,
    pub moduli: Vec<String>,
    pub templates: Vec<Template>,
}

impl NormalFormEntry {
    /// Parses the restriction from a string like `"a11+ - 3/2*a11- + c*a12"`.
    pub fn parse_restriction(text: &str) -> Result<Vec<(ParamExpr, String)>> {
        parse_sum(text)?
            .into_iter()
            .map(|(c, a)| match a {
                Some(Atom::Label(l)) => Ok((c, l)),
                _ => Err(Error::Input(format!("restriction {:?} must be a combination of basis labels", text))),
            })
            .collect()
    }

    pub fn all_params(&self) -> Vec<String> {
        let mut v = self.params.clone();
        v.extend(self.signs.iter().cloned());
        v
    }

    pub fn restriction_string(&self) -> String {
        let mut s = String::new();
        for (k, (c, l)) in self.restriction.iter().enumerate() {
            let cs = c.to_string();
            let term = match cs.as_str() {
                "1" => l.clone(),
                "-1" => format!("-{}", l),
                _ if c.terms().count() > 1 => format!("({})*{}", cs, l),
                _ => format!("{}*{}", cs, l),
            };
            if k > 0 {
                match term.strip_prefix('-') {
                    Some(rest) => s.push_str(&format!(" - {}", rest)),
                    None => s.push_str(&format!(" + {}", term)),
                }
            } else {
                s.push_str(&term);
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// True when the sample satisfies the general constraints, and the
    /// `R^4` ones when `n = 2`.
    pub fn admits(&self, sample: &Sample, n: usize) -> bool {
        let general = self.constraints.iter().all(|c| c.holds(sample));
        let signs = self.signs.iter().all(|s| sample.get(s).is_some_and(|v| v.abs().is_one()));
        let small = n > 2 || self.n2.as_ref().is_some_and(|cs| cs.iter().all(|c| c.holds(sample)));
        general && signs && small
    }

    /// The restriction at a sample.
    pub fn restriction_at(&self, basis: &RestrictionBasis, sample: &Sample) -> Result<AlgRestriction> {
        let mut a = basis.zero();
        for (c, l) in &self.restriction {
            a = a.add(&basis.element(l)?.scale(&c.eval(sample)?))?;
        }
        Ok(a)
    }

    /// `∂a/∂param` at a sample.
    pub fn direction(&self, basis: &RestrictionBasis, param: &str, sample: &Sample) -> Result<AlgRestriction> {
        let mut a = basis.zero();
        for (c, l) in &self.restriction {
            a = a.add(&basis.element(l)?.scale(&c.derivative(param).eval(sample)?))?;
        }
        Ok(a)
    }
}

/// The basis used for the tables: classical representatives where known.
pub fn atlas_basis(semigroup: &[u32]) -> Result<RestrictionBasis> {
    let curve = MonomialCurve::new(semigroup, semigroup.len())?;
    let space = RestrictionSpace::new(&curve, None)?;
    match classical_representatives(&curve) {
        Some(reps) => RestrictionBasis::with_representatives(space, reps),
        None => RestrictionBasis::canonical(space),
    }
}

/// The template curve in `R^{2n}` at a restriction-parameter sample.
pub fn normal_form_curve(template: &Template, sample: &Sample) -> Result<Vec<UniPoly>> {
    template.curve(&template.template_sample(sample)?)
}

/// A polynomial map `F` with `F ∘ g = target` for `g = (t^{λ_1}, …, t^{λ_s}, 0, …)`
/// in `R^m`. Each `t^k` is replaced by its graded-lex minimal monomial lift;
/// components whose linear part depends on the earlier ones receive the next
/// unused coordinate off the curve.
pub fn identification_map(semigroup: &[u32], target: &[UniPoly]) -> Result<PolyMap> {
    let m = target.len();
    let curve = MonomialCurve::new(semigroup, m)?;
    let s = curve.s();
    let mut comps = Vec::with_capacity(m);
    for p in target {
        let mut q = Polynomial::zero(m);
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let lifts = curve.monomial_lifts(k as u32);
            let mono = lifts
                .first()
                .ok_or_else(|| Error::Input(format!("t^{} is not in the semigroup {:?}", k, semigroup)))?;
            q.add_term(mono.clone(), c.clone());
        }
        comps.push(q);
    }
    let mut span = Subspace::new(m);
    let mut next = s;
    for q in comps.iter_mut() {
        let lin = |q: &Polynomial| -> Vec<Rational> {
            (0..m).map(|j| q.coeff(&crate::algebra::Monomial::var(m, j))).collect()
        };
        if !span.insert(&lin(q)) {
            if next >= m {
                return Err(Error::Input("template does not determine a local diffeomorphism".into()));
            }
            *q = &*q + &Polynomial::var(m, next);
            next += 1;
            span.insert(&lin(q));
        }
    }
    PolyMap::new(m, comps)
}

/// Symbolic version of [`identification_map`] for a template: `t^k` becomes
/// its graded-lex minimal lift, and a component receives the next unused
/// coordinate off the curve unless it has a linear term on a curve
/// coordinate not yet claimed whose coefficient cannot vanish (a rational
/// times sign parameters).
pub fn derive_map(semigroup: &[u32], template: &Template, signs: &[String]) -> Result<Vec<Vec<(ParamExpr, Monomial)>>> {
    let m = 2 * template.n;
    let curve = MonomialCurve::new(semigroup, m)?;
    let s = curve.s();
    let never_zero = |c: &ParamExpr| {
        let mut it = c.terms();
        matches!((it.next(), it.next()), (Some((ps, _)), None) if ps.iter().all(|p| signs.contains(p)))
    };
    let mut claimed = vec![false; s];
    let mut next = s;
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let terms = template.components.get(k).cloned().unwrap_or_default();
        let mut comp: Vec<(ParamExpr, Monomial)> = Vec::new();
        let mut claim = None;
        for (c, p) in &terms {
            let mono = curve
                .monomial_lifts(*p)
                .into_iter()
                .next()
                .ok_or_else(|| Error::Input(format!("t^{} is not in the semigroup {:?}", p, semigroup)))?;
            if mono.degree() == 1 && claim.is_none() && never_zero(c) {
                let i = mono.exponents().iter().position(|e| *e == 1).expect("linear");
                if !claimed[i] {
                    claim = Some(i);
                }
            }
            comp.push((c.clone(), mono));
        }
        match claim {
            Some(i) => claimed[i] = true,
            None if next < m => {
                comp.push((ParamExpr::constant(Rational::one()), Monomial::var(m, next)));
                next += 1;
            }
            None => {}
        }
        out.push(comp);
    }
    Ok(out)
}

/// `Σ dx_{2i-1} ∧ dx_{2i}` on `R^{2n}`.
pub fn standard_symplectic(n: usize) -> DifferentialForm {
    let m = 2 * n;
    let mut w = DifferentialForm::zero(m, 2);
    for i in 0..n {
        w.add_term(vec![2 * i, 2 * i + 1], Polynomial::one(m));
    }
    w
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Check {
        Check { name: name.to_string(), passed, detail }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct EntryReport {
    pub semigroup: Vec<u32>,
    pub row: u32,
    pub template: String,
    pub sample: Sample,
    pub map: Option<PolyMap>,
    pub checks: Vec<Check>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Verifies one template of an entry at a restriction-parameter sample.
pub fn verify_entry(basis: &RestrictionBasis, entry: &NormalFormEntry, template: usize, sample: &Sample) -> Result<EntryReport> {
    let tpl = entry
        .templates
        .get(template)
        .ok_or_else(|| Error::Input(format!("row {} has no template {}", entry.row, template)))?;
    if basis.curve().lambdas() != entry.semigroup.as_slice() {
        return Err(Error::Input("basis and entry belong to different semigroups".into()));
    }
    if !entry.admits(sample, tpl.n) {
        return Err(Error::Input(format!("sample violates the constraints of row {}", entry.row)));
    }
    let mut checks = Vec::new();
    let a = entry.restriction_at(basis, sample)?;
    let target = normal_form_curve(tpl, sample)?;

    let map = if tpl.map.is_empty() {
        identification_map(&entry.semigroup, &target)
    } else {
        tpl.map_at(&tpl.template_sample(sample)?)
    };
    let mut out_map = None;
    match map {
        Err(e) => checks.push(Check::new("diffeomorphism", false, e.to_string())),
        Ok(f) => {
            let g = MonomialCurve::new(&entry.semigroup, 2 * tpl.n)?.images();
            let composed = f.components().iter().map(|c| c.substitute(&g)).collect::<Result<Vec<_>>>()?;
            checks.push(Check::new("F o g = template", composed == target, format!("F = {}", f)));
            checks.push(Check::new("invertible linear part", f.has_invertible_linear_part(), String::new()));
            let pulled = standard_symplectic(tpl.n).pullback(&f)?;
            let got = basis.project(&pulled)?;
            checks.push(Check::new(
                "restriction of F^*w0",
                got == a,
                format!("got {:?}", got.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            ));
            out_map = Some(f);
        }
    }

    let rep = representable_by_symplectic(basis, &a, tpl.n)?;
    checks.push(Check::new("symplectic representative", rep, format!("n = {}", tpl.n)));

    let inv = invariants(basis, &a)?;
    checks.push(Check::new(
        "multiplicity",
        inv.multiplicity == entry.multiplicity,
        format!("{} (expected {})", inv.multiplicity, entry.multiplicity),
    ));
    checks.push(Check::new(
        "index of isotropy",
        inv.isotropy == entry.isotropy,
        format!("{} (expected {})", inv.isotropy, entry.isotropy),
    ));
    let lt_ok = match (entry.tangency, inv.tangency) {
        (ExpectedTangency::Asserted(_), TangencyOrder::NotApplicable) => true,
        (ExpectedTangency::Order(Order::Finite(n)), TangencyOrder::Finite(m)) => n == m,
        (ExpectedTangency::Order(Order::Infinite), TangencyOrder::Infinite) => true,
        _ => false,
    };
    checks.push(Check::new("tangency order", lt_ok, format!("{} (expected {})", inv.tangency, entry.tangency)));

    for p in &entry.moduli {
        let dir = entry.direction(basis, p, sample)?;
        let m = !dir.is_zero() && is_modulus(basis, &a, &dir)?;
        checks.push(Check::new(&format!("modulus {}", p), m, String::new()));
    }

    Ok(EntryReport {
        semigroup: entry.semigroup.clone(),
        row: entry.row,
        template: tpl.label.clone(),
        sample: sample.clone(),
        map: out_map,
        checks,
    })
}

/// Sample values for continuous parameters.
fn sample_values() -> Vec<Rational> {
    [(1, 1), (2, 1), (-1, 2), (3, 1), (-7, 5), (1, 3), (-2, 1), (5, 2), (-8, 5), (7, 3), (-3, 1), (2, 7)]
        .iter()
        .map(|&(p, q)| crate::rat(p, q))
        .collect()
}

/// Deterministic admissible samples for an entry in `R^{2n}`; sign
/// parameters alternate so both signs occur.
pub fn default_samples(entry: &NormalFormEntry, n: usize, count: usize) -> Vec<Sample> {
    samples_from(entry, n, count, 0)
}

/// As [`default_samples`], starting the walk through the value list at
/// `start`.
pub fn samples_from(entry: &NormalFormEntry, n: usize, count: usize, start: u64) -> Vec<Sample> {
    let vals = sample_values();
    let mut out = Vec::new();
    let mut k = (start % vals.len() as u64) as usize;
    let stop = k + 64;
    while out.len() < count && k < stop {
        let mut s = Sample::new();
        for (j, p) in entry.params.iter().enumerate() {
            s.insert(p.clone(), vals[(k + 3 * j) % vals.len()].clone());
        }
        for (j, p) in entry.signs.iter().enumerate() {
            let v = if (k + j) % 2 == 0 { Rational::one() } else { -Rational::one() };
            s.insert(p.clone(), v);
        }
        if entry.admits(&s, n) && !out.contains(&s) {
            out.push(s);
        }
        k += 1;
    }
    out
}

/// Parameters that the rank condition forces to be nonzero in `R^4`: those
/// whose vanishing (at an otherwise admissible sample) leaves no symplectic
/// representative on `R^4`. `None` if the entry has no representative on
/// `R^4` at the first admissible sample.
pub fn n2_forced_nonzero(basis: &RestrictionBasis, entry: &NormalFormEntry) -> Result<Option<Vec<String>>> {
    let Some(base) = default_samples(entry, 3, 1).pop() else {
        return Ok(None);
    };
    if !representable_by_symplectic(basis, &entry.restriction_at(basis, &base)?, 2)? {
        return Ok(None);
    }
    let mut out = Vec::new();
    for p in &entry.params {
        let mut s = base.clone();
        s.insert(p.clone(), Rational::zero());
        if !representable_by_symplectic(basis, &entry.restriction_at(basis, &s)?, 2)? {
            out.push(p.clone());
        }
    }
    Ok(Some(out))
}

/// Constraints in `R^4` recovered from the rank test: the general
/// constraints plus `p ≠ 0` for every parameter the rank test forces
/// nonzero, merged per parameter with values sorted. `None` when the entry
/// has no representative on `R^4`.
pub fn derived_n2_constraints(basis: &RestrictionBasis, entry: &NormalFormEntry) -> Result<Option<Vec<Constraint>>> {
    let Some(forced) = n2_forced_nonzero(basis, entry)? else {
        return Ok(None);
    };
    let mut cs = entry.constraints.clone();
    cs.extend(forced.into_iter().map(|p| Constraint { param: p, excluded: vec![Rational::zero()] }));
    Ok(Some(normalize_constraints(&cs)))
}

/// Merges constraints per parameter, sorting parameters and values.
pub fn normalize_constraints(cs: &[Constraint]) -> Vec<Constraint> {
    let mut by: BTreeMap<String, Vec<Rational>> = BTreeMap::new();
    for c in cs {
        by.entry(c.param.clone()).or_default().extend(c.excluded.iter().cloned());
    }
    by.into_iter()
        .map(|(param, mut excluded)| {
            excluded.sort();
            excluded.dedup();
            Constraint { param, excluded }
        })
        .collect()
}

/// How two restrictions were told apart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    Multiplicity(usize, usize),
    Isotropy(Order, Order),
    Tangency(TangencyOrder, TangencyOrder),
    /// Parts of minimal quasi-degree are not proportional.
    Pmqd,
    /// Parts of minimal quasi-degree `r` (even) are proportional with a
    /// negative constant, while a diffeomorphism multiplies them by `c^r > 0`.
    PmqdSign(u32, Rational),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Multiplicity(a, b) => write!(f, "multiplicity {} vs {}", a, b),
            Witness::Isotropy(a, b) => write!(f, "index of isotropy {} vs {}", a, b),
            Witness::Tangency(a, b) => write!(f, "tangency order {} vs {}", a, b),
            Witness::Pmqd => f.write_str("minimal quasi-degree parts not proportional"),
            Witness::PmqdSign(r, c) => write!(f, "minimal parts in degree {} proportional with factor {} < 0", r, c),
        }
    }
}

/// One sampled member of an entry.
#[derive(Clone, Debug)]
pub struct SampledClass {
    pub row: u32,
    pub sample: Sample,
    pub restriction: AlgRestriction,
    pub multiplicity: usize,
    pub isotropy: Order,
    pub tangency: TangencyOrder,
}

#[derive(Clone, Debug)]
pub struct PairOutcome {
    pub rows: (u32, u32),
    pub samples: (Sample, Sample),
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default)]
pub struct DistinctnessReport {
    pub pairs: Vec<PairOutcome>,
}

impl DistinctnessReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.witness.is_some())
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairOutcome> {
        self.pairs.iter().filter(|p| p.witness.is_none())
    }
}

/// A witness that `x` and `y` lie in different orbits, if one is found.
pub fn distinguish(basis: &RestrictionBasis, x: &SampledClass, y: &SampledClass) -> Result<Option<Witness>> {
    if x.multiplicity != y.multiplicity {
        return Ok(Some(Witness::Multiplicity(x.multiplicity, y.multiplicity)));
    }
    if x.isotropy != y.isotropy {
        return Ok(Some(Witness::Isotropy(x.isotropy, y.isotropy)));
    }
    if x.tangency != y.tangency && x.tangency != TangencyOrder::NotApplicable {
        return Ok(Some(Witness::Tangency(x.tangency, y.tangency)));
    }
    Ok(match pmqd_compare(basis, &x.restriction, &y.restriction)? {
        PmqdVerdict::NotProportional | PmqdVerdict::OneZero => Some(Witness::Pmqd),
        PmqdVerdict::Proportional(c) => {
            let r = min_qdeg_part(basis, &x.restriction)?.map(|p| p.0).unwrap_or(0);
            (r % 2 == 0 && c.is_negative()).then_some(Witness::PmqdSign(r, c))
        }
        PmqdVerdict::BothZero => None,
    })
}

pub fn sampled_class(basis: &RestrictionBasis, entry: &NormalFormEntry, sample: &Sample) -> Result<SampledClass> {
    let a = entry.restriction_at(basis, sample)?;
    let inv = invariants(basis, &a)?;
    Ok(SampledClass {
        row: entry.row,
        sample: sample.clone(),
        restriction: a,
        multiplicity: inv.multiplicity,
        isotropy: inv.isotropy,
        tangency: inv.tangency,
    })
}

/// Checks that sampled members of different entries are told apart by the
/// invariants or by the parts of minimal quasi-degree.
pub fn verify_pairwise_distinct(
    basis: &RestrictionBasis,
    entries: &[NormalFormEntry],
    samples_per_entry: usize,
) -> Result<DistinctnessReport> {
    let mut classes: Vec<SampledClass> = Vec::new();
    for e in entries {
        let n = e.min_n.max(3);
        for s in default_samples(e, n, samples_per_entry) {
            classes.push(sampled_class(basis, e, &s)?);
        }
    }
    let mut report = DistinctnessReport::default();
    let mut cache: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if classes[i].row == classes[j].row || cache.contains_key(&(i, j)) {
                continue;
            }
            cache.insert((i, j), ());
            let w = distinguish(basis, &classes[i], &classes[j])?;
            report.pairs.push(PairOutcome {
                rows: (classes[i].row, classes[j].row),
                samples: (classes[i].sample.clone(), classes[j].sample.clone()),
                witness: w,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn row1() -> NormalFormEntry {
        NormalFormEntry {
            semigroup: vec![4, 5, 6, 7],
            row: 1,
            restriction: NormalFormEntry::parse_restriction("a9 + c1*a11- + c2*a13+").unwrap(),
            params: vec!["c1".into(), "c2".into()],
            signs: vec![],
            constraints: vec![],
            n2: Some(vec![Constraint { param: "c2".into(), excluded: vec![int(0)] }]),
            min_n: 2,
            multiplicity: 2,
            isotropy: Order::Finite(0),
            tangency: ExpectedTangency::Asserted(5),
            moduli: vec!["c1".into(), "c2".into()],
            templates: vec![
                Template::parse("R4", 2, &["t^4", "t^5 + c1*t^7", "t^6", "c2*t^7"], &[]).unwrap(),
                Template::parse("R2n", 3, &["t^4", "t^5 + c1*t^7", "t^6", "c2*t^7", "t^7"], &[]).unwrap(),
            ],
        }
    }

    #[test]
    fn explicit_map_of_first_row() {
        let b = atlas_basis(&[4, 5, 6, 7]).unwrap();
        let e = row1();
        let mut s = Sample::new();
        s.insert("c1".into(), int(3));
        s.insert("c2".into(), int(-2));
        let r = verify_entry(&b, &e, 0, &s).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let x = |i| Polynomial::var(4, i);
        let expected = PolyMap::new(4, vec![x(0), &x(1) + &x(3).scale(&int(3)), x(2), x(3).scale(&int(-2))]).unwrap();
        assert_eq!(r.map.unwrap(), expected);
        let r = verify_entry(&b, &e, 1, &s).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        s.insert("c2".into(), int(0));
        assert!(verify_entry(&b, &e, 0, &s).is_err());
        assert!(verify_entry(&b, &e, 1, &s).unwrap().passed());
    }

    #[test]
    fn stored_maps() {
        let b = atlas_basis(&[4, 5, 6, 7]).unwrap();
        let mut e = row1();
        for t in e.templates.iter_mut() {
            t.map = derive_map(&[4, 5, 6, 7], t, &[]).unwrap();
        }
        let strs: Vec<String> = e.templates[1].map.iter().map(|c| param_poly_string(c)).collect();
        assert_eq!(strs, ["x1", "x2 + c1*x4", "x3", "c2*x4 + x5", "x4", "x6"]);
        let back: Vec<&str> = strs.iter().map(|s| s.as_str()).collect();
        assert_eq!(e.templates[1].clone().with_map(&back).unwrap(), e.templates[1]);
        let mut s = Sample::new();
        s.insert("c1".into(), int(1));
        s.insert("c2".into(), int(0));
        assert!(verify_entry(&b, &e, 1, &s).unwrap().passed());
        s.insert("c2".into(), int(1));
        assert!(verify_entry(&b, &e, 0, &s).unwrap().passed());
    }

    #[test]
    fn forced_nonzero_in_r4() {
        let b = atlas_basis(&[4, 5, 6, 7]).unwrap();
        assert_eq!(n2_forced_nonzero(&b, &row1()).unwrap(), Some(vec!["c2".into()]));
    }

    #[test]
    fn links_and_samples() {
        let t = Template::parse("R4", 2, &["t^4", "s*t^6 + c1*t^9", "t^5", "c2*t^6"], &[("c1", "c2"), ("c2", "c1")]).unwrap();
        let mut s = Sample::new();
        s.insert("c1".into(), int(2));
        s.insert("c2".into(), int(5));
        s.insert("s".into(), int(-1));
        let ts = t.template_sample(&s).unwrap();
        assert_eq!(ts["c1"], int(5));
        assert_eq!(ts["c2"], int(2));
        let e = row1();
        let ss = default_samples(&e, 2, 4);
        assert_eq!(ss.len(), 4);
        assert!(ss.iter().all(|s| !s["c2"].is_zero()));
        assert!(Template::parse("x", 1, &["t^4", "t^5", "t^6"], &[]).is_err());
        assert!(parse_link("c1", "c1 + c2").is_err());
        assert_eq!(e.restriction_string(), "a9 + c1*a11- + c2*a13+");
    }
}
