//! Coefficient expressions of the normal-form tables: sums of rational
//! multiples of products of parameters, attached to powers of `t` or to
//! basis labels.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::{Error, Result};

/// Parameter values by name.
pub type Sample = BTreeMap<String, Rational>;

/// `Σ q_k Π params` with parameter products sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamExpr {
    terms: BTreeMap<Vec<String>, Rational>,
}

impl ParamExpr {
    pub fn zero() -> Self {
        ParamExpr::default()
    }

    pub fn constant(q: Rational) -> Self {
        let mut e = ParamExpr::zero();
        e.add_term(Vec::new(), q);
        e
    }

    pub fn param(name: &str) -> Self {
        let mut e = ParamExpr::zero();
        e.add_term(alloc::vec![name.to_string()], Rational::one());
        e
    }

    fn add_term(&mut self, mut params: Vec<String>, q: Rational) {
        params.sort();
        let slot = self.terms.entry(params.clone()).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&params);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<String>, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &ParamExpr) -> ParamExpr {
        let mut out = self.clone();
        for (p, q) in &o.terms {
            out.add_term(p.clone(), q.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ParamExpr {
        let mut out = ParamExpr::zero();
        for (p, q) in &self.terms {
            out.add_term(p.clone(), q * c);
        }
        out
    }

    /// Parameters occurring in the expression.
    pub fn params(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.keys().flatten().cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn eval(&self, sample: &Sample) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (ps, q) in &self.terms {
            let mut x = q.clone();
            for p in ps {
                x *= sample.get(p).ok_or_else(|| Error::Input(format!("no value for parameter {}", p)))?;
            }
            acc += x;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to `name`.
    pub fn derivative(&self, name: &str) -> ParamExpr {
        let mut out = ParamExpr::zero();
        for (ps, q) in &self.terms {
            let k = ps.iter().filter(|p| *p == name).count();
            if k == 0 {
                continue;
            }
            let mut rest = ps.clone();
            let i = rest.iter().position(|p| p == name).expect("occurs");
            rest.remove(i);
            out.add_term(rest, q * Rational::from_integer((k as i64).into()));
        }
        out
    }

    /// Parses a parameter expression without atoms, e.g. `-3/2*c1`.
    pub fn parse(text: &str) -> Result<ParamExpr> {
        let mut out = ParamExpr::zero();
        for (c, atom) in parse_sum(text)? {
            if let Some(a) = atom {
                return Err(Error::Input(format!("unexpected {} in parameter expression {:?}", a, text)));
            }
            out = out.add(&c);
        }
        Ok(out)
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (ps, q)) in self.terms.iter().enumerate() {
            let neg = q < &Rational::zero();
            let a = if neg { -q.clone() } else { q.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || ps.is_empty() {
                parts.push(a.to_string());
            }
            parts.extend(ps.iter().cloned());
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// What a term multiplies: `t^k`, a basis label, or a monomial
/// `x_{i_1}^{e_1}⋯` (0-based indices, ascending).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Atom {
    T(u32),
    Label(String),
    X(Vec<(usize, u32)>),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::T(1) => f.write_str("t"),
            Atom::T(k) => write!(f, "t^{}", k),
            Atom::Label(l) => f.write_str(l),
            Atom::X(v) => {
                for (k, (i, e)) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    match e {
                        1 => write!(f, "x{}", i + 1)?,
                        _ => write!(f, "x{}^{}", i + 1, e)?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Num(Rational),
    Ident(String),
    Star,
    Plus,
    Minus,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let bad = |i: usize| Error::Input(format!("unexpected character at column {} in {:?}", i + 1, text));
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            ' ' | '\t' => i += 1,
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse::<Rational>().map_err(|_| bad(start))?));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '.') {
                    i += 1;
                }
                let mut s: String = chars[start..i].iter().collect();
                // labels like a11+ carry a trailing sign directly attached
                let is_label = s.starts_with('a') && s[1..].chars().next().is_some_and(|c| c.is_ascii_digit());
                if is_label
                    && i < chars.len()
                    && (chars[i] == '+' || chars[i] == '-')
                    && chars.get(i + 1).is_none_or(|c| !c.is_ascii_alphanumeric())
                {
                    s.push(chars[i]);
                    i += 1;
                }
                out.push(Tok::Ident(s));
            }
            _ => return Err(bad(i)),
        }
    }
    Ok(out)
}

/// Parses `term (± term)*` where a term is a `*`-product of rationals,
/// parameters and at most one atom (`t`, `t^k`, a label `a…`, or a product
/// of variables `x1^2*x3`).
pub fn parse_sum(text: &str) -> Result<Vec<(ParamExpr, Option<Atom>)>> {
    let toks = tokenize(text)?;
    let err = |msg: &str| Error::Input(format!("{} in {:?}", msg, text));
    let mut out: Vec<(ParamExpr, Option<Atom>)> = Vec::new();
    let mut i = 0;
    if toks.is_empty() {
        return Err(err("empty expression"));
    }
    if toks == [Tok::Num(Rational::zero())] {
        return Ok(out);
    }
    loop {
        let mut sign = Rational::one();
        while let Some(t @ (Tok::Plus | Tok::Minus)) = toks.get(i) {
            if *t == Tok::Minus {
                sign = -sign;
            }
            i += 1;
        }
        let mut coef = sign;
        let mut params: Vec<String> = Vec::new();
        let mut atom: Option<Atom> = None;
        loop {
            match toks.get(i) {
                Some(Tok::Num(q)) => {
                    coef *= q;
                    i += 1;
                }
                Some(Tok::Ident(s)) if s == "t" => {
                    if atom.is_some() {
                        return Err(err("two atoms in one term"));
                    }
                    i += 1;
                    let mut k = 1;
                    if toks.get(i) == Some(&Tok::Caret) {
                        match toks.get(i + 1) {
                            Some(Tok::Num(q)) if q.is_integer() && q >= &Rational::zero() => {
                                k = q.to_integer().try_into().map_err(|_| err("exponent too large"))?;
                                i += 2;
                            }
                            _ => return Err(err("expected an exponent after '^'")),
                        }
                    }
                    atom = Some(Atom::T(k));
                }
                Some(Tok::Ident(s)) if s.starts_with('x') && s.len() > 1 && s[1..].chars().all(|c| c.is_ascii_digit()) => {
                    let idx: usize = s[1..].parse().map_err(|_| err("bad variable index"))?;
                    if idx == 0 {
                        return Err(err("variables are numbered from 1"));
                    }
                    i += 1;
                    let mut e = 1u32;
                    if toks.get(i) == Some(&Tok::Caret) {
                        match toks.get(i + 1) {
                            Some(Tok::Num(q)) if q.is_integer() && q >= &Rational::zero() => {
                                e = q.to_integer().try_into().map_err(|_| err("exponent too large"))?;
                                i += 2;
                            }
                            _ => return Err(err("expected an exponent after '^'")),
                        }
                    }
                    let mut v = match atom.take() {
                        None => Vec::new(),
                        Some(Atom::X(v)) => v,
                        Some(_) => return Err(err("two atoms in one term")),
                    };
                    match v.iter_mut().find(|(j, _)| *j == idx - 1) {
                        Some((_, f)) => *f += e,
                        None => v.push((idx - 1, e)),
                    }
                    v.sort();
                    v.retain(|(_, e)| *e > 0);
                    atom = Some(Atom::X(v));
                }
                Some(Tok::Ident(s)) if s.starts_with('a') && s[1..].starts_with(|c: char| c.is_ascii_digit()) => {
                    if atom.is_some() {
                        return Err(err("two atoms in one term"));
                    }
                    atom = Some(Atom::Label(s.clone()));
                    i += 1;
                }
                Some(Tok::Ident(s)) => {
                    params.push(s.clone());
                    i += 1;
                }
                _ => return Err(err("expected a factor")),
            }
            if toks.get(i) == Some(&Tok::Star) {
                i += 1;
            } else {
                break;
            }
        }
        let mut e = ParamExpr::zero();
        e.add_term(params, coef);
        match out.iter_mut().find(|(_, a)| *a == atom) {
            Some((c, _)) => *c = c.add(&e),
            None => out.push((e, atom)),
        }
        match toks.get(i) {
            None => break,
            Some(Tok::Plus | Tok::Minus) => {}
            Some(_) => return Err(err("expected '+' or '-'")),
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    #[test]
    fn parsing() {
        let v = parse_sum("a11+ - 3/2*a11- + c*a12").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1].1, Some(Atom::Label("a11-".into())));
        assert_eq!(v[1].0, ParamExpr::constant(rat(-3, 2)));
        let v = parse_sum("s*t^6 + c1*t^7").unwrap();
        assert_eq!(v[0], (ParamExpr::param("s"), Some(Atom::T(6))));
        assert_eq!(parse_sum("0").unwrap(), alloc::vec![]);
        assert_eq!(parse_sum("c*t^7 - t^5").unwrap()[1].0, ParamExpr::constant(int(-1)));
        let e = ParamExpr::parse("-2*c1*c2 + 3").unwrap();
        let mut s = Sample::new();
        s.insert("c1".into(), int(2));
        s.insert("c2".into(), rat(1, 2));
        assert_eq!(e.eval(&s).unwrap(), int(1));
        assert_eq!(e.derivative("c1"), ParamExpr::parse("-2*c2").unwrap());
        assert_eq!(e.to_string(), "3 - 2*c1*c2");
        assert!(parse_sum("t^2*t").is_err());
        assert!(parse_sum("c1 %").is_err());
        let v = parse_sum("x2 + c1*x4 - 2*x1*x2^2*x1").unwrap();
        assert_eq!(v[2].1, Some(Atom::X(alloc::vec![(0, 2), (1, 2)])));
        assert_eq!(v[2].1.as_ref().unwrap().to_string(), "x1^2*x2^2");
    }
}
