//! Surface syntax for forms, polynomials, maps and curves.
//!
//! ```text
//! form     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := number | var ['^' INT] | '(' poly ')' ['^' INT] | wedge
//! wedge    := 'dx' INT ('^' 'dx' INT)*
//! var      := 'x' INT | 't'
//! ```
//!
//! A term carries at most one wedge; terms without one are 0-forms. Numbers
//! are integers or `p/q`. Maps and curves are parenthesized comma-separated
//! lists of polynomials in `x` resp. `t`.

use std::fmt;

use qhc_core::{DifferentialForm, Monomial, PolyMap, Polynomial, Rational, UniPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        if let Some(m) = &self.message {
            return write!(f, "{}", m);
        }
        write!(f, "expected {}; found {}", self.expected.join(", "), self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Num(Rational),
    X(usize),
    Dx(usize),
    T,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(q) => format!("number {}", q),
            Tok::X(i) => format!("'x{}'", i + 1),
            Tok::Dx(i) => format!("'dx{}'", i + 1),
            Tok::T => "'t'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    let err = |line, column, msg: String| ParseError {
        line,
        column,
        expected: vec![],
        found: String::new(),
        message: Some(msg),
    };
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0, i0) = (line, col, i);
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '0'..='9' => {
                let mut s = digits(&mut i);
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    s.push('/');
                    s.push_str(&digits(&mut i));
                }
                let q: Rational = s.parse().map_err(|_| err(l0, c0, format!("invalid number {:?}", s)))?;
                Tok::Num(q)
            }
            't' if !chars.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric()) => {
                i += 1;
                Tok::T
            }
            'x' | 'd' => {
                let dx = c == 'd';
                i += 1;
                if dx {
                    if chars.get(i) != Some(&'x') {
                        return Err(err(l0, c0, "expected 'dx' followed by an index".into()));
                    }
                    i += 1;
                }
                let s = digits(&mut i);
                let k: usize = s.parse().map_err(|_| err(l0, c0, "expected a variable index".into()))?;
                if k == 0 {
                    return Err(err(l0, c0, "variables are numbered from 1".into()));
                }
                if dx {
                    Tok::Dx(k - 1)
                } else {
                    Tok::X(k - 1)
                }
            }
            other => return Err(err(l0, c0, format!("unexpected character {:?}", other))),
        };
        col += i - i0;
        out.push(Spanned { tok, line: l0, column: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, column: col });
    Ok(out)
}

/// A term: coefficient polynomial (in `x` or `t`) times an optional wedge.
struct Term {
    coeff: Expr,
    wedge: Option<Vec<usize>>,
}

/// Polynomial expression over variables `x_i` (index) and `t` (usize::MAX).
#[derive(Clone)]
struct Expr(Vec<(Vec<(usize, u32)>, Rational)>);

const T_VAR: usize = usize::MAX;

impl Expr {
    fn constant(q: Rational) -> Expr {
        Expr(vec![(vec![], q)])
    }

    fn var(i: usize) -> Expr {
        Expr(vec![(vec![(i, 1)], Rational::from_integer(1.into()))])
    }

    fn add(mut self, o: Expr) -> Expr {
        self.0.extend(o.0);
        self
    }

    fn neg(self) -> Expr {
        Expr(self.0.into_iter().map(|(m, c)| (m, -c)).collect())
    }

    fn mul(&self, o: &Expr) -> Expr {
        let mut out = Vec::new();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                out.push((m, c1 * c2));
            }
        }
        Expr(out)
    }

    fn pow(&self, e: u32) -> Expr {
        let mut out = Expr::constant(Rational::from_integer(1.into()));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn max_var(&self) -> Option<usize> {
        self.0.iter().flat_map(|(m, _)| m.iter().map(|(i, _)| *i)).filter(|&i| i != T_VAR).max()
    }

    fn has(&self, pred: impl Fn(usize) -> bool) -> bool {
        self.0.iter().any(|(m, _)| m.iter().any(|(i, _)| pred(*i)))
    }

    fn to_poly(&self, n: usize) -> Polynomial {
        let mut p = Polynomial::zero(n);
        for (m, c) in &self.0 {
            let mut e = vec![0u32; n];
            for (i, k) in m {
                e[*i] += k;
            }
            p.add_term(Monomial::new(e), c.clone());
        }
        p
    }

    fn to_unipoly(&self) -> UniPoly {
        let mut out = UniPoly::zero();
        for (m, c) in &self.0 {
            let e: u32 = m.iter().map(|(_, k)| k).sum();
            out = &out + &UniPoly::monomial(c.clone(), e);
        }
        out
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            column: s.column,
            expected: expected.iter().map(|e| e.to_string()).collect(),
            found: s.tok.describe(),
            message: None,
        }
    }

    fn message(&self, at: usize, msg: String) -> ParseError {
        let s = &self.toks[at.min(self.toks.len() - 1)];
        ParseError { line: s.line, column: s.column, expected: vec![], found: s.tok.describe(), message: Some(msg) }
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if *self.peek() != Tok::Caret {
            return Ok(None);
        }
        // `^dx` belongs to a wedge, not an exponent
        if matches!(self.toks.get(self.pos + 1).map(|s| &s.tok), Some(Tok::Dx(_))) {
            return Ok(None);
        }
        self.bump();
        match self.bump() {
            Tok::Num(q) if q.is_integer() && q >= Rational::from_integer(0.into()) => {
                let e: u32 = q.to_integer().try_into().map_err(|_| self.message(self.pos - 1, "exponent too large".into()))?;
                Ok(Some(e))
            }
            _ => {
                self.pos -= 1;
                Err(self.error(&["non-negative integer exponent"]))
            }
        }
    }

    const TERM_START: [&'static str; 6] = ["number", "'x<i>'", "'t'", "'dx<i>'", "'('", "'-'"];

    fn sum(&mut self, allow_wedge: bool) -> Result<Vec<Term>, ParseError> {
        let mut out = Vec::new();
        let mut sign = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            sign = true;
        } else if *self.peek() == Tok::Plus {
            self.bump();
        }
        loop {
            let mut t = self.term(allow_wedge)?;
            if sign {
                t.coeff = t.coeff.neg();
            }
            out.push(t);
            match self.peek() {
                Tok::Plus => sign = false,
                Tok::Minus => sign = true,
                _ => return Ok(out),
            }
            self.bump();
        }
    }

    fn term(&mut self, allow_wedge: bool) -> Result<Term, ParseError> {
        let mut coeff = Expr::constant(Rational::from_integer(1.into()));
        let mut wedge: Option<Vec<usize>> = None;
        loop {
            let at = self.pos;
            match self.peek().clone() {
                Tok::Num(q) => {
                    self.bump();
                    coeff = coeff.mul(&Expr::constant(q));
                }
                Tok::X(i) => {
                    self.bump();
                    let e = self.exponent()?.unwrap_or(1);
                    coeff = coeff.mul(&Expr::var(i).pow(e));
                }
                Tok::T => {
                    self.bump();
                    let e = self.exponent()?.unwrap_or(1);
                    coeff = coeff.mul(&Expr::var(T_VAR).pow(e));
                }
                Tok::LParen => {
                    self.bump();
                    let inner = self.sum(false)?;
                    self.expect(Tok::RParen, "')'")?;
                    let mut e = Expr(vec![]);
                    for t in inner {
                        e = e.add(t.coeff);
                    }
                    let k = self.exponent()?.unwrap_or(1);
                    coeff = coeff.mul(&e.pow(k));
                }
                Tok::Dx(i) if allow_wedge => {
                    if wedge.is_some() {
                        return Err(self.message(at, "a term may contain only one wedge product".into()));
                    }
                    self.bump();
                    let mut w = vec![i];
                    while *self.peek() == Tok::Caret {
                        self.bump();
                        match self.bump() {
                            Tok::Dx(j) => w.push(j),
                            _ => {
                                self.pos -= 1;
                                return Err(self.error(&["'dx<i>'"]));
                            }
                        }
                    }
                    wedge = Some(w);
                }
                _ => {
                    let mut exp: Vec<&str> = Self::TERM_START[..5].to_vec();
                    if !allow_wedge {
                        exp.retain(|e| *e != "'dx<i>'");
                    }
                    return Err(self.error(&exp));
                }
            }
            if *self.peek() == Tok::Star {
                self.bump();
            } else {
                return Ok(Term { coeff, wedge });
            }
        }
    }

    fn list(&mut self) -> Result<Vec<Expr>, ParseError> {
        let paren = *self.peek() == Tok::LParen && self.is_list_paren();
        if paren {
            self.bump();
        }
        let mut out = Vec::new();
        loop {
            let terms = self.sum(false)?;
            let mut e = Expr(vec![]);
            for t in terms {
                e = e.add(t.coeff);
            }
            out.push(e);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        if paren {
            self.expect(Tok::RParen, "')'")?;
        }
        Ok(out)
    }

    /// Does the opening parenthesis enclose a comma at depth 1 or span the
    /// whole input?
    fn is_list_paren(&self) -> bool {
        let mut depth = 0;
        for (k, s) in self.toks[self.pos..].iter().enumerate() {
            match s.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return matches!(self.toks.get(self.pos + k + 1).map(|s| &s.tok), Some(Tok::End));
                    }
                }
                Tok::Comma if depth == 1 => return true,
                _ => {}
            }
        }
        false
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["'+'", "'-'", "'*'", "end of input"]))
        }
    }
}

/// Parses a differential form in `dim` variables; `dim = None` uses the
/// largest index that occurs.
pub fn parse_form(text: &str, dim: Option<usize>) -> Result<DifferentialForm, ParseError> {
    let mut p = Parser::new(text)?;
    let terms = p.sum(true)?;
    p.finish()?;
    if terms.iter().any(|t| t.coeff.has(|i| i == T_VAR)) {
        return Err(p.message(0, "forms are written in x1, x2, …; 't' is not allowed".into()));
    }
    let degree = terms[0].wedge.as_ref().map_or(0, Vec::len);
    if terms.iter().any(|t| t.wedge.as_ref().map_or(0, Vec::len) != degree) {
        return Err(p.message(0, "all terms must have the same form degree".into()));
    }
    let used = terms
        .iter()
        .flat_map(|t| t.coeff.max_var().into_iter().chain(t.wedge.iter().flatten().copied()))
        .max()
        .map_or(1, |i| i + 1);
    let n = match dim {
        Some(n) if n < used => return Err(p.message(0, format!("variable x{} exceeds the ambient dimension {}", used, n))),
        Some(n) => n,
        None => used,
    };
    let mut out = DifferentialForm::zero(n, degree);
    for t in terms {
        let c = t.coeff.to_poly(n);
        let w = t.wedge.unwrap_or_default();
        let piece = if w.is_empty() { DifferentialForm::function(c) } else { DifferentialForm::term(n, &w, c) };
        out = out.add(&piece).expect("same degree and dimension");
    }
    Ok(out)
}

/// Parses a polynomial in `x1 … x_dim`.
pub fn parse_polynomial(text: &str, dim: Option<usize>) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text)?;
    let terms = p.sum(false)?;
    p.finish()?;
    let mut e = Expr(vec![]);
    for t in terms {
        e = e.add(t.coeff);
    }
    if e.has(|i| i == T_VAR) {
        return Err(p.message(0, "'t' is not allowed in a polynomial in x".into()));
    }
    let used = e.max_var().map_or(1, |i| i + 1);
    let n = dim.unwrap_or(used);
    if n < used {
        return Err(p.message(0, format!("variable x{} exceeds the ambient dimension {}", used, n)));
    }
    Ok(e.to_poly(n))
}

/// Parses a map `(Φ_1, …, Φ_m)` with source dimension `dim` (default: the
/// number of components).
pub fn parse_map(text: &str, dim: Option<usize>) -> Result<PolyMap, ParseError> {
    let mut p = Parser::new(text)?;
    let comps = p.list()?;
    p.finish()?;
    if comps.iter().any(|c| c.has(|i| i == T_VAR)) {
        return Err(p.message(0, "map components are polynomials in x".into()));
    }
    let n = dim.unwrap_or(comps.len());
    if let Some(m) = comps.iter().filter_map(Expr::max_var).max().filter(|&m| m >= n) {
        return Err(p.message(0, format!("variable x{} exceeds the source dimension {}", m + 1, n)));
    }
    PolyMap::new(n, comps.iter().map(|c| c.to_poly(n)).collect()).map_err(|e| p.message(0, e.to_string()))
}

/// Parses a curve `(P_1(t), …, P_m(t))`.
pub fn parse_curve(text: &str) -> Result<Vec<UniPoly>, ParseError> {
    let mut p = Parser::new(text)?;
    let comps = p.list()?;
    p.finish()?;
    if comps.iter().any(|c| c.has(|i| i != T_VAR)) {
        return Err(p.message(0, "curve components are polynomials in t".into()));
    }
    Ok(comps.iter().map(Expr::to_unipoly).collect())
}

/// Canonical printing; `parse_form(&print_form(w), Some(w.dim())) == w`.
pub fn print_form(w: &DifferentialForm) -> String {
    w.to_string()
}

pub fn print_curve(c: &[UniPoly]) -> String {
    let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qhc_core::int;

    #[test]
    fn forms() {
        let w = parse_form("dx1^dx2 + x1*dx1^dx3", None).unwrap();
        assert_eq!(w.degree(), 2);
        assert_eq!(w.dim(), 3);
        assert_eq!(w.terms().count(), 2);
        let a = parse_form("(x2^2 - x1*x3)*dx1", None).unwrap();
        assert_eq!(a.degree(), 1);
        assert!(parse_form("dx1^dx1", None).unwrap().is_zero());
        assert_eq!(parse_form("-dx2^dx1", Some(2)).unwrap(), parse_form("dx1^dx2", None).unwrap());
        assert_eq!(parse_form("3/2*x1^2*x4*dx1^dx2", None).unwrap().dim(), 4);
        assert_eq!(parse_form("x1^2 + 1", Some(3)).unwrap().degree(), 0);
        for s in ["-2*x2*dx1^dx2 + x1*dx1^dx3", "-1/7*dx1^dx4 + x1*x3^2*dx2^dx3"] {
            let w = parse_form(s, None).unwrap();
            assert_eq!(print_form(&w), s);
            assert_eq!(parse_form(&print_form(&w), Some(w.dim())).unwrap(), w);
        }
    }

    #[test]
    fn errors() {
        let e = parse_form("dx1^^dx2", None).unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert_eq!(e.expected, ["'dx<i>'"]);
        let e = parse_form("dx1 +\n  * dx2", None).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected.contains(&"'dx<i>'".to_string()));
        assert!(e.to_string().starts_with("line 2, column 3: expected"));
        let e = parse_form("dx1 + dx1^dx2", None).unwrap_err();
        assert!(e.to_string().contains("same form degree"));
        assert!(parse_form("x0*dx1", None).is_err());
        assert!(parse_form("dx5", Some(4)).is_err());
        assert!(parse_form("dx1^dx2 dx3", None).is_err());
        assert!(parse_form("y*dx1", None).is_err());
    }

    #[test]
    fn maps_and_curves() {
        let m = parse_map("(x1, x2 + x4, x3, x4)", None).unwrap();
        assert_eq!(m.source_dim(), 4);
        assert_eq!(m.to_string(), "(x1, x2 + x4, x3, x4)");
        assert_eq!(parse_map(&m.to_string(), None).unwrap(), m);
        assert!(parse_map("(x1, x5)", None).is_err());
        let c = parse_curve("(t^4, t^5 + 2*t^7, 0, (t^2)^3)").unwrap();
        assert_eq!(c[3], UniPoly::monomial(int(1), 6));
        assert_eq!(print_curve(&c), "(t^4, t^5 + 2*t^7, 0, t^6)");
        assert_eq!(parse_curve(&print_curve(&c)).unwrap(), c);
        assert!(parse_curve("(x1, t)").is_err());
        let p = parse_polynomial("(x1 + x2)^2", None).unwrap();
        assert_eq!(p.to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }
}
