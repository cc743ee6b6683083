//! Shared rendering helpers for the text, JSON and LaTeX emitters.

use serde::Serialize;

use qhc_core::atlas::Sample;
use qhc_core::{AlgRestriction, Rational, RestrictionBasis};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// A restriction as a label combination plus its exact coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RestrictionDoc {
    pub expr: String,
    pub coords: Vec<String>,
}

impl RestrictionDoc {
    pub fn new(basis: &RestrictionBasis, a: &AlgRestriction) -> RestrictionDoc {
        RestrictionDoc { expr: restriction_expr(basis, a), coords: a.coords().iter().map(|c| c.to_string()).collect() }
    }
}

/// `c_1*a_1 + …` in basis order; unit coefficients are omitted.
pub fn restriction_expr(basis: &RestrictionBasis, a: &AlgRestriction) -> String {
    let mut out = String::new();
    for (e, c) in basis.elements().iter().zip(a.coords()) {
        if *c == Rational::from_integer(0.into()) {
            continue;
        }
        let neg = *c < Rational::from_integer(0.into());
        let abs = if neg { -c.clone() } else { c.clone() };
        let term = if abs == Rational::from_integer(1.into()) { e.label.clone() } else { format!("{}*{}", abs, e.label) };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{}", term)),
            (false, false) => out.push_str(&format!(" + {}", term)),
            (false, true) => out.push_str(&format!(" - {}", term)),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn sample_string(s: &Sample) -> String {
    s.iter().map(|(k, v)| format!("{}={}", k, v)).collect::<Vec<_>>().join(", ")
}

/// Left-aligned columns separated by two spaces, with a rule under the
/// header.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            s.push_str(c);
            if k + 1 < cols {
                s.push_str(&" ".repeat(width[k] - c.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// A `tabular` block with one row per entry.
pub fn latex_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("\\begin{{tabular}}{{{}}}\n\\hline\n", "l".repeat(header.len()));
    out.push_str(&header.iter().map(|h| latex_text(h)).collect::<Vec<_>>().join(" & "));
    out.push_str(" \\\\\n\\hline\n");
    for r in rows {
        out.push_str(&r.join(" & "));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

pub fn latex_text(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '_' | '&' | '%' | '#' | '$' => {
                out.push('\\');
                out.push(c);
            }
            _ => out.push(c),
        }
    }
    out
}

/// Math-mode rendering of the canonical printed syntax: `x1^2*dx1^dx2`
/// becomes `$x_{1}^{2}\,dx_{1}\wedge dx_{2}$`, `a13+` becomes `a_{13}^{+}`,
/// `p/q` becomes `\frac{p}{q}`, `inf` becomes `\infty`.
pub fn latex_math(s: &str) -> String {
    let c: Vec<char> = s.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let st = *i;
        while *i < c.len() && (c[*i].is_ascii_digit() || c[*i] == '.') {
            *i += 1;
        }
        c[st..*i].iter().collect::<String>()
    };
    let ident_boundary = |i: usize| i == 0 || !c[i - 1].is_ascii_alphanumeric();
    while i < c.len() {
        if c[i..].starts_with(&['i', 'n', 'f']) && ident_boundary(i) {
            out.push_str("\\infty");
            i += 3;
        } else if c[i..].starts_with(&['d', '/', 'd', 'x']) {
            i += 4;
            out.push_str(&format!("\\partial_{{x_{{{}}}}}", digits(&mut i)));
        } else if c[i..].starts_with(&['d', 'x']) && c.get(i + 2).is_some_and(char::is_ascii_digit) {
            i += 2;
            out.push_str(&format!("dx_{{{}}}", digits(&mut i)));
            if c[i..].starts_with(&['^', 'd']) {
                out.push_str("\\wedge ");
                i += 1;
            }
        } else if (c[i] == 'x' || c[i] == 'a' || c[i] == 'c') && ident_boundary(i) && c.get(i + 1).is_some_and(char::is_ascii_digit) {
            let v = c[i];
            i += 1;
            let d = digits(&mut i);
            out.push_str(&format!("{}_{{{}}}", v, d));
            if v == 'a' && i < c.len() && (c[i] == '+' || c[i] == '-') && !c.get(i + 1).is_some_and(char::is_ascii_alphanumeric) {
                out.push_str(&format!("^{{{}}}", c[i]));
                i += 1;
            }
        } else if c[i] == '^' {
            i += 1;
            out.push_str(&format!("^{{{}}}", digits(&mut i)));
        } else if c[i].is_ascii_digit() {
            let p = digits(&mut i);
            if c.get(i) == Some(&'/') && c.get(i + 1).is_some_and(char::is_ascii_digit) {
                i += 1;
                out.push_str(&format!("\\frac{{{}}}{{{}}}", p, digits(&mut i)));
            } else {
                out.push_str(&p);
            }
        } else if c[i] == '*' {
            out.push_str("\\,");
            i += 1;
        } else {
            out.push(c[i]);
            i += 1;
        }
    }
    format!("${}$", out)
}
