//! Lie action tables on the classical bases, entry by entry.
#![allow(dead_code)]

use qhc_core::restriction::{classical_representatives, RestrictionBasis, RestrictionSpace};
use qhc_core::symmetry::{action_table, LiftPolicy};
use qhc_core::{MonomialCurve, Rational};

pub fn basis(l: &[u32]) -> RestrictionBasis {
    let c = MonomialCurve::new(l, l.len()).unwrap();
    let reps = classical_representatives(&c).unwrap();
    RestrictionBasis::with_representatives(RestrictionSpace::new(&c, None).unwrap(), reps).unwrap()
}

/// Lines `s label = c1 l1 + c2 l2`; entries not listed must vanish. The
/// Euler row is implied by the quasi-degrees.
pub fn check(b: &RestrictionBasis, expected: &str) -> Result<(), String> {
    let mut want = std::collections::BTreeMap::new();
    for line in expected.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (lhs, rhs) = line.split_once(" = ").unwrap();
        let (s, label) = lhs.split_once(' ').unwrap();
        let terms: Vec<(String, Rational)> = rhs
            .split(" + ")
            .map(|t| {
                let (c, l) = t.trim().split_once(' ').unwrap();
                (l.to_string(), c.parse::<Rational>().unwrap())
            })
            .collect();
        want.insert((s.parse::<u32>().unwrap(), label.to_string()), terms);
    }
    let table = action_table(b, LiftPolicy::Classical).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for (ri, &s) in table.shifts.iter().enumerate() {
        for (ci, col) in table.labels.iter().enumerate() {
            let w = if s == 0 {
                let e = &b.elements()[ci];
                b.element(col).unwrap().scale(&Rational::from_integer(e.qdeg.into()))
            } else {
                let terms = want.remove(&(s, col.clone())).unwrap_or_default();
                let refs: Vec<(&str, Rational)> = terms.iter().map(|(l, c)| (l.as_str(), c.clone())).collect();
                b.combination(&refs).unwrap()
            };
            if table.entries[ri][ci] != w {
                bad.push(format!("L_X{} {}", s, col));
            }
        }
    }
    bad.extend(want.keys().map(|(s, l)| format!("L_X{} {} missing", s, l)));
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join(", "))
    }
}

pub const TABLES: [(&[u32], &str); 3] = [
    (
        &[4, 5, 6, 7],
        "1 a9 = 5 a10
         1 a10 = 4 a11+ + 6 a11-
         1 a11+ = 6 a12
         1 a11- = 4 a12
         1 a12 = 5 a13+ + -14 a13-
         1 a13+ = -14 a14
         1 a13- = 7 a14
         1 a14 = 10 a15-
         2 a9 = 5 a11- + -4 a11+
         2 a11+ = -5 a13+ + -12 a13-
         2 a11- = 4 a13+ + 7 a13-
         2 a12 = -7/2 a14
         2 a13+ = 5 a15-
         2 a13- = 5 a15-
         3 a9 = -4 a12
         3 a10 = -4 a13+ + 6 a13-
         3 a11+ = 7 a14
         3 a11- = 7 a14
         3 a12 = 10 a15-
         4 a9 = 13 a13-
         4 a10 = 14 a14
         4 a11+ = 5 a15-
         4 a11- = 15 a15-
         5 a9 = 7 a14
         5 a10 = 10 a15-
         6 a9 = 5 a15-",
    ),
    (
        &[4, 5, 6],
        "4 a9 = 13 a13
         4 a10 = 14 a14
         4 a11 = 5 a15
         4 a13 = -34/3 a17
         4 a15 = 57 a19
         5 a9 = 7 a14
         5 a10 = 10 a15
         5 a14 = 38 a19
         6 a9 = 5 a15
         6 a11 = 17 a17
         6 a13 = 19 a19
         8 a9 = -34/3 a17
         8 a11 = 19 a19
         9 a10 = 38 a19
         10 a9 = 19 a19",
    ),
    (
        &[4, 5, 7],
        "3 a9 = -4 a12
         3 a11 = 14 a14
         3 a12 = 10 a15
         3 a13 = -4 a16
         3 a14 = -17/3 a17
         3 a15 = 18 a18
         4 a9 = 13 a13
         4 a11 = 15 a15
         4 a12 = 12 a16
         4 a13 = -17/3 a17
         4 a14 = 18 a18
         5 a9 = 14 a14
         5 a11 = 4 a16
         5 a12 = 17 a17
         5 a13 = 18 a18
         6 a9 = 5 a15
         6 a11 = 17/3 a17
         6 a12 = -9 a18
         7 a9 = -4 a16
         7 a11 = 18 a18
         8 a9 = -17/3 a17
         9 a9 = 18 a18",
    ),
];
