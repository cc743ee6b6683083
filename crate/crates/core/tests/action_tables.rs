#[path = "support/tables.rs"]
mod tables;

use qhc_core::symmetry::{action_table, LiftPolicy};
use tables::{basis, check, TABLES};

#[test]
fn classical_tables() {
    for (sg, expected) in TABLES {
        let b = basis(sg);
        check(&b, expected).unwrap_or_else(|e| panic!("{:?}: {}", sg, e));
    }
    let b = basis(&[4, 5, 6, 7]);
    assert_eq!(action_table(&b, LiftPolicy::Classical).unwrap().shifts, vec![0, 1, 2, 3, 4, 5, 6]);
}
