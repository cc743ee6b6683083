use qhc::atlas::{load_atlas, SUPPORTED};
use qhc_core::atlas::{
    atlas_basis, default_samples, derived_n2_constraints, normalize_constraints, verify_pairwise_distinct, Witness,
};
use qhc_core::invariants::representable_by_symplectic;

#[test]
fn pairwise_distinct() {
    for sg in SUPPORTED {
        let basis = atlas_basis(sg).unwrap();
        let entries = load_atlas(sg).unwrap();
        let r = verify_pairwise_distinct(&basis, &entries, 3).unwrap();
        let fails: Vec<String> = r.failures().map(|p| format!("{:?} {:?}", p.rows, p.samples)).collect();
        assert!(fails.is_empty(), "{:?}: {}", sg, fails.join("\n"));
        if sg == [4, 5, 6, 7] {
            for rows in [(6, 7), (6, 8), (7, 8)] {
                assert!(r.pairs.iter().filter(|p| p.rows == rows).all(|p| p.witness == Some(Witness::Pmqd)));
            }
        }
    }
}

/// Rows admitted in R^4 and their constraints, recovered from the rank test.
#[test]
fn r4_thresholds() {
    for sg in SUPPORTED {
        let basis = atlas_basis(sg).unwrap();
        for e in load_atlas(sg).unwrap() {
            let derived = derived_n2_constraints(&basis, &e).unwrap();
            let listed = e.n2.as_ref().map(|c| normalize_constraints(c));
            if sg == [4, 5, 6] && e.row == 4 {
                // listed for n >= 3 only, yet representable in R^4
                assert_eq!((listed, derived), (None, Some(vec![])));
                continue;
            }
            assert_eq!(derived, listed, "{:?} row {}", sg, e.row);
            // every admissible sample agrees with the threshold
            for s in default_samples(&e, 3, 3) {
                let a = e.restriction_at(&basis, &s).unwrap();
                let n2 = e.n2.as_ref().is_some_and(|c| c.iter().all(|c| c.holds(&s)));
                assert_eq!(representable_by_symplectic(&basis, &a, 2).unwrap(), n2, "{:?} row {} {:?}", sg, e.row, s);
            }
        }
    }
    let rows = |sg: &[u32]| -> Vec<u32> { load_atlas(sg).unwrap().iter().filter(|e| e.n2.is_some()).map(|e| e.row).collect() };
    assert_eq!(rows(&[4, 5, 6, 7]), (1..=9).collect::<Vec<_>>());
    assert_eq!(rows(&[4, 5, 7]), vec![1, 2, 3]);
}
