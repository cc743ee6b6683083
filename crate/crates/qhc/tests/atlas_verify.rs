use qhc::atlas::{load_atlas, SUPPORTED};
use qhc_core::atlas::{atlas_basis, default_samples, verify_entry};

/// Rows whose printed index of isotropy is 1 while closed representatives
/// vanishing to order 2 exist (see the invariants witnesses).
const ISOTROPY_DISCREPANCIES: [(&[u32], u32); 3] = [(&[4, 5, 6], 8), (&[4, 5, 7], 8), (&[4, 5, 7], 9)];

#[test]
fn every_entry_passes_at_three_samples() {
    let mut bad = Vec::new();
    for sg in SUPPORTED {
        let basis = atlas_basis(sg).unwrap();
        for e in load_atlas(sg).unwrap() {
            for (k, t) in e.templates.iter().enumerate() {
                let samples = default_samples(&e, t.n, 3);
                let want = match (e.params.is_empty(), e.signs.is_empty()) {
                    (true, true) => 1,
                    (true, false) => 2,
                    _ => 3,
                };
                assert!(samples.len() >= want, "{:?} row {}", sg, e.row);
                for s in samples {
                    let r = verify_entry(&basis, &e, k, &s).unwrap();
                    for f in r.failures() {
                        if ISOTROPY_DISCREPANCIES.contains(&(sg, e.row)) && f.name == "index of isotropy" {
                            assert_eq!(f.detail, "2 (expected 1)");
                            continue;
                        }
                        bad.push(format!("{:?} row {} {} {:?}: {} {}", sg, e.row, t.label, s, f.name, f.detail));
                    }
                }
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
