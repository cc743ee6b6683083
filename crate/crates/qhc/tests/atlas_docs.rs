use std::path::PathBuf;

use qhc::atlas::{atlas_source, load_atlas, with_derived_maps, AtlasDoc, SUPPORTED};

fn file(semigroup: &[u32]) -> PathBuf {
    let name = semigroup.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("-");
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("atlas").join(format!("{}.json", name))
}

/// Stored maps agree with the derivation rule, and documents are in
/// canonical form. `QHC_BLESS=1` rewrites the files.
#[test]
fn documents_are_canonical_with_derived_maps() {
    let bless = std::env::var("QHC_BLESS").is_ok();
    for sg in SUPPORTED {
        let doc = AtlasDoc::parse(atlas_source(sg).unwrap()).unwrap();
        let entries = doc.entries().unwrap();
        let derived = with_derived_maps(&entries).unwrap();
        let canonical = AtlasDoc::from_entries(sg, &derived).to_canonical_string();
        if bless {
            std::fs::write(file(sg), &canonical).unwrap();
            continue;
        }
        assert_eq!(entries, derived, "stored maps differ from the derivation for {:?}", sg);
        assert_eq!(atlas_source(sg).unwrap(), canonical, "{:?} is not in canonical form", sg);
    }
}

#[test]
fn row_counts() {
    assert_eq!(load_atlas(&[4, 5, 6, 7]).unwrap().len(), 18);
    assert_eq!(load_atlas(&[4, 5, 6]).unwrap().len(), 10);
    assert_eq!(load_atlas(&[4, 5, 7]).unwrap().len(), 10);
    let last = load_atlas(&[4, 5, 6, 7]).unwrap().pop().unwrap();
    assert!(last.restriction.is_empty());
    let err = load_atlas(&[3, 4, 5]).unwrap_err().to_string();
    assert!(err.contains("(4,5,6,7)"), "{}", err);
}
