#[path = "support/oracle.rs"]
mod oracle;

use qhc_core::restriction::{closed2_restriction_basis, restriction_quotient};
use qhc_core::MonomialCurve;

#[test]
fn quotient_dimensions_match_brute_force() {
    for l in [&[4u32, 5, 6, 7][..], &[4, 5, 6], &[4, 5, 7], &[3, 5], &[3, 4, 5]] {
        let c = MonomialCurve::new(l, l.len()).unwrap();
        let k = closed2_restriction_basis(&c, None).unwrap().k_f();
        for d in 0..=k + l[l.len() - 1] {
            assert_eq!(restriction_quotient(&c, 2, d).quotient_dim(), oracle::dim_a2(l, d), "{:?} d = {}", l, d);
        }
    }
}
