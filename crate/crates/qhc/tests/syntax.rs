use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use qhc::atlas::{load_atlas, SUPPORTED};
use qhc::syntax::{parse_curve, parse_form, parse_map, print_curve, print_form};
use qhc_core::atlas::{atlas_basis, default_samples};
use qhc_core::{DifferentialForm, Monomial, Polynomial, Rational};

#[test]
fn atlas_round_trips() {
    let mut forms = 0;
    let mut maps = 0;
    for sg in SUPPORTED {
        let b = atlas_basis(sg).unwrap();
        for e in b.elements() {
            let w = &e.representative;
            assert_eq!(&parse_form(&print_form(w), Some(w.dim())).unwrap(), w, "{}", e.label);
            forms += 1;
        }
        for entry in load_atlas(sg).unwrap() {
            for t in &entry.templates {
                for s in default_samples(&entry, t.n, 3) {
                    let ts = t.template_sample(&s).unwrap();
                    let curve = t.curve(&ts).unwrap();
                    assert_eq!(parse_curve(&print_curve(&curve)).unwrap(), curve);
                    if !t.map.is_empty() {
                        let f = t.map_at(&ts).unwrap();
                        assert_eq!(parse_map(&f.to_string(), Some(f.source_dim())).unwrap(), f);
                        maps += 1;
                    }
                }
            }
        }
    }
    assert!(forms == 26 && maps > 100, "{} {}", forms, maps);
}

type TermSpec = ((i64, i64), Vec<u32>, u64);

fn form(dim: usize, k: usize, terms: &[TermSpec]) -> DifferentialForm {
    let idx: Vec<Vec<usize>> = (0u32..1 << dim)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..dim).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let mut w = DifferentialForm::zero(dim, k);
    for ((p, q), exps, pick) in terms {
        let c = Rational::new((*p).into(), (*q).into());
        let poly = Polynomial::from_terms(dim, [(Monomial::new(exps[..dim].to_vec()), c)]);
        let term = if k == 0 {
            DifferentialForm::function(poly)
        } else {
            DifferentialForm::term(dim, &idx[(*pick as usize) % idx.len()], poly)
        };
        w = w.add(&term).unwrap();
    }
    w
}

#[test]
fn printed_forms_parse_back() {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, b"quasi-homogeneous-curve-syntax..");
    let term = ((-40i64..=40, 1i64..=9), vec(0u32..=3, 6), any::<u64>());
    let strat = (1usize..=6).prop_flat_map(move |d| (Just(d), 0..=d.min(3), vec(term.clone(), 1..=5)));
    TestRunner::new_with_rng(config, rng)
        .run(&strat, |(dim, k, terms)| {
            let w = form(dim, k, &terms);
            prop_assume!(!w.is_zero());
            let text = print_form(&w);
            prop_assert_eq!(parse_form(&text, Some(dim)).unwrap(), w, "{}", text);
            Ok(())
        })
        .unwrap();
}
