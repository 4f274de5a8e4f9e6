use normideal::closure::{integral_closure, is_integrally_closed, np_member};
use normideal::format::{verify_json, CertificateDoc, ClosureDoc};
use normideal::normality::{certify_normal, decompose, normal_threshold, verify_truncation_power};
use normideal::{truncation_ideal, Monomial, MonomialIdeal, WeightSystem};
use proptest::prelude::*;

fn weights(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=6, 2..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncations_are_integrally_closed(w in weights(3), alpha in 1u64..=30) {
        let ring = WeightSystem::new(w).unwrap();
        let ideal = truncation_ideal(&ring, alpha).unwrap();
        prop_assert!(is_integrally_closed(&ideal).unwrap());
    }

    #[test]
    fn threshold_truncation_is_normal(w in weights(3)) {
        let ring = WeightSystem::new(w).unwrap();
        let cert = certify_normal(&ring, 3).unwrap();
        prop_assert!(cert.violations().is_empty());
        let text = serde_json::to_string(&CertificateDoc::from(&cert)).unwrap();
        prop_assert!(verify_json(&text).unwrap().is_empty());
    }

    #[test]
    fn decomposition_factors_have_threshold_degree(
        w in weights(4),
        exps in prop::collection::vec(0u64..40, 4),
        p in 1u64..=4,
    ) {
        let ring = WeightSystem::new(w.clone()).unwrap();
        let th = normal_threshold(&ring).unwrap();
        let mono = Monomial::new(exps[..w.len()].to_vec());
        let deg = ring.degree(&mono).unwrap().value();
        match decompose(&ring, &mono, p) {
            Ok(cert) => {
                prop_assert!(deg >= p * th.threshold);
                prop_assert!(cert.check(th.threshold).is_ok());
                prop_assert_eq!(cert.factors.len() as u64, p);
            }
            Err(_) => prop_assert!(deg < p * th.threshold),
        }
    }

    #[test]
    fn closure_is_idempotent_and_contains_input(
        gens in prop::collection::vec(prop::collection::vec(0u64..=7, 2), 1..=4)
    ) {
        let ring = WeightSystem::new(vec![1, 1]).unwrap();
        let ideal = MonomialIdeal::minimalize(&ring, gens.into_iter().map(Monomial::new).collect()).unwrap();
        let report = integral_closure(&ideal).unwrap();
        prop_assert!(report.closure.contains_ideal(&ideal).unwrap());
        prop_assert!(is_integrally_closed(&report.closure).unwrap());
        for g in report.closure.generators() {
            prop_assert!(np_member(&ideal, g).unwrap());
        }
        let doc = ClosureDoc::new(&report, &["x".to_string(), "y".to_string()]);
        prop_assert!(verify_json(&serde_json::to_string(&doc).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn products_of_closed_ideals_in_two_variables_are_closed(
        a in prop::collection::vec(prop::collection::vec(0u64..=6, 2), 1..=3),
        b in prop::collection::vec(prop::collection::vec(0u64..=6, 2), 1..=3),
    ) {
        let ring = WeightSystem::new(vec![1, 1]).unwrap();
        let close = |g: Vec<Vec<u64>>| {
            let i = MonomialIdeal::minimalize(&ring, g.into_iter().map(Monomial::new).collect()).unwrap();
            integral_closure(&i).unwrap().closure
        };
        let product = close(a).product(&close(b)).unwrap();
        prop_assert!(is_integrally_closed(&product).unwrap());
    }
}

#[test]
fn powers_below_threshold_can_fail() {
    let ring = WeightSystem::new(vec![2, 3]).unwrap();
    assert!(!verify_truncation_power(&ring, 7, 3).unwrap().is_equal());
    assert!(verify_truncation_power(&ring, 6, 3).unwrap().is_equal());
}
