mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiver_gb::completion::{buchberger, q_complete, CompletionConfig};
use quiver_gb::consequence::{certificate_from_trace, compose_certificates, verify_definition};
use quiver_gb::order::is_q_order_compatible;
use quiver_gb::rewrite::{trace_expand, DivisorMap, Reducer};
use quiver_gb::{DegLex, Error, Symbol};

use common::*;

fn order(rng: &mut ChaCha8Rng, n: usize) -> DegLex {
    let mut prec: Vec<Symbol> = (0..n as u32).map(Symbol).collect();
    prec.shuffle(rng);
    DegLex::from_precedence(prec, n).unwrap()
}

fn bounded() -> CompletionConfig {
    CompletionConfig {
        max_new_elements: 4,
        max_ambiguities: 40,
        max_source_degree: Some(6),
        step_cap: 1_000,
        ..CompletionConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reduction_trace_replays(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng, 3, 6, 3);
        let n = q.vertex_count();
        let gens: Vec<_> = (0..rng.gen_range(1..=3))
            .filter_map(|_| random_poly_anywhere(&mut rng, &q, 3, 3))
            .collect();
        prop_assume!(!gens.is_empty());
        let f = random_path_poly(&mut rng, &q, 0, n - 1, 5, 4);
        prop_assume!(f.is_some());
        let f = f.unwrap();
        let ord = order(&mut rng, 3);
        let dm = DivisorMap::leading(&gens, &ord).unwrap();
        match Reducer::new(&gens, &dm, &ord).with_cap(2_000).reduce(&f) {
            Ok((nf, trace)) => {
                prop_assert_eq!(trace_expand(&gens, &trace).unwrap(), &f - &nf);
                prop_assert!(!Reducer::new(&gens, &dm, &ord).is_reducible(&nf));
            }
            Err(Error::StepLimit(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn unique_label_consequences_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_unique_label_quiver(&mut rng, 4, 4);
        prop_assert!(q.has_unique_edge_labels());
        let n = q.vertex_count();
        let gens: Vec<_> = (0..rng.gen_range(1..=3))
            .filter_map(|_| random_poly_anywhere(&mut rng, &q, 3, 3))
            .enumerate()
            .map(|(k, g)| (format!("g{k}"), g))
            .collect();
        prop_assume!(!gens.is_empty());
        let ord = order(&mut rng, 4);
        let res = match buchberger(&gens, &ord, &bounded()) {
            Ok(r) => r,
            Err(Error::StepLimit(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assume!(!res.constant_found);
        for (id, g) in &res.basis {
            // every basis element is itself a consequence of the inputs
            let cert = &res.certificates[id];
            prop_assert_eq!(&cert.expansion().unwrap(), g);
            if q.is_compatible(g) {
                prop_assert!(verify_definition(&q, cert).is_ok(), "{}", id);
            }
        }
        let basis = res.polynomials();
        let dm = DivisorMap::leading(&basis, &ord).unwrap();
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (_, g) = &gens[rng.gen_range(0..gens.len())];
        let pairs: Vec<_> = q.sigma(g).pairs().collect();
        let (v, w) = pairs[rng.gen_range(0..pairs.len())];
        let (bs, as_) = (path_words(&q, a, v.0, 2), path_words(&q, w.0, b, 2));
        prop_assume!(!bs.is_empty() && !as_.is_empty());
        let f = g.sandwich(&small_rational(&mut rng), as_.choose(&mut rng).unwrap(), bs.choose(&mut rng).unwrap());
        prop_assert!(q.is_compatible(&f));
        if let Ok((nf, trace)) = Reducer::new(&basis, &dm, &ord).with_cap(2_000).reduce(&f) {
            if nf.is_zero() {
                let outer = certificate_from_trace(&f, &trace, &res.basis).unwrap();
                let cert = compose_certificates(&outer, &res.certificates).unwrap();
                prop_assert!(verify_definition(&q, &cert).is_ok());
            }
        }
    }

    #[test]
    fn q_completion_keeps_order_compatibility(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng, 3, 6, 3);
        let ord = order(&mut rng, 3);
        let gens: Vec<_> = (0..rng.gen_range(1..=3))
            .filter_map(|_| random_poly_anywhere(&mut rng, &q, 3, 3))
            .filter(|g| is_q_order_compatible(&q, &ord, g).unwrap())
            .enumerate()
            .map(|(k, g)| (format!("g{k}"), g))
            .collect();
        prop_assume!(!gens.is_empty());
        let res = match q_complete(&q, &gens, &ord, &bounded()) {
            Ok(r) => r,
            Err(Error::StepLimit(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(res.lemma_violations, 0);
        for (id, g) in res.added() {
            prop_assert!(is_q_order_compatible(&q, &ord, g).unwrap(), "{}", id);
            prop_assert!(verify_definition(&q, &res.certificates[id]).is_ok(), "{}", id);
        }
    }
}
