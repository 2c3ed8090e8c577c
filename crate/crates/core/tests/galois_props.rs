mod support;

use std::collections::BTreeSet;

use argabs::{ExprSet, Ontology};
use proptest::prelude::*;
use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ontology(rng: &mut ChaCha8Rng) -> Ontology {
    support::random_ontology(rng, 12)
}

/// Rewrites one expandable expression at a time, picked at random, until
/// none is left.
fn rewrite_randomly(ont: &Ontology, start: &ExprSet, rng: &mut ChaCha8Rng) -> ExprSet {
    let l = ont.lattice();
    let mut set = start.clone();
    loop {
        let candidates: Vec<String> = set
            .iter()
            .filter(|e| {
                let n = ont.image(e).unwrap();
                n != l.bottom() && l.children(n).iter().all(|&c| !ont.preimage(c).is_empty())
            })
            .cloned()
            .collect();
        let Some(e) = candidates.into_iter().choose(rng) else {
            return set;
        };
        set.remove(&e);
        for &c in l.children(ont.image(&e).unwrap()) {
            set.extend(ont.preimage(c).iter().cloned());
        }
    }
}

/// Join by exhaustive search for the least common upper bound.
fn alpha_oracle(ont: &Ontology, exprs: &ExprSet) -> argabs::NodeId {
    let l = ont.lattice();
    let images: Vec<_> = exprs.iter().map(|e| ont.image(e).unwrap()).collect();
    l.nodes()
        .filter(|&u| images.iter().all(|&i| l.leq(i, u)))
        .find(|&u| l.nodes().all(|v| !images.iter().all(|&i| l.leq(i, v)) || l.leq(u, v)))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_rewrite_order_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ont = ontology(&mut rng);
        let exprs = support::expressions(&ont);
        let start = support::random_subset(&mut rng, &exprs);
        let canon = ont.canonicalize(&start).unwrap();
        for _ in 0..4 {
            prop_assert_eq!(&rewrite_randomly(&ont, &start, &mut rng), &canon);
        }
        prop_assert_eq!(ont.canonicalize(&canon).unwrap(), canon);
    }

    #[test]
    fn quotient_order_is_a_preorder(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ont = ontology(&mut rng);
        let exprs = support::expressions(&ont);
        let sets: Vec<ExprSet> = (0..5).map(|_| support::random_subset(&mut rng, &exprs)).collect();
        for a in &sets {
            prop_assert!(ont.l1_leq(a, a).unwrap());
            for b in &sets {
                if a.is_subset(b) {
                    prop_assert!(ont.l1_leq(a, b).unwrap());
                }
                for c in &sets {
                    if ont.l1_leq(a, b).unwrap() && ont.l1_leq(b, c).unwrap() {
                        prop_assert!(ont.l1_leq(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn alpha_is_the_join(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ont = ontology(&mut rng);
        let exprs = support::expressions(&ont);
        let e = support::random_subset(&mut rng, &exprs);
        prop_assert_eq!(ont.alpha(&e).unwrap(), alpha_oracle(&ont, &e));
    }

    #[test]
    fn gamma_collects_preimages_below(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ont = ontology(&mut rng);
        let l = ont.lattice();
        for n in l.nodes() {
            let expected: BTreeSet<String> = ont
                .map()
                .iter()
                .filter(|&(_, m)| if n == l.bottom() { m == n } else { l.children(n).contains(&m) })
                .map(|(e, _)| e.to_string())
                .collect();
            prop_assert_eq!(ont.gamma(n), expected);
        }
    }

    #[test]
    fn alpha_gamma_is_contractive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ont = ontology(&mut rng);
        let l = ont.lattice();
        for n in l.nodes() {
            prop_assert!(l.leq(ont.alpha(&ont.gamma(n)).unwrap(), n));
        }
    }

    #[test]
    fn alpha_is_monotone_under_inclusion(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ont = ontology(&mut rng);
        let exprs = support::expressions(&ont);
        let small = support::random_subset(&mut rng, &exprs);
        let mut large = small.clone();
        large.extend(support::random_subset(&mut rng, &exprs));
        prop_assert!(ont.lattice().leq(ont.alpha(&small).unwrap(), ont.alpha(&large).unwrap()));
    }

    #[test]
    fn best_abstraction_is_least(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ont = ontology(&mut rng);
        let exprs = support::expressions(&ont);
        let mut set = support::random_subset(&mut rng, &exprs);
        set.insert(exprs[rng.gen_range(0..exprs.len())].clone());
        let l = ont.lattice();
        for ex in &exprs {
            let best = ont.is_best_abstraction(ex, &set).unwrap();
            let abs = ont.is_abstraction(ex, &set).unwrap();
            prop_assert!(!best || abs);
            if best {
                for other in &exprs {
                    if ont.is_abstraction(other, &set).unwrap() {
                        prop_assert!(l.leq(ont.image(ex).unwrap(), ont.image(other).unwrap()));
                    }
                }
            }
        }
    }
}
