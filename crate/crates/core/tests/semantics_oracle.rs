mod support;

use std::collections::BTreeSet;

use argabs::semantics::{self, oracle, Label, Mode, Semantics};
use argabs::{DungGraph, Extension};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64, max: usize) -> DungGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max);
    let density = rng.gen_range(0.05..0.4);
    support::random_argument_graph(&mut rng, n, density).project_dung()
}

fn reachable(g: &DungGraph, from: usize, to: usize) -> bool {
    let mut seen = vec![false; g.len()];
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for &w in g.successors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn preferred_matches_brute_force(seed in any::<u64>()) {
        let g = graph(seed, 10);
        prop_assert_eq!(semantics::preferred(&g).unwrap(), oracle::preferred_brute_force(&g).unwrap());
    }

    #[test]
    fn maximal_conflict_free_matches_brute_force(seed in any::<u64>()) {
        let g = graph(seed, 10);
        prop_assert_eq!(
            semantics::maximal_conflict_free(&g).unwrap(),
            oracle::maximal_conflict_free_brute_force(&g).unwrap()
        );
    }

    #[test]
    fn sccs_partition_in_topological_order(seed in any::<u64>()) {
        let g = graph(seed, 12);
        let comps = g.sccs();
        let mut all: Vec<usize> = comps.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.len()).collect::<Vec<_>>());
        let comp_of = |v: usize| comps.iter().position(|c| c.contains(&v)).unwrap();
        for a in 0..g.len() {
            for b in 0..g.len() {
                let same = reachable(&g, a, b) && reachable(&g, b, a);
                prop_assert_eq!(same, comp_of(a) == comp_of(b));
                if g.attacks(a, b) {
                    prop_assert!(comp_of(a) <= comp_of(b));
                }
            }
        }
    }

    #[test]
    fn cf2_extensions_are_maximal_conflict_free_sets(seed in any::<u64>()) {
        let g = graph(seed, 10);
        let cf2 = semantics::cf2(&g).unwrap();
        prop_assert!(!cf2.is_empty());
        let mcf = oracle::maximal_conflict_free_brute_force(&g).unwrap();
        for e in &cf2 {
            prop_assert!(mcf.contains(e));
        }
        if g.sccs().len() == 1 {
            prop_assert_eq!(cf2, mcf);
        }
    }

    #[test]
    fn grounded_labelling_is_sound(seed in any::<u64>()) {
        let g = graph(seed, 10);
        let lab = semantics::grounded_labelling(&g);
        let ins: BTreeSet<String> = lab.iter().filter(|(_, l)| **l == Label::In).map(|(a, _)| a.clone()).collect();
        prop_assert!(semantics::is_admissible(&g, &ins).unwrap());
        for i in 0..g.len() {
            let attackers: Vec<Label> = g.predecessors(i).iter().map(|&p| lab[g.id(p)]).collect();
            let expected = if attackers.iter().all(|&l| l == Label::Out) {
                Label::In
            } else if attackers.contains(&Label::In) {
                Label::Out
            } else {
                Label::Undecided
            };
            prop_assert_eq!(lab[g.id(i)], expected);
        }
        for p in semantics::preferred(&g).unwrap() {
            prop_assert!(ins.is_subset(p.members()));
        }
    }

    #[test]
    fn skeptical_implies_credulous(seed in any::<u64>()) {
        let g = graph(seed, 8);
        for sem in [Semantics::Preferred, Semantics::Cf2] {
            for id in g.ids() {
                if semantics::acceptance(&g, id, Mode::Skeptical, sem).unwrap() {
                    prop_assert!(semantics::acceptance(&g, id, Mode::Credulous, sem).unwrap());
                }
            }
        }
    }
}

#[test]
fn extensions_order_by_size_then_members() {
    let a = Extension::new(["b"]);
    let b = Extension::new(["a", "c"]);
    let c = Extension::new(["a", "d"]);
    assert!(a < b && b < c);
    assert_eq!(serde_json::to_string(&b).unwrap(), r#"["a","c"]"#);
}
