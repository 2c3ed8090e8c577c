#![allow(dead_code)]

use std::collections::BTreeSet;

use argabs::{ArgLet, FiniteLattice, Framework, Ontology, SemanticMap};
use rand::seq::SliceRandom;
use rand::Rng;

pub const MAX_NODES: usize = 12;

pub fn s(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// A random closure system on a ground set of at most four points, read as
/// a lattice ordered by inclusion. Every finite lattice arises this way.
pub fn random_lattice<R: Rng>(rng: &mut R) -> FiniteLattice {
    loop {
        let ground = rng.gen_range(1..=4u32);
        let full = (1u32 << ground) - 1;
        let picks = rng.gen_range(0..=6);
        let mut family: BTreeSet<u32> = BTreeSet::from([full]);
        for _ in 0..picks {
            family.insert(rng.gen_range(0..=full));
        }
        loop {
            let snapshot: Vec<u32> = family.iter().copied().collect();
            let before = family.len();
            for &a in &snapshot {
                for &b in &snapshot {
                    family.insert(a & b);
                }
            }
            if family.len() == before {
                break;
            }
        }
        if family.len() > MAX_NODES {
            continue;
        }
        let sets: Vec<u32> = family.into_iter().collect();
        let name = |x: u32| format!("n{x:02}");
        let below = |a: u32, b: u32| a != b && a & b == a;
        let mut covers = Vec::new();
        for &a in &sets {
            for &b in &sets {
                if below(a, b) && !sets.iter().any(|&c| below(a, c) && below(c, b)) {
                    covers.push((name(a), name(b)));
                }
            }
        }
        let names: Vec<String> = sets.iter().map(|&x| name(x)).collect();
        return FiniteLattice::from_hasse(
            names.iter().map(String::as_str),
            covers.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
        .expect("closure systems are lattices");
    }
}

/// Up to `max_exprs` expressions `e0, e1, ...` mapped onto random nodes.
pub fn random_ontology<R: Rng>(rng: &mut R, max_exprs: usize) -> Ontology {
    let lattice = random_lattice(rng);
    let nodes: Vec<_> = lattice.nodes().collect();
    let count = rng.gen_range(1..=max_exprs);
    let mut map = SemanticMap::new();
    for i in 0..count {
        map.insert(format!("e{i}"), *nodes.choose(rng).unwrap()).unwrap();
    }
    Ontology::new(lattice, map)
}

pub fn expressions(ont: &Ontology) -> Vec<String> {
    ont.map().iter().map(|(e, _)| e.to_string()).collect()
}

/// A random subset of `items`.
pub fn random_subset<R: Rng, T: Clone + Ord>(rng: &mut R, items: &[T]) -> BTreeSet<T> {
    items.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

/// Argument-level random graph on `a0..a{n-1}`, each argument carrying its
/// own id as expression.
pub fn random_argument_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Framework {
    let ids: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let mut edges = Vec::new();
    for x in &ids {
        for y in &ids {
            if rng.gen_bool(density) {
                edges.push((x.as_str(), y.as_str()));
            }
        }
    }
    Framework::from_argument_graph(ids.iter().map(String::as_str), edges).unwrap()
}

/// A framework over the expressions of `ont`: every argument gets one or two
/// expressions and arglet attacks are drawn with probability `density`.
pub fn random_framework<R: Rng>(rng: &mut R, ont: &Ontology, n: usize, density: f64) -> Framework {
    let exprs = expressions(ont);
    let mut arglets = BTreeSet::new();
    for i in 0..n {
        let k = if exprs.len() > 1 && rng.gen_bool(0.25) { 2 } else { 1 };
        for e in exprs.choose_multiple(rng, k) {
            arglets.insert(ArgLet::new(format!("a{i}"), e.clone()));
        }
    }
    let lets: Vec<ArgLet> = arglets.iter().cloned().collect();
    let mut attacks = BTreeSet::new();
    for x in &lets {
        for y in &lets {
            if rng.gen_bool(density) {
                attacks.insert((x.clone(), y.clone()));
            }
        }
    }
    Framework::new(arglets, attacks).unwrap()
}
