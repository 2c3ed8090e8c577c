//! Dung semantics, grounded labelling and cf2 over the argument-level view.
//!
//! Extension enumeration works on `u64` membership masks, so frameworks
//! with more than 64 arguments are rejected by the exponential semantics.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::af::{sccs_within, AfError, DungGraph};

pub const MAX_ARGUMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Af(#[from] AfError),
    #[error("{0} arguments exceed the enumeration limit of {MAX_ARGUMENTS}")]
    TooManyArguments(usize),
}

/// A set of argument ids. Ordered by size, then lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Extension(BTreeSet<String>);

impl Extension {
    pub fn new<I, S>(members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Extension(members.into_iter().map(Into::into).collect())
    }

    pub fn members(&self) -> &BTreeSet<String> {
        &self.0
    }

    pub fn contains(&self, id: &str) -> bool {
        self.0.contains(id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> BTreeSet<String> {
        self.0
    }
}

impl Ord for Extension {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Extension {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

pub type ExtensionSet = BTreeSet<Extension>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    Undecided,
}

pub type Labelling = BTreeMap<String, Label>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Credulous,
    Skeptical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    Preferred,
    Cf2,
}

type Mask = u64;

fn bit(i: usize) -> Mask {
    1 << i
}

fn mask_members(mask: Mask) -> impl Iterator<Item = usize> {
    (0..MAX_ARGUMENTS).filter(move |&i| mask & bit(i) != 0)
}

/// Precomputed attack masks for a graph of at most 64 arguments.
struct Masks {
    n: usize,
    attacks: Vec<Mask>,
    attacked_by: Vec<Mask>,
}

impl Masks {
    fn new(g: &DungGraph) -> Result<Self, SemanticsError> {
        let n = g.len();
        if n > MAX_ARGUMENTS {
            return Err(SemanticsError::TooManyArguments(n));
        }
        let attacks = (0..n)
            .map(|i| g.successors(i).iter().fold(0, |m, &j| m | bit(j)))
            .collect();
        let attacked_by = (0..n)
            .map(|j| g.predecessors(j).iter().fold(0, |m, &i| m | bit(i)))
            .collect();
        Ok(Masks {
            n,
            attacks,
            attacked_by,
        })
    }

    fn range(&self, set: Mask) -> Mask {
        mask_members(set).fold(0, |m, i| m | self.attacks[i])
    }

    fn conflict_free(&self, set: Mask) -> bool {
        self.range(set) & set == 0
    }

    fn admissible(&self, set: Mask) -> bool {
        if !self.conflict_free(set) {
            return false;
        }
        let counter = self.range(set);
        mask_members(set).all(|i| self.attacked_by[i] & !counter == 0)
    }
}

fn to_mask(g: &DungGraph, ids: &BTreeSet<String>) -> Result<Mask, SemanticsError> {
    let mut m = 0;
    for id in ids {
        m |= bit(g.require(id)?);
    }
    Ok(m)
}

fn to_extension(g: &DungGraph, mask: Mask) -> Extension {
    Extension(mask_members(mask).map(|i| g.id(i).to_string()).collect())
}

fn keep_maximal(mut sets: Vec<Mask>) -> Vec<Mask> {
    sets.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    sets.dedup();
    let mut kept: Vec<Mask> = Vec::new();
    for s in sets {
        if !kept.iter().any(|&k| s & !k == 0) {
            kept.push(s);
        }
    }
    kept
}

/// All conflict-free subsets of `within`, by depth-first extension.
fn conflict_free_sets(m: &Masks, within: Mask) -> Vec<Mask> {
    let order: Vec<usize> = mask_members(within).collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0 as Mask)];
    while let Some((pos, set)) = stack.pop() {
        if pos == order.len() {
            out.push(set);
            continue;
        }
        let a = order[pos];
        stack.push((pos + 1, set));
        let with = set | bit(a);
        if m.attacks[a] & with == 0 && m.attacked_by[a] & with == 0 {
            stack.push((pos + 1, with));
        }
    }
    out
}

pub fn is_conflict_free(g: &DungGraph, set: &BTreeSet<String>) -> Result<bool, SemanticsError> {
    let m = Masks::new(g)?;
    Ok(m.conflict_free(to_mask(g, set)?))
}

pub fn is_admissible(g: &DungGraph, set: &BTreeSet<String>) -> Result<bool, SemanticsError> {
    let m = Masks::new(g)?;
    Ok(m.admissible(to_mask(g, set)?))
}

/// Maximal admissible sets.
pub fn preferred(g: &DungGraph) -> Result<ExtensionSet, SemanticsError> {
    let m = Masks::new(g)?;
    let all = if m.n == 64 { Mask::MAX } else { bit(m.n) - 1 };
    let admissible: Vec<Mask> = conflict_free_sets(&m, all)
        .into_iter()
        .filter(|&s| m.admissible(s))
        .collect();
    Ok(keep_maximal(admissible)
        .into_iter()
        .map(|s| to_extension(g, s))
        .collect())
}

/// Maximal conflict-free (naive) sets.
pub fn maximal_conflict_free(g: &DungGraph) -> Result<ExtensionSet, SemanticsError> {
    let m = Masks::new(g)?;
    let all = if m.n == 64 { Mask::MAX } else { bit(m.n) - 1 };
    Ok(keep_maximal(conflict_free_sets(&m, all))
        .into_iter()
        .map(|s| to_extension(g, s))
        .collect())
}

pub fn grounded_labelling(g: &DungGraph) -> Labelling {
    let n = g.len();
    let mut label: Vec<Option<Label>> = vec![None; n];
    loop {
        let mut changed = false;
        for i in 0..n {
            if label[i].is_some() {
                continue;
            }
            let attackers = g.predecessors(i);
            if attackers.iter().all(|&j| label[j] == Some(Label::Out)) {
                label[i] = Some(Label::In);
                changed = true;
            } else if attackers.iter().any(|&j| label[j] == Some(Label::In)) {
                label[i] = Some(Label::Out);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    label
        .into_iter()
        .enumerate()
        .map(|(i, l)| (g.id(i).to_string(), l.unwrap_or(Label::Undecided)))
        .collect()
}

/// SCC-recursive cf2 extensions.
pub fn cf2(g: &DungGraph) -> Result<ExtensionSet, SemanticsError> {
    let m = Masks::new(g)?;
    let succ: Vec<Vec<usize>> = (0..m.n).map(|i| g.successors(i).to_vec()).collect();
    let all = if m.n == 64 { Mask::MAX } else { bit(m.n) - 1 };
    let mut out: Vec<Mask> = cf2_within(&m, &succ, all);
    out.sort();
    out.dedup();
    Ok(out.into_iter().map(|s| to_extension(g, s)).collect())
}

fn cf2_within(m: &Masks, succ: &[Vec<usize>], within: Mask) -> Vec<Mask> {
    let active: Vec<bool> = (0..m.n).map(|i| within & bit(i) != 0).collect();
    let comps = sccs_within(succ, &active);
    if comps.len() <= 1 {
        return keep_maximal(conflict_free_sets(m, within));
    }
    let mut partial: Vec<Mask> = vec![0];
    for comp in comps {
        let comp_mask = comp.iter().fold(0, |acc, &i| acc | bit(i));
        let mut next = Vec::new();
        for e in partial {
            // components are processed in topological order, so only
            // earlier choices can attack this one
            let undefeated = comp_mask & !m.range(e);
            for s in cf2_within(m, succ, undefeated) {
                next.push(e | s);
            }
        }
        partial = next;
    }
    partial
}

pub fn acceptance(
    g: &DungGraph,
    arg: &str,
    mode: Mode,
    semantics: Semantics,
) -> Result<bool, SemanticsError> {
    g.require(arg)?;
    let exts = match semantics {
        Semantics::Preferred => preferred(g)?,
        Semantics::Cf2 => cf2(g)?,
    };
    Ok(match mode {
        Mode::Credulous => exts.iter().any(|e| e.contains(arg)),
        Mode::Skeptical => exts.iter().all(|e| e.contains(arg)),
    })
}

/// Exhaustive reference enumerations, written directly from the
/// definitions and sharing nothing with the optimized paths above.
pub mod oracle {
    use super::*;

    fn members(n: usize, subset: u64) -> Vec<usize> {
        (0..n).filter(|&i| (subset >> i) & 1 == 1).collect()
    }

    fn conflict_free(g: &DungGraph, set: &[usize]) -> bool {
        set.iter().all(|&a| set.iter().all(|&b| !g.attacks(a, b)))
    }

    fn admissible(g: &DungGraph, set: &[usize]) -> bool {
        conflict_free(g, set)
            && set.iter().all(|&a| {
                (0..g.len())
                    .filter(|&b| g.attacks(b, a))
                    .all(|b| set.iter().any(|&c| g.attacks(c, b)))
            })
    }

    fn maximal_of(g: &DungGraph, keep: impl Fn(&[usize]) -> bool) -> Result<ExtensionSet, SemanticsError> {
        let n = g.len();
        if n >= MAX_ARGUMENTS {
            return Err(SemanticsError::TooManyArguments(n));
        }
        let good: Vec<u64> = (0..1u64 << n)
            .filter(|&s| keep(&members(n, s)))
            .collect();
        Ok(good
            .iter()
            .filter(|&&s| !good.iter().any(|&t| t != s && s & t == s))
            .map(|&s| Extension::new(members(n, s).into_iter().map(|i| g.id(i).to_string())))
            .collect())
    }

    /// Preferred extensions by scanning all `2^n` subsets.
    pub fn preferred_brute_force(g: &DungGraph) -> Result<ExtensionSet, SemanticsError> {
        maximal_of(g, |s| admissible(g, s))
    }

    /// Maximal conflict-free sets by scanning all `2^n` subsets.
    pub fn maximal_conflict_free_brute_force(g: &DungGraph) -> Result<ExtensionSet, SemanticsError> {
        maximal_of(g, |s| conflict_free(g, s))
    }
}
