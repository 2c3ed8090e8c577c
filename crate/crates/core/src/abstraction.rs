//! Argument abstraction: the four per-expression conditions, best
//! abstractions, and the four conditions that make an abstraction
//! conservative inside a framework.

use std::borrow::Cow;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::af::{ArgLet, Argument, Framework};
use crate::galois::{ExprSet, Ontology};
use crate::lattice::{NodeId, UpperSet};
use crate::Error;

/// Suffix given to expressions invented for a best abstraction when no
/// declared expression sits at the join.
pub const SYNTHETIC_SUFFIX: &str = "#abs";

/// An abstract argument proposed as a replacement for a target set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractionCandidate {
    pub targets: BTreeSet<String>,
    pub abstract_arg: Argument,
    /// Binding for an expression that is not (yet) in the semantic map.
    pub synthetic: Option<(String, NodeId)>,
}

impl AbstractionCandidate {
    pub fn new(targets: BTreeSet<String>, abstract_arg: Argument) -> Self {
        AbstractionCandidate {
            targets,
            abstract_arg,
            synthetic: None,
        }
    }

    /// The ontology in which every expression of the abstract argument is
    /// mapped.
    pub fn ontology<'a>(&self, ont: &'a Ontology) -> Result<Cow<'a, Ontology>, Error> {
        match &self.synthetic {
            None => Ok(Cow::Borrowed(ont)),
            Some((e, n)) => Ok(ont.with_binding(e, *n)?),
        }
    }
}

fn union_of(args: &[Argument]) -> ExprSet {
    args.iter().flat_map(|a| a.expressions.iter().cloned()).collect()
}

fn check_declared(ont: &Ontology, ax: &Argument, args: &[Argument]) -> Result<(), Error> {
    for e in ax.expressions.iter().chain(args.iter().flat_map(|a| &a.expressions)) {
        ont.image(e)?;
    }
    Ok(())
}

/// Any expression of `ax` that abstracts something in the targets must
/// abstract something from every target.
pub fn is_abstraction_covering(ont: &Ontology, ax: &Argument, args: &[Argument]) -> Result<bool, Error> {
    check_declared(ont, ax, args)?;
    for e in &ax.expressions {
        let hits = |a: &Argument| -> Result<bool, Error> {
            for u in &a.expressions {
                if ont.abstracts(e, u)? {
                    return Ok(true);
                }
            }
            Ok(false)
        };
        let mut any = false;
        let mut all = true;
        for a in args {
            let h = hits(a)?;
            any |= h;
            all &= h;
        }
        if any && !all {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No target expression is abstracted by two expressions of `ax`.
pub fn is_abstraction_disjoint(ont: &Ontology, ax: &Argument, args: &[Argument]) -> Result<bool, Error> {
    check_declared(ont, ax, args)?;
    for u in union_of(args) {
        let mut count = 0;
        for e in &ax.expressions {
            if ont.abstracts(e, &u)? {
                count += 1;
            }
        }
        if count > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every target expression is abstracted by some expression of `ax`.
pub fn is_abstraction_sound(ont: &Ontology, ax: &Argument, args: &[Argument]) -> Result<bool, Error> {
    check_declared(ont, ax, args)?;
    for u in union_of(args) {
        let mut covered = false;
        for e in &ax.expressions {
            covered |= ont.abstracts(e, &u)?;
        }
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every expression of `ax` abstracts some target expression.
pub fn is_abstraction_complete(ont: &Ontology, ax: &Argument, args: &[Argument]) -> Result<bool, Error> {
    check_declared(ont, ax, args)?;
    let union = union_of(args);
    for e in &ax.expressions {
        let mut relevant = false;
        for u in &union {
            relevant |= ont.abstracts(e, u)?;
        }
        if !relevant {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_argument_abstraction(ont: &Ontology, ax: &Argument, args: &[Argument]) -> Result<bool, Error> {
    Ok(is_abstraction_covering(ont, ax, args)?
        && is_abstraction_disjoint(ont, ax, args)?
        && is_abstraction_sound(ont, ax, args)?
        && is_abstraction_complete(ont, ax, args)?)
}

fn target_arguments(fw: &Framework, targets: &BTreeSet<String>) -> Result<Vec<Argument>, Error> {
    let missing: Vec<String> = targets
        .iter()
        .filter(|t| !fw.contains_argument(t))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(Error::TargetsNotInFramework(missing));
    }
    Ok(targets.iter().map(|t| fw.argument(t)).collect::<Result<_, _>>()?)
}

/// An id not used in `fw`, derived from the target ids.
pub fn fresh_id(fw: &Framework, targets: &BTreeSet<String>) -> String {
    let joined: Vec<&str> = targets.iter().map(String::as_str).collect();
    let mut id = format!("[{}]", joined.join("+"));
    while fw.contains_argument(&id) {
        id.push('\'');
    }
    id
}

/// A fresh single-expression argument at the join of every target
/// expression. Reuses the smallest declared expression at that node, or
/// invents `<node>#abs`.
pub fn best_abstraction_of(
    fw: &Framework,
    ont: &Ontology,
    targets: &BTreeSet<String>,
) -> Result<AbstractionCandidate, Error> {
    if targets.is_empty() {
        return Err(Error::EmptyTargets);
    }
    let args = target_arguments(fw, targets)?;
    let node = ont.alpha(&union_of(&args))?;
    let (expr, synthetic) = match ont.preimage(node).iter().next() {
        Some(e) => (e.clone(), None),
        None => {
            let e = format!("{}{}", ont.lattice().name(node), SYNTHETIC_SUFFIX);
            (e.clone(), Some((e, node)))
        }
    };
    Ok(AbstractionCandidate {
        targets: targets.clone(),
        abstract_arg: Argument::new(fresh_id(fw, targets), [expr]),
        synthetic,
    })
}

/// The targets sit in one strongly connected component and no strictly
/// larger target set inside that component is abstracted by the candidate.
pub fn is_valid(fw: &Framework, ont: &Ontology, cand: &AbstractionCandidate) -> Result<bool, Error> {
    Ok(validity(fw, ont, cand)?.0)
}

/// Validity verdict plus the component found and any blocking superset.
fn validity(
    fw: &Framework,
    ont: &Ontology,
    cand: &AbstractionCandidate,
) -> Result<(bool, Option<BTreeSet<String>>, Option<BTreeSet<String>>), Error> {
    target_arguments(fw, &cand.targets)?;
    let ont = cand.ontology(ont)?;
    let Some(scc) = fw
        .sccs()
        .into_iter()
        .find(|c| cand.targets.is_subset(c))
    else {
        return Ok((false, None, None));
    };
    let extras: Vec<&String> = scc.difference(&cand.targets).collect();
    if extras.len() >= 64 {
        return Err(Error::TooLarge(extras.len()));
    }
    for pick in 1..(1u64 << extras.len()) {
        let mut wider = cand.targets.clone();
        for (i, x) in extras.iter().enumerate() {
            if pick >> i & 1 == 1 {
                wider.insert((*x).clone());
            }
        }
        let args = target_arguments(fw, &wider)?;
        if is_argument_abstraction(&ont, &cand.abstract_arg, &args)? {
            return Ok((false, Some(scc), Some(wider)));
        }
    }
    Ok((true, Some(scc), None))
}

/// The abstract argument's join lies outside the upper set `upper`.
pub fn is_non_trivial(ont: &Ontology, upper: &UpperSet, cand: &AbstractionCandidate) -> Result<bool, Error> {
    let ont = cand.ontology(ont)?;
    Ok(!upper.contains(ont.alpha(&cand.abstract_arg.expressions)?))
}

fn internal_comparable_attack(
    fw: &Framework,
    ont: &Ontology,
    targets: &BTreeSet<String>,
) -> Result<Option<(ArgLet, ArgLet)>, Error> {
    target_arguments(fw, targets)?;
    for (x, y) in fw.attacks() {
        if targets.contains(&x.arg) && targets.contains(&y.arg) {
            let (fx, fy) = (ont.image(&x.expr)?, ont.image(&y.expr)?);
            if ont.lattice().comparable(fx, fy) {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
    }
    Ok(None)
}

/// No attack inside the target set runs between ⊑-comparable expressions
/// (self-attacks included).
pub fn is_compatible(fw: &Framework, ont: &Ontology, targets: &BTreeSet<String>) -> Result<bool, Error> {
    Ok(internal_comparable_attack(fw, ont, targets)?.is_none())
}

/// One boundary attack examined by the attack-preservation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryCheck {
    pub external: String,
    pub node: String,
    pub comparable: bool,
}

fn boundary_checks(
    fw: &Framework,
    ont: &Ontology,
    cand: &AbstractionCandidate,
) -> Result<Vec<BoundaryCheck>, Error> {
    target_arguments(fw, &cand.targets)?;
    let ont = cand.ontology(ont)?;
    let ax = ont.alpha(&cand.abstract_arg.expressions)?;
    let mut externals = BTreeSet::new();
    for (x, y) in fw.attacks() {
        let (xin, yin) = (cand.targets.contains(&x.arg), cand.targets.contains(&y.arg));
        if xin && !yin {
            externals.insert(y.clone());
        } else if yin && !xin {
            externals.insert(x.clone());
        }
    }
    externals
        .into_iter()
        .map(|ext| {
            let node = ont.image(&ext.expr)?;
            Ok(BoundaryCheck {
                external: ext.to_string(),
                node: ont.lattice().name(node).to_string(),
                comparable: ont.lattice().comparable(ax, node),
            })
        })
        .collect()
}

/// Every argument-let outside the targets that attacks or is attacked by a
/// target has an image ⊑-incomparable with the abstract argument's join.
pub fn is_attack_preserving(fw: &Framework, ont: &Ontology, cand: &AbstractionCandidate) -> Result<bool, Error> {
    Ok(boundary_checks(fw, ont, cand)?.iter().all(|c| !c.comparable))
}

/// Per-condition verdicts for one candidate, with the evidence behind them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConservativityReport {
    pub targets: BTreeSet<String>,
    pub abstract_id: String,
    pub abstract_expressions: ExprSet,
    pub node: String,
    pub valid: bool,
    pub scc: Option<BTreeSet<String>>,
    pub blocking_superset: Option<BTreeSet<String>>,
    pub non_trivial: bool,
    pub in_upper_set: bool,
    pub compatible: bool,
    pub comparable_attack: Option<(String, String)>,
    pub attack_preserving: bool,
    pub boundary: Vec<BoundaryCheck>,
}

impl ConservativityReport {
    pub fn is_conservative(&self) -> bool {
        self.valid && self.non_trivial && self.compatible && self.attack_preserving
    }
}

pub fn conservativity_report(
    fw: &Framework,
    ont: &Ontology,
    upper: &UpperSet,
    cand: &AbstractionCandidate,
) -> Result<ConservativityReport, Error> {
    let (valid, scc, blocking_superset) = validity(fw, ont, cand)?;
    let ext = cand.ontology(ont)?;
    let node = ext.alpha(&cand.abstract_arg.expressions)?;
    let comparable_attack = internal_comparable_attack(fw, ont, &cand.targets)?;
    let boundary = boundary_checks(fw, ont, cand)?;
    Ok(ConservativityReport {
        targets: cand.targets.clone(),
        abstract_id: cand.abstract_arg.id.clone(),
        abstract_expressions: cand.abstract_arg.expressions.clone(),
        node: ont.lattice().name(node).to_string(),
        valid,
        scc,
        blocking_superset,
        non_trivial: !upper.contains(node),
        in_upper_set: upper.contains(node),
        compatible: comparable_attack.is_none(),
        comparable_attack: comparable_attack.map(|(x, y)| (x.to_string(), y.to_string())),
        attack_preserving: boundary.iter().all(|c| !c.comparable),
        boundary,
    })
}

pub fn is_conservative(
    fw: &Framework,
    ont: &Ontology,
    upper: &UpperSet,
    cand: &AbstractionCandidate,
) -> Result<bool, Error> {
    Ok(is_valid(fw, ont, cand)?
        && is_non_trivial(ont, upper, cand)?
        && is_compatible(fw, ont, &cand.targets)?
        && is_attack_preserving(fw, ont, cand)?)
}
