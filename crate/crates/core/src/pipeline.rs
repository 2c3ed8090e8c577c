//! Derivation of abstract-space frameworks and the projection of their
//! preferred extensions back onto the concrete arguments.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::abstraction::{best_abstraction_of, conservativity_report, ConservativityReport};
use crate::af::{ArgLet, Argument, Framework};
use crate::galois::Ontology;
use crate::lattice::UpperSet;
use crate::semantics::{preferred, Extension, ExtensionSet};
use crate::Error;

/// Smallest target set the derivation will abstract.
pub const MIN_TARGETS: usize = 2;

/// One replacement performed while deriving a framework.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProvenanceStep {
    pub scc: BTreeSet<String>,
    pub targets: BTreeSet<String>,
    pub abstract_id: String,
    pub abstract_expressions: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedFramework {
    pub framework: Framework,
    pub provenance: Vec<ProvenanceStep>,
}

/// Every candidate examined for one component, and the maximal ones kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SccScan {
    pub scc: BTreeSet<String>,
    pub evaluated: Vec<ConservativityReport>,
    pub maximal: Vec<BTreeSet<String>>,
}

#[derive(Debug, Clone)]
pub struct AbstractionResult {
    pub frameworks: Vec<DerivedFramework>,
    pub scans: Vec<SccScan>,
    /// The input ontology plus any synthetic expressions introduced.
    pub ontology: Ontology,
}

impl AbstractionResult {
    pub fn framework_list(&self) -> Vec<Framework> {
        self.frameworks.iter().map(|d| d.framework.clone()).collect()
    }
}

/// Subsets of `items` of size `k`, in lexicographic order.
fn combinations(items: &[String], k: usize) -> Vec<BTreeSet<String>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    let n = items.len();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

fn scan_scc(
    fw: &Framework,
    ont: &Ontology,
    upper: &UpperSet,
    scc: &BTreeSet<String>,
) -> Result<SccScan, Error> {
    let items: Vec<String> = scc.iter().cloned().collect();
    let mut evaluated = Vec::new();
    let mut maximal: Vec<BTreeSet<String>> = Vec::new();
    for k in (MIN_TARGETS..=items.len()).rev() {
        for subset in combinations(&items, k) {
            if maximal.iter().any(|m| subset.is_subset(m)) {
                continue;
            }
            let cand = best_abstraction_of(fw, ont, &subset)?;
            let report = conservativity_report(fw, ont, upper, &cand)?;
            if report.is_conservative() {
                maximal.push(subset);
            }
            evaluated.push(report);
        }
    }
    Ok(SccScan {
        scc: scc.clone(),
        evaluated,
        maximal,
    })
}

/// Maximal subsets (of at least two arguments) of `scc` whose best
/// abstraction is conservative, largest first.
pub fn maximal_conservative_subsets(
    fw: &Framework,
    ont: &Ontology,
    upper: &UpperSet,
    scc: &BTreeSet<String>,
) -> Result<Vec<BTreeSet<String>>, Error> {
    Ok(scan_scc(fw, ont, upper, scc)?.maximal)
}

/// Replaces `targets` by `abstract_arg`, redirecting boundary attacks to
/// and from its argument-lets and dropping attacks internal to the targets.
pub fn abstract_replace(
    fw: &Framework,
    targets: &BTreeSet<String>,
    abstract_arg: &Argument,
) -> Result<Framework, Error> {
    let missing: Vec<String> = targets
        .iter()
        .filter(|t| !fw.contains_argument(t))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(Error::TargetsNotInFramework(missing));
    }
    if fw.contains_argument(&abstract_arg.id) {
        return Err(Error::IdCollision(abstract_arg.id.clone()));
    }
    let new_lets: Vec<ArgLet> = abstract_arg
        .expressions
        .iter()
        .map(|e| ArgLet::new(abstract_arg.id.clone(), e.clone()))
        .collect();
    let inside = |l: &ArgLet| targets.contains(&l.arg);

    let arglets = fw
        .arglets()
        .iter()
        .filter(|l| !inside(l))
        .cloned()
        .chain(new_lets.iter().cloned());
    let mut attacks = BTreeSet::new();
    for (x, y) in fw.attacks() {
        match (inside(x), inside(y)) {
            (false, false) => {
                attacks.insert((x.clone(), y.clone()));
            }
            (true, false) => {
                for l in &new_lets {
                    attacks.insert((l.clone(), y.clone()));
                }
            }
            (false, true) => {
                for l in &new_lets {
                    attacks.insert((x.clone(), l.clone()));
                }
            }
            (true, true) => {}
        }
    }
    Ok(Framework::new(arglets, attacks)?)
}

/// All abstract-space frameworks obtained by replacing, per strongly
/// connected component, one maximal conservatively abstractable subset
/// with its best abstraction.
pub fn derive_abs(fw: &Framework, ont: &Ontology, upper: &UpperSet) -> Result<AbstractionResult, Error> {
    let mut working = ont.clone();
    let mut sigma = vec![DerivedFramework {
        framework: fw.clone(),
        provenance: Vec::new(),
    }];
    let mut scans = Vec::new();
    for scc in fw.sccs() {
        if scc.len() < MIN_TARGETS {
            continue;
        }
        let scan = scan_scc(fw, ont, upper, &scc)?;
        if !scan.maximal.is_empty() {
            let mut next: Vec<DerivedFramework> = Vec::new();
            for acc in &sigma {
                for targets in &scan.maximal {
                    let cand = best_abstraction_of(fw, ont, targets)?;
                    if let Some((e, n)) = &cand.synthetic {
                        if working.map().get(e).is_none() {
                            working.add_expression(e.clone(), *n)?;
                        }
                    }
                    let framework = abstract_replace(&acc.framework, targets, &cand.abstract_arg)?;
                    if next.iter().any(|d| d.framework == framework) {
                        continue;
                    }
                    let mut provenance = acc.provenance.clone();
                    provenance.push(ProvenanceStep {
                        scc: scc.clone(),
                        targets: targets.clone(),
                        abstract_id: cand.abstract_arg.id.clone(),
                        abstract_expressions: cand.abstract_arg.expressions.clone(),
                    });
                    next.push(DerivedFramework {
                        framework,
                        provenance,
                    });
                }
            }
            sigma = next;
        }
        scans.push(scan);
    }
    Ok(AbstractionResult {
        frameworks: sigma,
        scans,
        ontology: working,
    })
}

/// Preferred extensions of each framework, in input order.
pub fn g_p(frameworks: &[Framework]) -> Result<Vec<ExtensionSet>, Error> {
    frameworks
        .iter()
        .map(|f| Ok(preferred(&f.project_dung())?))
        .collect()
}

/// Restricts every extension to `args`, dropping empty restrictions.
pub fn sigma(extensions: &ExtensionSet, args: &BTreeSet<String>) -> ExtensionSet {
    extensions
        .iter()
        .map(|e| Extension::new(e.members().intersection(args).cloned()))
        .filter(|e| !e.is_empty())
        .collect()
}

/// Projects abstract-space extension sets onto the original arguments,
/// removing duplicate results.
pub fn g_gamma(original: &Framework, sets: &[ExtensionSet]) -> Vec<ExtensionSet> {
    let ids = original.argument_ids();
    let mut out: Vec<ExtensionSet> = Vec::new();
    for x in sets {
        let projected = sigma(x, &ids);
        if !out.contains(&projected) {
            out.push(projected);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConcreteStatus {
    Skeptical,
    Credulous,
    Rejected,
}

impl ConcreteStatus {
    pub fn is_accepted(self) -> bool {
        self != ConcreteStatus::Rejected
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sharpened {
    PlusApprovedCredulous,
    PlusApprovedSkeptical,
    Questioned,
    MinusApproved,
    ImpliedCredulous,
    ImpliedSkeptical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub concrete_status: ConcreteStatus,
    pub sharpened: BTreeSet<Sharpened>,
    /// (projected extension sets with some member containing the argument,
    /// projected extensions containing it)
    pub membership_counts: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct SharpeningReport {
    pub concrete: ExtensionSet,
    pub abstraction: AbstractionResult,
    pub abstract_preferred: Vec<ExtensionSet>,
    pub projected: Vec<ExtensionSet>,
    pub classification: BTreeMap<String, Verdict>,
}

/// Classifies one argument against concrete and projected extensions.
pub fn classify(arg: &str, concrete: &ExtensionSet, projected: &[ExtensionSet]) -> Verdict {
    let concrete_status = if concrete.iter().all(|e| e.contains(arg)) && !concrete.is_empty() {
        ConcreteStatus::Skeptical
    } else if concrete.iter().any(|e| e.contains(arg)) {
        ConcreteStatus::Credulous
    } else {
        ConcreteStatus::Rejected
    };
    let in_some = |x: &ExtensionSet| x.iter().any(|e| e.contains(arg));
    let in_all = |x: &ExtensionSet| !x.is_empty() && x.iter().all(|e| e.contains(arg));
    let some_some = projected.iter().any(in_some);
    let all_all = !projected.is_empty() && projected.iter().all(in_all);
    let none = !some_some;

    let mut sharpened = BTreeSet::new();
    if concrete_status.is_accepted() {
        if some_some {
            sharpened.insert(Sharpened::PlusApprovedCredulous);
        }
        if all_all {
            sharpened.insert(Sharpened::PlusApprovedSkeptical);
        }
        if none {
            sharpened.insert(Sharpened::Questioned);
        }
    } else {
        if none {
            sharpened.insert(Sharpened::MinusApproved);
        }
        if some_some {
            sharpened.insert(Sharpened::ImpliedCredulous);
        }
        if all_all {
            sharpened.insert(Sharpened::ImpliedSkeptical);
        }
    }
    let sets = projected.iter().filter(|x| in_some(x)).count();
    let exts = projected
        .iter()
        .flat_map(|x| x.iter())
        .filter(|e| e.contains(arg))
        .count();
    Verdict {
        concrete_status,
        sharpened,
        membership_counts: (sets, exts),
    }
}

/// Compares concrete preferred extensions with those obtained through
/// abstraction and classifies every argument.
pub fn sharpen(fw: &Framework, ont: &Ontology, upper: &UpperSet) -> Result<SharpeningReport, Error> {
    let concrete = preferred(&fw.project_dung())?;
    let abstraction = derive_abs(fw, ont, upper)?;
    let abstract_preferred = g_p(&abstraction.framework_list())?;
    let projected = g_gamma(fw, &abstract_preferred);
    let classification = fw
        .argument_ids()
        .into_iter()
        .map(|a| {
            let v = classify(&a, &concrete, &projected);
            (a, v)
        })
        .collect();
    Ok(SharpeningReport {
        concrete,
        abstraction,
        abstract_preferred,
        projected,
        classification,
    })
}
