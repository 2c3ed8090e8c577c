//! Argument-lets, frameworks over them, and the derived argument-level
//! (Dung) view.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::galois::ExprSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AfError {
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("attack references undeclared argument-let `{0}`")]
    UnknownArglet(ArgLet),
}

/// An expression tagged with the id of the argument it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgLet {
    pub arg: String,
    pub expr: String,
}

impl ArgLet {
    pub fn new(arg: impl Into<String>, expr: impl Into<String>) -> Self {
        ArgLet {
            arg: arg.into(),
            expr: expr.into(),
        }
    }
}

impl fmt::Display for ArgLet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.arg, self.expr)
    }
}

/// All argument-lets sharing one id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Argument {
    pub id: String,
    pub expressions: ExprSet,
}

impl Argument {
    pub fn new<I, S>(id: impl Into<String>, expressions: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Argument {
            id: id.into(),
            expressions: expressions.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Framework {
    arglets: BTreeSet<ArgLet>,
    attacks: BTreeSet<(ArgLet, ArgLet)>,
}

impl Framework {
    pub fn new<A, R>(arglets: A, attacks: R) -> Result<Self, AfError>
    where
        A: IntoIterator<Item = ArgLet>,
        R: IntoIterator<Item = (ArgLet, ArgLet)>,
    {
        let arglets: BTreeSet<ArgLet> = arglets.into_iter().collect();
        let mut set = BTreeSet::new();
        for (x, y) in attacks {
            for end in [&x, &y] {
                if !arglets.contains(end) {
                    return Err(AfError::UnknownArglet(end.clone()));
                }
            }
            set.insert((x, y));
        }
        Ok(Framework {
            arglets,
            attacks: set,
        })
    }

    /// Shorthand for frameworks with one argument-let per argument; each
    /// argument id doubles as its expression.
    pub fn from_argument_graph<'a, I, R>(ids: I, attacks: R) -> Result<Self, AfError>
    where
        I: IntoIterator<Item = &'a str>,
        R: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let arglets: Vec<ArgLet> = ids.into_iter().map(|a| ArgLet::new(a, a)).collect();
        let attacks: Vec<(ArgLet, ArgLet)> = attacks
            .into_iter()
            .map(|(x, y)| (ArgLet::new(x, x), ArgLet::new(y, y)))
            .collect();
        Framework::new(arglets, attacks)
    }

    pub fn arglets(&self) -> &BTreeSet<ArgLet> {
        &self.arglets
    }

    pub fn attacks(&self) -> &BTreeSet<(ArgLet, ArgLet)> {
        &self.attacks
    }

    pub fn is_empty(&self) -> bool {
        self.arglets.is_empty()
    }

    pub fn argument_ids(&self) -> BTreeSet<String> {
        self.arglets.iter().map(|l| l.arg.clone()).collect()
    }

    pub fn contains_argument(&self, id: &str) -> bool {
        self.arglets.iter().any(|l| l.arg == id)
    }

    /// Arglets grouped by id, in id order.
    pub fn arguments(&self) -> Vec<Argument> {
        let mut groups: BTreeMap<&str, ExprSet> = BTreeMap::new();
        for l in &self.arglets {
            groups.entry(&l.arg).or_default().insert(l.expr.clone());
        }
        groups
            .into_iter()
            .map(|(id, expressions)| Argument {
                id: id.to_string(),
                expressions,
            })
            .collect()
    }

    pub fn argument(&self, id: &str) -> Result<Argument, AfError> {
        let expressions: ExprSet = self
            .arglets
            .iter()
            .filter(|l| l.arg == id)
            .map(|l| l.expr.clone())
            .collect();
        if expressions.is_empty() {
            return Err(AfError::UnknownArgument(id.to_string()));
        }
        Ok(Argument {
            id: id.to_string(),
            expressions,
        })
    }

    pub fn attacks_arg(&self, a: &str, b: &str) -> Result<bool, AfError> {
        for id in [a, b] {
            if !self.contains_argument(id) {
                return Err(AfError::UnknownArgument(id.to_string()));
            }
        }
        Ok(self.attacks.iter().any(|(x, y)| x.arg == a && y.arg == b))
    }

    pub fn project_dung(&self) -> DungGraph {
        let ids: Vec<String> = self.argument_ids().into_iter().collect();
        let edges = self.attacks.iter().map(|(x, y)| (x.arg.as_str(), y.arg.as_str()));
        DungGraph::from_edges(ids, edges)
    }

    pub fn has_path(&self, a: &str, b: &str) -> Result<bool, AfError> {
        let g = self.project_dung();
        let (ai, bi) = (g.require(a)?, g.require(b)?);
        Ok(g.has_path(ai, bi))
    }

    pub fn sccs(&self) -> Vec<BTreeSet<String>> {
        let g = self.project_dung();
        g.sccs()
            .into_iter()
            .map(|c| c.into_iter().map(|i| g.id(i).to_string()).collect())
            .collect()
    }
}

/// Argument-level graph: ids sorted, attacks as an adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DungGraph {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    matrix: Vec<Vec<bool>>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl DungGraph {
    pub fn from_edges<'a, I>(ids: Vec<String>, edges: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut ids = ids;
        ids.sort();
        ids.dedup();
        let index: BTreeMap<String, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let n = ids.len();
        let mut matrix = vec![vec![false; n]; n];
        for (x, y) in edges {
            if let (Some(&i), Some(&j)) = (index.get(x), index.get(y)) {
                matrix[i][j] = true;
            }
        }
        let succ = (0..n)
            .map(|i| (0..n).filter(|&j| matrix[i][j]).collect())
            .collect();
        let pred = (0..n)
            .map(|j| (0..n).filter(|&i| matrix[i][j]).collect())
            .collect();
        DungGraph {
            ids,
            index,
            matrix,
            succ,
            pred,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize, AfError> {
        self.index_of(id)
            .ok_or_else(|| AfError::UnknownArgument(id.to_string()))
    }

    pub fn attacks(&self, i: usize, j: usize) -> bool {
        self.matrix[i][j]
    }

    /// Arguments attacked by `i`.
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    /// Attackers of `i`.
    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        (0..self.len())
            .flat_map(|i| {
                self.succ[i]
                    .iter()
                    .map(move |&j| (self.ids[i].clone(), self.ids[j].clone()))
            })
            .collect()
    }

    /// Reachability through at least one attack.
    pub fn has_path(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = self.succ[from].clone();
        while let Some(x) = stack.pop() {
            if x == to {
                return true;
            }
            if !seen[x] {
                seen[x] = true;
                stack.extend(&self.succ[x]);
            }
        }
        false
    }

    pub fn sccs(&self) -> Vec<Vec<usize>> {
        sccs_within(&self.succ, &vec![true; self.len()])
    }
}

/// Strongly connected components of the subgraph induced by `active`,
/// listed in topological order (attacked components after their
/// attackers), ties broken by smallest member. Members are sorted.
pub(crate) fn sccs_within(succ: &[Vec<usize>], active: &[bool]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let comp = tarjan(succ, active);
    let count = comp.iter().flatten().map(|&c| c + 1).max().unwrap_or(0);
    let mut members = vec![Vec::new(); count];
    for v in 0..n {
        if let Some(c) = comp[v] {
            members[c].push(v);
        }
    }
    let mut indegree = vec![0usize; count];
    let mut dag = vec![BTreeSet::new(); count];
    for v in 0..n {
        let Some(cv) = comp[v] else { continue };
        for &w in &succ[v] {
            if let Some(cw) = comp[w] {
                if cv != cw && dag[cv].insert(cw) {
                    indegree[cw] += 1;
                }
            }
        }
    }
    // Kahn with a min-heap keyed on each component's smallest member.
    let mut ready: BTreeSet<(usize, usize)> = (0..count)
        .filter(|&c| indegree[c] == 0)
        .map(|c| (members[c][0], c))
        .collect();
    let mut order = Vec::with_capacity(count);
    while let Some((_, c)) = ready.pop_first() {
        order.push(std::mem::take(&mut members[c]));
        for &d in &dag[c] {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.insert((members[d][0], d));
            }
        }
    }
    order
}

/// Iterative Tarjan; returns a component index per active vertex.
fn tarjan(succ: &[Vec<usize>], active: &[bool]) -> Vec<Option<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut lowlink = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![None; n];
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if !active[root] || index[root] != UNSEEN {
            continue;
        }
        // (vertex, position in its successor list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if !active[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[v]);
            }
            if lowlink[v] == index[v] {
                while let Some(w) = stack.pop() {
                    on_stack[w] = false;
                    comp[w] = Some(next_comp);
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fix1() -> Framework {
        let a = |id: &str, e: &str| ArgLet::new(id, e);
        Framework::new(
            [
                a("a1", "focusOnOs"),
                a("a2", "focusOnMp"),
                a("a3", "focusOnEc"),
                a("a4", "focusOnLiq"),
                a("a5", "needRevenue"),
            ],
            [
                (a("a2", "focusOnMp"), a("a1", "focusOnOs")),
                (a("a3", "focusOnEc"), a("a2", "focusOnMp")),
                (a("a1", "focusOnOs"), a("a3", "focusOnEc")),
                (a("a1", "focusOnOs"), a("a4", "focusOnLiq")),
                (a("a2", "focusOnMp"), a("a4", "focusOnLiq")),
                (a("a3", "focusOnEc"), a("a4", "focusOnLiq")),
                (a("a4", "focusOnLiq"), a("a5", "needRevenue")),
            ],
        )
        .unwrap()
    }

    fn fix3() -> Framework {
        Framework::from_argument_graph(
            ["a1", "a2", "a3", "a4", "a5"],
            [
                ("a1", "a2"),
                ("a2", "a3"),
                ("a3", "a1"),
                ("a2", "a4"),
                ("a4", "a5"),
                ("a5", "a4"),
            ],
        )
        .unwrap()
    }

    fn ids(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grouping_arglets_into_arguments() {
        let f = Framework::new(
            [
                ArgLet::new("a1", "e1"),
                ArgLet::new("a1", "e2"),
                ArgLet::new("a1", "e3"),
                ArgLet::new("a2", "e1"),
                ArgLet::new("a2", "e4"),
            ],
            [],
        )
        .unwrap();
        assert_eq!(
            f.arguments(),
            vec![
                Argument::new("a1", ["e1", "e2", "e3"]),
                Argument::new("a2", ["e1", "e4"])
            ]
        );
        let single = Framework::new([ArgLet::new("x", "e")], []).unwrap();
        assert_eq!(single.arguments().len(), 1);
        assert_eq!(fix1().arguments().len(), 5);
    }

    #[test]
    fn attack_must_reference_arglets() {
        let err = Framework::new(
            [ArgLet::new("a", "e")],
            [(ArgLet::new("a", "e"), ArgLet::new("b", "e"))],
        )
        .unwrap_err();
        assert_eq!(err, AfError::UnknownArglet(ArgLet::new("b", "e")));
    }

    #[test]
    fn argument_level_attacks() {
        let f = fix1();
        assert!(f.attacks_arg("a2", "a1").unwrap());
        assert!(!f.attacks_arg("a1", "a1").unwrap());
        assert!(fix3().attacks_arg("a2", "a4").unwrap());
        assert!(f.attacks_arg("zz", "a1").is_err());
    }

    #[test]
    fn projection() {
        let g = fix1().project_dung();
        let expected: BTreeSet<(String, String)> = [
            ("a2", "a1"),
            ("a3", "a2"),
            ("a1", "a3"),
            ("a1", "a4"),
            ("a2", "a4"),
            ("a3", "a4"),
            ("a4", "a5"),
        ]
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
        assert_eq!(g.len(), 5);
        assert_eq!(g.edges().into_iter().collect::<BTreeSet<_>>(), expected);

        let g3 = fix3().project_dung();
        assert_eq!(g3.edges().len(), 6);

        let edgeless = Framework::from_argument_graph(["x", "y"], []).unwrap();
        assert!(edgeless.project_dung().edges().is_empty());
    }

    #[test]
    fn paths() {
        let f = fix1();
        assert!(f.has_path("a1", "a5").unwrap());
        assert!(!f.has_path("a5", "a1").unwrap());
        assert!(f.has_path("a1", "a1").unwrap());
        let edgeless = Framework::from_argument_graph(["x", "y"], []).unwrap();
        assert!(!edgeless.has_path("x", "y").unwrap());
        assert!(!edgeless.has_path("x", "x").unwrap());
    }

    #[test]
    fn strongly_connected_components() {
        assert_eq!(
            fix1().sccs(),
            vec![ids(&["a1", "a2", "a3"]), ids(&["a4"]), ids(&["a5"])]
        );
        assert_eq!(
            fix3().sccs(),
            vec![ids(&["a1", "a2", "a3"]), ids(&["a4", "a5"])]
        );
        let chain = Framework::from_argument_graph(["c", "b", "a"], [("c", "b"), ("b", "a")]).unwrap();
        assert_eq!(chain.sccs(), vec![ids(&["c"]), ids(&["b"]), ids(&["a"])]);
    }
}
