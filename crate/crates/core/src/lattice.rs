//! Finite lattices given by their Hasse diagram.
//!
//! A [`FiniteLattice`] is built once from a node list and a cover relation,
//! validated, and then answers order, join and meet queries from
//! precomputed tables. Node handles ([`NodeId`]) are ordered like the
//! lexicographic order of node names, so every set of nodes iterates in a
//! stable order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no nodes")]
    Empty,
    #[error("node `{0}` declared twice")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("cover `{0}` -> `{1}` declared twice")]
    DuplicateCover(String, String),
    #[error("cover relation contains a cycle through `{0}`")]
    CycleInCovers(String),
    #[error("cover `{0}` -> `{1}` is implied by other covers")]
    RedundantCover(String, String),
    #[error("`{0}` and `{1}` have no unique least upper bound")]
    NonUniqueJoin(String, String),
    #[error("`{0}` and `{1}` have no unique greatest lower bound")]
    NonUniqueMeet(String, String),
}

/// Handle to a node of one particular [`FiniteLattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An upward-closed set of lattice nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperSet(BTreeSet<NodeId>);

impl UpperSet {
    pub fn members(&self) -> &BTreeSet<NodeId> {
        &self.0
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.0.contains(&node)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: BTreeMap<String, NodeId>,
    children: Vec<Vec<NodeId>>,
    parents: Vec<Vec<NodeId>>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<NodeId>>,
    meet: Vec<Vec<NodeId>>,
    top: NodeId,
    bottom: NodeId,
}

impl FiniteLattice {
    /// Validates a Hasse diagram and derives order, joins and meets.
    ///
    /// Covers are `(child, parent)` pairs. The diagram must be acyclic and
    /// minimal, and every pair of nodes needs a unique join and meet.
    pub fn from_hasse<N, C, S>(nodes: N, covers: C) -> Result<Self, LatticeError>
    where
        N: IntoIterator<Item = S>,
        C: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut names = Vec::new();
        let mut seen = BTreeSet::new();
        for n in nodes {
            let n = n.as_ref().to_string();
            if !seen.insert(n.clone()) {
                return Err(LatticeError::DuplicateNode(n));
            }
            names.push(n);
        }
        if names.is_empty() {
            return Err(LatticeError::Empty);
        }
        names.sort();
        let index: BTreeMap<String, NodeId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), NodeId(i)))
            .collect();
        let len = names.len();

        let mut children = vec![Vec::new(); len];
        let mut parents = vec![Vec::new(); len];
        let mut cover_set = BTreeSet::new();
        for (c, p) in covers {
            let (c, p) = (c.as_ref(), p.as_ref());
            let ci = *index
                .get(c)
                .ok_or_else(|| LatticeError::UnknownNode(c.to_string()))?;
            let pi = *index
                .get(p)
                .ok_or_else(|| LatticeError::UnknownNode(p.to_string()))?;
            if ci == pi {
                return Err(LatticeError::CycleInCovers(c.to_string()));
            }
            if !cover_set.insert((ci, pi)) {
                return Err(LatticeError::DuplicateCover(c.to_string(), p.to_string()));
            }
            children[pi.0].push(ci);
            parents[ci.0].push(pi);
        }
        for v in children.iter_mut().chain(parents.iter_mut()) {
            v.sort();
        }

        // Kahn's algorithm, bottom-up; leftovers sit on or above a cycle.
        let mut pending: Vec<usize> = children.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..len).filter(|&i| pending[i] == 0).collect();
        let mut topo = Vec::with_capacity(len);
        while let Some(i) = queue.pop_front() {
            topo.push(i);
            for p in &parents[i] {
                pending[p.0] -= 1;
                if pending[p.0] == 0 {
                    queue.push_back(p.0);
                }
            }
        }
        if topo.len() != len {
            let stuck = (0..len).find(|&i| pending[i] > 0).unwrap_or(0);
            return Err(LatticeError::CycleInCovers(names[stuck].clone()));
        }

        // leq[a][b] iff b is reachable upward from a.
        let mut leq = vec![vec![false; len]; len];
        for &i in topo.iter().rev() {
            leq[i][i] = true;
            for p in parents[i].clone() {
                for j in 0..len {
                    if leq[p.0][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }

        for (ci, pars) in parents.iter().enumerate() {
            for &p in pars {
                if pars.iter().any(|&q| q != p && leq[q.0][p.0]) {
                    return Err(LatticeError::RedundantCover(
                        names[ci].clone(),
                        names[p.0].clone(),
                    ));
                }
            }
        }

        let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let rel = |x: usize, y: usize| if upper { leq[x][y] } else { leq[y][x] };
            let bounds: Vec<usize> = (0..len).filter(|&x| rel(a, x) && rel(b, x)).collect();
            let minimal: Vec<usize> = bounds
                .iter()
                .copied()
                .filter(|&x| !bounds.iter().any(|&y| y != x && rel(y, x)))
                .collect();
            match minimal.as_slice() {
                [one] => Some(*one),
                _ => None,
            }
        };
        let mut join = vec![vec![NodeId(0); len]; len];
        let mut meet = vec![vec![NodeId(0); len]; len];
        // Joins first, so a missing least upper bound is reported as such.
        for a in 0..len {
            for b in a..len {
                let j = bound(a, b, true).ok_or_else(|| {
                    LatticeError::NonUniqueJoin(names[a].clone(), names[b].clone())
                })?;
                join[a][b] = NodeId(j);
                join[b][a] = NodeId(j);
            }
        }
        for a in 0..len {
            for b in a..len {
                let m = bound(a, b, false).ok_or_else(|| {
                    LatticeError::NonUniqueMeet(names[a].clone(), names[b].clone())
                })?;
                meet[a][b] = NodeId(m);
                meet[b][a] = NodeId(m);
            }
        }

        let top = (1..len).fold(NodeId(0), |acc, i| join[acc.0][i]);
        let bottom = (1..len).fold(NodeId(0), |acc, i| meet[acc.0][i]);

        Ok(FiniteLattice {
            names,
            index,
            children,
            parents,
            leq,
            join,
            meet,
            top,
            bottom,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All nodes in lexicographic order of their names.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.names.len()).map(NodeId)
    }

    pub fn node(&self, name: &str) -> Result<NodeId, LatticeError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::UnknownNode(name.to_string()))
    }

    pub fn name(&self, node: NodeId) -> &str {
        &self.names[node.0]
    }

    pub fn top(&self) -> NodeId {
        self.top
    }

    pub fn bottom(&self) -> NodeId {
        self.bottom
    }

    /// The cover relation as `(child, parent)` pairs, sorted.
    pub fn covers(&self) -> Vec<(NodeId, NodeId)> {
        self.parents
            .iter()
            .enumerate()
            .flat_map(|(c, ps)| ps.iter().map(move |&p| (NodeId(c), p)))
            .collect()
    }

    /// Nodes directly covered by `node`.
    pub fn children(&self, node: NodeId) -> &[NodeId] {
        &self.children[node.0]
    }

    /// Nodes directly covering `node`.
    pub fn parents(&self, node: NodeId) -> &[NodeId] {
        &self.parents[node.0]
    }

    pub fn leq(&self, a: NodeId, b: NodeId) -> bool {
        self.leq[a.0][b.0]
    }

    pub fn lt(&self, a: NodeId, b: NodeId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: NodeId, b: NodeId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn join(&self, a: NodeId, b: NodeId) -> NodeId {
        self.join[a.0][b.0]
    }

    pub fn meet(&self, a: NodeId, b: NodeId) -> NodeId {
        self.meet[a.0][b.0]
    }

    /// Least upper bound of a set; the bottom for the empty set.
    pub fn join_all<I: IntoIterator<Item = NodeId>>(&self, nodes: I) -> NodeId {
        nodes
            .into_iter()
            .fold(self.bottom, |acc, n| self.join(acc, n))
    }

    /// Greatest lower bound of a set; the top for the empty set.
    pub fn meet_all<I: IntoIterator<Item = NodeId>>(&self, nodes: I) -> NodeId {
        nodes.into_iter().fold(self.top, |acc, n| self.meet(acc, n))
    }

    /// `{bottom}` at the bottom, the Hasse children everywhere else.
    pub fn low(&self, node: NodeId) -> BTreeSet<NodeId> {
        if node == self.bottom {
            BTreeSet::from([node])
        } else {
            self.children[node.0].iter().copied().collect()
        }
    }

    pub fn upward_closure<I: IntoIterator<Item = NodeId>>(&self, generators: I) -> UpperSet {
        let gens: Vec<NodeId> = generators.into_iter().collect();
        UpperSet(
            self.nodes()
                .filter(|&y| gens.iter().any(|&g| self.leq(g, y)))
                .collect(),
        )
    }

    pub fn is_upper_set(&self, set: &BTreeSet<NodeId>) -> bool {
        set.iter()
            .all(|&x| self.nodes().all(|y| !self.leq(x, y) || set.contains(&y)))
    }

    /// Wraps a node set as an [`UpperSet`] if it is upward closed.
    pub fn upper_set(&self, set: BTreeSet<NodeId>) -> Option<UpperSet> {
        self.is_upper_set(&set).then_some(UpperSet(set))
    }
}

impl fmt::Display for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lattice with {} nodes (top {}, bottom {})",
            self.len(),
            self.name(self.top),
            self.name(self.bottom)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fix1() -> FiniteLattice {
        FiniteLattice::from_hasse(
            ["Bot", "Os", "Mp", "Ec", "Liq", "Rev", "Imp", "Top"],
            [
                ("Bot", "Os"),
                ("Bot", "Mp"),
                ("Bot", "Ec"),
                ("Bot", "Liq"),
                ("Bot", "Rev"),
                ("Os", "Imp"),
                ("Mp", "Imp"),
                ("Ec", "Imp"),
                ("Imp", "Top"),
                ("Liq", "Top"),
                ("Rev", "Top"),
            ],
        )
        .unwrap()
    }

    fn fix3() -> FiniteLattice {
        FiniteLattice::from_hasse(
            [
                "Bot", "Dp", "Br", "TV", "Fm", "M", "H", "Id", "NoId", "HWA", "MWA", "Top",
            ],
            [
                ("Bot", "Dp"),
                ("Bot", "Br"),
                ("Bot", "TV"),
                ("Bot", "Fm"),
                ("Bot", "M"),
                ("Dp", "H"),
                ("Br", "H"),
                ("TV", "Id"),
                ("Fm", "NoId"),
                ("H", "HWA"),
                ("Id", "HWA"),
                ("M", "MWA"),
                ("NoId", "MWA"),
                ("HWA", "Top"),
                ("MWA", "Top"),
            ],
        )
        .unwrap()
    }

    fn n(l: &FiniteLattice, s: &str) -> NodeId {
        l.node(s).unwrap()
    }

    fn names(l: &FiniteLattice, set: &BTreeSet<NodeId>) -> Vec<String> {
        set.iter().map(|&x| l.name(x).to_string()).collect()
    }

    #[test]
    fn fix1_is_a_lattice() {
        let l = fix1();
        assert_eq!(l.len(), 8);
        assert_eq!(l.name(l.top()), "Top");
        assert_eq!(l.name(l.bottom()), "Bot");
    }

    #[test]
    fn one_point_lattice() {
        let l = FiniteLattice::from_hasse(["x"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(l.top(), l.bottom());
        assert_eq!(l.low(l.top()), BTreeSet::from([l.top()]));
    }

    #[test]
    fn missing_top_is_rejected() {
        let err = FiniteLattice::from_hasse(["b", "x", "y"], [("b", "x"), ("b", "y")]).unwrap_err();
        assert_eq!(err, LatticeError::NonUniqueJoin("x".into(), "y".into()));
    }

    #[test]
    fn missing_bottom_is_rejected() {
        let err = FiniteLattice::from_hasse(["t", "x", "y"], [("x", "t"), ("y", "t")]).unwrap_err();
        assert_eq!(err, LatticeError::NonUniqueMeet("x".into(), "y".into()));
    }

    #[test]
    fn two_minimal_upper_bounds_is_rejected() {
        // x, y both below u and v: no least upper bound.
        let err = FiniteLattice::from_hasse(
            ["b", "x", "y", "u", "v", "t"],
            [
                ("b", "x"),
                ("b", "y"),
                ("x", "u"),
                ("y", "u"),
                ("x", "v"),
                ("y", "v"),
                ("u", "t"),
                ("v", "t"),
            ],
        )
        .unwrap_err();
        assert_eq!(err, LatticeError::NonUniqueJoin("x".into(), "y".into()));
    }

    #[test]
    fn cycles_and_redundancy_are_rejected() {
        let err = FiniteLattice::from_hasse(["a", "b"], [("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, LatticeError::CycleInCovers(_)));
        let err = FiniteLattice::from_hasse(["a"], [("a", "a")]).unwrap_err();
        assert!(matches!(err, LatticeError::CycleInCovers(_)));
        let err = FiniteLattice::from_hasse(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
            .unwrap_err();
        assert_eq!(err, LatticeError::RedundantCover("a".into(), "c".into()));
        let err = FiniteLattice::from_hasse(["a", "b"], [("a", "b"), ("a", "b")]).unwrap_err();
        assert_eq!(err, LatticeError::DuplicateCover("a".into(), "b".into()));
        let err = FiniteLattice::from_hasse(["a", "b"], [("a", "c")]).unwrap_err();
        assert_eq!(err, LatticeError::UnknownNode("c".into()));
        let err = FiniteLattice::from_hasse(["a", "a"], Vec::<(&str, &str)>::new()).unwrap_err();
        assert_eq!(err, LatticeError::DuplicateNode("a".into()));
        let err = FiniteLattice::from_hasse(Vec::<&str>::new(), Vec::<(&str, &str)>::new())
            .unwrap_err();
        assert_eq!(err, LatticeError::Empty);
    }

    #[test]
    fn order_queries() {
        let l = fix1();
        assert!(l.leq(n(&l, "Os"), n(&l, "Imp")));
        assert!(l.leq(n(&l, "Liq"), n(&l, "Liq")));
        assert!(!l.leq(n(&l, "Imp"), n(&l, "Liq")));
        assert!(!l.leq(n(&l, "Liq"), n(&l, "Imp")));
        assert!(matches!(l.node("Nope"), Err(LatticeError::UnknownNode(_))));
    }

    #[test]
    fn joins_and_meets() {
        let l = fix1();
        assert_eq!(l.join(n(&l, "Os"), n(&l, "Mp")), n(&l, "Imp"));
        assert_eq!(l.join(n(&l, "Os"), n(&l, "Liq")), n(&l, "Top"));
        assert_eq!(l.join_all([n(&l, "Rev")]), n(&l, "Rev"));
        assert_eq!(l.join_all([]), l.bottom());
        assert_eq!(l.meet_all([]), l.top());
        assert_eq!(l.meet(n(&l, "Imp"), n(&l, "Liq")), l.bottom());
    }

    #[test]
    fn low_sets() {
        let l = fix1();
        assert_eq!(names(&l, &l.low(n(&l, "Imp"))), ["Ec", "Mp", "Os"]);
        assert_eq!(names(&l, &l.low(l.bottom())), ["Bot"]);
        let l3 = fix3();
        assert_eq!(names(&l3, &l3.low(n(&l3, "H"))), ["Br", "Dp"]);
    }

    #[test]
    fn upper_sets() {
        let l3 = fix3();
        let m = l3.upward_closure([l3.top()]);
        assert_eq!(names(&l3, m.members()), ["Top"]);
        let all = l3.upward_closure(l3.nodes());
        assert_eq!(all.len(), l3.len());
        let l = fix1();
        assert!(!l.is_upper_set(&BTreeSet::from([n(&l, "Imp")])));
        assert!(l.is_upper_set(&BTreeSet::from([n(&l, "Imp"), n(&l, "Top")])));
        assert!(l.upper_set(BTreeSet::from([n(&l, "Imp")])).is_none());
    }
}
