//! Expressions, the semantic map into the lattice, and the
//! abstraction/concretisation pair between expression sets and nodes.
//!
//! The powerset of expressions is never built. Its quotient order is decided
//! on demand by rewriting expression sets into a canonical form in which an
//! expression is replaced by the preimages of its node's Hasse children
//! whenever every child has at least one preimage.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{FiniteLattice, NodeId};

/// A finite set of expression symbols.
pub type ExprSet = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("unknown expression `{0}`")]
    UnknownExpression(String),
    #[error("expression `{0}` is already mapped")]
    DuplicateExpression(String),
    #[error("expression set must not be empty")]
    EmptySet,
}

/// Total map from declared expressions to lattice nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SemanticMap {
    assignments: BTreeMap<String, NodeId>,
}

impl SemanticMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, expr: impl Into<String>, node: NodeId) -> Result<(), GaloisError> {
        let expr = expr.into();
        if self.assignments.contains_key(&expr) {
            return Err(GaloisError::DuplicateExpression(expr));
        }
        self.assignments.insert(expr, node);
        Ok(())
    }

    pub fn get(&self, expr: &str) -> Option<NodeId> {
        self.assignments.get(expr).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, NodeId)> {
        self.assignments.iter().map(|(e, &n)| (e.as_str(), n))
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }
}

/// A lattice together with a semantic map into it.
#[derive(Debug, Clone)]
pub struct Ontology {
    lattice: Arc<FiniteLattice>,
    map: SemanticMap,
    preimages: Vec<ExprSet>,
}

impl Ontology {
    pub fn new(lattice: FiniteLattice, map: SemanticMap) -> Self {
        let mut preimages = vec![ExprSet::new(); lattice.len()];
        for (e, n) in map.iter() {
            preimages[n.index()].insert(e.to_string());
        }
        Ontology {
            lattice: Arc::new(lattice),
            map,
            preimages,
        }
    }

    /// Convenience constructor from `(expression, node name)` pairs.
    pub fn from_pairs<I, E, N>(lattice: FiniteLattice, pairs: I) -> Result<Self, crate::Error>
    where
        I: IntoIterator<Item = (E, N)>,
        E: Into<String>,
        N: AsRef<str>,
    {
        let mut map = SemanticMap::new();
        for (e, n) in pairs {
            map.insert(e, lattice.node(n.as_ref())?)?;
        }
        Ok(Ontology::new(lattice, map))
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn map(&self) -> &SemanticMap {
        &self.map
    }

    /// Binds a new expression to a node.
    pub fn add_expression(&mut self, expr: impl Into<String>, node: NodeId) -> Result<(), GaloisError> {
        let expr = expr.into();
        self.map.insert(expr.clone(), node)?;
        self.preimages[node.index()].insert(expr);
        Ok(())
    }

    /// Returns this ontology extended with `expr ↦ node` unless the binding
    /// already exists.
    pub fn with_binding(&self, expr: &str, node: NodeId) -> Result<Cow<'_, Ontology>, GaloisError> {
        match self.map.get(expr) {
            Some(n) if n == node => Ok(Cow::Borrowed(self)),
            Some(_) => Err(GaloisError::DuplicateExpression(expr.to_string())),
            None => {
                let mut ext = self.clone();
                ext.add_expression(expr, node)?;
                Ok(Cow::Owned(ext))
            }
        }
    }

    pub fn image(&self, expr: &str) -> Result<NodeId, GaloisError> {
        self.map
            .get(expr)
            .ok_or_else(|| GaloisError::UnknownExpression(expr.to_string()))
    }

    /// Expressions mapped exactly onto `node`.
    pub fn preimage(&self, node: NodeId) -> &ExprSet {
        &self.preimages[node.index()]
    }

    /// `e` abstracts `u` when `f(u) ⊑ f(e)`.
    pub fn abstracts(&self, e: &str, u: &str) -> Result<bool, GaloisError> {
        Ok(self.lattice.leq(self.image(u)?, self.image(e)?))
    }

    /// Join of the images; the bottom for the empty set.
    pub fn alpha<'a, I>(&self, exprs: I) -> Result<NodeId, GaloisError>
    where
        I: IntoIterator<Item = &'a String>,
    {
        let mut acc = self.lattice.bottom();
        for e in exprs {
            acc = self.lattice.join(acc, self.image(e)?);
        }
        Ok(acc)
    }

    /// Every expression whose image lies in `low(node)`.
    pub fn gamma(&self, node: NodeId) -> ExprSet {
        self.lattice
            .low(node)
            .into_iter()
            .flat_map(|n| self.preimages[n.index()].iter().cloned())
            .collect()
    }

    /// Whether expressions at `node` may be rewritten into the preimages of
    /// its children.
    pub fn is_expandable(&self, node: NodeId) -> bool {
        node != self.lattice.bottom()
            && self
                .lattice
                .children(node)
                .iter()
                .all(|c| !self.preimages[c.index()].is_empty())
    }

    fn normal_form_into(&self, expr: &str, node: NodeId, out: &mut ExprSet) {
        if self.is_expandable(node) {
            for &c in self.lattice.children(node) {
                for g in &self.preimages[c.index()] {
                    self.normal_form_into(g, c, out);
                }
            }
        } else {
            out.insert(expr.to_string());
        }
    }

    /// Canonical representative of an expression set under the quotient
    /// order. Rewriting is a union of per-expression expansions, so the
    /// result does not depend on rewrite order.
    pub fn canonicalize(&self, exprs: &ExprSet) -> Result<ExprSet, GaloisError> {
        let mut out = ExprSet::new();
        for e in exprs {
            let node = self.image(e)?;
            self.normal_form_into(e, node, &mut out);
        }
        Ok(out)
    }

    /// The quotient order `⊆′` on expression sets.
    pub fn l1_leq(&self, lhs: &ExprSet, rhs: &ExprSet) -> Result<bool, GaloisError> {
        Ok(self.canonicalize(lhs)?.is_subset(&self.canonicalize(rhs)?))
    }

    pub fn is_abstraction(&self, ex: &str, exprs: &ExprSet) -> Result<bool, GaloisError> {
        if exprs.is_empty() {
            return Err(GaloisError::EmptySet);
        }
        Ok(self.lattice.leq(self.alpha(exprs)?, self.image(ex)?))
    }

    pub fn is_best_abstraction(&self, ex: &str, exprs: &ExprSet) -> Result<bool, GaloisError> {
        if exprs.is_empty() {
            return Err(GaloisError::EmptySet);
        }
        Ok(self.alpha(exprs)? == self.image(ex)?)
    }

    pub fn most_general_concretisation(&self, ex: &str) -> Result<ExprSet, GaloisError> {
        Ok(self.gamma(self.image(ex)?))
    }

    pub fn is_concretisation(&self, exprs: &ExprSet, ex: &str) -> Result<bool, GaloisError> {
        let g = self.most_general_concretisation(ex)?;
        self.l1_leq(exprs, &g)
    }
}
