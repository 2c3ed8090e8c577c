//! Abstract interpretation for argumentation frameworks.
//!
//! Arguments are sets of argument-lets (an id paired with an expression);
//! expressions are mapped into a finite lattice. Cycles of attacking
//! arguments whose expressions share a common, sufficiently specific
//! generalisation are replaced by one abstract argument, and the preferred
//! extensions of the resulting frameworks are projected back to sharpen
//! the acceptance status of the original arguments.
//!
//! Modules, bottom-up: [`lattice`], [`galois`], [`af`], [`semantics`],
//! [`abstraction`], [`pipeline`], [`cli`].

pub mod abstraction;
pub mod af;
pub mod cli;
pub mod galois;
pub mod lattice;
pub mod pipeline;
pub mod semantics;

pub use af::{ArgLet, Argument, DungGraph, Framework};
pub use galois::{ExprSet, Ontology, SemanticMap};
pub use lattice::{FiniteLattice, NodeId, UpperSet};
pub use semantics::{Extension, ExtensionSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Galois(#[from] galois::GaloisError),
    #[error(transparent)]
    Af(#[from] af::AfError),
    #[error(transparent)]
    Semantics(#[from] semantics::SemanticsError),
    #[error("targets not in framework: {}", .0.join(", "))]
    TargetsNotInFramework(Vec<String>),
    #[error("target set is empty")]
    EmptyTargets,
    #[error("argument id `{0}` already exists")]
    IdCollision(String),
    #[error("component too large to enumerate ({0} candidate arguments)")]
    TooLarge(usize),
}
