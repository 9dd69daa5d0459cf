//! Combinatorics of hypergraph polytopes.
//!
//! Faces of the polytope of a connected atomic hypergraph are named by
//! *constructs*, decorated trees built by repeatedly removing a set of atoms and
//! recursing into the connected components that remain. This crate enumerates
//! and orders constructs, converts them to nested sets, realizes the polytope
//! with exact rational coordinates, classifies the edges of operadic coherence
//! polytopes, and runs iterated truncation rounds, including the words-with-holes
//! calculus of the permutohedron-based associahedron.

pub mod cli;
pub mod constructs;
pub mod corpus;
pub mod hypergraph;
pub mod nestedsets;
pub mod operadic;
pub mod pba;
pub mod realization;
pub mod truncation;

pub use constructs::{Construct, Order, PartialConstruct};
pub use hypergraph::{AtomSet, Hypergraph, HypergraphError};
