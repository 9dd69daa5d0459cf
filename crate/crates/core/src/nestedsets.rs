//! Nested sets: the non-inductive description of constructs.
//!
//! `psi` sends a construct to the family of sets spanned by its subtrees and
//! `unpsi` rebuilds the tree from the Hasse diagram of such a family.

use thiserror::Error;

use crate::constructs::{validate_construct, Construct, RawTree};
use crate::hypergraph::{edge_order, AtomSet, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NestedSetError {
    #[error("the family does not contain the carrier")]
    MissingCarrier,
    #[error("the family contains the empty set")]
    EmptyMember,
    #[error("{0} is not a subset of the carrier")]
    OutsideCarrier(String),
    #[error("{0} occurs twice")]
    Duplicate(String),
    #[error("condition B fails: {0} is not connected")]
    Disconnected(String),
    #[error("condition C fails: the antichain {text} has a connected union")]
    Antichain { witness: Vec<AtomSet>, text: String },
}

/// Sets spanned by the subtrees, in canonical order.
pub fn psi(t: &Construct) -> Vec<AtomSet> {
    let mut out: Vec<AtomSet> = t.nodes().into_iter().map(Construct::span).collect();
    out.sort_by(edge_order);
    out
}

/// A smallest proper antichain of `family` whose union is connected, if any.
pub fn antichain_witness(h: &Hypergraph, family: &[AtomSet]) -> Option<Vec<AtomSet>> {
    let n = family.len();
    let comparable = |a: AtomSet, b: AtomSet| a.is_subset(b) || b.is_subset(a);
    let mut level: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while !level.is_empty() {
        let mut next = Vec::new();
        for chain in &level {
            let last = *chain.last().unwrap();
            for j in last + 1..n {
                if chain.iter().any(|&i| comparable(family[i], family[j])) {
                    continue;
                }
                let mut grown = chain.clone();
                grown.push(j);
                let union = grown.iter().fold(AtomSet::EMPTY, |s, &i| s | family[i]);
                if h.connected(union) {
                    return Some(grown.into_iter().map(|i| family[i]).collect());
                }
                next.push(grown);
            }
        }
        level = next;
    }
    None
}

/// Checks conditions B and C and the presence of the carrier.
pub fn check_nested_set(h: &Hypergraph, m: &[AtomSet]) -> Result<(), NestedSetError> {
    if !m.contains(&h.carrier()) {
        return Err(NestedSetError::MissingCarrier);
    }
    let mut seen = std::collections::BTreeSet::new();
    for &x in m {
        if x.is_empty() {
            return Err(NestedSetError::EmptyMember);
        }
        if !x.is_subset(h.carrier()) {
            return Err(NestedSetError::OutsideCarrier(format!("{x:?}")));
        }
        if !seen.insert(x) {
            return Err(NestedSetError::Duplicate(h.fmt_set(x)));
        }
        if !h.connected(x) {
            return Err(NestedSetError::Disconnected(h.fmt_set(x)));
        }
    }
    if let Some(witness) = antichain_witness(h, m) {
        let text = format!("{{{}}}", witness.iter().map(|&x| h.fmt_set(x)).collect::<Vec<_>>().join(","));
        return Err(NestedSetError::Antichain { witness, text });
    }
    Ok(())
}

/// The construct whose nested set is `m`.
pub fn unpsi(h: &Hypergraph, m: &[AtomSet]) -> Result<Construct, NestedSetError> {
    check_nested_set(h, m)?;
    Ok(build(m, h.carrier()))
}

fn parent_of(m: &[AtomSet], x: AtomSet) -> Option<AtomSet> {
    m.iter()
        .copied()
        .filter(|&y| y != x && x.is_subset(y))
        .min_by_key(|y| y.len())
}

fn build(m: &[AtomSet], x: AtomSet) -> Construct {
    let kids: Vec<Construct> = m
        .iter()
        .copied()
        .filter(|&y| y != x && parent_of(m, y) == Some(x))
        .map(|y| build(m, y))
        .collect();
    let below = kids.iter().fold(AtomSet::EMPTY, |s, c| s | c.span());
    Construct::new(x.minus(below), kids)
}

/// Which characterisation of constructs among decorated trees to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Characterization {
    /// Children are the components of what the node leaves.
    Inductive,
    /// Conditions A, B and C'.
    ABCPrime,
    /// Conditions A, B and C.
    ABC,
}

pub fn check_tree_characterization(h: &Hypergraph, t: &RawTree, variant: Characterization) -> bool {
    match variant {
        Characterization::Inductive => validate_construct(h, t).is_ok(),
        Characterization::ABCPrime => cond_a(h, t) && cond_b(h, t) && cond_c_prime(h, t),
        Characterization::ABC => {
            if !(cond_a(h, t) && cond_b(h, t)) {
                return false;
            }
            let mut ups = Vec::new();
            collect_ups(t, &mut ups);
            antichain_witness(h, &ups).is_none()
        }
    }
}

fn collect_ups(t: &RawTree, out: &mut Vec<AtomSet>) {
    out.push(t.span());
    for c in &t.children {
        collect_ups(c, out);
    }
}

fn decorations(t: &RawTree, out: &mut Vec<AtomSet>) {
    out.push(t.deco);
    for c in &t.children {
        decorations(c, out);
    }
}

fn cond_a(h: &Hypergraph, t: &RawTree) -> bool {
    let mut decos = Vec::new();
    decorations(t, &mut decos);
    let mut seen = AtomSet::EMPTY;
    for d in decos {
        if d.is_empty() || d.intersects(seen) {
            return false;
        }
        seen = seen | d;
    }
    seen == h.carrier()
}

fn cond_b(h: &Hypergraph, t: &RawTree) -> bool {
    h.connected(t.span()) && t.children.iter().all(|c| cond_b(h, c))
}

fn cond_c_prime(h: &Hypergraph, t: &RawTree) -> bool {
    let ups: Vec<AtomSet> = t.children.iter().map(RawTree::span).collect();
    let all = AtomSet::full(ups.len());
    let ok = all.subsets().filter(|i| i.len() >= 2).all(|i| {
        let union = i.iter().fold(AtomSet::EMPTY, |s, k| s | ups[k]);
        !h.connected(union)
    });
    ok && t.children.iter().all(|c| cond_c_prime(h, c))
}

/// Outcome of the graph-specific relaxations of condition C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubingCheck {
    pub c: bool,
    /// Every two incomparable members have a disconnected union.
    pub cg: bool,
    /// Intersecting members are nested.
    pub nested_or_disjoint: bool,
    /// Disjoint members have a disconnected union.
    pub disjoint_disconnected: bool,
    pub warning: Option<String>,
}

impl TubingCheck {
    pub fn tubing(&self) -> bool {
        self.nested_or_disjoint && self.disjoint_disconnected
    }
}

pub fn check_tubing_conditions(h: &Hypergraph, m: &[AtomSet]) -> TubingCheck {
    let warning = h
        .hyperedges()
        .iter()
        .find(|e| e.len() >= 3)
        .map(|e| format!("hyperedge {} has more than two atoms; the pairwise conditions may not imply C", h.fmt_set(*e)));
    let mut cg = true;
    let mut nested_or_disjoint = true;
    let mut disjoint_disconnected = true;
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            let nested = a.is_subset(b) || b.is_subset(a);
            if !nested && h.connected(a | b) {
                cg = false;
            }
            if a.intersects(b) && !nested {
                nested_or_disjoint = false;
            }
            if !a.intersects(b) && h.connected(a | b) {
                disjoint_disconnected = false;
            }
        }
    }
    TubingCheck {
        c: antichain_witness(h, m).is_none(),
        cg,
        nested_or_disjoint,
        disjoint_disconnected,
        warning,
    }
}

/// Member lists by label, for JSON.
pub fn to_names(h: &Hypergraph, m: &[AtomSet]) -> Vec<Vec<String>> {
    m.iter().map(|&x| h.names(x).into_iter().map(str::to_string).collect()).collect()
}

pub fn from_names(h: &Hypergraph, names: &[Vec<String>]) -> Result<Vec<AtomSet>, crate::hypergraph::HypergraphError> {
    names.iter().map(|x| h.set(x)).collect()
}
