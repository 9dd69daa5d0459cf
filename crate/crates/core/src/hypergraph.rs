//! Finite atomic hypergraphs over labelled atoms.
//!
//! Atoms are indexed by their position in the sorted label list and subsets
//! of the carrier are stored as [`AtomSet`] bit masks, so a hypergraph holds
//! at most 64 atoms.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest carrier a [`Hypergraph`] can hold.
pub const MAX_ATOMS: usize = 64;

/// A set of atoms, as a bit mask over the atom indices of one hypergraph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSet(pub u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn single(i: usize) -> AtomSet {
        AtomSet(1u64 << i)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> AtomSet {
        if n >= 64 {
            AtomSet(u64::MAX)
        } else {
            AtomSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> AtomSet {
        it.into_iter().fold(AtomSet::EMPTY, |s, i| s.with(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> AtomSet {
        AtomSet(self.0 | 1u64 << i)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: AtomSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn minus(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    /// Index of the least atom.
    pub fn least(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// All non-empty subsets, in increasing order of their masks.
    pub fn subsets(self) -> impl Iterator<Item = AtomSet> {
        let mask = self.0;
        let mut cur: u64 = 0;
        let mut done = mask == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            cur = cur.wrapping_sub(mask) & mask;
            if cur == mask {
                done = true;
            }
            Some(AtomSet(cur))
        })
    }
}

impl std::ops::BitOr for AtomSet {
    type Output = AtomSet;
    fn bitor(self, rhs: AtomSet) -> AtomSet {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for AtomSet {
    type Output = AtomSet;
    fn bitand(self, rhs: AtomSet) -> AtomSet {
        self.intersection(rhs)
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("atom labels must be non-empty")]
    EmptyLabel,
    #[error("atom label {0:?} is not allowed (reserved characters or whitespace)")]
    BadLabel(String),
    #[error("duplicate atom label {0:?}")]
    DuplicateLabel(String),
    #[error("carrier has {0} atoms, more than the supported {MAX_ATOMS}")]
    TooManyAtoms(usize),
    #[error("empty hyperedge")]
    EmptyHyperedge,
    #[error("hyperedge mentions {0:?}, which is not in the carrier")]
    UnknownAtom(String),
    #[error("duplicate hyperedge {0}")]
    DuplicateHyperedge(String),
    #[error("hypergraph is not atomic: singleton {{{0}}} is missing (use --atomize to insert singletons)")]
    MissingSingleton(String),
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("set {0} is not contained in the carrier")]
    NotInCarrier(String),
    #[error("set must be non-empty")]
    EmptySet,
    #[error("{inner} is not a subset of {outer}")]
    NotNested { inner: String, outer: String },
    #[error("malformed hypergraph text: {0}")]
    Syntax(String),
}

/// Characters that may not occur in atom labels, because the construct and
/// word syntaxes use them.
pub const RESERVED: &[char] = &['{', '}', '(', ')', '[', ']', ',', ';', '=', '|'];

fn check_label(l: &str) -> Result<(), HypergraphError> {
    if l.is_empty() {
        return Err(HypergraphError::EmptyLabel);
    }
    if l.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
        return Err(HypergraphError::BadLabel(l.to_string()));
    }
    Ok(())
}

/// A finite hypergraph whose carrier is a subset of a labelled universe.
///
/// The universe is fixed at construction; [`Hypergraph::restrict`] keeps it and
/// shrinks the carrier, so atom sets of a restriction are comparable with the
/// atom sets of the original.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    labels: Vec<String>,
    carrier: AtomSet,
    edges: Vec<AtomSet>,
}

pub(crate) fn edge_order(a: &AtomSet, b: &AtomSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

impl Hypergraph {
    /// Builds and validates a hypergraph; singletons must be present.
    pub fn new<S: AsRef<str>, T: AsRef<str>, E: AsRef<[T]>>(
        carrier: &[S],
        hyperedges: &[E],
    ) -> Result<Hypergraph, HypergraphError> {
        Self::build(carrier, hyperedges, false)
    }

    /// Like [`Hypergraph::new`] but inserts missing singletons.
    pub fn atomized<S: AsRef<str>, T: AsRef<str>, E: AsRef<[T]>>(
        carrier: &[S],
        hyperedges: &[E],
    ) -> Result<Hypergraph, HypergraphError> {
        Self::build(carrier, hyperedges, true)
    }

    fn build<S: AsRef<str>, T: AsRef<str>, E: AsRef<[T]>>(
        carrier: &[S],
        hyperedges: &[E],
        atomize: bool,
    ) -> Result<Hypergraph, HypergraphError> {
        if carrier.is_empty() {
            return Err(HypergraphError::EmptyCarrier);
        }
        if carrier.len() > MAX_ATOMS {
            return Err(HypergraphError::TooManyAtoms(carrier.len()));
        }
        let mut labels: Vec<String> = Vec::with_capacity(carrier.len());
        for l in carrier {
            check_label(l.as_ref())?;
            labels.push(l.as_ref().to_string());
        }
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(HypergraphError::DuplicateLabel(w[0].clone()));
            }
        }
        let index = |l: &str| labels.binary_search_by(|x| x.as_str().cmp(l)).ok();
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for e in hyperedges {
            let mut s = AtomSet::EMPTY;
            for l in e.as_ref() {
                let i = index(l.as_ref())
                    .ok_or_else(|| HypergraphError::UnknownAtom(l.as_ref().to_string()))?;
                s = s.with(i);
            }
            if s.is_empty() {
                return Err(HypergraphError::EmptyHyperedge);
            }
            if !seen.insert(s) {
                return Err(HypergraphError::DuplicateHyperedge(fmt_set(&labels, s)));
            }
            edges.push(s);
        }
        let full = AtomSet::full(labels.len());
        for i in full.iter() {
            let s = AtomSet::single(i);
            if !seen.contains(&s) {
                if atomize {
                    seen.insert(s);
                    edges.push(s);
                } else {
                    return Err(HypergraphError::MissingSingleton(labels[i].clone()));
                }
            }
        }
        edges.sort_by(edge_order);
        Ok(Hypergraph {
            labels,
            carrier: full,
            edges,
        })
    }

    /// Parses the family notation `{x},{y},{x,y}`; the carrier is the union.
    pub fn parse_family(text: &str, atomize: bool) -> Result<Hypergraph, HypergraphError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut edges: Vec<Vec<String>> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            rest = rest.strip_prefix(',').unwrap_or(rest);
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| HypergraphError::Syntax(format!("expected '{{' at {rest:?}")))?;
            let end = body
                .find('}')
                .ok_or_else(|| HypergraphError::Syntax("unclosed '{'".into()))?;
            let members: Vec<String> = body[..end]
                .split(',')
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            edges.push(members);
            rest = &body[end + 1..];
        }
        let carrier: BTreeSet<String> = edges.iter().flatten().cloned().collect();
        let carrier: Vec<String> = carrier.into_iter().collect();
        Self::build(&carrier, &edges, atomize)
    }

    /// The simplex on the given atoms: singletons plus the whole carrier.
    pub fn simplex<S: AsRef<str>>(atoms: &[S]) -> Hypergraph {
        let mut edges: Vec<Vec<&str>> = atoms.iter().map(|a| vec![a.as_ref()]).collect();
        if atoms.len() > 1 {
            edges.push(atoms.iter().map(|a| a.as_ref()).collect());
        }
        Self::new(atoms, &edges).expect("valid simplex")
    }

    /// The graph with the given edges, as an atomic hypergraph.
    pub fn graph<S: AsRef<str>>(atoms: &[S], pairs: &[(S, S)]) -> Result<Hypergraph, HypergraphError> {
        let edges: Vec<Vec<&str>> = pairs
            .iter()
            .map(|(a, b)| vec![a.as_ref(), b.as_ref()])
            .collect();
        Self::atomized(atoms, &edges)
    }

    pub fn path<S: AsRef<str>>(atoms: &[S]) -> Hypergraph {
        let pairs: Vec<(&str, &str)> = atoms
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        Self::graph(&atoms.iter().map(|a| a.as_ref()).collect::<Vec<_>>(), &pairs).expect("valid path")
    }

    pub fn complete<S: AsRef<str>>(atoms: &[S]) -> Hypergraph {
        let mut pairs = Vec::new();
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                pairs.push((atoms[i].as_ref(), atoms[j].as_ref()));
            }
        }
        Self::graph(&atoms.iter().map(|a| a.as_ref()).collect::<Vec<_>>(), &pairs).expect("valid graph")
    }

    /// Builds a hypergraph directly from masks over `labels`, unchecked.
    /// Labels are sorted and the masks renumbered to match.
    pub fn from_masks(labels: Vec<String>, carrier: AtomSet, edges: Vec<AtomSet>) -> Hypergraph {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut renumber = vec![0; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let remap = |s: AtomSet| AtomSet::from_indices(s.iter().map(|i| renumber[i]));
        let labels = order.iter().map(|&i| labels[i].clone()).collect();
        let carrier = remap(carrier);
        let mut edges: Vec<AtomSet> = edges.into_iter().map(remap).collect::<BTreeSet<_>>().into_iter().collect();
        edges.sort_by(edge_order);
        Hypergraph {
            labels,
            carrier,
            edges,
        }
    }

    /// Labels of the whole universe, sorted.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels
            .binary_search_by(|x| x.as_str().cmp(label))
            .ok()
            .filter(|&i| self.carrier.contains(i))
    }

    pub fn carrier(&self) -> AtomSet {
        self.carrier
    }

    pub fn hyperedges(&self) -> &[AtomSet] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    /// Converts labels into an atom set of this hypergraph.
    pub fn set<S: AsRef<str>>(&self, labels: &[S]) -> Result<AtomSet, HypergraphError> {
        let mut s = AtomSet::EMPTY;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| HypergraphError::UnknownAtom(l.as_ref().to_string()))?;
            s = s.with(i);
        }
        Ok(s)
    }

    /// Labels of the members of `s`, in canonical order.
    pub fn names(&self, s: AtomSet) -> Vec<&str> {
        s.iter().map(|i| self.labels[i].as_str()).collect()
    }

    /// `{x,y}` notation for a set of atoms.
    pub fn fmt_set(&self, s: AtomSet) -> String {
        fmt_set(&self.labels, s)
    }

    pub fn has_edge(&self, s: AtomSet) -> bool {
        self.edges.contains(&s)
    }

    pub fn is_atomic(&self) -> bool {
        self.carrier.iter().all(|i| self.has_edge(AtomSet::single(i)))
    }

    /// The hypergraph with carrier `x` and the hyperedges contained in `x`.
    pub fn restrict(&self, x: AtomSet) -> Result<Hypergraph, HypergraphError> {
        if x.is_empty() {
            return Err(HypergraphError::EmptySet);
        }
        if !x.is_subset(self.carrier) {
            return Err(HypergraphError::NotInCarrier(format!("{x:?}")));
        }
        Ok(Hypergraph {
            labels: self.labels.clone(),
            carrier: x,
            edges: self.edges.iter().copied().filter(|e| e.is_subset(x)).collect(),
        })
    }

    /// Connected component of `start` in the restriction to `within`.
    pub fn component_of(&self, start: usize, within: AtomSet) -> AtomSet {
        let mut comp = AtomSet::single(start);
        loop {
            let mut grown = comp;
            for &e in &self.edges {
                if e.intersects(grown) && e.is_subset(within) {
                    grown = grown | e;
                }
            }
            if grown == comp {
                return comp;
            }
            comp = grown;
        }
    }

    /// Whether the restriction to `s` is connected (`s` must be non-empty).
    pub fn connected(&self, s: AtomSet) -> bool {
        match s.least() {
            None => false,
            Some(i) => self.component_of(i, s) == s,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connected(self.carrier)
    }

    /// Connected components of the restriction to `s`, ordered by least atom.
    pub fn components_of(&self, s: AtomSet) -> Vec<AtomSet> {
        let mut out = Vec::new();
        let mut rest = s;
        while let Some(i) = rest.least() {
            let c = self.component_of(i, s);
            out.push(c);
            rest = rest.minus(c);
        }
        out
    }

    /// Components of the hypergraph with the atoms of `x` removed.
    pub fn components(&self, x: AtomSet) -> Result<Vec<AtomSet>, HypergraphError> {
        if !x.is_subset(self.carrier) {
            return Err(HypergraphError::NotInCarrier(self.fmt_set(x)));
        }
        Ok(self.components_of(self.carrier.minus(x)))
    }

    /// All non-empty connected subsets of the carrier.
    pub fn saturated_sets(&self) -> Vec<AtomSet> {
        let mut out: Vec<AtomSet> = self.carrier.subsets().filter(|&s| self.connected(s)).collect();
        out.sort_by(edge_order);
        out
    }

    pub fn saturate(&self) -> Hypergraph {
        Hypergraph {
            labels: self.labels.clone(),
            carrier: self.carrier,
            edges: self.saturated_sets(),
        }
    }

    /// For `y ⊆ x`, assigns each component of the complement of `x` to the
    /// component of the complement of `y` that contains it.
    pub fn quasi_partition_refine(
        &self,
        y: AtomSet,
        x: AtomSet,
    ) -> Result<Vec<(AtomSet, Vec<AtomSet>)>, HypergraphError> {
        if !y.is_subset(x) {
            return Err(HypergraphError::NotNested {
                inner: self.fmt_set(y),
                outer: self.fmt_set(x),
            });
        }
        let outer = self.components(y)?;
        let inner = self.components(x)?;
        Ok(outer
            .into_iter()
            .map(|k| (k, inner.iter().copied().filter(|h| h.is_subset(k)).collect()))
            .collect())
    }

    /// Hyperedges as label lists, for export.
    pub fn edge_names(&self) -> Vec<Vec<String>> {
        self.edges
            .iter()
            .map(|&e| self.names(e).into_iter().map(str::to_string).collect())
            .collect()
    }

    pub fn to_file(&self) -> HypergraphFile {
        HypergraphFile {
            format: Some(1),
            carrier: self.names(self.carrier).into_iter().map(str::to_string).collect(),
            hyperedges: self.edge_names(),
        }
    }
}

pub(crate) fn fmt_set(labels: &[String], s: AtomSet) -> String {
    let names: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|&e| self.fmt_set(e)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// JSON form: `{"carrier": [...], "hyperedges": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypergraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub carrier: Vec<String>,
    pub hyperedges: Vec<Vec<String>>,
}

impl HypergraphFile {
    pub fn load(&self, atomize: bool) -> Result<Hypergraph, HypergraphError> {
        if atomize {
            Hypergraph::atomized(&self.carrier, &self.hyperedges)
        } else {
            Hypergraph::new(&self.carrier, &self.hyperedges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> Hypergraph {
        Hypergraph::parse_family("{x},{y},{z},{x,y},{y,z}", false).unwrap()
    }

    fn brute_connected(h: &Hypergraph, s: AtomSet) -> bool {
        // no split of s into two non-empty parts such that every edge inside s lies in one part
        let inner: Vec<AtomSet> = h.hyperedges().iter().copied().filter(|e| e.is_subset(s)).collect();
        for a in s.subsets() {
            if a == s {
                continue;
            }
            let b = s.minus(a);
            if inner.iter().all(|e| e.is_subset(a) || e.is_subset(b)) {
                return false;
            }
        }
        true
    }

    #[test]
    fn masks_are_renumbered_to_sorted_labels() {
        let labels: Vec<String> = ["y", "x", "z"].iter().map(|s| s.to_string()).collect();
        let edges = vec![AtomSet::single(0), AtomSet::single(1), AtomSet::single(2), AtomSet::from_indices([0, 2])];
        let h = Hypergraph::from_masks(labels, AtomSet::full(3), edges);
        assert_eq!(h.labels(), ["x", "y", "z"]);
        assert!(h.has_edge(h.set(&["y", "z"]).unwrap()));
        assert_eq!(h.index_of("z"), Some(2));
    }

    #[test]
    fn subsets_enumerate_all() {
        let s = AtomSet(0b1011);
        let subs: Vec<u64> = s.subsets().map(|x| x.0).collect();
        assert_eq!(subs, vec![1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(AtomSet::EMPTY.subsets().count(), 0);
    }

    #[test]
    fn restriction_filters_edges() {
        let h = pentagon();
        let xy = h.set(&["x", "y"]).unwrap();
        let r = h.restrict(xy).unwrap();
        assert_eq!(format!("{r:?}"), "{x},{y},{x,y}");
        assert_eq!(h.restrict(h.carrier()).unwrap(), h);
        let s = Hypergraph::simplex(&["x", "y", "z"]);
        let yz = s.restrict(s.set(&["y", "z"]).unwrap()).unwrap();
        assert_eq!(format!("{yz:?}"), "{y},{z}");
        assert!(!yz.is_connected());
        assert!(h.restrict(AtomSet::EMPTY).is_err());
    }

    #[test]
    fn connectivity_and_components() {
        let h = pentagon();
        assert!(h.is_connected());
        assert!(Hypergraph::simplex(&["x", "y", "z"]).is_connected());
        let y = h.set(&["y"]).unwrap();
        let comps: Vec<Vec<&str>> = h.components(y).unwrap().into_iter().map(|c| h.names(c)).collect();
        assert_eq!(comps, vec![vec!["x"], vec!["z"]]);
        let k = Hypergraph::complete(&["x", "y", "z"]);
        let comps: Vec<Vec<&str>> = k
            .components(k.set(&["y"]).unwrap())
            .unwrap()
            .into_iter()
            .map(|c| k.names(c))
            .collect();
        assert_eq!(comps, vec![vec!["x", "z"]]);
        assert_eq!(h.components(AtomSet::EMPTY).unwrap(), vec![h.carrier()]);
        assert!(h.components(h.carrier()).unwrap().is_empty());
    }

    #[test]
    fn connectivity_matches_partition_oracle() {
        let hs = [
            pentagon(),
            Hypergraph::simplex(&["a", "b", "c", "d"]),
            Hypergraph::parse_family("{a},{b},{c},{d},{a,b,c},{c,d}", false).unwrap(),
            Hypergraph::path(&["a", "b", "c", "d"]),
        ];
        for h in &hs {
            for s in h.carrier().subsets() {
                assert_eq!(h.connected(s), brute_connected(h, s), "{h:?} {s:?}");
                let comps = h.components_of(s);
                let mut u = AtomSet::EMPTY;
                for c in &comps {
                    assert!(!c.intersects(u));
                    assert!(h.connected(*c));
                    u = u | *c;
                }
                assert_eq!(u, s);
            }
        }
    }

    #[test]
    fn saturation() {
        let h = pentagon();
        let sat = h.saturate();
        assert!(sat.has_edge(h.carrier()));
        assert_eq!(sat.hyperedges().len(), 6);
        assert_eq!(sat.saturate(), sat);
        let p = Hypergraph::path(&["x", "y", "z", "u"]);
        let sat = p.saturate();
        let added: Vec<String> = sat
            .hyperedges()
            .iter()
            .filter(|e| !p.has_edge(**e))
            .map(|&e| p.fmt_set(e))
            .collect();
        // labels sort as u < x < y < z
        assert_eq!(added, vec!["{u,y,z}", "{x,y,z}", "{u,x,y,z}"]);
        for e in p.hyperedges() {
            assert!(sat.has_edge(*e));
        }
    }

    #[test]
    fn quasi_partition() {
        let h = pentagon();
        let y = h.set(&["y"]).unwrap();
        let x = h.set(&["x", "y"]).unwrap();
        let m = h.quasi_partition_refine(y, x).unwrap();
        let z = h.set(&["z"]).unwrap();
        let xs = h.set(&["x"]).unwrap();
        assert_eq!(m, vec![(xs, vec![]), (z, vec![z])]);
        assert!(h.quasi_partition_refine(x, y).is_err());
        let same = h.quasi_partition_refine(y, y).unwrap();
        assert!(same.iter().all(|(k, hs)| hs == &vec![*k]));
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Hypergraph::new(&["x", "y"], &[vec!["x"], vec!["x", "y"]]),
            Err(HypergraphError::MissingSingleton("y".into()))
        );
        assert!(Hypergraph::atomized(&["x", "y"], &[vec!["x", "y"]]).unwrap().is_atomic());
        assert!(matches!(
            Hypergraph::new(&["x"], &[vec!["x"], vec!["x"]]),
            Err(HypergraphError::DuplicateHyperedge(_))
        ));
        assert!(matches!(
            Hypergraph::new(&["x"], &[vec!["q"]]),
            Err(HypergraphError::UnknownAtom(_))
        ));
        assert!(matches!(
            Hypergraph::new(&["x", "x"], &[vec!["x"]]),
            Err(HypergraphError::DuplicateLabel(_))
        ));
        let empty: Vec<Vec<&str>> = vec![vec![]];
        assert_eq!(Hypergraph::new(&["x"], &empty), Err(HypergraphError::EmptyHyperedge));
        assert!(matches!(Hypergraph::new(&["a(b"], &[vec!["a(b"]]), Err(HypergraphError::BadLabel(_))));
    }

    #[test]
    fn json_round_trip() {
        let h = pentagon();
        let text = serde_json::to_string(&h.to_file()).unwrap();
        let back: HypergraphFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.load(false).unwrap(), h);
    }
}
