//! Iterated truncation rounds over finite multisets.
//!
//! A round holds the current facets, a vertex hypergraph whose members name
//! the vertices and a truncation hypergraph saying what to cut next. Constructs
//! are tamed at the root by the vertex hypergraph; the maximal ones give the
//! next facets and the constructions give the next vertices, both flattened by
//! summing multisets.

use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructs::{leq, product, Construct, Enumerator, Order};
use crate::hypergraph::{AtomSet, Hypergraph, HypergraphError};
use crate::nestedsets::psi;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruncationError {
    #[error("the empty family has no flattening")]
    EmptyFamily,
    #[error("unknown base element {0:?}")]
    UnknownBase(String),
    #[error("bad multiset {0:?}")]
    BadMultiset(String),
    #[error("the base needs at least two elements")]
    SmallBase,
    #[error("duplicate base element {0:?}")]
    DuplicateBase(String),
    #[error("truncation hypergraph atoms {found:?} differ from the facets {expected:?}")]
    WrongAtoms { expected: Vec<String>, found: Vec<String> },
    #[error("the truncation hypergraph is not connected")]
    Disconnected,
    #[error("vertex hyperedge {0} is not a set of facets")]
    BadVertexEdge(String),
    #[error("property (P) fails: facet {0} is in no vertex hyperedge")]
    PropertyP(String),
    #[error("flattening collides: {a} and {b} both give {image}")]
    Collision { a: String, b: String, image: String },
    #[error("facet {0} is lost by the round")]
    LostFacet(String),
    #[error("vertex hyperedge {0} contains a non-facet")]
    OutsideFacets(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// A finite multiset over an ordered base, as counts aligned with the base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset(pub Vec<u32>);

impl Multiset {
    pub fn unit(base_len: usize, i: usize) -> Multiset {
        let mut v = vec![0; base_len];
        v[i] = 1;
        Multiset(v)
    }

    /// Formal sum with terms in base order, `2x+y`.
    pub fn to_text(&self, base: &[String]) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .zip(base)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, b)| if k == 1 { b.clone() } else { format!("{k}{b}") })
            .collect();
        terms.join("+")
    }

    /// Parses a formal sum such as `2x+y`.
    pub fn parse(base: &[String], text: &str) -> Result<Multiset, TruncationError> {
        let mut counts = vec![0; base.len()];
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(TruncationError::BadMultiset(text.into()));
        }
        for term in compact.split('+') {
            let (k, name) = match base.iter().position(|b| b == term) {
                Some(i) => (1, i),
                None => {
                    let digits = term.chars().take_while(char::is_ascii_digit).count();
                    let k: u32 = term[..digits].parse().map_err(|_| TruncationError::BadMultiset(text.into()))?;
                    let i = base
                        .iter()
                        .position(|b| b == &term[digits..])
                        .ok_or_else(|| TruncationError::UnknownBase(term[digits..].to_string()))?;
                    (k, i)
                }
            };
            counts[name] += k;
        }
        Ok(Multiset(counts))
    }

    pub fn to_map(&self, base: &[String]) -> BTreeMap<String, u32> {
        self.0.iter().zip(base).filter(|(&k, _)| k > 0).map(|(&k, b)| (b.clone(), k)).collect()
    }

    pub fn from_map(base: &[String], m: &BTreeMap<String, u32>) -> Result<Multiset, TruncationError> {
        let mut counts = vec![0; base.len()];
        for (name, &k) in m {
            let i = base.iter().position(|b| b == name).ok_or_else(|| TruncationError::UnknownBase(name.clone()))?;
            counts[i] += k;
        }
        if counts.iter().all(|&k| k == 0) {
            return Err(TruncationError::BadMultiset(format!("{m:?}")));
        }
        Ok(Multiset(counts))
    }
}

/// Sum of a non-empty family of multisets.
pub fn mu_sigma(ys: &[Multiset]) -> Result<Multiset, TruncationError> {
    let first = ys.first().ok_or(TruncationError::EmptyFamily)?;
    let mut acc = vec![0; first.0.len()];
    for y in ys {
        for (a, b) in acc.iter_mut().zip(&y.0) {
            *a += b;
        }
    }
    Ok(Multiset(acc))
}

/// Constructs of `ht` whose root contains the complement of a member of `hv`.
pub fn tamed_constructs(ht: &Hypergraph, hv: &[AtomSet]) -> Vec<Construct> {
    let h = ht.carrier();
    let mut roots = BTreeSet::new();
    for &v in hv {
        let rest = h.minus(v);
        if !rest.is_empty() {
            roots.insert(rest);
        }
        for s in v.subsets() {
            roots.insert(rest | s);
        }
    }
    let mut en = Enumerator::new(ht, false);
    let mut out = Vec::new();
    for y in roots {
        if y == h {
            out.push(Construct::leaf(y));
        } else {
            let comps = ht.components_of(h.minus(y));
            en.with_children(y, &comps, &mut out);
        }
    }
    out
}

/// Constructions rooted at exactly the complement of a member of `hv`.
pub fn tamed_constructions(ht: &Hypergraph, hv: &[AtomSet]) -> Vec<Construct> {
    let h = ht.carrier();
    let roots: BTreeSet<AtomSet> = hv.iter().map(|&v| h.minus(v)).filter(|r| !r.is_empty()).collect();
    let mut en = Enumerator::new(ht, true);
    let mut out = Vec::new();
    for y in roots {
        let comps = ht.components_of(h.minus(y));
        let lists: Vec<Rc<Vec<Construct>>> = comps.iter().map(|&c| en.of(c)).collect();
        for kids in product(&lists) {
            out.push(Construct::new(y, kids));
        }
    }
    out
}

/// The sets `Y` of the constrs `(H∖Y)(Y)`: connected proper non-empty
/// subsets lying in some member of `hv`.
pub fn constrs(ht: &Hypergraph, hv: &[AtomSet]) -> Vec<AtomSet> {
    ht.saturated_sets()
        .into_iter()
        .filter(|&y| y != ht.carrier() && hv.iter().any(|&v| y.is_subset(v)))
        .collect()
}

/// Constrs found as the maximal tamed constructs below the top.
pub fn constrs_by_maximality(ht: &Hypergraph, hv: &[AtomSet]) -> Vec<AtomSet> {
    let top = Construct::leaf(ht.carrier());
    let below: Vec<Construct> = tamed_constructs(ht, hv).into_iter().filter(|t| *t != top).collect();
    let mut out: Vec<AtomSet> = below
        .iter()
        .filter(|s| {
            !below.iter().any(|t| t != *s && leq(ht, s, t, Order::V2).unwrap_or(false))
        })
        .map(|s| {
            let kids = s.children();
            if kids.len() == 1 {
                kids[0].span()
            } else {
                AtomSet::EMPTY
            }
        })
        .collect();
    out.sort_by(crate::hypergraph::edge_order);
    out
}

/// One recorded round: the facets and both hypergraphs, by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub facets: Vec<String>,
    pub vertex_hypergraph: Vec<Vec<String>>,
    pub truncation: Vec<Vec<String>>,
}

/// Facets and vertex hypergraph of a round, facets sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundState {
    pub base: Vec<String>,
    pub round: usize,
    pub facets: Vec<Multiset>,
    pub vertex_hypergraph: Vec<AtomSet>,
    pub trace: Vec<TraceEntry>,
}

impl RoundState {
    /// Round 1: the base as facets, complements of singletons as vertices.
    pub fn initial(base: &[String]) -> Result<RoundState, TruncationError> {
        if base.len() < 2 {
            return Err(TruncationError::SmallBase);
        }
        let mut seen = BTreeSet::new();
        for b in base {
            if !seen.insert(b) {
                return Err(TruncationError::DuplicateBase(b.clone()));
            }
        }
        let n = base.len();
        let facets: Vec<Multiset> = (0..n).map(|i| Multiset::unit(n, i)).collect();
        RoundState::build(base.to_vec(), 1, facets, |idx| {
            (0..n).map(|i| AtomSet::from_indices((0..n).filter(|&j| j != i).map(|j| idx[j]))).collect()
        })
    }

    fn build(
        base: Vec<String>,
        round: usize,
        mut facets: Vec<Multiset>,
        hv: impl Fn(&[usize]) -> Vec<AtomSet>,
    ) -> Result<RoundState, TruncationError> {
        let mut order: Vec<usize> = (0..facets.len()).collect();
        order.sort_by_key(|&i| facets[i].to_text(&base));
        let mut idx = vec![0; facets.len()];
        for (pos, &i) in order.iter().enumerate() {
            idx[i] = pos;
        }
        facets = order.iter().map(|&i| facets[i].clone()).collect();
        let state = RoundState { vertex_hypergraph: hv(&idx), base, round, facets, trace: Vec::new() };
        state.check()?;
        Ok(state)
    }

    pub fn names(&self) -> Vec<String> {
        self.facets.iter().map(|f| f.to_text(&self.base)).collect()
    }

    pub fn name_set(&self, s: AtomSet) -> Vec<String> {
        s.iter().map(|i| self.facets[i].to_text(&self.base)).collect()
    }

    /// The vertex hyperedges as sets of names, sorted.
    pub fn vertex_names(&self) -> BTreeSet<BTreeSet<String>> {
        self.vertex_hypergraph.iter().map(|&v| self.name_set(v).into_iter().collect()).collect()
    }

    pub fn all(&self) -> AtomSet {
        AtomSet::full(self.facets.len())
    }

    /// Property (P) and the union condition.
    pub fn check(&self) -> Result<(), TruncationError> {
        let all = self.all();
        let mut covered = AtomSet::EMPTY;
        for &v in &self.vertex_hypergraph {
            if !v.is_subset(all) || v.is_empty() {
                return Err(TruncationError::BadVertexEdge(format!("{:?}", self.name_set(v))));
            }
            covered = covered | v;
        }
        if let Some(i) = all.minus(covered).least() {
            return Err(TruncationError::PropertyP(self.facets[i].to_text(&self.base)));
        }
        Ok(())
    }

    /// Builds the truncation hypergraph from hyperedges given as formal sums.
    pub fn truncation_hypergraph<S: AsRef<str>>(&self, edges: &[Vec<S>], atomize: bool) -> Result<Hypergraph, TruncationError> {
        let names = self.names();
        let mut canon = Vec::new();
        for e in edges {
            let mut members = Vec::new();
            for m in e {
                members.push(Multiset::parse(&self.base, m.as_ref())?.to_text(&self.base));
            }
            canon.push(members);
        }
        let h = if atomize { Hypergraph::atomized(&names, &canon)? } else { Hypergraph::new(&names, &canon)? };
        self.check_truncation(&h)?;
        Ok(h)
    }

    fn check_truncation(&self, ht: &Hypergraph) -> Result<(), TruncationError> {
        if ht.labels() != self.names().as_slice() {
            return Err(TruncationError::WrongAtoms { expected: self.names(), found: ht.labels().to_vec() });
        }
        if !ht.is_connected() {
            return Err(TruncationError::Disconnected);
        }
        Ok(())
    }
}

/// Counts produced while running a round.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Census {
    pub tamed_constructs: usize,
    pub tamed_constructions: usize,
    pub constrs: usize,
    /// Vertex hyperedges produced by more than one construction.
    pub coincidences: Vec<String>,
}

pub struct RoundOutcome {
    pub next: RoundState,
    pub census: Census,
}

/// The next round, given the truncation hypergraph of the current one.
pub fn next_round(s: &RoundState, ht: &Hypergraph) -> Result<RoundOutcome, TruncationError> {
    s.check()?;
    s.check_truncation(ht)?;
    step(s, ht)
}

/// As [`next_round`] without requiring a connected truncation hypergraph.
pub(crate) fn step(s: &RoundState, ht: &Hypergraph) -> Result<RoundOutcome, TruncationError> {
    let hv = &s.vertex_hypergraph;
    let flatten = |y: AtomSet| mu_sigma(&y.iter().map(|i| s.facets[i].clone()).collect::<Vec<_>>());
    let ys = constrs(ht, hv);
    let mut images: BTreeMap<Multiset, AtomSet> = BTreeMap::new();
    for &y in &ys {
        let m = flatten(y)?;
        if let Some(prev) = images.insert(m.clone(), y) {
            return Err(TruncationError::Collision {
                a: format!("{:?}", s.name_set(prev)),
                b: format!("{:?}", s.name_set(y)),
                image: m.to_text(&s.base),
            });
        }
    }
    for f in &s.facets {
        if !images.contains_key(f) {
            return Err(TruncationError::LostFacet(f.to_text(&s.base)));
        }
    }
    let new_facets: Vec<Multiset> = images.keys().cloned().collect();
    let constructions = tamed_constructions(ht, hv);
    let mut families: Vec<Vec<Multiset>> = Vec::new();
    for t in &constructions {
        let mut fam: BTreeMap<Multiset, AtomSet> = BTreeMap::new();
        for z in psi(t) {
            if z == ht.carrier() {
                continue;
            }
            let m = flatten(z)?;
            if !images.contains_key(&m) {
                return Err(TruncationError::OutsideFacets(t.to_text(ht)));
            }
            if let Some(prev) = fam.insert(m.clone(), z) {
                return Err(TruncationError::Collision {
                    a: format!("{:?}", s.name_set(prev)),
                    b: format!("{:?}", s.name_set(z)),
                    image: m.to_text(&s.base),
                });
            }
        }
        families.push(fam.into_keys().collect());
    }
    let mut census = Census {
        tamed_constructs: tamed_constructs(ht, hv).len(),
        tamed_constructions: constructions.len(),
        constrs: ys.len(),
        coincidences: Vec::new(),
    };
    let position: BTreeMap<&Multiset, usize> = new_facets.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut by_set: BTreeMap<AtomSet, Vec<String>> = BTreeMap::new();
    for (fam, t) in families.iter().zip(&constructions) {
        let set = AtomSet::from_indices(fam.iter().map(|m| position[m]));
        by_set.entry(set).or_default().push(t.to_text(ht));
    }
    for (_, ts) in by_set.iter().filter(|(_, ts)| ts.len() > 1) {
        census.coincidences.push(ts.join(" = "));
    }
    let sets: Vec<AtomSet> = by_set.into_keys().collect();
    let mut next = RoundState::build(s.base.clone(), s.round + 1, new_facets, |idx| {
        sets.iter().map(|v| AtomSet::from_indices(v.iter().map(|i| idx[i]))).collect()
    })?;
    let mut trace = s.trace.clone();
    trace.push(TraceEntry {
        facets: s.names(),
        vertex_hypergraph: hv.iter().map(|&v| s.name_set(v)).collect(),
        truncation: ht.hyperedges().iter().map(|&e| s.name_set(e)).collect(),
    });
    next.trace = trace;
    Ok(RoundOutcome { next, census })
}

/// JSON form of a round state; multisets as `{"x":2,"y":1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(default)]
    pub format: Option<u32>,
    pub base: Vec<String>,
    pub round: usize,
    pub facets: Vec<BTreeMap<String, u32>>,
    pub vertex_hypergraph: Vec<Vec<BTreeMap<String, u32>>>,
    #[serde(default)]
    pub trace: Vec<TraceEntry>,
}

/// A multiset given either as counts or as a formal sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultisetRepr {
    Counts(BTreeMap<String, u32>),
    Sum(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationFile {
    #[serde(default)]
    pub format: Option<u32>,
    pub hyperedges: Vec<Vec<MultisetRepr>>,
}

impl TruncationFile {
    pub fn load(&self, s: &RoundState, atomize: bool) -> Result<Hypergraph, TruncationError> {
        let mut edges = Vec::new();
        for e in &self.hyperedges {
            let mut members = Vec::new();
            for m in e {
                members.push(match m {
                    MultisetRepr::Counts(c) => Multiset::from_map(&s.base, c)?.to_text(&s.base),
                    MultisetRepr::Sum(t) => t.clone(),
                });
            }
            edges.push(members);
        }
        s.truncation_hypergraph(&edges, atomize)
    }
}

impl RoundState {
    pub fn to_file(&self) -> StateFile {
        StateFile {
            format: Some(1),
            base: self.base.clone(),
            round: self.round,
            facets: self.facets.iter().map(|f| f.to_map(&self.base)).collect(),
            vertex_hypergraph: self
                .vertex_hypergraph
                .iter()
                .map(|v| v.iter().map(|i| self.facets[i].to_map(&self.base)).collect())
                .collect(),
            trace: self.trace.clone(),
        }
    }

    pub fn from_file(f: &StateFile) -> Result<RoundState, TruncationError> {
        let facets: Vec<Multiset> =
            f.facets.iter().map(|m| Multiset::from_map(&f.base, m)).collect::<Result<_, _>>()?;
        let mut hv_ms = Vec::new();
        for v in &f.vertex_hypergraph {
            hv_ms.push(v.iter().map(|m| Multiset::from_map(&f.base, m)).collect::<Result<Vec<_>, _>>()?);
        }
        let pos: BTreeMap<&Multiset, usize> = facets.iter().enumerate().map(|(i, m)| (m, i)).collect();
        if pos.len() != facets.len() {
            return Err(TruncationError::BadMultiset("repeated facet".into()));
        }
        let mut hv = Vec::new();
        for v in &hv_ms {
            let mut s = AtomSet::EMPTY;
            for m in v {
                let i = pos.get(m).ok_or_else(|| TruncationError::OutsideFacets(m.to_text(&f.base)))?;
                s = s.with(*i);
            }
            hv.push(s);
        }
        let mut state = RoundState::build(f.base.clone(), f.round, facets, |idx| {
            hv.iter().map(|v| AtomSet::from_indices(v.iter().map(|i| idx[i]))).collect()
        })?;
        state.trace = f.trace.clone();
        Ok(state)
    }
}
