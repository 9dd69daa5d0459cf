//! Constructs: decorated trees naming the faces of a hypergraph polytope.
//!
//! A construct of a connected hypergraph with carrier `H` is obtained by
//! choosing a non-empty `Y ⊆ H` for the root and recursing into the connected
//! components of what is left. Constructions (all decorations singletons)
//! name vertices, the one-node tree `H` names the whole polytope.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::rc::Rc;

use thiserror::Error;

use crate::hypergraph::{AtomSet, Hypergraph};

/// Default limit on the carrier size for full enumerations.
pub const DEFAULT_MAX_CARRIER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("invalid construct at node {path}: {reason}")]
    Invalid { path: String, reason: InvalidReason },
    #[error("the hypergraph is not connected")]
    Disconnected,
    #[error("carrier has {atoms} atoms, above the enumeration limit {limit}")]
    TooLarge { atoms: usize, limit: usize },
    #[error("constructs belong to different hypergraphs")]
    Mismatch,
    #[error("not a construction")]
    NotConstruction,
    #[error("rewriting step not applicable: {0}")]
    Rewrite(String),
    #[error("malformed partial construct: {0}")]
    Partial(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidReason {
    #[error("empty decoration")]
    EmptyDecoration,
    #[error("decoration {0} overlaps another node")]
    Overlap(String),
    #[error("decoration {0} is outside the set spanned by this subtree")]
    Outside(String),
    #[error("component {0} has no matching child")]
    MissingComponent(String),
    #[error("child spans {0}, which is not a component of the complement")]
    NotAComponent(String),
    #[error("the tree does not cover the carrier; missing {0}")]
    Uncovered(String),
}

/// A validated construct. Children are kept sorted by the least atom of the
/// set they span, so structural equality is equality of constructs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Construct {
    deco: AtomSet,
    span: AtomSet,
    children: Vec<Construct>,
}

impl Construct {
    /// Assembles a node; no validation beyond canonical ordering.
    pub fn new(deco: AtomSet, mut children: Vec<Construct>) -> Construct {
        children.sort_by_key(|c| c.span.least());
        let span = children.iter().fold(deco, |s, c| s | c.span);
        Construct { deco, span, children }
    }

    pub fn leaf(deco: AtomSet) -> Construct {
        Construct::new(deco, Vec::new())
    }

    pub fn decoration(&self) -> AtomSet {
        self.deco
    }

    /// Union of all decorations of the tree.
    pub fn span(&self) -> AtomSet {
        self.span
    }

    pub fn children(&self) -> &[Construct] {
        &self.children
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Construct::node_count).sum::<usize>()
    }

    pub fn is_construction(&self) -> bool {
        self.deco.len() == 1 && self.children.iter().all(Construct::is_construction)
    }

    /// Nodes in preorder.
    pub fn nodes(&self) -> Vec<&Construct> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    /// Node carrying atom `i` in its decoration.
    pub fn node_of(&self, i: usize) -> Option<&Construct> {
        if self.deco.contains(i) {
            return Some(self);
        }
        self.children
            .iter()
            .find(|c| c.span.contains(i))
            .and_then(|c| c.node_of(i))
    }

    /// Whether the node of atom `a` is a proper ancestor of the node of atom `b`.
    pub fn is_above(&self, a: usize, b: usize) -> bool {
        match self.node_of(a) {
            Some(n) => !n.deco.contains(b) && n.span.contains(b),
            None => false,
        }
    }

    /// Whether this is a construct of `h`.
    pub fn belongs_to(&self, h: &Hypergraph) -> bool {
        self.span == h.carrier() && self.fits(h, h.carrier())
    }

    fn fits(&self, h: &Hypergraph, k: AtomSet) -> bool {
        if self.deco.is_empty() || !self.deco.is_subset(k) || self.span != k {
            return false;
        }
        let comps = h.components_of(k.minus(self.deco));
        comps.len() == self.children.len() && self.children.iter().zip(&comps).all(|(c, &x)| c.fits(h, x))
    }

    /// Text form: `{x,y}(z)`, singleton braces omitted.
    pub fn to_text(&self, h: &Hypergraph) -> String {
        let mut s = String::new();
        self.write_text(h, &mut s);
        s
    }

    fn write_text(&self, h: &Hypergraph, out: &mut String) {
        write_deco(h, self.deco, out);
        if !self.children.is_empty() {
            out.push('(');
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                c.write_text(h, out);
            }
            out.push(')');
        }
    }

    /// Parses and validates against `h`.
    pub fn parse(h: &Hypergraph, text: &str) -> Result<Construct, ConstructError> {
        let raw = RawTree::parse(h, text)?;
        validate_construct(h, &raw)
    }

    /// All constructs obtained by contracting one edge of the tree.
    pub fn covers(&self) -> Vec<Construct> {
        let mut out = BTreeSet::new();
        for (i, c) in self.children.iter().enumerate() {
            let mut kids: Vec<Construct> = self
                .children
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, k)| k.clone())
                .collect();
            kids.extend(c.children.iter().cloned());
            out.insert(Construct::new(self.deco | c.deco, kids));
        }
        for (i, c) in self.children.iter().enumerate() {
            for up in c.covers() {
                let mut kids = self.children.clone();
                kids[i] = up;
                out.insert(Construct::new(self.deco, kids));
            }
        }
        out.into_iter().collect()
    }
}

fn write_deco(h: &Hypergraph, deco: AtomSet, out: &mut String) {
    let names = h.names(deco);
    if names.len() == 1 {
        out.push_str(names[0]);
    } else {
        out.push('{');
        out.push_str(&names.join(","));
        out.push('}');
    }
}

/// A decorated tree as written, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTree {
    pub deco: AtomSet,
    pub children: Vec<RawTree>,
}

impl RawTree {
    pub fn span(&self) -> AtomSet {
        self.children.iter().fold(self.deco, |s, c| s | c.span())
    }

    /// Parses `{x,y}(z,u(v))`; whitespace is ignored and an empty decoration
    /// with a single child stands for the child itself.
    pub fn parse(h: &Hypergraph, text: &str) -> Result<RawTree, ConstructError> {
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut p = TreeParser { h, chars: &chars, pos: 0, len: text.len() };
        let t = p.tree()?;
        if p.pos != chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }

    pub fn from_construct(c: &Construct) -> RawTree {
        RawTree {
            deco: c.deco,
            children: c.children.iter().map(RawTree::from_construct).collect(),
        }
    }

    fn preorder<'a>(&'a self, path: String, out: &mut Vec<(String, &'a RawTree)>) {
        for (i, c) in self.children.iter().enumerate() {
            c.preorder(format!("{path}/{i}"), out);
        }
        out.insert(0, (path, self));
    }
}

struct TreeParser<'a> {
    h: &'a Hypergraph,
    chars: &'a [(usize, char)],
    pos: usize,
    len: usize,
}

impl TreeParser<'_> {
    fn err(&self, message: &str) -> ConstructError {
        ConstructError::Syntax {
            offset: self.chars.get(self.pos).map(|c| c.0).unwrap_or(self.len),
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn label(&mut self) -> Result<usize, ConstructError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if crate::hypergraph::RESERVED.contains(&c) {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an atom label"));
        }
        let name: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        self.h.index_of(&name).ok_or(ConstructError::UnknownAtom(name))
    }

    fn tree(&mut self) -> Result<RawTree, ConstructError> {
        let mut deco = AtomSet::EMPTY;
        if self.eat('{') {
            if !self.eat('}') {
                loop {
                    deco = deco.with(self.label()?);
                    if self.eat('}') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(self.err("expected ',' or '}'"));
                    }
                }
            }
        } else {
            deco = deco.with(self.label()?);
        }
        let mut children = Vec::new();
        if self.eat('(') {
            loop {
                children.push(self.tree()?);
                if self.eat(')') {
                    break;
                }
                if !self.eat(',') {
                    return Err(self.err("expected ',' or ')'"));
                }
            }
        }
        if deco.is_empty() {
            if children.len() != 1 {
                return Err(self.err("an empty decoration must have exactly one child"));
            }
            return Ok(children.pop().unwrap());
        }
        Ok(RawTree { deco, children })
    }
}

/// Checks the inductive definition of constructs against `h`.
pub fn validate_construct(h: &Hypergraph, t: &RawTree) -> Result<Construct, ConstructError> {
    if !h.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    let mut nodes = Vec::new();
    t.preorder("root".to_string(), &mut nodes);
    let mut seen = AtomSet::EMPTY;
    for (path, n) in &nodes {
        if n.deco.is_empty() {
            return Err(invalid(path, InvalidReason::EmptyDecoration));
        }
        if n.deco.intersects(seen) {
            return Err(invalid(path, InvalidReason::Overlap(h.fmt_set(n.deco & seen))));
        }
        if !n.deco.is_subset(h.carrier()) {
            return Err(invalid(path, InvalidReason::Outside(format!("{:?}", n.deco))));
        }
        seen = seen | n.deco;
    }
    if seen != h.carrier() {
        return Err(invalid("root", InvalidReason::Uncovered(h.fmt_set(h.carrier().minus(seen)))));
    }
    check_node(h, t, h.carrier(), "root".to_string())
}

fn invalid(path: &str, reason: InvalidReason) -> ConstructError {
    ConstructError::Invalid { path: path.to_string(), reason }
}

fn check_node(h: &Hypergraph, t: &RawTree, k: AtomSet, path: String) -> Result<Construct, ConstructError> {
    if !t.deco.is_subset(k) {
        return Err(invalid(&path, InvalidReason::Outside(h.fmt_set(t.deco))));
    }
    let comps = h.components_of(k.minus(t.deco));
    let mut used = vec![false; comps.len()];
    let mut kids = Vec::new();
    for (i, c) in t.children.iter().enumerate() {
        let s = c.span();
        match comps.iter().position(|&x| x == s) {
            Some(j) if !used[j] => {
                used[j] = true;
                kids.push(check_node(h, c, s, format!("{path}/{i}"))?);
            }
            _ => return Err(invalid(&format!("{path}/{i}"), InvalidReason::NotAComponent(h.fmt_set(s)))),
        }
    }
    if let Some(j) = used.iter().position(|u| !u) {
        return Err(invalid(&path, InvalidReason::MissingComponent(h.fmt_set(comps[j]))));
    }
    Ok(Construct::new(t.deco, kids))
}

/// Memoized enumeration of constructs (or constructions) of connected subsets.
pub struct Enumerator<'a> {
    h: &'a Hypergraph,
    constructions_only: bool,
    memo: HashMap<AtomSet, Rc<Vec<Construct>>>,
}

impl<'a> Enumerator<'a> {
    pub fn new(h: &'a Hypergraph, constructions_only: bool) -> Self {
        Enumerator { h, constructions_only, memo: HashMap::new() }
    }

    /// All constructs of the restriction to the connected set `k`.
    pub fn of(&mut self, k: AtomSet) -> Rc<Vec<Construct>> {
        if let Some(v) = self.memo.get(&k) {
            return v.clone();
        }
        let mut out = Vec::new();
        let roots: Vec<AtomSet> = if self.constructions_only {
            k.iter().map(AtomSet::single).collect()
        } else {
            k.subsets().collect()
        };
        for y in roots {
            let comps = self.h.components_of(k.minus(y));
            self.with_children(y, &comps, &mut out);
        }
        let rc = Rc::new(out);
        self.memo.insert(k, rc.clone());
        rc
    }

    /// Pushes `y(T1,..,Tn)` for every choice of constructs `Ti` of `comps[i]`.
    pub fn with_children(&mut self, y: AtomSet, comps: &[AtomSet], out: &mut Vec<Construct>) {
        let lists: Vec<Rc<Vec<Construct>>> = comps.iter().map(|&c| self.of(c)).collect();
        for kids in product(&lists) {
            out.push(Construct::new(y, kids));
        }
    }
}

/// Cartesian product of lists of constructs.
pub(crate) fn product(lists: &[Rc<Vec<Construct>>]) -> Vec<Vec<Construct>> {
    let mut acc: Vec<Vec<Construct>> = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::with_capacity(acc.len() * l.len());
        for prefix in &acc {
            for c in l.iter() {
                let mut v = prefix.clone();
                v.push(c.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn guard(h: &Hypergraph, limit: usize) -> Result<(), ConstructError> {
    if h.size() > limit {
        return Err(ConstructError::TooLarge { atoms: h.size(), limit });
    }
    if !h.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    Ok(())
}

fn sorted(mut v: Vec<Construct>) -> Vec<Construct> {
    v.sort_by(|a, b| b.node_count().cmp(&a.node_count()).then_with(|| a.cmp(b)));
    v
}

/// All constructs, vertices first, each exactly once.
pub fn enumerate_constructs(h: &Hypergraph) -> Result<Vec<Construct>, ConstructError> {
    enumerate_constructs_limited(h, DEFAULT_MAX_CARRIER)
}

pub fn enumerate_constructs_limited(h: &Hypergraph, limit: usize) -> Result<Vec<Construct>, ConstructError> {
    guard(h, limit)?;
    Ok(sorted(Enumerator::new(h, false).of(h.carrier()).to_vec()))
}

/// All constructions (every decoration a singleton).
pub fn enumerate_constructions(h: &Hypergraph) -> Result<Vec<Construct>, ConstructError> {
    enumerate_constructions_limited(h, DEFAULT_MAX_CARRIER)
}

pub fn enumerate_constructions_limited(h: &Hypergraph, limit: usize) -> Result<Vec<Construct>, ConstructError> {
    guard(h, limit)?;
    Ok(sorted(Enumerator::new(h, true).of(h.carrier()).to_vec()))
}

/// The three definitions of the face order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// Closure of single edge contractions.
    Rules,
    /// Recursive comparison of roots and of the subtrees below them.
    V2,
    /// Decomposition of the smaller construct along spanning partial constructs.
    V3,
}

impl Order {
    pub const ALL: [Order; 3] = [Order::Rules, Order::V2, Order::V3];
}

/// Decides `s ≤ t`.
pub fn leq(h: &Hypergraph, s: &Construct, t: &Construct, order: Order) -> Result<bool, ConstructError> {
    if !s.belongs_to(h) || !t.belongs_to(h) {
        return Err(ConstructError::Mismatch);
    }
    Ok(match order {
        Order::Rules => leq_rules(s, t),
        Order::V2 => leq_v2(s, t),
        Order::V3 => leq_v3(h, s, t),
    })
}

fn leq_rules(s: &Construct, t: &Construct) -> bool {
    if s == t {
        return true;
    }
    let goal = t.node_count();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(c) = queue.pop_front() {
        if c.node_count() <= goal {
            continue;
        }
        for up in c.covers() {
            if &up == t {
                return true;
            }
            if seen.insert(up.clone()) {
                queue.push_back(up);
            }
        }
    }
    false
}

/// Everything reachable from `s` by edge contractions, `s` included.
pub fn up_set(s: &Construct) -> HashSet<Construct> {
    let mut seen = HashSet::from([s.clone()]);
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(c) = queue.pop_front() {
        for up in c.covers() {
            if seen.insert(up.clone()) {
                queue.push_back(up);
            }
        }
    }
    seen
}

fn leq_v2(s: &Construct, t: &Construct) -> bool {
    if !s.deco.is_subset(t.deco) {
        return false;
    }
    for sj in &s.children {
        let kj = sj.span;
        let inside: Vec<Construct> = t.children.iter().filter(|ti| ti.span.is_subset(kj)).cloned().collect();
        let x = kj & t.deco;
        let target = if x.is_empty() {
            match <[Construct; 1]>::try_from(inside) {
                Ok([only]) => only,
                Err(_) => return false,
            }
        } else {
            Construct::new(x, inside)
        };
        if target.span != kj || !leq_v2(sj, &target) {
            return false;
        }
    }
    true
}

fn leq_v3(h: &Hypergraph, s: &Construct, t: &Construct) -> bool {
    if t.children.is_empty() {
        return t.deco == s.span;
    }
    let x = t.deco;
    let mut cut = Vec::new();
    let Some(top) = cut_below(s, x, &mut cut) else {
        return false;
    };
    let Ok(hk) = h.restrict(s.span) else {
        return false;
    };
    if top.span(&hk).ok() != Some(x) {
        return false;
    }
    if cut.len() != t.children.len() {
        return false;
    }
    t.children.iter().all(|ti| match cut.iter().find(|c| c.span == ti.span) {
        Some(si) => leq_v3(h, si, ti),
        None => false,
    })
}

/// Splits `s` into the part decorated inside `x` and the subtrees hanging
/// below it, which are replaced by Ω-leaves.
fn cut_below<'a>(s: &'a Construct, x: AtomSet, cut: &mut Vec<&'a Construct>) -> Option<PartialConstruct> {
    if s.deco.is_subset(x) {
        let mut kids = Vec::new();
        for c in &s.children {
            kids.push(cut_below(c, x, cut)?);
        }
        Some(PartialConstruct::node(s.deco, kids))
    } else if !s.deco.intersects(x) {
        cut.push(s);
        Some(PartialConstruct::Omega(s.span))
    } else {
        None
    }
}

/// A construct some of whose leaves are undefined placeholders `Ω_K`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PartialConstruct {
    Omega(AtomSet),
    Node { deco: AtomSet, children: Vec<PartialConstruct> },
}

impl PartialConstruct {
    pub fn node(deco: AtomSet, mut children: Vec<PartialConstruct>) -> PartialConstruct {
        children.sort_by_key(|c| c.ambient().least());
        PartialConstruct::Node { deco, children }
    }

    pub fn from_construct(c: &Construct) -> PartialConstruct {
        PartialConstruct::node(c.deco, c.children.iter().map(PartialConstruct::from_construct).collect())
    }

    /// Union of all decorations and placeholder sets.
    pub fn ambient(&self) -> AtomSet {
        match self {
            PartialConstruct::Omega(k) => *k,
            PartialConstruct::Node { deco, children } => children.iter().fold(*deco, |s, c| s | c.ambient()),
        }
    }

    /// Union of the defined decorations, without checking well-formedness.
    pub fn defined(&self) -> AtomSet {
        match self {
            PartialConstruct::Omega(_) => AtomSet::EMPTY,
            PartialConstruct::Node { deco, children } => children.iter().fold(*deco, |s, c| s | c.defined()),
        }
    }

    pub fn omegas(&self) -> Vec<AtomSet> {
        match self {
            PartialConstruct::Omega(k) => vec![*k],
            PartialConstruct::Node { children, .. } => children.iter().flat_map(|c| c.omegas()).collect(),
        }
    }

    /// The spanned set, checking the inductive well-formedness rules over the
    /// ambient set of the tree.
    pub fn span(&self, h: &Hypergraph) -> Result<AtomSet, ConstructError> {
        self.span_in(h, self.ambient())
    }

    fn span_in(&self, h: &Hypergraph, k: AtomSet) -> Result<AtomSet, ConstructError> {
        match self {
            PartialConstruct::Omega(s) => {
                if *s == k && h.connected(k) {
                    Ok(AtomSet::EMPTY)
                } else {
                    Err(ConstructError::Partial(format!("placeholder {} is not a component", h.fmt_set(*s))))
                }
            }
            PartialConstruct::Node { deco, children } => {
                if deco.is_empty() || !deco.is_subset(k) {
                    return Err(ConstructError::Partial(format!("bad decoration {}", h.fmt_set(*deco))));
                }
                let comps = h.components_of(k.minus(*deco));
                if comps.len() != children.len() {
                    return Err(ConstructError::Partial(format!(
                        "node {} has {} children for {} components",
                        h.fmt_set(*deco),
                        children.len(),
                        comps.len()
                    )));
                }
                let mut span = *deco;
                for (c, comp) in children.iter().zip(&comps) {
                    if c.ambient() != *comp {
                        return Err(ConstructError::Partial(format!(
                            "child over {} where {} was expected",
                            h.fmt_set(c.ambient()),
                            h.fmt_set(*comp)
                        )));
                    }
                    span = span | c.span_in(h, *comp)?;
                }
                Ok(span)
            }
        }
    }

    /// Replaces each `Ω_K` by the construct spanning `K` from `subs`.
    pub fn graft(&self, subs: &[Construct]) -> Result<Construct, ConstructError> {
        match self {
            PartialConstruct::Omega(k) => subs
                .iter()
                .find(|c| c.span == *k)
                .cloned()
                .ok_or_else(|| ConstructError::Partial(format!("nothing to graft at {k:?}"))),
            PartialConstruct::Node { deco, children } => {
                let kids = children.iter().map(|c| c.graft(subs)).collect::<Result<Vec<_>, _>>()?;
                Ok(Construct::new(*deco, kids))
            }
        }
    }

    pub fn to_construct(&self) -> Option<Construct> {
        self.graft(&[]).ok()
    }

    pub fn to_text(&self, h: &Hypergraph) -> String {
        let mut out = String::new();
        self.write_text(h, &mut out);
        out
    }

    fn write_text(&self, h: &Hypergraph, out: &mut String) {
        match self {
            PartialConstruct::Omega(k) => {
                out.push('Ω');
                out.push_str(&h.fmt_set(*k));
            }
            PartialConstruct::Node { deco, children } => {
                write_deco(h, *deco, out);
                if !children.is_empty() {
                    out.push('(');
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        c.write_text(h, out);
                    }
                    out.push(')');
                }
            }
        }
    }

    fn replace_omega(&self, k: AtomSet, with: &PartialConstruct) -> PartialConstruct {
        match self {
            PartialConstruct::Omega(s) if *s == k => with.clone(),
            PartialConstruct::Omega(_) => self.clone(),
            PartialConstruct::Node { deco, children } => {
                PartialConstruct::node(*deco, children.iter().map(|c| c.replace_omega(k, with)).collect())
            }
        }
    }
}

/// One step of the rewriting towards `target`: the placeholder `Ω_K` with
/// `x ∈ K` becomes `x(Ω_K1, .., Ω_Kp)` for the components `Ki` of `K∖{x}`.
pub fn rewrite_step(
    h: &Hypergraph,
    p: &PartialConstruct,
    x: usize,
    target: AtomSet,
) -> Result<PartialConstruct, ConstructError> {
    let spanned = p.span(h)?;
    if !spanned.is_subset(target) || spanned == target {
        return Err(ConstructError::Rewrite("the spanned set is not a proper subset of the target".into()));
    }
    if !target.minus(spanned).contains(x) {
        return Err(ConstructError::Rewrite(format!("{} is not in the target minus the spanned set", h.label(x))));
    }
    let k = p
        .omegas()
        .into_iter()
        .find(|k| k.contains(x))
        .ok_or_else(|| ConstructError::Rewrite(format!("{} lies in no placeholder", h.label(x))))?;
    let x_set = AtomSet::single(x);
    let comps = h.components_of(k.minus(x_set));
    let replacement = PartialConstruct::node(x_set, comps.into_iter().map(PartialConstruct::Omega).collect());
    Ok(p.replace_omega(k, &replacement))
}

/// All normal forms of the rewriting from `Ω_H` towards `x`: the partial
/// constructions spanning `x`.
pub fn spanning_partial_constructions(h: &Hypergraph, x: AtomSet) -> Result<Vec<PartialConstruct>, ConstructError> {
    if x.is_empty() || !x.is_subset(h.carrier()) {
        return Err(ConstructError::Rewrite("target must be a non-empty subset of the carrier".into()));
    }
    if !h.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    let start = PartialConstruct::Omega(h.carrier());
    let mut frontier = BTreeSet::from([start]);
    let mut done = BTreeSet::new();
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for p in frontier {
            let spanned = p.defined();
            if spanned == x {
                done.insert(p);
                continue;
            }
            for a in x.minus(spanned).iter() {
                next.insert(rewrite_step(h, &p, a, x)?);
            }
        }
        frontier = next;
    }
    Ok(done.into_iter().collect())
}

/// All constructions below `t`, by grafting spanning partial constructions
/// of every node's decoration.
pub fn vertices_below(h: &Hypergraph, t: &Construct) -> Result<Vec<Construct>, ConstructError> {
    let mut out: Vec<Construct> = below(h, t)?.into_iter().collect();
    out.sort();
    Ok(out)
}

fn below(h: &Hypergraph, t: &Construct) -> Result<BTreeSet<Construct>, ConstructError> {
    let hk = h.restrict(t.span).map_err(|_| ConstructError::Mismatch)?;
    let tops = spanning_partial_constructions(&hk, t.deco)?;
    let lists: Vec<Rc<Vec<Construct>>> = t
        .children
        .iter()
        .map(|c| below(h, c).map(|s| Rc::new(s.into_iter().collect::<Vec<_>>())))
        .collect::<Result<_, _>>()?;
    let mut out = BTreeSet::new();
    for top in &tops {
        for subs in product(&lists) {
            out.insert(top.graft(&subs)?);
        }
    }
    Ok(out)
}
