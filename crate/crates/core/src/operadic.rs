//! Operadic trees, their edge graphs and the coherence edges of the
//! associated polytopes.
//!
//! The edge graph of a rooted tree has the tree edges as vertices. Two of
//! them are joined by a solid edge when stacked (one ends where the other
//! starts) and by a dashed edge when they are siblings. Each vertex is named
//! after the child endpoint of its tree edge and sits at the depth of that
//! endpoint.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructs::{enumerate_constructions_limited, vertices_below, Construct, ConstructError, DEFAULT_MAX_CARRIER};
use crate::hypergraph::{AtomSet, Hypergraph, RESERVED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadicError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid label {0:?}")]
    BadLabel(String),
    #[error("label {0:?} used twice")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("the tree has a single node")]
    SingleNode,
    #[error("the tree has more than 64 nodes")]
    TooLarge,
    #[error("not a path of the edge graph")]
    NotAPath,
    #[error("{0} does not induce a connected subgraph")]
    NotConnected(String),
    #[error("word is not admissible at {at}: {reason}")]
    NotAdmissible { at: String, reason: String },
    #[error("{0} is not an edge construct (exactly one two-atom node, all others singletons)")]
    NotEdgeConstruct(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// A rooted tree with distinct labels; node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperadicTree {
    labels: Vec<String>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

/// Nested JSON form `{"label":"a","children":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    #[serde(flatten)]
    pub root: TreeNode,
}

impl OperadicTree {
    /// Builds a tree from labels and parent links; node 0 must be the only root.
    pub fn new(labels: Vec<String>, parent: Vec<Option<usize>>) -> Result<OperadicTree, OperadicError> {
        if labels.len() > 64 {
            return Err(OperadicError::TooLarge);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
                return Err(OperadicError::BadLabel(l.clone()));
            }
            if !seen.insert(l) {
                return Err(OperadicError::DuplicateLabel(l.clone()));
            }
        }
        let mut children = vec![Vec::new(); labels.len()];
        for (i, p) in parent.iter().enumerate() {
            match (i, p) {
                (0, None) => {}
                (i, Some(p)) if i > 0 && *p < i => children[*p].push(i),
                _ => return Err(OperadicError::Syntax { offset: 0, message: "parents must precede children".into() }),
            }
        }
        Ok(OperadicTree { labels, parent, children })
    }

    /// Parses `a(b(c,d),e)`.
    pub fn parse(text: &str) -> Result<OperadicTree, OperadicError> {
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut labels = Vec::new();
        let mut parent = Vec::new();
        let mut pos = 0;
        parse_node(&chars, &mut pos, None, &mut labels, &mut parent, text.len())?;
        if pos != chars.len() {
            return Err(OperadicError::Syntax { offset: chars[pos].0, message: "trailing input".into() });
        }
        OperadicTree::new(labels, parent)
    }

    pub fn from_node(root: &TreeNode) -> Result<OperadicTree, OperadicError> {
        let mut labels = Vec::new();
        let mut parent = Vec::new();
        let mut queue = VecDeque::from([(root, None)]);
        while let Some((n, p)) = queue.pop_front() {
            let i = labels.len();
            labels.push(n.label.clone());
            parent.push(p);
            for c in &n.children {
                queue.push_back((c, Some(i)));
            }
        }
        OperadicTree::new(labels, parent)
    }

    pub fn to_node(&self) -> TreeNode {
        self.node_at(0)
    }

    fn node_at(&self, i: usize) -> TreeNode {
        TreeNode { label: self.labels[i].clone(), children: self.children[i].iter().map(|&c| self.node_at(c)).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn depth(&self, mut i: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[i] {
            i = p;
            d += 1;
        }
        d
    }

    /// Whether `a` is a proper ancestor of `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut cur = self.parent[b];
        while let Some(p) = cur {
            if p == a {
                return true;
            }
            cur = self.parent[p];
        }
        false
    }

    pub fn all_nodes(&self) -> AtomSet {
        AtomSet::full(self.len())
    }

    /// `a(b(c,d),e)`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write(0, &mut out);
        out
    }

    fn write(&self, i: usize, out: &mut String) {
        out.push_str(&self.labels[i]);
        if !self.children[i].is_empty() {
            out.push('(');
            for (k, &c) in self.children[i].iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                self.write(c, out);
            }
            out.push(')');
        }
    }

    /// Descendants of `n` (inclusive) inside `within`.
    fn below(&self, n: usize, within: AtomSet) -> AtomSet {
        let mut out = AtomSet::single(n);
        for &c in &self.children[n] {
            if within.contains(c) {
                out = out | self.below(c, within);
            }
        }
        out
    }
}

fn parse_node(
    chars: &[(usize, char)],
    pos: &mut usize,
    parent_of: Option<usize>,
    labels: &mut Vec<String>,
    parent: &mut Vec<Option<usize>>,
    len: usize,
) -> Result<(), OperadicError> {
    let offset = |p: usize| chars.get(p).map_or(len, |c| c.0);
    let start = *pos;
    while *pos < chars.len() && !RESERVED.contains(&chars[*pos].1) {
        *pos += 1;
    }
    if start == *pos {
        return Err(OperadicError::Syntax { offset: offset(*pos), message: "expected a label".into() });
    }
    let me = labels.len();
    labels.push(chars[start..*pos].iter().map(|c| c.1).collect());
    parent.push(parent_of);
    if *pos < chars.len() && chars[*pos].1 == '(' {
        *pos += 1;
        loop {
            parse_node(chars, pos, Some(me), labels, parent, len)?;
            match chars.get(*pos).map(|c| c.1) {
                Some(',') => *pos += 1,
                Some(')') => {
                    *pos += 1;
                    break;
                }
                _ => return Err(OperadicError::Syntax { offset: offset(*pos), message: "expected ',' or ')'".into() }),
            }
        }
    }
    Ok(())
}

/// All rooted unlabelled trees with `n` nodes, labelled `a, b, c, …` in
/// breadth-first order, in a fixed canonical order.
pub fn rooted_trees(n: usize) -> Vec<OperadicTree> {
    fn shapes(n: usize, memo: &mut BTreeMap<usize, Vec<String>>) -> Vec<String> {
        if let Some(v) = memo.get(&n) {
            return v.clone();
        }
        let mut out = BTreeSet::new();
        if n == 1 {
            out.insert("()".to_string());
        } else {
            for s in shapes(n - 1, memo) {
                for t in grow(&s) {
                    out.insert(t);
                }
            }
        }
        let v: Vec<String> = out.into_iter().collect();
        memo.insert(n, v.clone());
        v
    }
    fn split(s: &str) -> Vec<String> {
        let inner = &s[1..s.len() - 1];
        let mut out = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (i, c) in inner.char_indices() {
            depth += if c == '(' { 1 } else { -1 };
            if depth == 0 {
                out.push(inner[start..=i].to_string());
                start = i + 1;
            }
        }
        out
    }
    fn join(mut kids: Vec<String>) -> String {
        kids.sort();
        format!("({})", kids.concat())
    }
    fn grow(s: &str) -> Vec<String> {
        let kids = split(s);
        let mut out = Vec::new();
        let mut with_leaf = kids.clone();
        with_leaf.push("()".into());
        out.push(join(with_leaf));
        for i in 0..kids.len() {
            for g in grow(&kids[i]) {
                let mut k = kids.clone();
                k[i] = g;
                out.push(join(k));
            }
        }
        out
    }
    if n == 0 {
        return Vec::new();
    }
    shapes(n, &mut BTreeMap::new())
        .into_iter()
        .map(|s| {
            let mut labels = Vec::new();
            let mut parent = Vec::new();
            let mut queue = VecDeque::from([(s, None)]);
            while let Some((shape, p)) = queue.pop_front() {
                let i = labels.len();
                labels.push(((b'a' + (i % 26) as u8) as char).to_string() + &"'".repeat(i / 26));
                parent.push(p);
                for k in split(&shape) {
                    queue.push_back((k, Some(i)));
                }
            }
            OperadicTree::new(labels, parent).expect("generated tree")
        })
        .collect()
}

/// Kind of a step between adjacent vertices of the edge graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// Solid, one level closer to the root.
    Down,
    /// Solid, one level further from the root.
    Up,
    Dashed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathType {
    /// Only solid steps, all in one direction.
    I,
    /// Solid steps down, one dashed step, solid steps up.
    II,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPath {
    pub path: Vec<usize>,
    pub kind: PathType,
}

/// The edge graph with its solid/dashed tags and levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGraph {
    pub tree: OperadicTree,
    pub hypergraph: Hypergraph,
    /// Tree node (child endpoint) of each atom.
    pub atom_node: Vec<usize>,
    /// Atom of the edge above each non-root node.
    pub node_atom: Vec<Option<usize>>,
}

/// The edge graph with atoms named after child endpoints.
pub fn build_edge_graph(t: &OperadicTree) -> Result<EdgeGraph, OperadicError> {
    build_edge_graph_named(t, &BTreeMap::new())
}

/// As [`build_edge_graph`], renaming atoms: child label → atom name.
pub fn build_edge_graph_named(t: &OperadicTree, names: &BTreeMap<String, String>) -> Result<EdgeGraph, OperadicError> {
    if t.len() < 2 {
        return Err(OperadicError::SingleNode);
    }
    let name = |n: usize| names.get(t.label(n)).cloned().unwrap_or_else(|| t.label(n).to_string());
    let atoms: Vec<String> = (1..t.len()).map(name).collect();
    let mut pairs = Vec::new();
    for a in 1..t.len() {
        for b in a + 1..t.len() {
            let (pa, pb) = (t.parent(a), t.parent(b));
            if pa == pb || pa == Some(b) || pb == Some(a) {
                pairs.push((name(a), name(b)));
            }
        }
    }
    let h = Hypergraph::graph(&atoms, &pairs).map_err(|e| OperadicError::BadLabel(e.to_string()))?;
    let mut atom_node = vec![0; h.labels().len()];
    let mut node_atom = vec![None; t.len()];
    for n in 1..t.len() {
        let a = h.index_of(&name(n)).unwrap();
        atom_node[a] = n;
        node_atom[n] = Some(a);
    }
    Ok(EdgeGraph { tree: t.clone(), hypergraph: h, atom_node, node_atom })
}

impl EdgeGraph {
    pub fn level(&self, atom: usize) -> usize {
        self.tree.depth(self.atom_node[atom])
    }

    pub fn atom_name(&self, atom: usize) -> &str {
        self.hypergraph.label(atom)
    }

    pub fn atoms(&self) -> AtomSet {
        self.hypergraph.carrier()
    }

    pub fn step(&self, a: usize, b: usize) -> Option<Step> {
        let (na, nb) = (self.atom_node[a], self.atom_node[b]);
        if a == b {
            None
        } else if self.tree.parent(na) == Some(nb) {
            Some(Step::Down)
        } else if self.tree.parent(nb) == Some(na) {
            Some(Step::Up)
        } else if self.tree.parent(na) == self.tree.parent(nb) {
            Some(Step::Dashed)
        } else {
            None
        }
    }

    /// Solid edges as (lower level, higher level) atom pairs.
    pub fn solid_edges(&self) -> Vec<(usize, usize)> {
        self.edges_of(Step::Up)
    }

    pub fn dashed_edges(&self) -> Vec<(usize, usize)> {
        self.edges_of(Step::Dashed).into_iter().filter(|(a, b)| a < b).collect()
    }

    fn edges_of(&self, kind: Step) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.atoms().iter() {
            for b in self.atoms().iter() {
                if self.step(a, b) == Some(kind) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn neighbours(&self, a: usize) -> Vec<usize> {
        self.atoms().iter().filter(|&b| self.step(a, b).is_some()).collect()
    }

    /// A shortest path by breadth-first search.
    pub fn shortest_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut prev = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        prev.insert(from, from);
        while let Some(a) = queue.pop_front() {
            if a == to {
                break;
            }
            for b in self.neighbours(a) {
                if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(b) {
                    e.insert(a);
                    queue.push_back(b);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Every path between two vertices visiting no vertex twice.
    pub fn simple_paths(&self, from: usize, to: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![from];
        self.extend_paths(to, &mut path, &mut out);
        out
    }

    fn extend_paths(&self, to: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == to {
            out.push(path.clone());
            return;
        }
        for b in self.neighbours(last) {
            if !path.contains(&b) {
                path.push(b);
                self.extend_paths(to, path, out);
                path.pop();
            }
        }
    }

    pub fn path_type(&self, p: &[usize]) -> Option<PathType> {
        let steps: Vec<Step> = p.windows(2).map(|w| self.step(w[0], w[1])).collect::<Option<_>>()?;
        let dashed = steps.iter().filter(|&&s| s == Step::Dashed).count();
        match dashed {
            0 if steps.iter().all(|&s| s == Step::Down) || steps.iter().all(|&s| s == Step::Up) => Some(PathType::I),
            1 => {
                let d = steps.iter().position(|&s| s == Step::Dashed).unwrap();
                let ok = steps[..d].iter().all(|&s| s == Step::Down) && steps[d + 1..].iter().all(|&s| s == Step::Up);
                ok.then_some(PathType::II)
            }
            _ => None,
        }
    }

    /// Whether a rewriting rule removes the middle vertex of `a, b, c`.
    fn redex(&self, a: usize, b: usize, c: usize) -> bool {
        matches!(
            (self.step(a, b), self.step(b, c)),
            (Some(Step::Dashed), Some(Step::Dashed))
                | (Some(Step::Down), Some(Step::Up))
                | (Some(Step::Dashed), Some(Step::Down))
                | (Some(Step::Up), Some(Step::Dashed))
        )
    }

    /// All paths reachable by one rewriting step.
    pub fn rewrite_once(&self, p: &[usize]) -> Vec<Vec<usize>> {
        (0..p.len().saturating_sub(2))
            .filter(|&i| self.redex(p[i], p[i + 1], p[i + 2]))
            .map(|i| {
                let mut q = p.to_vec();
                q.remove(i + 1);
                q
            })
            .collect()
    }

    /// Rewrites to normal form, leftmost redex first.
    pub fn normalize_path(&self, p: &[usize]) -> Result<MinPath, OperadicError> {
        if p.is_empty() || p.windows(2).any(|w| self.step(w[0], w[1]).is_none()) {
            return Err(OperadicError::NotAPath);
        }
        let mut cur = p.to_vec();
        while let Some(next) = self.rewrite_once(&cur).into_iter().next() {
            cur = next;
        }
        let kind = self.path_type(&cur).ok_or(OperadicError::NotAPath)?;
        Ok(MinPath { path: cur, kind })
    }

    pub fn min_path(&self, from: usize, to: usize) -> MinPath {
        let path = self.shortest_path(from, to);
        let kind = self.path_type(&path).expect("shortest paths are normal");
        MinPath { path, kind }
    }

    /// Atoms of the edges inside a set of tree nodes.
    pub fn edges_within(&self, nodes: AtomSet) -> AtomSet {
        AtomSet::from_indices(
            nodes
                .iter()
                .filter(|&n| self.tree.parent(n).is_some_and(|p| nodes.contains(p)))
                .map(|n| self.node_atom[n].unwrap()),
        )
    }

    /// The subtree whose edges are the connected set `k`, as a node set.
    pub fn subtree_of(&self, k: AtomSet) -> Result<AtomSet, OperadicError> {
        if !self.hypergraph.connected(k) {
            return Err(OperadicError::NotConnected(self.hypergraph.fmt_set(k)));
        }
        let mut nodes = AtomSet::EMPTY;
        for a in k.iter() {
            let n = self.atom_node[a];
            nodes = nodes.with(n).with(self.tree.parent(n).unwrap());
        }
        Ok(nodes)
    }
}

/// Outcome of removing a set of edges from the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalCensus {
    /// Node sets of the pieces, by least node.
    pub subtrees: Vec<AtomSet>,
    /// Pieces with at least one edge.
    pub non_empty: usize,
    pub components: Vec<AtomSet>,
    /// Whether the edge sets of the non-empty pieces are the components.
    pub matched: bool,
}

pub fn edge_removal_census(g: &EdgeGraph, removed: AtomSet) -> RemovalCensus {
    let t = &g.tree;
    let mut pieces = Vec::new();
    let mut left = t.all_nodes();
    while let Some(start) = left.least() {
        let mut piece = AtomSet::single(start);
        loop {
            let mut grown = piece;
            for n in 1..t.len() {
                let cut = removed.contains(g.node_atom[n].unwrap());
                let p = t.parent(n).unwrap();
                if !cut && (piece.contains(n) || piece.contains(p)) {
                    grown = grown.with(n).with(p);
                }
            }
            if grown == piece {
                break;
            }
            piece = grown;
        }
        pieces.push(piece);
        left = left.minus(piece);
    }
    let rest = g.atoms().minus(removed);
    let components = g.hypergraph.components_of(rest);
    let mut edge_sets: Vec<AtomSet> =
        pieces.iter().map(|&p| g.edges_within(p)).filter(|e| !e.is_empty()).collect();
    edge_sets.sort_by_key(|e| e.least());
    RemovalCensus { non_empty: edge_sets.len(), matched: edge_sets == components, subtrees: pieces, components }
}

/// A full decomposition word: letters are tree nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    Letter(usize),
    Pair(Box<Word>, Box<Word>),
}

impl Word {
    pub fn nodes(&self) -> AtomSet {
        match self {
            Word::Letter(n) => AtomSet::single(*n),
            Word::Pair(a, b) => a.nodes() | b.nodes(),
        }
    }

    fn pair(a: Word, b: Word) -> Word {
        Word::Pair(Box::new(a), Box::new(b))
    }

    /// Outer parentheses dropped; letters run together when all labels are
    /// one character, else separated by spaces.
    pub fn to_text(&self, t: &OperadicTree) -> String {
        let sep = if t.labels().iter().all(|l| l.chars().count() == 1) { "" } else { " " };
        match self {
            Word::Letter(n) => t.label(*n).to_string(),
            Word::Pair(a, b) => format!("{}{sep}{}", a.inner(t, sep), b.inner(t, sep)),
        }
    }

    fn inner(&self, t: &OperadicTree, sep: &str) -> String {
        match self {
            Word::Letter(n) => t.label(*n).to_string(),
            Word::Pair(a, b) => format!("({}{sep}{})", a.inner(t, sep), b.inner(t, sep)),
        }
    }

    /// Parses a word over the labels of `t`; labels are matched greedily.
    pub fn parse(t: &OperadicTree, text: &str) -> Result<Word, OperadicError> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut p = WordParser { t, text, chars: &chars, pos: 0 };
        let items = p.items()?;
        p.skip_ws();
        if p.pos != chars.len() {
            return Err(p.err("unbalanced ')'"));
        }
        match <[Word; 2]>::try_from(items) {
            Ok([a, b]) => Ok(Word::pair(a, b)),
            Err(mut items) if items.len() == 1 => Ok(items.pop().unwrap()),
            Err(_) => Err(p.err("every pair of parentheses must hold exactly two items")),
        }
    }
}

struct WordParser<'a> {
    t: &'a OperadicTree,
    text: &'a str,
    chars: &'a [(usize, char)],
    pos: usize,
}

impl WordParser<'_> {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |c| c.0)
    }

    fn err(&self, message: &str) -> OperadicError {
        OperadicError::Syntax { offset: self.offset(), message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn items(&mut self) -> Result<Vec<Word>, OperadicError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.chars.get(self.pos).map(|c| c.1) {
                None | Some(')') => return Ok(out),
                Some('(') => {
                    self.pos += 1;
                    let inner = self.items()?;
                    if self.chars.get(self.pos).map(|c| c.1) != Some(')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    match <[Word; 2]>::try_from(inner) {
                        Ok([a, b]) => out.push(Word::pair(a, b)),
                        Err(_) => return Err(self.err("every pair of parentheses must hold exactly two items")),
                    }
                }
                Some(_) => {
                    let rest = &self.text[self.offset()..];
                    let best = (0..self.t.len())
                        .filter(|&n| rest.starts_with(self.t.label(n)))
                        .max_by_key(|&n| self.t.label(n).len())
                        .ok_or_else(|| self.err("unknown letter"))?;
                    self.pos += self.t.label(best).chars().count();
                    out.push(Word::Letter(best));
                }
            }
        }
    }
}

/// The construction of the edge graph named by a decomposition word.
pub fn word_to_construction(g: &EdgeGraph, w: &Word) -> Result<Construct, OperadicError> {
    if w.nodes() != g.tree.all_nodes() {
        return Err(OperadicError::NotAdmissible { at: w.to_text(&g.tree), reason: "the word does not use every node once".into() });
    }
    check_disjoint(g, w)?;
    build_from_word(g, w)?.ok_or_else(|| OperadicError::NotAdmissible { at: w.to_text(&g.tree), reason: "a single letter".into() })
}

fn check_disjoint(g: &EdgeGraph, w: &Word) -> Result<(), OperadicError> {
    if let Word::Pair(a, b) = w {
        check_disjoint(g, a)?;
        check_disjoint(g, b)?;
        if a.nodes().intersects(b.nodes()) {
            return Err(OperadicError::NotAdmissible { at: w.inner(&g.tree, ""), reason: "repeated letter".into() });
        }
    }
    Ok(())
}

fn build_from_word(g: &EdgeGraph, w: &Word) -> Result<Option<Construct>, OperadicError> {
    match w {
        Word::Letter(_) => Ok(None),
        Word::Pair(a, b) => {
            let (sa, sb) = (a.nodes(), b.nodes());
            let link = sb.iter().find(|&c| g.tree.parent(c).is_some_and(|p| sa.contains(p)));
            let Some(c) = link else {
                let reason = if sa.iter().any(|c| g.tree.parent(c).is_some_and(|p| sb.contains(p))) {
                    "the side holding the parent of the joining edge must come first"
                } else {
                    "the two sides are not joined by an edge"
                };
                return Err(OperadicError::NotAdmissible { at: w.inner(&g.tree, ""), reason: reason.into() });
            };
            let kids: Vec<Construct> = [build_from_word(g, a)?, build_from_word(g, b)?].into_iter().flatten().collect();
            Ok(Some(Construct::new(AtomSet::single(g.node_atom[c].unwrap()), kids)))
        }
    }
}

/// The decomposition word of a construction of the edge graph.
pub fn construction_to_word(g: &EdgeGraph, v: &Construct) -> Result<Word, OperadicError> {
    if !v.is_construction() || !v.belongs_to(&g.hypergraph) {
        return Err(OperadicError::Construct(ConstructError::NotConstruction));
    }
    Ok(word_of(g, v, g.tree.all_nodes()))
}

fn word_of(g: &EdgeGraph, v: &Construct, nodes: AtomSet) -> Word {
    let c = g.atom_node[v.decoration().least().unwrap()];
    let child_side = g.tree.below(c, nodes);
    let parent_side = nodes.minus(child_side);
    let side = |s: AtomSet| {
        if s.len() == 1 {
            Word::Letter(s.least().unwrap())
        } else {
            let edges = g.edges_within(s);
            let sub = v.children().iter().find(|k| k.span() == edges).expect("child spanning the side");
            word_of(g, sub, s)
        }
    };
    Word::pair(side(parent_side), side(child_side))
}

/// Every full decomposition word of the tree.
pub fn all_words(t: &OperadicTree) -> Vec<Word> {
    let mut out = words_on(t, t.all_nodes());
    out.sort();
    out
}

fn words_on(t: &OperadicTree, nodes: AtomSet) -> Vec<Word> {
    if nodes.len() == 1 {
        return vec![Word::Letter(nodes.least().unwrap())];
    }
    let mut out = Vec::new();
    for c in nodes.iter() {
        if t.parent(c).is_some_and(|p| nodes.contains(p)) {
            let child_side = t.below(c, nodes);
            let parent_side = nodes.minus(child_side);
            for a in words_on(t, parent_side) {
                for b in words_on(t, child_side) {
                    out.push(Word::pair(a.clone(), b));
                }
            }
        }
    }
    out
}

/// Number of full decompositions, by the edge recurrence.
pub fn decomposition_count(t: &OperadicTree) -> u128 {
    fn count(t: &OperadicTree, nodes: AtomSet, memo: &mut BTreeMap<AtomSet, u128>) -> u128 {
        if nodes.len() == 1 {
            return 1;
        }
        if let Some(&k) = memo.get(&nodes) {
            return k;
        }
        let mut total = 0;
        for c in nodes.iter() {
            if t.parent(c).is_some_and(|p| nodes.contains(p)) {
                let child_side = t.below(c, nodes);
                total += count(t, nodes.minus(child_side), memo) * count(t, child_side, memo);
            }
        }
        memo.insert(nodes, total);
        total
    }
    count(t, t.all_nodes(), &mut BTreeMap::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Beta,
    Theta,
}

/// A polytope edge with its kind; for β the ends are (source, target).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    pub kind: EdgeKind,
    pub ends: (Construct, Construct),
    pub min_path: MinPath,
}

/// Decides β or θ for an edge construct and orients β edges.
pub fn classify_edge(g: &EdgeGraph, e: &Construct) -> Result<EdgeClassification, OperadicError> {
    let h = &g.hypergraph;
    let bad = || OperadicError::NotEdgeConstruct(e.to_text(h));
    if !e.belongs_to(h) {
        return Err(bad());
    }
    let doubles: Vec<AtomSet> = e.nodes().iter().map(|n| n.decoration()).filter(|d| d.len() > 1).collect();
    let [pair] = doubles[..] else {
        return Err(bad());
    };
    if pair.len() != 2 {
        return Err(bad());
    }
    let mut it = pair.iter();
    let (u, v) = (it.next().unwrap(), it.next().unwrap());
    let ends = vertices_below(h, e)?;
    let [a, b] = <[Construct; 2]>::try_from(ends).map_err(|_| bad())?;
    let min_path = g.min_path(u, v);
    if min_path.kind == PathType::II {
        return Ok(EdgeClassification { kind: EdgeKind::Theta, ends: (a, b), min_path });
    }
    let (low, high) = if g.level(u) < g.level(v) { (u, v) } else { (v, u) };
    let ends = if b.is_above(low, high) { (a, b) } else { (b, a) };
    Ok(EdgeClassification { kind: EdgeKind::Beta, ends, min_path })
}

/// Every edge of the polytope, classified.
pub fn classify_all(g: &EdgeGraph) -> Result<Vec<EdgeClassification>, OperadicError> {
    let all = crate::constructs::enumerate_constructs_limited(&g.hypergraph, DEFAULT_MAX_CARRIER)?;
    let n = g.hypergraph.size();
    all.iter().filter(|t| n >= 2 && t.node_count() == n - 1).map(|t| classify_edge(g, t)).collect()
}

/// The skeleton as DOT: β directed and solid, θ undirected and dashed,
/// vertices labelled by decomposition words.
pub fn skeleton_dot(g: &EdgeGraph) -> Result<String, OperadicError> {
    let verts = enumerate_constructions_limited(&g.hypergraph, DEFAULT_MAX_CARRIER)?;
    let mut words: Vec<(String, Construct)> = verts
        .into_iter()
        .map(|v| Ok((construction_to_word(g, &v)?.to_text(&g.tree), v)))
        .collect::<Result<_, OperadicError>>()?;
    words.sort();
    let id = |c: &Construct| words.iter().position(|(_, v)| v == c).unwrap();
    let mut out = String::from("digraph coherence {\n");
    for (i, (w, _)) in words.iter().enumerate() {
        out.push_str(&format!("  v{i} [label=\"{w}\"];\n"));
    }
    let mut lines = Vec::new();
    for e in classify_all(g)? {
        let (a, b) = (id(&e.ends.0), id(&e.ends.1));
        lines.push(match e.kind {
            EdgeKind::Beta => format!("  v{a} -> v{b} [label=\"beta\"];\n"),
            EdgeKind::Theta => {
                let (a, b) = (a.min(b), a.max(b));
                format!("  v{a} -> v{b} [label=\"theta\", style=dashed, dir=none];\n")
            }
        });
    }
    lines.sort();
    out.push_str(&lines.concat());
    out.push_str("}\n");
    Ok(out)
}

/// The edge graph as DOT, solid and dashed edges, vertices with levels.
pub fn edge_graph_dot(g: &EdgeGraph) -> String {
    let mut out = String::from("graph edges {\n");
    for a in g.atoms().iter() {
        out.push_str(&format!("  \"{}\" [level={}];\n", g.atom_name(a), g.level(a)));
    }
    for (a, b) in g.solid_edges() {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", g.atom_name(a), g.atom_name(b)));
    }
    for (a, b) in g.dashed_edges() {
        out.push_str(&format!("  \"{}\" -- \"{}\" [style=dashed];\n", g.atom_name(a), g.atom_name(b)));
    }
    out.push_str("}\n");
    out
}
