//! The permutohedron-based associahedron as a two-round truncation, and its
//! faces written as words with holes.
//!
//! A word has determined letters `x1 x2 ..` and holes `.1 .2 ..`; the hole
//! map sends each hole to the block of letters it stands for. Standard
//! brackets print as `[ ]`, other parentheses as `( )`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::constructs::{leq, up_set, Construct, ConstructError, Order};
use crate::hypergraph::{AtomSet, Hypergraph, HypergraphError};
use crate::truncation::{
    constrs, next_round, tamed_constructions, tamed_constructs, Multiset, RoundState, TruncationError,
};

pub const MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbaError {
    #[error("dimension {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("the dimension must be positive")]
    ZeroDimension,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid word: {0}")]
    Invalid(String),
    #[error("not a chain of proper non-empty subsets")]
    NotAChain,
    #[error("not a tamed construct: {0}")]
    NotTamed(String),
    #[error("word has {found} letters, the setup expects {expected}")]
    WrongSetup { expected: usize, found: usize },
    #[error("setup check failed: {0}")]
    Setup(String),
    #[error(transparent)]
    Truncation(#[from] TruncationError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Base letter, 0-based.
    Det(usize),
    /// Hole number, 1-based.
    Hole(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Item {
    Letter(Letter),
    Group { square: bool, items: Vec<Item> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Unicode,
    Ascii,
}

/// A partially parenthesised word with holes and its hole map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HoleWord {
    pub items: Vec<Item>,
    pub holes: Vec<AtomSet>,
}

fn subscript(k: usize, style: Style) -> String {
    match style {
        Style::Ascii => k.to_string(),
        Style::Unicode => k
            .to_string()
            .chars()
            .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
            .collect(),
    }
}

fn letter_text(l: Letter, style: Style) -> String {
    match (l, style) {
        (Letter::Det(i), _) => format!("x{}", subscript(i + 1, style)),
        (Letter::Hole(j), Style::Ascii) => format!(".{j}"),
        (Letter::Hole(j), Style::Unicode) => format!("·{}", subscript(j, style)),
    }
}

fn items_text(items: &[Item], style: Style, round: bool, out: &mut String) {
    for it in items {
        match it {
            Item::Letter(l) => out.push_str(&letter_text(*l, style)),
            Item::Group { square, items } => {
                let (o, c) = if *square && !round { ('[', ']') } else { ('(', ')') };
                out.push(o);
                items_text(items, style, round, out);
                out.push(c);
            }
        }
    }
}

/// `(start, end, square)` intervals of letter positions.
type Interval = (usize, usize, bool);

fn flatten(items: &[Item], letters: &mut Vec<Letter>, groups: &mut Vec<Interval>) {
    for it in items {
        match it {
            Item::Letter(l) => letters.push(*l),
            Item::Group { square, items } => {
                let start = letters.len();
                let slot = groups.len();
                groups.push((start, 0, *square));
                flatten(items, letters, groups);
                groups[slot].1 = letters.len();
            }
        }
    }
}

/// Rebuilds items from letters and a laminar family of intervals.
fn build_items(letters: &[Letter], groups: &[Interval]) -> Vec<Item> {
    let mut sorted = groups.to_vec();
    sorted.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    sorted.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    let mut k = 0;
    build(letters, &sorted, 0, letters.len(), &mut k)
}

fn build(letters: &[Letter], groups: &[Interval], lo: usize, hi: usize, k: &mut usize) -> Vec<Item> {
    let mut items = Vec::new();
    let mut pos = lo;
    while pos < hi {
        if *k < groups.len() && groups[*k].0 == pos && groups[*k].1 <= hi {
            let (s, e, square) = groups[*k];
            *k += 1;
            let inner = build(letters, groups, s, e, k);
            items.push(Item::Group { square, items: inner });
            pos = e;
        } else {
            items.push(Item::Letter(letters[pos]));
            pos += 1;
        }
    }
    items
}

impl HoleWord {
    pub fn letters(&self) -> Vec<Letter> {
        let mut letters = Vec::new();
        flatten(&self.items, &mut letters, &mut Vec::new());
        letters
    }

    fn intervals(&self) -> (Vec<Letter>, Vec<Interval>) {
        let mut letters = Vec::new();
        let mut groups = Vec::new();
        flatten(&self.items, &mut letters, &mut groups);
        (letters, groups)
    }

    pub fn word_text(&self, style: Style) -> String {
        let mut out = String::new();
        items_text(&self.items, style, false, &mut out);
        out
    }

    /// The word with every bracket printed round.
    pub fn round_text(&self, style: Style) -> String {
        let mut out = String::new();
        items_text(&self.items, style, true, &mut out);
        out
    }

    pub fn map_text(&self, style: Style) -> String {
        let entries: Vec<String> = self
            .holes
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let ls: Vec<String> = s.iter().map(|i| letter_text(Letter::Det(i), style)).collect();
                format!("{}={{{}}}", letter_text(Letter::Hole(j + 1), style), ls.join(","))
            })
            .collect();
        entries.join(", ")
    }

    /// `word; .1={x2,x3}`, the map omitted when there are no holes.
    pub fn to_text(&self, style: Style) -> String {
        if self.holes.is_empty() {
            self.word_text(style)
        } else {
            format!("{}; {}", self.word_text(style), self.map_text(style))
        }
    }

    pub fn parse(text: &str) -> Result<HoleWord, PbaError> {
        let mut p = Parser { chars: text.char_indices().collect(), pos: 0, len: text.len() };
        let mut items = p.seq(None)?;
        p.skip_ws();
        let mut holes = BTreeMap::new();
        if p.peek() == Some(';') {
            p.pos += 1;
            loop {
                p.skip_ws();
                if p.peek().is_none() {
                    break;
                }
                let off = p.offset();
                let j = match p.letter()? {
                    Some(Letter::Hole(j)) => j,
                    _ => return Err(p.err("expected a hole")),
                };
                p.skip_ws();
                match p.peek() {
                    Some('=') | Some('↦') => p.pos += 1,
                    Some('-') => {
                        p.pos += 1;
                        p.expect('>')?;
                    }
                    _ => return Err(p.err("expected '='")),
                }
                p.skip_ws();
                p.expect('{')?;
                let mut set = AtomSet::EMPTY;
                loop {
                    p.skip_ws();
                    match p.letter()? {
                        Some(Letter::Det(i)) => set = set.with(i),
                        _ => return Err(p.err("expected a letter")),
                    }
                    p.skip_ws();
                    match p.peek() {
                        Some(',') => p.pos += 1,
                        Some('}') => {
                            p.pos += 1;
                            break;
                        }
                        _ => return Err(p.err("expected ',' or '}'")),
                    }
                }
                if holes.insert(j, set).is_some() {
                    return Err(PbaError::Syntax { offset: off, message: format!("hole {j} mapped twice") });
                }
                p.skip_ws();
                match p.peek() {
                    Some(',') | Some(';') => p.pos += 1,
                    None => break,
                    _ => return Err(p.err("expected ',' between hole entries")),
                }
            }
        } else if p.peek().is_some() {
            return Err(p.err("unexpected character"));
        }
        if holes.keys().copied().ne(1..=holes.len()) {
            return Err(PbaError::Invalid("holes must be numbered 1, 2, ...".into()));
        }
        while let [Item::Group { items: inner, .. }] = items.as_slice() {
            items = inner.clone();
        }
        Ok(HoleWord { items, holes: holes.into_values().collect() })
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |c| c.0)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn err(&self, message: &str) -> PbaError {
        PbaError::Syntax { offset: self.offset(), message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), PbaError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<usize, PbaError> {
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            let d = match c {
                '0'..='9' => c,
                '₀'..='₉' => char::from_digit(c as u32 - 0x2080, 10).unwrap(),
                _ => break,
            };
            digits.push(d);
            self.pos += 1;
        }
        match digits.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(self.err("expected a positive index")),
        }
    }

    fn letter(&mut self) -> Result<Option<Letter>, PbaError> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Some(Letter::Det(self.number()? - 1)))
            }
            Some('.') | Some('·') => {
                self.pos += 1;
                Ok(Some(Letter::Hole(self.number()?)))
            }
            _ => Ok(None),
        }
    }

    fn seq(&mut self, close: Option<char>) -> Result<Vec<Item>, PbaError> {
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c @ ('(' | '[')) => {
                    let start = self.offset();
                    self.pos += 1;
                    let end = if c == '(' { ')' } else { ']' };
                    let inner = self.seq(Some(end))?;
                    if inner.len() < 2 {
                        return Err(PbaError::Syntax { offset: start, message: "a bracket must hold at least two items".into() });
                    }
                    items.push(Item::Group { square: c == '[', items: inner });
                }
                Some(c @ (')' | ']')) => {
                    if close == Some(c) {
                        self.pos += 1;
                        return Ok(items);
                    }
                    return Err(self.err("unbalanced bracket"));
                }
                _ => match self.letter()? {
                    Some(l) => items.push(Item::Letter(l)),
                    None => {
                        if close.is_some() {
                            return Err(self.err("unclosed bracket"));
                        }
                        return Ok(items);
                    }
                },
            }
        }
    }
}

/// Letters and standard brackets of the word with the given blocks.
/// Blocks of one letter become determined letters, the others holes.
pub fn standardize_blocks(blocks: &[AtomSet]) -> HoleWord {
    let mut letters = Vec::new();
    let mut holes = Vec::new();
    for b in blocks {
        if b.len() == 1 {
            letters.push(Letter::Det(b.least().unwrap()));
        } else {
            holes.push(*b);
            for _ in 0..b.len() {
                letters.push(Letter::Hole(holes.len()));
            }
        }
    }
    let groups: Vec<Interval> = zones(&letters).into_iter().map(|(s, e)| (s, e, true)).collect();
    HoleWord { items: build_items(&letters, &groups), holes }
}

/// Standardization of a chain `I₁ ⊊ … ⊊ I_k` of proper non-empty subsets of
/// `{0..letters}`.
pub fn standardize(letters: usize, chain: &[AtomSet]) -> Result<HoleWord, PbaError> {
    Ok(standardize_blocks(&chain_blocks(letters, chain)?))
}

fn chain_blocks(letters: usize, chain: &[AtomSet]) -> Result<Vec<AtomSet>, PbaError> {
    let all = AtomSet::full(letters);
    let mut sorted = chain.to_vec();
    sorted.sort_by_key(|s| s.len());
    let mut prev = AtomSet::EMPTY;
    let mut blocks = Vec::new();
    for &s in &sorted {
        if s.is_empty() || s == all || !s.is_subset(all) || !prev.is_subset(s) || prev == s {
            return Err(PbaError::NotAChain);
        }
        blocks.push(s.minus(prev));
        prev = s;
    }
    blocks.push(all.minus(prev));
    Ok(blocks)
}

/// Whether the gap before position `p` lies inside a hole block.
fn inner_gap(letters: &[Letter], p: usize) -> bool {
    matches!((letters[p - 1], letters[p]), (Letter::Hole(a), Letter::Hole(b)) if a == b)
}

/// Intervals of the standard brackets.
fn zones(letters: &[Letter]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for p in 1..=letters.len() {
        if p == letters.len() || inner_gap(letters, p) {
            if p - start >= 2 && !(start == 0 && p == letters.len()) {
                out.push((start, p));
            }
            start = p;
        }
    }
    out
}

/// A normalized word as letters, hole map and all bracket intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Flat {
    letters: Vec<Letter>,
    holes: Vec<AtomSet>,
    groups: BTreeSet<(usize, usize)>,
}

impl Flat {
    fn to_word(&self) -> HoleWord {
        let z: BTreeSet<(usize, usize)> = zones(&self.letters).into_iter().collect();
        let groups: Vec<Interval> = self.groups.iter().map(|&(s, e)| (s, e, z.contains(&(s, e)))).collect();
        HoleWord { items: build_items(&self.letters, &groups), holes: self.holes.clone() }
    }

    /// The set of base letters at each position.
    fn position_sets(&self) -> Vec<AtomSet> {
        self.letters
            .iter()
            .map(|l| match *l {
                Letter::Det(i) => AtomSet::single(i),
                Letter::Hole(j) => self.holes[j - 1],
            })
            .collect()
    }

    fn blocks(&self) -> Vec<AtomSet> {
        let sets = self.position_sets();
        let mut out = vec![sets[0]];
        for p in 1..self.letters.len() {
            if !inner_gap(&self.letters, p) {
                out.push(sets[p]);
            }
        }
        out
    }

    fn check(&self, n_letters: usize) -> Result<(), PbaError> {
        let bad = |m: String| Err(PbaError::Invalid(m));
        let len = self.letters.len();
        if len != n_letters {
            return Err(PbaError::WrongSetup { expected: n_letters, found: len });
        }
        let mut seen = AtomSet::EMPTY;
        let mut next_hole = 1;
        let mut p = 0;
        while p < len {
            match self.letters[p] {
                Letter::Det(i) => {
                    if i >= n_letters {
                        return bad(format!("letter x{} is outside the base", i + 1));
                    }
                    if seen.contains(i) {
                        return bad(format!("letter x{} is used twice", i + 1));
                    }
                    seen = seen.with(i);
                    p += 1;
                }
                Letter::Hole(j) => {
                    if j != next_hole {
                        return bad(format!("hole {j} is out of order"));
                    }
                    let set = *self.holes.get(j - 1).ok_or_else(|| PbaError::Invalid(format!("hole {j} is not mapped")))?;
                    if set.len() < 2 {
                        return bad(format!("hole {j} stands for fewer than two letters"));
                    }
                    let run = self.letters[p..].iter().take_while(|&&l| l == Letter::Hole(j)).count();
                    if run != set.len() {
                        return bad(format!("hole {j} occurs {run} times for {} letters", set.len()));
                    }
                    if set.intersects(seen) || !set.is_subset(AtomSet::full(n_letters)) {
                        return bad(format!("hole {j} overlaps other letters"));
                    }
                    seen = seen | set;
                    next_hole += 1;
                    p += run;
                }
            }
        }
        if next_hole != self.holes.len() + 1 {
            return bad("the hole map has unused entries".into());
        }
        let z = zones(&self.letters);
        for &(s, e) in &self.groups {
            if e - s < 2 || e > len || (s == 0 && e == len) {
                return bad("a bracket must hold at least two letters and not the whole word".into());
            }
        }
        let gs: Vec<(usize, usize)> = self.groups.iter().copied().collect();
        for (i, a) in gs.iter().enumerate() {
            for b in &gs[i + 1..] {
                if a.0 < b.0 && b.0 < a.1 && a.1 < b.1 || b.0 < a.0 && a.0 < b.1 && b.1 < a.1 {
                    return bad("brackets cross".into());
                }
            }
        }
        for &(s, e) in &z {
            if !self.groups.contains(&(s, e)) {
                let w = build_items(&self.letters[s..e], &[]);
                let mut text = String::new();
                items_text(&w, Style::Ascii, false, &mut text);
                return bad(format!("missing standard bracket [{text}]"));
            }
        }
        let whole = z.is_empty() && self.holes.is_empty();
        for &(s, e) in &self.groups {
            if !whole && !z.iter().any(|&(zs, ze)| zs <= s && e <= ze) {
                return bad("a parenthesis lies outside the standard brackets".into());
            }
        }
        Ok(())
    }
}

fn flat_of(w: &HoleWord, n_letters: usize) -> Result<Flat, PbaError> {
    let (letters, groups) = w.intervals();
    let z: BTreeSet<(usize, usize)> = zones(&letters).into_iter().collect();
    for &(s, e, sq) in &groups {
        if sq && !z.contains(&(s, e)) {
            return Err(PbaError::Invalid("square brackets are reserved for standard brackets".into()));
        }
    }
    let flat = Flat { letters, holes: w.holes.clone(), groups: groups.iter().map(|&(s, e, _)| (s, e)).collect() };
    flat.check(n_letters)?;
    Ok(flat)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Both truncation rounds of the dimension-`n` polytope.
#[derive(Debug, Clone)]
pub struct PbaSetup {
    pub n: usize,
    pub base: Vec<String>,
    pub round1: RoundState,
    pub truncation1: Hypergraph,
    pub round2: RoundState,
    pub truncation2: Hypergraph,
    letters_of: Vec<AtomSet>,
    atom_of: HashMap<AtomSet, usize>,
}

pub fn pba_setup(n: usize) -> Result<PbaSetup, PbaError> {
    pba_setup_limited(n, MAX_N)
}

pub fn pba_setup_limited(n: usize, limit: usize) -> Result<PbaSetup, PbaError> {
    if n == 0 {
        return Err(PbaError::ZeroDimension);
    }
    if n > limit {
        return Err(PbaError::TooLarge { n, limit });
    }
    let k = n + 1;
    let base: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let fail = |m: &str| Err(PbaError::Setup(m.into()));

    let round1 = RoundState::initial(&base)?;
    let pairs: Vec<Vec<&str>> =
        (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).map(|(i, j)| vec![base[i].as_str(), base[j].as_str()]).collect();
    let truncation1 = round1.truncation_hypergraph(&pairs, true)?;
    let hv1 = &round1.vertex_hypergraph;
    if constrs(&truncation1, hv1).len() != (1 << k) - 2 {
        return fail("constrs of the first round are not the proper subsets");
    }
    let constructions1 = tamed_constructions(&truncation1, hv1);
    let factorial: usize = (1..=k).product();
    if constructions1.len() != factorial || constructions1.iter().any(|c| c.nodes().iter().any(|m| m.children().len() > 1)) {
        return fail("constructions of the first round are not the filiform permutations");
    }
    let round2 = next_round(&round1, &truncation1)?.next;

    let mut letters_of = Vec::new();
    for f in &round2.facets {
        if f.0.iter().any(|&c| c > 1) {
            return fail("a second-round facet is not a subset sum");
        }
        letters_of.push(AtomSet::from_indices(f.0.iter().enumerate().filter(|(_, &c)| c == 1).map(|(i, _)| i)));
    }
    let atom_of: HashMap<AtomSet, usize> = letters_of.iter().enumerate().map(|(a, &s)| (s, a)).collect();
    let proper: BTreeSet<AtomSet> = AtomSet::full(k).subsets().filter(|&s| s != AtomSet::full(k)).collect();
    if letters_of.iter().copied().collect::<BTreeSet<_>>() != proper || letters_of.len() != proper.len() {
        return fail("second-round facets are not the proper subset sums");
    }
    let mut setup = PbaSetup {
        n,
        base: base.clone(),
        round1,
        truncation1,
        round2: round2.clone(),
        truncation2: Hypergraph::simplex(&base),
        letters_of,
        atom_of,
    };
    let sigmas: BTreeSet<AtomSet> = permutations(k).iter().map(|s| setup.x_sigma(s)).collect();
    if round2.vertex_hypergraph.iter().copied().collect::<BTreeSet<_>>() != sigmas || round2.vertex_hypergraph.len() != factorial {
        return fail("second-round vertex hyperedges are not the permutation chains");
    }
    let names = round2.names();
    let mut edges = Vec::new();
    for &i in &proper {
        for &j in &proper {
            if i.is_subset(j) && j.minus(i).len() == 1 {
                edges.push(vec![names[setup.atom_of[&i]].clone(), names[setup.atom_of[&j]].clone()]);
            }
        }
    }
    setup.truncation2 = Hypergraph::atomized(&names, &edges)?;
    for s in permutations(k) {
        let xs = setup.x_sigma(&s);
        let path = setup.truncation2.restrict(xs)?;
        let chain: Vec<usize> = (1..k).map(|m| setup.atom_of[&AtomSet::from_indices(s[..m].iter().copied())]).collect();
        let mut expected: Vec<AtomSet> = chain.iter().map(|&a| AtomSet::single(a)).collect();
        expected.extend(chain.windows(2).map(|w| AtomSet::from_indices([w[0], w[1]])));
        let mut found = path.hyperedges().to_vec();
        expected.sort();
        found.sort();
        if expected != found {
            return fail("a permutation chain does not carry a path");
        }
    }
    Ok(setup)
}

impl PbaSetup {
    pub fn letters(&self) -> usize {
        self.n + 1
    }

    /// The facet atom of the subset sum over `subset`.
    pub fn atom(&self, subset: AtomSet) -> Option<usize> {
        self.atom_of.get(&subset).copied()
    }

    pub fn subset(&self, atom: usize) -> AtomSet {
        self.letters_of[atom]
    }

    /// The chain of prefix sums of a permutation, 0-based.
    pub fn x_sigma(&self, sigma: &[usize]) -> AtomSet {
        AtomSet::from_indices((1..sigma.len()).map(|m| self.atom_of[&AtomSet::from_indices(sigma[..m].iter().copied())]))
    }

    pub fn facet_name(&self, atom: usize) -> &str {
        self.truncation2.label(atom)
    }

    pub fn tamed_constructs(&self) -> Vec<Construct> {
        tamed_constructs(&self.truncation2, &self.round2.vertex_hypergraph)
    }

    pub fn tamed_constructions(&self) -> Vec<Construct> {
        tamed_constructions(&self.truncation2, &self.round2.vertex_hypergraph)
    }

    pub fn is_tamed(&self, t: &Construct) -> bool {
        let h = self.truncation2.carrier();
        t.belongs_to(&self.truncation2)
            && self.round2.vertex_hypergraph.iter().any(|&v| h.minus(v).is_subset(t.decoration()))
    }

    /// The construct with root `H₂ ∖ y` over children given by subset sums.
    pub fn rooted(&self, y: &[AtomSet], children: Vec<Construct>) -> Construct {
        let ys = AtomSet::from_indices(y.iter().map(|s| self.atom_of[s]));
        Construct::new(self.truncation2.carrier().minus(ys), children)
    }

    fn chain_of(&self, t: &Construct) -> Result<(AtomSet, Vec<AtomSet>), PbaError> {
        if !self.is_tamed(t) {
            return Err(PbaError::NotTamed(t.to_text(&self.truncation2)));
        }
        let y = self.truncation2.carrier().minus(t.decoration());
        let blocks = chain_blocks(self.letters(), &y.iter().map(|a| self.letters_of[a]).collect::<Vec<_>>())?;
        Ok((y, blocks))
    }

    fn position(&self, atom: usize) -> usize {
        self.letters_of[atom].len()
    }

    /// Bracket intervals of the children of `c`, by gap positions.
    fn inner_groups(&self, c: &Construct, out: &mut Vec<Interval>) {
        for child in c.children() {
            out.push(self.span_interval(child, false));
            self.inner_groups(child, out);
        }
    }

    fn span_interval(&self, c: &Construct, square: bool) -> Interval {
        let gaps: Vec<usize> = c.span().iter().map(|a| self.position(a)).collect();
        (gaps.iter().min().unwrap() - 1, gaps.iter().max().unwrap() + 1, square)
    }

    /// Word of a tamed construct: standardize the chain, then parenthesise
    /// inside each standard bracket.
    pub fn encode(&self, t: &Construct) -> Result<HoleWord, PbaError> {
        let (_, blocks) = self.chain_of(t)?;
        let skeleton = standardize_blocks(&blocks);
        let letters = skeleton.letters();
        let mut groups = Vec::new();
        for zone in t.children() {
            let iv = self.span_interval(zone, true);
            if (iv.0, iv.1) != (0, letters.len()) {
                groups.push(iv);
            }
            self.inner_groups(zone, &mut groups);
        }
        Ok(HoleWord { items: build_items(&letters, &groups), holes: skeleton.holes })
    }

    /// Permutations whose chain contains the root complement of `t`.
    pub fn sigmas_for(&self, t: &Construct) -> Vec<Vec<usize>> {
        let y = self.truncation2.carrier().minus(t.decoration());
        permutations(self.letters()).into_iter().filter(|s| y.is_subset(self.x_sigma(s))).collect()
    }

    /// Word of a tamed construct through the associahedron of one
    /// permutation chain containing its root complement.
    pub fn encode_via(&self, t: &Construct, sigma: &[usize]) -> Result<HoleWord, PbaError> {
        let (y, blocks) = self.chain_of(t)?;
        let xs = self.x_sigma(sigma);
        if !y.is_subset(xs) {
            return Err(PbaError::NotTamed(t.to_text(&self.truncation2)));
        }
        let len = self.letters();
        let mut groups = Vec::new();
        if y == xs {
            if let [s] = t.children() {
                self.inner_groups(s, &mut groups);
            } else {
                return Err(PbaError::NotTamed(t.to_text(&self.truncation2)));
            }
        } else {
            let on_path = Construct::new(xs.minus(y), t.children().to_vec());
            if !on_path.belongs_to(&self.truncation2.restrict(xs)?) {
                return Err(PbaError::NotTamed(t.to_text(&self.truncation2)));
            }
            for zone in on_path.children() {
                let iv = self.span_interval(zone, true);
                if (iv.0, iv.1) != (0, len) {
                    groups.push(iv);
                }
                self.inner_groups(zone, &mut groups);
            }
        }
        let mut letters = Vec::with_capacity(len);
        let mut holes: Vec<AtomSet> = Vec::new();
        let mut p = 0;
        for b in &blocks {
            if b.len() == 1 {
                letters.push(Letter::Det(sigma[p]));
            } else {
                holes.push(AtomSet::from_indices(sigma[p..p + b.len()].iter().copied()));
                letters.extend(std::iter::repeat_n(Letter::Hole(holes.len()), b.len()));
            }
            p += b.len();
        }
        Ok(HoleWord { items: build_items(&letters, &groups), holes })
    }

    /// Validates a word and returns it with standard brackets squared.
    pub fn normalize(&self, w: &HoleWord) -> Result<HoleWord, PbaError> {
        Ok(flat_of(w, self.letters())?.to_word())
    }

    pub fn decode(&self, w: &HoleWord) -> Result<Construct, PbaError> {
        let flat = flat_of(w, self.letters())?;
        let sets = flat.position_sets();
        let len = flat.letters.len();
        let mut gap_atom = vec![None; len];
        let mut prefix = AtomSet::EMPTY;
        for p in 1..len {
            prefix = prefix | sets[p - 1];
            if !inner_gap(&flat.letters, p) {
                gap_atom[p] = Some(self.atom_of[&prefix]);
            }
        }
        let y = AtomSet::from_indices(gap_atom.iter().flatten().copied());
        let root = self.truncation2.carrier().minus(y);
        let groups: Vec<(usize, usize)> = flat.groups.iter().copied().collect();
        let mut children = Vec::new();
        let z = zones(&flat.letters);
        if z.is_empty() && flat.holes.is_empty() {
            children.push(construct_in(&groups, &gap_atom, 0, len));
        } else {
            for (s, e) in z {
                children.push(construct_in(&groups, &gap_atom, s, e));
            }
        }
        let t = Construct::new(root, children);
        if !self.is_tamed(&t) {
            return Err(PbaError::Invalid(format!("decodes to {}", t.to_text(&self.truncation2))));
        }
        Ok(t)
    }

    /// Order on words, decided on the decoded constructs.
    pub fn word_leq(&self, a: &HoleWord, b: &HoleWord) -> Result<bool, PbaError> {
        let s = self.decode(a)?;
        let t = self.decode(b)?;
        Ok(leq(&self.truncation2, &s, &t, Order::V2)?)
    }

    /// Words one step above `w`: drop a non-standard pair, or merge blocks
    /// across some of their boundaries keeping every bracket of the result.
    pub fn word_covers(&self, w: &HoleWord) -> Result<Vec<HoleWord>, PbaError> {
        let flat = flat_of(w, self.letters())?;
        Ok(self.flat_covers(&flat).iter().map(Flat::to_word).collect())
    }

    fn flat_covers(&self, f: &Flat) -> Vec<Flat> {
        let mut out = Vec::new();
        let z: BTreeSet<(usize, usize)> = zones(&f.letters).into_iter().collect();
        let plain: BTreeSet<(usize, usize)> = f.groups.difference(&z).copied().collect();
        for g in &plain {
            let mut up = f.clone();
            up.groups.remove(g);
            out.push(up);
        }
        let blocks = f.blocks();
        for cut in 1..1usize << (blocks.len() - 1) {
            let mut merged = vec![blocks[0]];
            for (k, &b) in blocks[1..].iter().enumerate() {
                if cut >> k & 1 == 1 {
                    *merged.last_mut().unwrap() = *merged.last().unwrap() | b;
                } else {
                    merged.push(b);
                }
            }
            let skeleton = standardize_blocks(&merged);
            let (letters, _) = skeleton.intervals();
            let new_zones: BTreeSet<(usize, usize)> = zones(&letters).into_iter().collect();
            let required: BTreeSet<(usize, usize)> = plain.union(&new_zones).copied().collect();
            if !required.is_subset(&f.groups) {
                continue;
            }
            let optional: Vec<(usize, usize)> = z.difference(&new_zones).copied().collect();
            for mask in 0..1usize << optional.len() {
                let mut groups = required.clone();
                groups.extend(optional.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, g)| *g));
                let up = Flat { letters: letters.clone(), holes: skeleton.holes.clone(), groups };
                if up.check(self.letters()).is_ok() {
                    out.push(up);
                }
            }
        }
        out
    }

    /// Order on words as the closure of the two word rules.
    pub fn word_leq_rules(&self, a: &HoleWord, b: &HoleWord) -> Result<bool, PbaError> {
        let goal = flat_of(b, self.letters())?;
        Ok(self.rule_up_set(flat_of(a, self.letters())?).contains(&goal))
    }

    /// Every word reachable from `w` by the word rules, `w` included.
    pub fn word_up_set(&self, w: &HoleWord) -> Result<HashSet<HoleWord>, PbaError> {
        Ok(self.rule_up_set(flat_of(w, self.letters())?).iter().map(Flat::to_word).collect())
    }

    fn rule_up_set(&self, start: Flat) -> HashSet<Flat> {
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for up in self.flat_covers(&f) {
                if seen.insert(up.clone()) {
                    queue.push_back(up);
                }
            }
        }
        seen
    }

    /// Face counts and the polygon types of the facets.
    pub fn census(&self) -> PbaCensus {
        let faces = self.tamed_constructs();
        let n = self.n;
        let mut f_vector = vec![0; n + 1];
        for t in &faces {
            f_vector[n + 1 - t.node_count()] += 1;
        }
        let facets: HashSet<Construct> = faces.iter().filter(|t| t.node_count() == 2).cloned().collect();
        let mut on_facet: HashMap<Construct, usize> = HashMap::new();
        for v in faces.iter().filter(|t| t.node_count() == n + 1) {
            for up in up_set(v) {
                if facets.contains(&up) {
                    *on_facet.entry(up).or_default() += 1;
                }
            }
        }
        let mut facet_polygons = BTreeMap::new();
        for f in &facets {
            *facet_polygons.entry(on_facet.get(f).copied().unwrap_or(0)).or_default() += 1;
        }
        PbaCensus { f_vector, facet_polygons }
    }
}

/// The construct of the brackets strictly inside `[lo, hi)`.
fn construct_in(groups: &[(usize, usize)], gap_atom: &[Option<usize>], lo: usize, hi: usize) -> Construct {
    let inside: Vec<(usize, usize)> =
        groups.iter().copied().filter(|&(s, e)| lo <= s && e <= hi && (s, e) != (lo, hi)).collect();
    let maximal: Vec<(usize, usize)> = inside
        .iter()
        .copied()
        .filter(|&(s, e)| !inside.iter().any(|&(s2, e2)| (s2, e2) != (s, e) && s2 <= s && e <= e2))
        .collect();
    let deco = AtomSet::from_indices(
        (lo + 1..hi).filter(|&q| !maximal.iter().any(|&(s, e)| s < q && q < e)).filter_map(|q| gap_atom[q]),
    );
    let children = maximal.iter().map(|&(s, e)| construct_in(groups, gap_atom, s, e)).collect();
    Construct::new(deco, children)
}

/// Face counts by dimension and facets by number of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbaCensus {
    pub f_vector: Vec<usize>,
    pub facet_polygons: BTreeMap<usize, usize>,
}

impl PbaCensus {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let fv: Vec<String> = self.f_vector.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "f-vector: {}", fv.join(" "));
        for (k, count) in &self.facet_polygons {
            let _ = writeln!(out, "facets with {k} vertices: {count}");
        }
        out
    }
}

/// Subset sum of letters, printed as a facet name.
pub fn subset_name(setup: &PbaSetup, s: AtomSet) -> String {
    let k = setup.letters();
    Multiset((0..k).map(|i| u32::from(s.contains(i))).collect()).to_text(&setup.base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> AtomSet {
        AtomSet::from_indices(ix.iter().map(|i| i - 1))
    }

    fn word(text: &str) -> HoleWord {
        HoleWord::parse(text).unwrap()
    }

    #[test]
    fn setup_sizes() {
        for (n, facets, vertices) in [(1, 2, 2), (2, 6, 6), (3, 14, 24)] {
            let s = pba_setup(n).unwrap();
            assert_eq!(s.round2.facets.len(), facets);
            assert_eq!(s.round2.vertex_hypergraph.len(), vertices);
        }
        assert!(matches!(pba_setup(5), Err(PbaError::TooLarge { .. })));
        assert!(matches!(pba_setup(0), Err(PbaError::ZeroDimension)));
    }

    #[test]
    fn standardization_examples() {
        let blocks = [set(&[9]), set(&[2, 4, 8]), set(&[3]), set(&[1, 7]), set(&[6]), set(&[5, 7])];
        let w = standardize_blocks(&blocks);
        assert_eq!(w.word_text(Style::Unicode), "[x₉·₁]·₁[·₁x₃·₂][·₂x₆·₃]·₃");
        assert_eq!(w.holes, vec![set(&[2, 4, 8]), set(&[1, 7]), set(&[5, 7])]);
        let empty = standardize(4, &[]).unwrap();
        assert_eq!(empty.to_text(Style::Ascii), ".1.1.1.1; .1={x1,x2,x3,x4}");
        let full = standardize(4, &[set(&[2]), set(&[2, 4]), set(&[1, 2, 4])]).unwrap();
        assert_eq!(full.to_text(Style::Ascii), "x2x4x1x3");
        assert_eq!(standardize(4, &[set(&[1, 2]), set(&[3])]), Err(PbaError::NotAChain));
    }

    #[test]
    fn parse_round_trip() {
        for text in ["[x1.1][.1x4]; .1={x2,x3}", ".1[.1.2].2; .1={x1,x2}, .2={x3,x4}", "(x1x2)(x3x4)"] {
            assert_eq!(word(text).to_text(Style::Ascii), text);
        }
        let u = word("[x₁·₁][·₁x₄]; ·₁={x₂,x₃}");
        assert_eq!(u, word("[x1.1][.1x4]; .1={x2,x3}"));
        assert_eq!(word(&u.to_text(Style::Unicode)), u);
        assert!(HoleWord::parse("(x1").is_err());
        assert!(HoleWord::parse("(x1]x2").is_err());
        assert!(HoleWord::parse("(x1)x2").is_err());
    }

    #[test]
    fn quoted_encodings() {
        let s = pba_setup(3).unwrap();
        let (a, b, c, d) = (set(&[1]), set(&[1, 2]), set(&[1, 2, 3]), set(&[1, 3]));
        let leaf = |x: AtomSet| Construct::leaf(AtomSet::single(s.atom(x).unwrap()));
        let edge = s.rooted(&[a, c], vec![leaf(a), leaf(c)]);
        let w = s.encode(&edge).unwrap();
        assert_eq!(w.round_text(Style::Unicode), "(x₁·₁)(·₁x₄)");
        assert_eq!(w.holes, vec![set(&[2, 3])]);
        let bac = Construct::new(AtomSet::single(s.atom(b).unwrap()), vec![leaf(a), leaf(c)]);
        assert_eq!(s.encode(&s.rooted(&[a, b, c], vec![bac])).unwrap().to_text(Style::Ascii), "(x1x2)(x3x4)");
        let dac = Construct::new(AtomSet::single(s.atom(d).unwrap()), vec![leaf(a), leaf(c)]);
        assert_eq!(s.encode(&s.rooted(&[a, c, d], vec![dac])).unwrap().to_text(Style::Ascii), "(x1x3)(x2x4)");
        let oct = s.rooted(&[b], vec![leaf(b)]);
        assert_eq!(s.encode(&oct).unwrap().round_text(Style::Ascii), ".1(.1.2).2");
        assert_eq!(s.decode(&word(".1(.1.2).2; .1={x1,x2}, .2={x3,x4}")).unwrap(), oct);
    }

    #[test]
    fn counterexample_rejected() {
        let s = pba_setup(3).unwrap();
        let err = s.decode(&word("(x1x2)(.1.1); .1={x3,x4}")).unwrap_err();
        assert_eq!(err, PbaError::Invalid("missing standard bracket [x1x2.1]".into()));
        assert!(s.decode(&word("[x1x2.1].1; .1={x3,x4}")).is_ok());
        assert!(s.decode(&word("x1x1.1.1; .1={x3,x4}")).is_err());
        assert!(s.decode(&word(".1.1.2.2; .1={x1,x2}, .2={x3,x4}")).is_err());
        assert!(s.decode(&word("x1x2x3")).is_err());
    }

    #[test]
    fn bijection_and_order_small() {
        for n in 1..=2 {
            let s = pba_setup(n).unwrap();
            let faces = s.tamed_constructs();
            let words: Vec<HoleWord> = faces.iter().map(|t| s.encode(t).unwrap()).collect();
            assert_eq!(words.iter().collect::<HashSet<_>>().len(), faces.len());
            for (t, w) in faces.iter().zip(&words) {
                assert_eq!(&s.decode(w).unwrap(), t);
                assert_eq!(s.normalize(w).unwrap(), *w);
                for sigma in s.sigmas_for(t) {
                    assert_eq!(&s.encode_via(t, &sigma).unwrap(), w);
                }
            }
            for (x, wx) in faces.iter().zip(&words) {
                let ups = s.word_up_set(wx).unwrap();
                for (y, wy) in faces.iter().zip(&words) {
                    assert_eq!(ups.contains(wy), leq(&s.truncation2, x, y, Order::V2).unwrap());
                }
            }
        }
    }

    #[test]
    fn hexagon_and_segment_counts() {
        assert_eq!(pba_setup(1).unwrap().census().f_vector, vec![2, 1]);
        let c = pba_setup(2).unwrap().census();
        assert_eq!(c.f_vector, vec![12, 12, 1]);
    }

    #[test]
    fn order_examples() {
        let s = pba_setup(3).unwrap();
        let pairs = [
            (".1((.1x3)x4); .1={x1,x2}", ".1(.1x3x4); .1={x1,x2}"),
            (".1((.1x3)x4); .1={x1,x2}", ".1(.1.2).2; .1={x1,x2}, .2={x3,x4}"),
            ("(x1.1).1.1; .1={x2,x3,x4}", ".1.1.1.1; .1={x1,x2,x3,x4}"),
        ];
        for (a, b) in pairs {
            let (a, b) = (word(a), word(b));
            assert!(s.word_leq(&a, &b).unwrap() && !s.word_leq(&b, &a).unwrap());
            assert!(s.word_leq_rules(&a, &b).unwrap() && !s.word_leq_rules(&b, &a).unwrap());
        }
    }

    #[test]
    fn facet_words() {
        let s = pba_setup(3).unwrap();
        let all = AtomSet::full(4);
        for i in 0..4 {
            let xi = AtomSet::single(i);
            let t = s.rooted(&[xi], vec![Construct::leaf(AtomSet::single(s.atom(xi).unwrap()))]);
            let rest = all.minus(xi);
            let u = s.rooted(&[rest], vec![Construct::leaf(AtomSet::single(s.atom(rest).unwrap()))]);
            let x = format!("x{}", i + 1);
            let names: Vec<String> = rest.iter().map(|j| format!("x{}", j + 1)).collect();
            let map = format!(".1={{{}}}", names.join(","));
            assert_eq!(s.encode(&t).unwrap().to_text(Style::Ascii), format!("[{x}.1].1.1; {map}"));
            assert_eq!(s.encode(&u).unwrap().to_text(Style::Ascii), format!(".1.1[.1{x}]; {map}"));
        }
    }

    #[test]
    fn octagon_is_the_join_of_its_edges() {
        let s = pba_setup(3).unwrap();
        let edges: Vec<Construct> = ["x1(x2x3)x4", "x1(x2x4)x3", "x2(x1x3)x4", "x2(x1x4)x3"]
            .iter()
            .map(|w| s.decode(&word(w)).unwrap())
            .collect();
        let (a, b, c, e, f) = (set(&[1]), set(&[1, 2]), set(&[1, 2, 3]), set(&[2]), set(&[1, 2, 4]));
        let node = |xs: &[AtomSet], kids| Construct::new(AtomSet::from_indices(xs.iter().map(|x| s.atom(*x).unwrap())), kids);
        let leaf_b = || node(&[b], vec![]);
        assert_eq!(edges[0], s.rooted(&[a, b, c], vec![node(&[a, c], vec![leaf_b()])]));
        assert_eq!(edges[1], s.rooted(&[a, b, f], vec![node(&[a, f], vec![leaf_b()])]));
        assert_eq!(edges[2], s.rooted(&[e, b, c], vec![node(&[e, c], vec![leaf_b()])]));
        assert_eq!(edges[3], s.rooted(&[e, b, f], vec![node(&[e, f], vec![leaf_b()])]));
        let above: Vec<Construct> = s
            .tamed_constructs()
            .into_iter()
            .filter(|t| edges.iter().all(|x| leq(&s.truncation2, x, t, Order::V2).unwrap()))
            .collect();
        let oct = s.rooted(&[b], vec![leaf_b()]);
        assert!(above.contains(&oct));
        assert!(above.iter().all(|t| leq(&s.truncation2, &oct, t, Order::V2).unwrap()));
    }

    #[test]
    fn three_dimensional_census() {
        let c = pba_setup(3).unwrap().census();
        assert_eq!(c.f_vector, vec![120, 180, 62, 1]);
        assert_eq!(c.facet_polygons, BTreeMap::from([(4, 24), (5, 24), (8, 6), (12, 8)]));
    }
}
