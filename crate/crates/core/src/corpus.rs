//! Test corpus and the exhaustive property checks run over it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::constructs::{
    enumerate_constructs, leq, vertices_below, Construct, Order, DEFAULT_MAX_CARRIER,
};
use crate::hypergraph::{AtomSet, Hypergraph};
use crate::nestedsets::{check_nested_set, check_tubing_conditions, psi, unpsi};
use crate::operadic::{
    all_words, build_edge_graph, classify_all, construction_to_word, decomposition_count, rooted_trees,
    word_to_construction, EdgeGraph, EdgeKind, OperadicTree, PathType,
};
use crate::pba::pba_setup;
use crate::realization::verify_isomorphism;
use crate::truncation::{constrs, constrs_by_maximality, next_round, RoundState};

const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// Cap on recorded failures per check.
const MAX_FAILURES: usize = 10;

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
    out
}

fn canonical(edges: &[AtomSet], perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|p| {
            let mut v: Vec<u64> = edges.iter().map(|e| AtomSet::from_indices(e.iter().map(|i| p[i])).0).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap()
}

/// Connected atomic hypergraphs on `n` atoms, one per isomorphism class.
pub fn hypergraphs_on(n: usize) -> Vec<Hypergraph> {
    let labels: Vec<String> = NAMES[..n].iter().map(|s| s.to_string()).collect();
    let carrier = AtomSet::full(n);
    let big: Vec<AtomSet> = carrier.subsets().filter(|s| s.len() >= 2).collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << big.len() {
        let edges: Vec<AtomSet> = big.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| *e).collect();
        let mut all: Vec<AtomSet> = (0..n).map(AtomSet::single).collect();
        all.extend(&edges);
        let h = Hypergraph::from_masks(labels.clone(), carrier, all);
        if h.is_connected() && seen.insert(canonical(&edges, &perms)) {
            out.push(h);
        }
    }
    out
}

/// Every connected atomic hypergraph on at most `max` atoms, up to isomorphism.
pub fn small_hypergraphs(max: usize) -> Vec<Hypergraph> {
    (1..=max).flat_map(hypergraphs_on).collect()
}

/// The tree `a(b(c,d),e)`.
pub fn hemiassociahedron_tree() -> OperadicTree {
    OperadicTree::parse("a(b(c,d),e)").expect("fixed tree")
}

/// Named examples on four and five atoms.
pub fn named_hypergraphs() -> Vec<(String, Hypergraph)> {
    let five = &NAMES[..5];
    let cycle: Vec<(&str, &str)> = (0..5).map(|i| (five[i], five[(i + 1) % 5])).collect();
    let star: Vec<(&str, &str)> = (1..5).map(|i| (five[0], five[i])).collect();
    let hemi = build_edge_graph(&hemiassociahedron_tree()).expect("fixed tree").hypergraph;
    vec![
        ("associahedron-3".to_string(), Hypergraph::path(&NAMES[..4])),
        ("hemiassociahedron".to_string(), hemi),
        ("path-5".to_string(), Hypergraph::path(five)),
        ("cycle-5".to_string(), Hypergraph::graph(five, &cycle).expect("fixed graph")),
        ("star-5".to_string(), Hypergraph::graph(five, &star).expect("fixed graph")),
        ("simplex-5".to_string(), Hypergraph::simplex(five)),
        ("complete-5".to_string(), Hypergraph::complete(five)),
    ]
}

/// Small corpus plus the named examples, each with a display name.
pub fn corpus(max_atoms: usize) -> Vec<(String, Hypergraph)> {
    let mut out: Vec<(String, Hypergraph)> =
        small_hypergraphs(max_atoms).into_iter().map(|h| (family_name(&h), h)).collect();
    out.extend(named_hypergraphs());
    out
}

fn family_name(h: &Hypergraph) -> String {
    let edges: Vec<String> = h.hyperedges().iter().filter(|e| e.len() > 1).map(|&e| h.fmt_set(e)).collect();
    format!("{}[{}]", h.fmt_set(h.carrier()), edges.join(","))
}

/// Operadic trees with 2 to `max` nodes.
pub fn corpus_trees(max: usize) -> Vec<OperadicTree> {
    (2..=max).flat_map(rooted_trees).collect()
}

/// One named property over a number of cases.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl Check {
    pub fn new(name: &str) -> Check {
        Check { name: name.to_string(), ..Check::default() }
    }

    pub fn fail(&mut self, witness: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(witness);
        }
    }

    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub checks: Vec<Check>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {} ({} cases)", c.name, c.cases);
            for w in &c.failures {
                let _ = writeln!(out, "  {w}");
            }
        }
        out
    }
}

/// Components, quasi-partitions, saturation and restriction.
pub fn check_hypergraph_laws(name: &str, h: &Hypergraph, check: &mut Check) {
    let all = h.carrier();
    for x in std::iter::once(AtomSet::EMPTY).chain(all.subsets()) {
        let comps = h.components_of(all.minus(x));
        let union = comps.iter().fold(AtomSet::EMPTY, |a, &c| a | c);
        let disjoint = comps.iter().map(|c| c.len()).sum::<usize>() == union.len();
        check.expect(union == all.minus(x) && disjoint && comps.iter().all(|&c| h.connected(c)), || {
            format!("{name}: components of {}", h.fmt_set(x))
        });
        if x.is_empty() {
            continue;
        }
        for y in x.subsets() {
            let parts = h.quasi_partition_refine(y, x).unwrap_or_default();
            let inner = h.components_of(all.minus(x));
            let ok = inner.iter().all(|&k| parts.iter().filter(|(_, ks)| ks.contains(&k)).count() == 1);
            check.expect(ok, || format!("{name}: quasi-partition {} ⊆ {}", h.fmt_set(y), h.fmt_set(x)));
        }
        if let Ok(r) = h.restrict(x) {
            check.expect(r.is_atomic(), || format!("{name}: restriction to {} is not atomic", h.fmt_set(x)));
        }
    }
    let sat = h.saturate();
    let monotone = h.hyperedges().iter().all(|&e| sat.has_edge(e));
    let idempotent = sat.saturate().hyperedges() == sat.hyperedges();
    let same = all.subsets().all(|s| h.connected(s) == sat.connected(s));
    check.expect(monotone && idempotent && same, || format!("{name}: saturation"));
}

/// Order equivalence, poset shape, covers and vertex sets.
pub fn check_order_laws(name: &str, h: &Hypergraph, check: &mut Check) {
    let Ok(all) = enumerate_constructs(h) else {
        check.expect(false, || format!("{name}: enumeration failed"));
        return;
    };
    let top = Construct::leaf(h.carrier());
    let verts: Vec<&Construct> = all.iter().filter(|c| c.is_construction()).collect();
    let below: HashMap<&Construct, BTreeSet<&Construct>> = all
        .iter()
        .map(|t| (t, verts.iter().copied().filter(|v| leq(h, v, t, Order::V2).unwrap()).collect()))
        .collect();
    for s in &all {
        check.expect(leq(h, s, &top, Order::V2).unwrap(), || format!("{name}: {} is not below the top", s.to_text(h)));
        let minimal = !all.iter().any(|t| t != s && leq(h, t, s, Order::V2).unwrap());
        check.expect(minimal == s.is_construction(), || format!("{name}: minimality of {}", s.to_text(h)));
        let vb: BTreeSet<Construct> = vertices_below(h, s).unwrap().into_iter().collect();
        let expected: BTreeSet<Construct> = below[s].iter().map(|&c| c.clone()).collect();
        check.expect(vb == expected, || format!("{name}: vertices below {}", s.to_text(h)));
        for t in &all {
            let r = leq(h, s, t, Order::Rules).unwrap();
            let v2 = leq(h, s, t, Order::V2).unwrap();
            let v3 = leq(h, s, t, Order::V3).unwrap();
            let by_vertices = below[s].is_subset(&below[t]);
            check.expect(r == v2 && v2 == v3 && v2 == by_vertices, || {
                format!("{name}: {} ≤ {}: rules {r}, v2 {v2}, v3 {v3}, vertices {by_vertices}", s.to_text(h), t.to_text(h))
            });
        }
    }
}

/// ψ is injective, order-reversing and inverted by unψ.
pub fn check_nested_laws(name: &str, h: &Hypergraph, check: &mut Check) {
    let Ok(all) = enumerate_constructs(h) else {
        check.expect(false, || format!("{name}: enumeration failed"));
        return;
    };
    let images: Vec<Vec<AtomSet>> = all.iter().map(psi).collect();
    check.expect(images.iter().collect::<HashSet<_>>().len() == all.len(), || format!("{name}: psi is not injective"));
    for (s, ps) in all.iter().zip(&images) {
        let back = unpsi(h, ps);
        check.expect(back.as_ref() == Ok(s), || format!("{name}: unpsi(psi({}))", s.to_text(h)));
        for (t, pt) in all.iter().zip(&images) {
            let sub = pt.iter().all(|x| ps.contains(x));
            check.expect(leq(h, s, t, Order::V2).unwrap() == sub, || {
                format!("{name}: psi order on {} and {}", s.to_text(h), t.to_text(h))
            });
        }
    }
}

/// Families of connected sets containing the carrier: the valid ones are
/// exactly the ψ images. On graphs, C agrees with the pairwise conditions.
pub fn check_nested_images(name: &str, h: &Hypergraph, check: &mut Check) {
    let Ok(all) = enumerate_constructs(h) else {
        check.expect(false, || format!("{name}: enumeration failed"));
        return;
    };
    let images: HashSet<Vec<AtomSet>> = all.iter().map(psi).collect();
    let carrier = h.carrier();
    let others: Vec<AtomSet> = h.saturated_sets().into_iter().filter(|&s| s != carrier).collect();
    let graph = h.hyperedges().iter().all(|e| e.len() <= 2);
    for mask in 0u64..1 << others.len() {
        let mut fam: Vec<AtomSet> = others.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, s)| *s).collect();
        fam.push(carrier);
        fam.sort_by(crate::hypergraph::edge_order);
        let valid = check_nested_set(h, &fam).is_ok();
        check.expect(valid == images.contains(&fam), || {
            format!("{name}: family {:?} valid={valid}", fam.iter().map(|&s| h.fmt_set(s)).collect::<Vec<_>>())
        });
        if graph {
            let t = check_tubing_conditions(h, &fam);
            check.expect(t.c == t.cg && t.cg == t.tubing(), || {
                format!("{name}: C/C_g/tubing disagree on {:?}", fam.iter().map(|&s| h.fmt_set(s)).collect::<Vec<_>>())
            });
        }
    }
}

/// `verify_isomorphism` passes and the dimension is `|H| − 1`.
pub fn check_realization(name: &str, h: &Hypergraph, check: &mut Check) {
    match verify_isomorphism(h, DEFAULT_MAX_CARRIER) {
        Ok(r) => {
            let ok = r.passed() && r.dimension + 1 == h.carrier().len();
            check.expect(ok, || format!("{name}: {}", r.to_text().replace('\n', "; ")));
        }
        Err(e) => check.expect(false, || format!("{name}: {e}")),
    }
}

/// Every simple path normalizes to the BFS path; type I iff the ends are
/// stacked in the tree.
pub fn check_min_paths(g: &EdgeGraph, check: &mut Check) {
    let tree = g.tree.to_text();
    for u in g.atoms().iter() {
        for v in g.atoms().iter() {
            if u == v {
                continue;
            }
            let bfs = g.shortest_path(u, v);
            let min = g.min_path(u, v);
            let stacked = g.tree.is_ancestor(g.atom_node[u], g.atom_node[v]) || g.tree.is_ancestor(g.atom_node[v], g.atom_node[u]);
            check.expect((min.kind == PathType::I) == stacked, || format!("{tree}: type of {u}..{v}"));
            for p in g.simple_paths(u, v) {
                let ok = match g.normalize_path(&p) {
                    Ok(m) => m.path == bfs && m.kind == min.kind && g.path_type(&m.path).is_some(),
                    Err(_) => false,
                };
                check.expect(ok, || format!("{tree}: path {p:?} does not normalize to {bfs:?}"));
            }
        }
    }
}

/// Decomposition words and constructions correspond one to one.
pub fn check_decompositions(g: &EdgeGraph, check: &mut Check) {
    let tree = g.tree.to_text();
    let words = all_words(&g.tree);
    let verts: Vec<Construct> =
        enumerate_constructs(&g.hypergraph).unwrap_or_default().into_iter().filter(Construct::is_construction).collect();
    check.expect(words.len() == verts.len() && words.len() as u128 == decomposition_count(&g.tree), || {
        format!("{tree}: {} words, {} constructions", words.len(), verts.len())
    });
    let mut images = HashSet::new();
    for w in &words {
        let ok = match word_to_construction(g, w) {
            Ok(v) => {
                images.insert(v.clone());
                construction_to_word(g, &v).as_ref() == Ok(w)
            }
            Err(_) => false,
        };
        check.expect(ok, || format!("{tree}: round trip of {}", w.to_text(&g.tree)));
    }
    check.expect(images.len() == verts.len(), || format!("{tree}: word images are not all constructions"));
}

/// β edges, oriented, form no directed cycle.
pub fn check_beta_acyclic(g: &EdgeGraph, check: &mut Check) {
    let tree = g.tree.to_text();
    let Ok(edges) = classify_all(g) else {
        check.expect(false, || format!("{tree}: classification failed"));
        return;
    };
    let mut out: HashMap<&Construct, Vec<&Construct>> = HashMap::new();
    let mut indeg: HashMap<&Construct, usize> = HashMap::new();
    for e in edges.iter().filter(|e| e.kind == EdgeKind::Beta) {
        out.entry(&e.ends.0).or_default().push(&e.ends.1);
        indeg.entry(&e.ends.0).or_default();
        *indeg.entry(&e.ends.1).or_default() += 1;
    }
    let mut ready: Vec<&Construct> = indeg.iter().filter(|(_, &d)| d == 0).map(|(c, _)| *c).collect();
    let mut removed = 0;
    while let Some(c) = ready.pop() {
        removed += 1;
        for &d in out.get(c).into_iter().flatten() {
            let k = indeg.get_mut(d).unwrap();
            *k -= 1;
            if *k == 0 {
                ready.push(d);
            }
        }
    }
    check.expect(removed == indeg.len(), || format!("{tree}: directed β cycle"));
}

/// The worked truncation example and the permutohedron first rounds.
pub fn check_truncation_rounds(check: &mut Check) {
    let base: Vec<String> = ["x", "y", "z", "u"].iter().map(|s| s.to_string()).collect();
    let s1 = RoundState::initial(&base).expect("fixed base");
    let ht1 = s1
        .truncation_hypergraph(&[vec!["x", "y"], vec!["x", "y", "z", "u"]], true)
        .expect("fixed truncation");
    let mut cases = vec![(s1, ht1)];
    for k in 2..=4 {
        let b: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
        let s = RoundState::initial(&b).expect("fixed base");
        let pairs: Vec<Vec<String>> =
            (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).map(|(i, j)| vec![b[i].clone(), b[j].clone()]).collect();
        let ht = s.truncation_hypergraph(&pairs, true).expect("complete graph");
        cases.push((s, ht));
    }
    for (s, ht) in &cases {
        let label = s.names().join(",");
        let hv = &s.vertex_hypergraph;
        check.expect(constrs(ht, hv) == constrs_by_maximality(ht, hv), || format!("{label}: constrs characterization"));
        match next_round(s, ht) {
            Ok(out) => {
                let old: BTreeSet<String> = s.names().into_iter().collect();
                let new: BTreeSet<String> = out.next.names().into_iter().collect();
                check.expect(old.is_subset(&new) && out.next.check().is_ok(), || format!("{label}: facets not kept"));
            }
            Err(e) => check.expect(false, || format!("{label}: {e}")),
        }
    }
}

/// Encode/decode, σ-independence and order isomorphism of words with holes.
pub fn check_pba(n: usize, check: &mut Check) {
    let s = match pba_setup(n) {
        Ok(s) => s,
        Err(e) => return check.expect(false, || format!("n={n}: {e}")),
    };
    let faces = s.tamed_constructs();
    let words: Vec<_> = faces.iter().map(|t| s.encode(t)).collect();
    let mut distinct = HashSet::new();
    for (t, w) in faces.iter().zip(&words) {
        let Ok(w) = w else {
            check.expect(false, || format!("n={n}: cannot encode {}", t.to_text(&s.truncation2)));
            continue;
        };
        distinct.insert(w.clone());
        check.expect(s.decode(w).as_ref() == Ok(t), || format!("n={n}: decode of {}", w.to_text(crate::pba::Style::Ascii)));
        for sigma in s.sigmas_for(t) {
            check.expect(s.encode_via(t, &sigma).as_ref() == Ok(w), || {
                format!("n={n}: {} depends on the permutation {sigma:?}", w.to_text(crate::pba::Style::Ascii))
            });
        }
    }
    check.expect(distinct.len() == faces.len(), || format!("n={n}: encode is not injective"));
    let words: Vec<_> = words.into_iter().flatten().collect();
    if words.len() != faces.len() {
        return;
    }
    for (x, wx) in faces.iter().zip(&words) {
        let ups = s.word_up_set(wx).unwrap_or_default();
        for (y, wy) in faces.iter().zip(&words) {
            let by_construct = leq(&s.truncation2, x, y, Order::V2).unwrap_or(false);
            let by_decode = s.word_leq(wx, wy).unwrap_or(!by_construct);
            check.expect(by_construct == by_decode && by_construct == ups.contains(wy), || {
                format!(
                    "n={n}: {} ≤ {}: constructs {by_construct}, decode {by_decode}, rules {}",
                    wx.to_text(crate::pba::Style::Ascii),
                    wy.to_text(crate::pba::Style::Ascii),
                    ups.contains(wy)
                )
            });
        }
    }
}

/// Runs every exhaustive property over the corpus.
pub fn verify_corpus() -> CorpusReport {
    let hs = corpus(4);
    let mut report = CorpusReport::default();
    let mut run = |name: &str, f: &dyn Fn(&mut Check)| {
        let mut c = Check::new(name);
        f(&mut c);
        report.checks.push(c);
    };
    run("hypergraph laws", &|c| hs.iter().for_each(|(n, h)| check_hypergraph_laws(n, h, c)));
    run("construct order", &|c| hs.iter().for_each(|(n, h)| check_order_laws(n, h, c)));
    run("nested sets", &|c| hs.iter().for_each(|(n, h)| check_nested_laws(n, h, c)));
    run("nested set images", &|c| {
        hs.iter().filter(|(_, h)| h.size() <= 4).for_each(|(n, h)| check_nested_images(n, h, c))
    });
    run("realization", &|c| hs.iter().for_each(|(n, h)| check_realization(n, h, c)));
    let graphs: Vec<EdgeGraph> = corpus_trees(6).iter().map(|t| build_edge_graph(t).expect("corpus tree")).collect();
    run("minimal paths", &|c| graphs.iter().for_each(|g| check_min_paths(g, c)));
    run("decompositions", &|c| graphs.iter().filter(|g| g.tree.len() <= 5).for_each(|g| check_decompositions(g, c)));
    run("beta orientation", &|c| graphs.iter().filter(|g| g.tree.len() <= 5).for_each(|g| check_beta_acyclic(g, c)));
    run("truncation rounds", &check_truncation_rounds);
    run("words with holes", &|c| (1..=3).for_each(|n| check_pba(n, c)));
    report
}

/// Counts of the corpus, for reports.
pub fn corpus_sizes() -> BTreeMap<usize, usize> {
    (1..=4).map(|n| (n, hypergraphs_on(n).len())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Orbit count of labelled connected families: the sum of stabilizer
    /// sizes divided by the number of permutations.
    fn orbit_count(n: usize) -> usize {
        let carrier = AtomSet::full(n);
        let big: Vec<AtomSet> = carrier.subsets().filter(|s| s.len() >= 2).collect();
        let perms = permutations(n);
        let mut stab_total = 0;
        for mask in 0u64..1 << big.len() {
            let fam: BTreeSet<AtomSet> =
                big.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| *e).collect();
            let mut comp = AtomSet::single(0);
            loop {
                let grown = fam.iter().filter(|e| e.intersects(comp)).fold(comp, |a, &e| a | e);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            if comp != carrier {
                continue;
            }
            stab_total += perms
                .iter()
                .filter(|p| fam.iter().all(|e| fam.contains(&AtomSet::from_indices(e.iter().map(|i| p[i])))))
                .count();
        }
        stab_total / perms.len()
    }

    #[test]
    fn isomorph_free_counts() {
        for n in 1..=4 {
            assert_eq!(hypergraphs_on(n).len(), orbit_count(n), "n={n}");
        }
        assert_eq!(corpus_sizes(), BTreeMap::from([(1, 1), (2, 1), (3, 6), (4, 171)]));
    }
}
