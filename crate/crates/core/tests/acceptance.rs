//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (integers, exact rationals, strings); the pinned
//! tolerance is zero throughout.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use hyperpoly::constructs::{enumerate_constructions, enumerate_constructs, Construct, DEFAULT_MAX_CARRIER};
use hyperpoly::corpus::{
    check_decompositions, check_min_paths, check_nested_images, check_nested_laws, check_order_laws, check_pba,
    check_realization, corpus, corpus_trees, hemiassociahedron_tree, Check,
};
use hyperpoly::hypergraph::{AtomSet, Hypergraph};
use hyperpoly::nestedsets::{check_tubing_conditions, psi, unpsi, NestedSetError};
use hyperpoly::operadic::{
    all_words, build_edge_graph, build_edge_graph_named, classify_all, classify_edge, construction_to_word,
    word_to_construction, EdgeGraph, EdgeKind, OperadicTree, Word,
};
use hyperpoly::pba::{pba_setup, HoleWord, PbaError, Style};
use hyperpoly::realization::{evaluate, hrep, verify_isomorphism, vertex_of_construction};
use hyperpoly::truncation::{mu_sigma, next_round, tamed_constructions, Multiset, RoundState};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn family(text: &str) -> Hypergraph {
    Hypergraph::parse_family(text, false).expect("fixed hypergraph")
}

fn texts(h: &Hypergraph, cs: &[Construct]) -> BTreeSet<String> {
    cs.iter().map(|c| c.to_text(h)).collect()
}

fn parsed(h: &Hypergraph, listed: &[&str]) -> BTreeSet<String> {
    listed.iter().map(|t| Construct::parse(h, t).expect("listed construct").to_text(h)).collect()
}

fn f_vector(h: &Hypergraph) -> Vec<usize> {
    let n = h.carrier().len();
    let mut out = vec![0; n];
    for t in enumerate_constructs(h).expect("small hypergraph") {
        out[n - t.node_count()] += 1;
    }
    out
}

fn finish(check: &Check) -> Outcome {
    if check.passed() {
        Ok(format!("{} cases", check.cases))
    } else {
        Err(format!("{} failures, first: {}", check.failure_count, check.failures.join(" | ")))
    }
}

fn simplex_census() -> Outcome {
    let s2 = Hypergraph::simplex(&["x", "y", "z"]);
    let listed = ["x(y,z)", "y(x,z)", "z(x,y)", "{x,y}(z)", "{y,z}(x)", "{x,z}(y)", "{x,y,z}"];
    let found = texts(&s2, &enumerate_constructs(&s2).map_err(|e| e.to_string())?);
    ensure(found == parsed(&s2, &listed), || format!("2-simplex constructs {found:?}"))?;
    let s3 = Hypergraph::simplex(&["x", "y", "z", "u"]);
    let fv = f_vector(&s3);
    ensure(fv == [4, 6, 4, 1], || format!("3-simplex f-vector {fv:?}"))?;
    Ok(format!("7 constructs; f-vector {fv:?}"))
}

fn pentagon_hexagon() -> Outcome {
    let pent = family("{x},{y},{z},{x,y},{y,z}");
    let fv = f_vector(&pent);
    ensure(fv == [5, 5, 1], || format!("pentagon f-vector {fv:?}"))?;
    let vs = texts(&pent, &enumerate_constructions(&pent).map_err(|e| e.to_string())?);
    let listed = ["x(y(z))", "x(z(y))", "y(x,z)", "z(x(y))", "z(y(x))"];
    ensure(vs == listed.iter().map(|s| s.to_string()).collect(), || format!("pentagon vertices {vs:?}"))?;
    let hex = Hypergraph::complete(&["x", "y", "z"]);
    let fv = f_vector(&hex);
    ensure(fv == [6, 6, 1], || format!("hexagon f-vector {fv:?}"))?;
    let vs = texts(&hex, &enumerate_constructions(&hex).map_err(|e| e.to_string())?);
    let listed = ["x(y(z))", "y(x(z))", "y(z(x))", "x(z(y))", "z(x(y))", "z(y(x))"];
    ensure(vs == listed.iter().map(|s| s.to_string()).collect(), || format!("hexagon vertices {vs:?}"))?;
    Ok("(5,5,1) and (6,6,1), vertices verbatim".into())
}

/// Constructs of `h` whose text is not a construct of the simplex.
fn new_constructs(h: &Hypergraph) -> BTreeSet<String> {
    let simplex = Hypergraph::simplex(&h.names(h.carrier()));
    let old = texts(&simplex, &enumerate_constructs(&simplex).expect("simplex"));
    texts(h, &enumerate_constructs(h).expect("small hypergraph")).difference(&old).cloned().collect()
}

fn truncation_examples() -> Outcome {
    let edge = family("{x},{y},{z},{u},{u,z},{x,y,z,u}");
    let listed = [
        "x(y,u(z))", "x(y,z(u))", "y(x,u(z))", "y(x,z(u))", "x(y,{u,z})", "y(x,{u,z})", "{x,y}(u(z))",
        "{x,y}(z(u))", "{x,y}({u,z})",
    ];
    let found = new_constructs(&edge);
    ensure(found == parsed(&edge, &listed), || format!("edge truncation gives {found:?}"))?;
    let vertex = family("{x},{y},{z},{u},{y,z,u},{x,y,z,u}");
    let listed =
        ["x(y(z,u))", "x(z(y,u))", "x(u(y,z))", "x({y,z}(u))", "x({z,u}(y))", "x({u,y}(z))", "x({y,z,u})"];
    let found = new_constructs(&vertex);
    ensure(found == parsed(&vertex, &listed), || format!("vertex truncation gives {found:?}"))?;
    let small = family("{x},{y},{z},{y,z},{x,y,z}");
    let found = new_constructs(&small);
    ensure(found == parsed(&small, &["x(y(z))", "x(z(y))", "x({y,z})"]), || format!("triangle gives {found:?}"))?;
    Ok("9 and 7 new constructs, lists verbatim".into())
}

fn order_equivalence() -> Outcome {
    let mut check = Check::new("orders");
    for (name, h) in corpus(4) {
        check_order_laws(&name, &h, &mut check);
    }
    finish(&check)
}

fn nested_sets() -> Outcome {
    let mut check = Check::new("nested");
    for (name, h) in corpus(4) {
        check_nested_laws(&name, &h, &mut check);
        if h.size() <= 4 {
            check_nested_images(&name, &h, &mut check);
        }
    }
    finish(&check)?;
    let s = Hypergraph::simplex(&["x", "y", "z"]);
    let m: Vec<AtomSet> =
        [&["x"][..], &["y"], &["z"], &["x", "y", "z"]].iter().map(|xs| s.set(xs).expect("atoms")).collect();
    let singletons: Vec<AtomSet> = m[..3].to_vec();
    match unpsi(&s, &m) {
        Err(NestedSetError::Antichain { witness, .. }) if witness == singletons => {}
        other => return Err(format!("remark family: {other:?}")),
    }
    let t = check_tubing_conditions(&s, &m);
    ensure(t.cg && !t.c, || format!("remark family: C={} C_g={}", t.c, t.cg))?;
    Ok(format!("{} cases; remark family satisfies C_g but not C", check.cases))
}

fn geometric_isomorphism() -> Outcome {
    let mut check = Check::new("realization");
    let mut tight_checked = 0;
    for (name, h) in corpus(4) {
        check_realization(&name, &h, &mut check);
        let system = hrep(&h);
        let n = h.carrier().len();
        for v in enumerate_constructions(&h).map_err(|e| e.to_string())? {
            let p = vertex_of_construction(&h, &v).map_err(|e| e.to_string())?;
            let (inside, strict) = evaluate(&system, &p);
            let tight = strict.iter().filter(|s| !**s).count();
            tight_checked += 1;
            check.expect(inside && tight == n - 1, || format!("{name}: {} on {tight} facets", v.to_text(&h)));
        }
    }
    finish(&check)?;
    let pent = family("{x},{y},{z},{x,y},{y,z}");
    let v = Construct::parse(&pent, "x(y(z))").expect("vertex");
    let p = vertex_of_construction(&pent, &v).map_err(|e| e.to_string())?.to_strings(&pent);
    ensure(p == ["18/1", "6/1", "3/1"], || format!("x(y(z)) at {p:?}"))?;
    Ok(format!("{} cases, {tight_checked} vertices on |H|-1 facets; x(y(z)) = (18, 6, 3)", check.cases))
}

fn kinds(g: &EdgeGraph) -> Result<(usize, usize), String> {
    let all = classify_all(g).map_err(|e| e.to_string())?;
    let beta = all.iter().filter(|e| e.kind == EdgeKind::Beta).count();
    Ok((all.len() - beta, beta))
}

fn operadic_diagrams() -> Outcome {
    let expected = [("a(b,c,d)", (6, 0)), ("a(b(c(d)))", (0, 5)), ("a(b(c,d))", (2, 4)), ("a(b(d),c)", (3, 2))];
    for (term, want) in expected {
        let g = build_edge_graph(&OperadicTree::parse(term).expect("fixed tree")).map_err(|e| e.to_string())?;
        let got = kinds(&g)?;
        ensure(got == want, || format!("{term}: (theta, beta) = {got:?}, expected {want:?}"))?;
    }
    let t = OperadicTree::parse("a(b(d),c)").expect("fixed tree");
    let names: BTreeMap<String, String> =
        [("b", "x"), ("c", "y"), ("d", "z")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let g = build_edge_graph_named(&t, &names).map_err(|e| e.to_string())?;
    let h = &g.hypergraph;
    let e = classify_edge(&g, &Construct::parse(h, "{x,z}(y)").expect("edge")).map_err(|e| e.to_string())?;
    let ends = (e.ends.0.to_text(h), e.ends.1.to_text(h));
    ensure(e.kind == EdgeKind::Beta && ends == ("z(x(y))".into(), "x(y,z)".into()), || {
        format!("{{x,z}}(y): {:?} {ends:?}", e.kind)
    })?;
    Ok("(6θ), (5β), (2θ,4β), (3θ,2β); {x,z}(y) β from z(x(y)) to x(y,z)".into())
}

fn min_paths() -> Outcome {
    let mut check = Check::new("paths");
    for t in corpus_trees(6) {
        check_min_paths(&build_edge_graph(&t).map_err(|e| e.to_string())?, &mut check);
    }
    finish(&check)
}

fn hemi_named() -> EdgeGraph {
    let names: BTreeMap<String, String> =
        [("c", "x"), ("d", "y"), ("b", "z"), ("e", "u")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    build_edge_graph_named(&hemiassociahedron_tree(), &names).expect("fixed tree")
}

fn decompositions() -> Outcome {
    let mut check = Check::new("decompositions");
    for t in corpus_trees(5) {
        check_decompositions(&build_edge_graph(&t).map_err(|e| e.to_string())?, &mut check);
    }
    finish(&check)?;
    let g = hemi_named();
    let w = Word::parse(&g.tree, "(ae)((bd)c)").map_err(|e| e.to_string())?;
    let v = word_to_construction(&g, &w).map_err(|e| e.to_string())?;
    let expected = Construct::parse(&g.hypergraph, "z(x(y),u)").map_err(|e| e.to_string())?;
    ensure(v == expected, || format!("(ae)((bd)c) gives {}", v.to_text(&g.hypergraph)))?;
    let back = construction_to_word(&g, &v).map_err(|e| e.to_string())?.to_text(&g.tree);
    ensure(back == "(ae)((bd)c)", || format!("z(x(y),u) gives {back}"))?;
    Ok(format!("{} cases; (ae)((bd)c) <-> z(x(y),u)", check.cases))
}

fn names_of(vs: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    vs.iter().map(|v| v.iter().map(|s| s.to_string()).collect()).collect()
}

/// Parts (1)-(3) of the round proposition, checked outside `next_round`.
fn round_properties(s: &RoundState, ht: &Hypergraph, next: &RoundState) -> Result<(), String> {
    let top = ht.carrier();
    let mut images = BTreeMap::new();
    for v in tamed_constructions(ht, &s.vertex_hypergraph) {
        let fam: Vec<AtomSet> = psi(&v).into_iter().filter(|&x| x != top).collect();
        let mut flat = BTreeSet::new();
        for x in &fam {
            let ms: Vec<Multiset> = x.iter().map(|a| s.facets[a].clone()).collect();
            flat.insert(mu_sigma(&ms).map_err(|e| e.to_string())?);
        }
        ensure(flat.len() == fam.len(), || format!("flattening not injective on {}", v.to_text(ht)))?;
        images.entry(flat).or_insert(v);
    }
    let old: BTreeSet<String> = s.names().into_iter().collect();
    let new: BTreeSet<String> = next.names().into_iter().collect();
    ensure(old.is_subset(&new), || "facets lost".into())?;
    next.check().map_err(|e| e.to_string())
}

fn truncation_rounds() -> Outcome {
    let base: Vec<String> = ["x", "y", "z", "u"].iter().map(|s| s.to_string()).collect();
    let s1 = RoundState::initial(&base).map_err(|e| e.to_string())?;
    let ht1 = s1.truncation_hypergraph(&[vec!["x", "y"], vec!["x", "y", "z", "u"]], true).map_err(|e| e.to_string())?;
    let s2 = next_round(&s1, &ht1).map_err(|e| e.to_string())?.next;
    round_properties(&s1, &ht1, &s2)?;
    let h2: BTreeSet<String> = s2.names().into_iter().collect();
    ensure(h2 == ["x", "y", "z", "u", "x+y"].iter().map(|s| s.to_string()).collect(), || format!("H2 = {h2:?}"))?;
    let hv2 = names_of(&[
        &["y", "z", "u"],
        &["x", "z", "u"],
        &["y", "x+y", "z"],
        &["x", "x+y", "z"],
        &["y", "x+y", "u"],
        &["x", "x+y", "u"],
    ]);
    ensure(s2.vertex_names() == hv2, || format!("H2v = {:?}", s2.vertex_names()))?;
    let ht2 = s2
        .truncation_hypergraph(
            &[vec!["u"], vec!["x"], vec!["y"], vec!["z"], vec!["x+y"], vec!["x", "x+y"], vec!["u", "x", "y", "z", "x+y"]],
            false,
        )
        .map_err(|e| e.to_string())?;
    let s3 = next_round(&s2, &ht2).map_err(|e| e.to_string())?.next;
    round_properties(&s2, &ht2, &s3)?;
    let h3: BTreeSet<String> = s3.names().into_iter().collect();
    ensure(h3 == ["x", "y", "z", "u", "x+y", "2x+y"].iter().map(|s| s.to_string()).collect(), || {
        format!("H3 = {h3:?}")
    })?;
    let hv3 = names_of(&[
        &["x", "z", "u"],
        &["y", "z", "u"],
        &["x+y", "y", "z"],
        &["x+y", "y", "u"],
        &["x+y", "2x+y", "z"],
        &["x", "2x+y", "z"],
        &["x+y", "2x+y", "u"],
        &["x", "2x+y", "u"],
    ]);
    ensure(s3.vertex_names() == hv3, || format!("H3v = {:?}", s3.vertex_names()))?;
    Ok("H2, 6 triples, H3 with 2x+y, 8 triples; parts (1)-(3) hold".into())
}

fn set(ix: &[usize]) -> AtomSet {
    AtomSet::from_indices(ix.iter().map(|i| i - 1))
}

fn word(text: &str) -> HoleWord {
    HoleWord::parse(text).expect("fixed word")
}

fn pba() -> Outcome {
    let mut check = Check::new("pba");
    for n in 1..=3 {
        check_pba(n, &mut check);
    }
    finish(&check)?;
    let s = pba_setup(3).map_err(|e| e.to_string())?;
    let census = s.census();
    let poly = &census.facet_polygons;
    let count = |k| poly.get(&k).copied().unwrap_or(0);
    ensure(count(5) == 24 && count(12) == 8 && count(8) == 6, || format!("facets by vertex count {poly:?}"))?;

    let std = hyperpoly::pba::standardize_blocks(&[set(&[9]), set(&[2, 4, 8]), set(&[3]), set(&[1, 7]), set(&[6]), set(&[5, 7])]);
    ensure(std.word_text(Style::Unicode) == "[x₉·₁]·₁[·₁x₃·₂][·₂x₆·₃]·₃", || std.word_text(Style::Unicode))?;
    ensure(std.holes == [set(&[2, 4, 8]), set(&[1, 7]), set(&[5, 7])], || "renumbered holes".into())?;

    let leaf = |x: AtomSet| Construct::leaf(AtomSet::single(s.atom(x).expect("subset")));
    let (a, b, c, d) = (set(&[1]), set(&[1, 2]), set(&[1, 2, 3]), set(&[1, 3]));
    let enc = |t: &Construct| s.encode(t).map_err(|e| e.to_string());
    let w = enc(&s.rooted(&[a, c], vec![leaf(a), leaf(c)]))?;
    ensure(w.round_text(Style::Unicode) == "(x₁·₁)(·₁x₄)" && w.holes == [set(&[2, 3])], || w.to_text(Style::Unicode))?;
    let bac = Construct::new(AtomSet::single(s.atom(b).expect("subset")), vec![leaf(a), leaf(c)]);
    let w = enc(&s.rooted(&[a, b, c], vec![bac]))?;
    ensure(w.to_text(Style::Ascii) == "(x1x2)(x3x4)", || w.to_text(Style::Ascii))?;
    let dac = Construct::new(AtomSet::single(s.atom(d).expect("subset")), vec![leaf(a), leaf(c)]);
    let w = enc(&s.rooted(&[a, c, d], vec![dac]))?;
    ensure(w.to_text(Style::Ascii) == "(x1x3)(x2x4)", || w.to_text(Style::Ascii))?;
    let oct = s.rooted(&[b], vec![leaf(b)]);
    let w = enc(&oct)?;
    ensure(w.round_text(Style::Ascii) == ".1(.1.2).2", || w.to_text(Style::Ascii))?;

    let pairs = [
        (".1((.1x3)x4); .1={x1,x2}", ".1(.1x3x4); .1={x1,x2}"),
        (".1((.1x3)x4); .1={x1,x2}", ".1(.1.2).2; .1={x1,x2}, .2={x3,x4}"),
        ("(x1.1).1.1; .1={x2,x3,x4}", ".1.1.1.1; .1={x1,x2,x3,x4}"),
    ];
    for (lo, hi) in pairs {
        let (p, q) = (word(lo), word(hi));
        let by_decode = s.word_leq(&p, &q).map_err(|e| e.to_string())? && !s.word_leq(&q, &p).map_err(|e| e.to_string())?;
        let by_rules =
            s.word_leq_rules(&p, &q).map_err(|e| e.to_string())? && !s.word_leq_rules(&q, &p).map_err(|e| e.to_string())?;
        ensure(by_decode && by_rules, || format!("{lo} < {hi}"))?;
    }

    match s.decode(&word("(x1x2)(.1.1); .1={x3,x4}")) {
        Err(PbaError::Invalid(_)) => {}
        other => return Err(format!("counter-example accepted: {other:?}")),
    }
    Ok(format!("{} cases; 24 pentagons, 8 dodecagons, 6 octagons; examples verbatim", check.cases))
}

/// Frozen derived counts for the hemiassociahedron.
const HEMI_F_VECTOR: [usize; 4] = [18, 27, 11, 1];

fn hemiassociahedron() -> Outcome {
    let t = hemiassociahedron_tree();
    let g = build_edge_graph(&t).map_err(|e| e.to_string())?;
    let h = &g.hypergraph;
    let report = verify_isomorphism(h, DEFAULT_MAX_CARRIER).map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.to_text())?;
    let words: BTreeSet<String> = enumerate_constructions(h)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|v| construction_to_word(&g, v).map(|w| w.to_text(&t)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(words == all_words(&t).iter().map(|w| w.to_text(&t)).collect(), || "words differ from decompositions".into())?;
    let figure = [
        "(((ab)c)d)e", "(((ab)c)e)d", "(((ab)d)c)e", "(((ab)e)c)d", "(((ae)b)c)d", "((a(bc))d)e", "((a(bc))e)d",
        "((a(bd))c)e", "((ae)(bc))d", "(a((bc)d))e", "(a((bd)c))e",
    ];
    let missing: Vec<&str> = figure.iter().copied().filter(|f| !words.contains(*f)).collect();
    ensure(missing.is_empty(), || format!("figure labels missing: {missing:?}"))?;
    let fv = f_vector(h);
    ensure(fv[0] as i64 - fv[1] as i64 + fv[2] as i64 == 2, || format!("Euler fails for {fv:?}"))?;
    ensure(fv == HEMI_F_VECTOR, || format!("f-vector {fv:?}, frozen {HEMI_F_VECTOR:?}"))?;
    Ok(format!("{} vertices, {} edges, {} facets; 11 figure labels found", fv[0], fv[1], fv[2]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("simplex census", simplex_census),
        ("pentagon and hexagon", pentagon_hexagon),
        ("truncation examples", truncation_examples),
        ("order equivalence", order_equivalence),
        ("nested sets", nested_sets),
        ("geometric isomorphism", geometric_isomorphism),
        ("operadic diagrams", operadic_diagrams),
        ("minimal path normalization", min_paths),
        ("decomposition bijection", decompositions),
        ("iterated truncation", truncation_rounds),
        ("permutohedron-based associahedron", pba),
        ("hemiassociahedron", hemiassociahedron),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [tolerance exact, {secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [tolerance exact, {secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
