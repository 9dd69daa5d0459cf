use hyperpoly::corpus::{
    check_beta_acyclic, check_hypergraph_laws, check_truncation_rounds, corpus, corpus_sizes, corpus_trees, Check,
};
use hyperpoly::operadic::build_edge_graph;

fn assert_passed(check: &Check) {
    assert!(check.passed(), "{}: {:?}", check.name, check.failures);
    assert!(check.cases > 0);
}

#[test]
fn hypergraph_laws_on_corpus() {
    let mut check = Check::new("hypergraph laws");
    for (name, h) in corpus(4) {
        check_hypergraph_laws(&name, &h, &mut check);
    }
    assert_passed(&check);
}

#[test]
fn beta_edges_are_acyclic() {
    let mut check = Check::new("beta orientation");
    for t in corpus_trees(5) {
        check_beta_acyclic(&build_edge_graph(&t).unwrap(), &mut check);
    }
    assert_passed(&check);
}

#[test]
fn truncation_rounds_keep_facets() {
    let mut check = Check::new("truncation rounds");
    check_truncation_rounds(&mut check);
    assert_passed(&check);
}

#[test]
fn corpus_has_every_class() {
    let sizes: Vec<usize> = corpus_sizes().into_values().collect();
    assert_eq!(sizes, [1, 1, 6, 171]);
    assert_eq!(corpus(4).len(), 179 + 7);
}
