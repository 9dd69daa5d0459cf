use std::sync::OnceLock;

use hyperpoly::constructs::{
    enumerate_constructs, leq, spanning_partial_constructions, validate_construct, Construct, Enumerator, Order,
    RawTree,
};
use hyperpoly::corpus::corpus;
use hyperpoly::hypergraph::{AtomSet, Hypergraph};
use hyperpoly::nestedsets::{psi, unpsi};
use hyperpoly::pba::{pba_setup, HoleWord, PbaSetup, Style};
use proptest::prelude::*;
use proptest::sample::Index;

fn hypergraphs() -> &'static [(String, Hypergraph)] {
    static CELL: OnceLock<Vec<(String, Hypergraph)>> = OnceLock::new();
    CELL.get_or_init(|| corpus(4))
}

fn setup3() -> &'static PbaSetup {
    static CELL: OnceLock<PbaSetup> = OnceLock::new();
    CELL.get_or_init(|| pba_setup(3).unwrap())
}

fn pick<T: Clone>(items: &[T], i: &Index) -> T {
    items[i.index(items.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn grafting_gives_a_construct_below(hi: Index, xi: Index, ti: Index, picks: Vec<Index>) {
        let (_, h) = pick(hypergraphs(), &hi);
        let subsets: Vec<AtomSet> = h.carrier().subsets().collect();
        let x = pick(&subsets, &xi);
        let partials = spanning_partial_constructions(&h, x).unwrap();
        let t = pick(&partials, &ti);
        let mut en = Enumerator::new(&h, false);
        let mut subs = Vec::new();
        for (j, k) in t.omegas().into_iter().enumerate() {
            let options = en.of(k);
            let idx = picks.get(j).map(|p| p.index(options.len())).unwrap_or(0);
            subs.push(options[idx].clone());
        }
        let grafted = t.graft(&subs).unwrap();
        let checked = validate_construct(&h, &RawTree::from_construct(&grafted)).unwrap();
        prop_assert_eq!(&checked, &grafted);
        let above = Construct::new(x, subs);
        for order in Order::ALL {
            prop_assert!(leq(&h, &grafted, &above, order).unwrap());
        }
    }

    #[test]
    fn text_and_nested_sets_round_trip(hi: Index, ci: Index) {
        let (_, h) = pick(hypergraphs(), &hi);
        let all = enumerate_constructs(&h).unwrap();
        let c = pick(&all, &ci);
        prop_assert_eq!(&Construct::parse(&h, &c.to_text(&h)).unwrap(), &c);
        prop_assert_eq!(&unpsi(&h, &psi(&c)).unwrap(), &c);
    }

    #[test]
    fn words_round_trip(ti: Index, ascii: bool) {
        let s = setup3();
        let faces = s.tamed_constructs();
        let t = pick(&faces, &ti);
        let w = s.encode(&t).unwrap();
        let style = if ascii { Style::Ascii } else { Style::Unicode };
        let reparsed = HoleWord::parse(&w.to_text(style)).unwrap();
        prop_assert_eq!(&reparsed, &w);
        prop_assert_eq!(&s.decode(&reparsed).unwrap(), &t);
    }
}
