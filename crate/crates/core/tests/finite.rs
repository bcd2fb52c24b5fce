mod common;

use common::*;
use tukey_spectra::finite::{
    approx_successor_sets, bridge_ptree, canonical, initial_chains, lambda_fan_finite, lower_ptree, lower_tree,
    rooted_trees_up_to, tree_term_from_parents, FinitePoset,
};
use tukey_spectra::orders::OrderTerm;
use tukey_spectra::pseudotrees::PTreeTerm;
use tukey_spectra::syntax::parse_ptree;
use tukey_spectra::trees::{tree_chain_classes, tree_size};
use tukey_spectra::Card;

#[test]
fn rooted_tree_terms_lower_back_to_the_same_tree() {
    for parents in rooted_trees_up_to(8) {
        let term = tree_term_from_parents(&parents);
        let lowered = lower_tree(&term).unwrap();
        assert_eq!(canonical(&lowered.parents()), canonical(&parents), "{term}");
        assert_eq!(tree_size(&term).unwrap(), Card::Fin(parents.len() as u64));
    }
}

#[test]
fn finite_trees_have_one_chain_per_point() {
    let mut r = rng(11);
    for _ in 0..200 {
        let t = finite_tree_term(&mut r, &mut 12);
        let p = lower_tree(&t).unwrap();
        assert_eq!(initial_chains(&p).len(), p.len(), "{t}");
        let classes = tree_chain_classes(&t).unwrap();
        assert!(classes.iter().all(|c| c.tukey.is_one()), "{t}");
    }
}

#[test]
fn finite_fans_do_not_depend_on_the_successor_set() {
    let mut r = rng(12);
    for _ in 0..100 {
        let t = finite_tree_term(&mut r, &mut 8);
        let p = lower_ptree(&PTreeTerm::from(&t)).unwrap();
        for c in initial_chains(&p) {
            let sets = approx_successor_sets(&p, c).unwrap();
            let fans: Vec<_> = sets.iter().map(|&s| lambda_fan_finite(&p, c, s).unwrap().invariant()).collect();
            assert!(fans.windows(2).all(|w| w[0] == w[1]), "{t} at {c}: {fans:?}");
        }
    }
}

#[test]
fn pseudo_tree_terms_with_reversed_trunks() {
    for text in [
        "(ptree (rev 3) (branch 2 (ptree 2)))",
        "(ptree (sum 2 (rev 2)) (branch 3 leaf) (branch 1 (ptree (rev 4))))",
        "(ptree 1 (branch 2 (ptree (rev 2) (branch 2 leaf))))",
    ] {
        let t = parse_ptree(text).unwrap();
        let report = bridge_ptree(&t).unwrap();
        assert!(report.passed(), "{text}: {:?}", report.failures);
        assert!(report.algebra_checked);
    }
}

#[test]
fn finite_chains_lower_to_chains() {
    for n in 1..10u64 {
        let p = lower_ptree(&PTreeTerm::new(OrderTerm::Fin(n), [])).unwrap();
        assert!(p.is_chain(p.all()));
        // the prepended root adds one point and one initial chain
        assert_eq!(initial_chains(&p).len(), n as usize + 1);
    }
}

#[test]
fn edge_lists_round_trip() {
    let p = FinitePoset::parse_edges("4\n0 < 1\n1 < 2\n1 < 3\n").unwrap();
    let q = FinitePoset::parse_edges(&p.to_edges()).unwrap();
    assert_eq!(canonical(&p.parents()), canonical(&q.parents()));
    assert!(FinitePoset::parse_edges("3\n0 < 1\n2 < 1\n").is_err());
}
