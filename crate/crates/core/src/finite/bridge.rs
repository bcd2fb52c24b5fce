//! Lowers finite symbolic terms to explicit posets and checks that the
//! symbolic chain classes agree with exhaustive enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::generate::{canonical, canonical_at, rooted_trees_up_to};
use super::oracles::{stone_correspondence_oracle, STONE_MAX_N};
use super::poset::{initial_chains, lambda_fan_finite, FinitePoset, MAX_ELEMENTS};
use crate::cardinals::Card;
use crate::error::{Error, Result};
use crate::orders::{order_size, OrderTerm};
use crate::pseudotrees::{ptree_chain_classes, ptree_size, ptree_spectrum, PTreeTerm};
use crate::trees::{tree_chain_classes, tree_spectrum, TreeTerm};
use crate::tukey::TukeyType;

fn finite(c: Card, what: &dyn fmt::Display) -> Result<usize> {
    match c {
        Card::Fin(n) if n as usize <= MAX_ELEMENTS => Ok(n as usize),
        Card::Fin(n) => Err(Error::TooLarge(n as usize, MAX_ELEMENTS)),
        Card::Aleph(_) => Err(Error::NotFinite(what.to_string())),
    }
}

fn place(t: &PTreeTerm, parent: Option<usize>, parents: &mut Vec<Option<usize>>) -> Result<()> {
    // A finite linear order of length k is a k-chain whichever way it is built.
    let len = finite(order_size(&t.trunk)?, &t.trunk)?;
    let mut last = parent;
    for _ in 0..len {
        parents.push(last);
        last = Some(parents.len() - 1);
    }
    for b in &t.branches {
        for _ in 0..finite(b.mult, &b.mult)? {
            place(&b.subtree, last, parents)?;
        }
    }
    Ok(())
}

fn check_finite_size(size: Card, what: &dyn fmt::Display) -> Result<()> {
    finite(size, what).map(|_| ())
}

/// The explicit pseudo-tree denoted by a finite term, with the prepended root
/// as element 0.
pub fn lower_ptree(t: &PTreeTerm) -> Result<FinitePoset> {
    t.validate()?;
    check_finite_size(ptree_size(t)?, t)?;
    let mut parents = vec![None];
    place(t, Some(0), &mut parents)?;
    FinitePoset::from_parents(&parents)
}

/// The explicit tree denoted by a finite tree term. Trees get no extra root:
/// the first trunk point is the root.
pub fn lower_tree(t: &TreeTerm) -> Result<FinitePoset> {
    t.validate()?;
    check_finite_size(crate::trees::tree_size(t)?, t)?;
    let mut parents = Vec::new();
    place(&PTreeTerm::from(t), None, &mut parents)?;
    FinitePoset::from_parents(&parents)
}

/// The tree term of a rooted tree: each maximal run of single children
/// becomes a finite trunk, and isomorphic children are grouped into one
/// branch with a multiplicity.
pub fn tree_term_from_parents(parents: &[Option<usize>]) -> TreeTerm {
    let mut children = vec![Vec::new(); parents.len()];
    for (t, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            children[*p].push(t);
        }
    }
    fn term_at(parents: &[Option<usize>], children: &[Vec<usize>], mut t: usize) -> TreeTerm {
        let mut len = 1;
        while children[t].len() == 1 {
            t = children[t][0];
            len += 1;
        }
        let mut groups: BTreeMap<String, (u64, usize)> = BTreeMap::new();
        for &c in &children[t] {
            groups.entry(canonical_at(parents, c)).or_insert((0, c)).0 += 1;
        }
        TreeTerm::new(
            OrderTerm::Fin(len),
            groups.into_values().map(|(m, c)| (Card::Fin(m), term_at(parents, children, c))),
        )
    }
    let root = parents.iter().position(Option::is_none).expect("rooted");
    term_at(parents, &children, root)
}

type FanKey = (usize, Vec<usize>);

fn finite_fans(p: &FinitePoset) -> Result<BTreeSet<FanKey>> {
    initial_chains(p)
        .into_iter()
        .map(|c| Ok(lambda_fan_finite(p, c, p.minimal(p.above(c)))?.invariant()))
        .collect()
}

fn card_usize(c: Card) -> usize {
    match c {
        Card::Fin(n) => n as usize,
        Card::Aleph(_) => unreachable!("finite terms only produce finite counts"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub term: String,
    pub elements: usize,
    pub symbolic_fans: BTreeSet<FanKey>,
    pub finite_fans: BTreeSet<FanKey>,
    /// Whether the explicit cone algebra was built (small posets only).
    pub algebra_checked: bool,
    pub failures: Vec<String>,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the symbolic fans and spectrum of a finite pseudo-tree term with
/// the explicit poset it denotes.
pub fn bridge_ptree(t: &PTreeTerm) -> Result<BridgeReport> {
    if !t.is_finite() {
        return Err(Error::NotFinite(t.to_string()));
    }
    let p = lower_ptree(t)?;
    let mut failures = Vec::new();
    let mut symbolic_fans = BTreeSet::new();
    for c in ptree_chain_classes(t)? {
        let thetas: Vec<usize> =
            c.fan.entries().iter().flat_map(|e| std::iter::repeat_n(card_usize(e.theta), card_usize(e.mult))).collect();
        symbolic_fans.insert((card_usize(c.fan.lambda()), thetas));
    }
    let finite_fans = finite_fans(&p)?;
    if symbolic_fans != finite_fans {
        failures.push(format!("symbolic fans {symbolic_fans:?} differ from explicit fans {finite_fans:?}"));
    }
    let spectrum = ptree_spectrum(t)?;
    if spectrum != BTreeSet::from([TukeyType::one()]) {
        failures.push(format!("spectrum of a finite term is not {{1}}: {spectrum:?}"));
    }
    let algebra_checked = check_algebra(&p, &mut failures)?;
    Ok(BridgeReport { term: t.to_string(), elements: p.len(), symbolic_fans, finite_fans, algebra_checked, failures })
}

fn check_algebra(p: &FinitePoset, failures: &mut Vec<String>) -> Result<bool> {
    if p.len() > STONE_MAX_N {
        if initial_chains(p).len() != p.len() {
            failures.push("initial chains do not match elements".into());
        }
        return Ok(false);
    }
    let r = stone_correspondence_oracle(p)?;
    // In a finite algebra every ultrafilter is generated by an atom, so it is
    // principal; one per point means the spectrum is {1}.
    if r.ultrafilters != p.len() || !r.passed() {
        failures.push(format!("explicit algebra check failed: {r}"));
    }
    Ok(true)
}

/// Like [`bridge_ptree`] for tree terms, also comparing immediate-successor
/// counts with the explicit tree and checking the embedding into pseudo-trees.
pub fn bridge_tree(t: &TreeTerm) -> Result<BridgeReport> {
    if !t.is_finite() {
        return Err(Error::NotFinite(t.to_string()));
    }
    let embedded = PTreeTerm::from(t);
    let mut report = bridge_ptree(&embedded)?;
    report.term = t.to_string();
    let p = lower_tree(t)?;
    let succ: BTreeSet<usize> = tree_chain_classes(t)?.into_iter().map(|c| card_usize(c.succ)).collect();
    let lambdas: BTreeSet<usize> = finite_fans(&p)?.into_iter().map(|(l, _)| l).collect();
    if succ != lambdas {
        report.failures.push(format!("successor counts {succ:?} differ from explicit fans {lambdas:?}"));
    }
    if tree_spectrum(t)? != ptree_spectrum(&embedded)? {
        report.failures.push("tree and embedded pseudo-tree spectra differ".into());
    }
    check_algebra(&p, &mut report.failures)?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeSuiteReport {
    pub max_n: usize,
    pub terms: usize,
    pub failures: Vec<String>,
}

impl fmt::Display for BridgeSuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bridge oracle, tree terms of every rooted tree with at most {} elements", self.max_n)?;
        writeln!(f, "terms: {}", self.terms)?;
        for msg in &self.failures {
            writeln!(f, "failure: {msg}")?;
        }
        write!(f, "{} failures", self.failures.len())
    }
}

pub fn bridge_suite(max_n: usize) -> Result<BridgeSuiteReport> {
    if max_n > STONE_MAX_N {
        return Err(Error::TooLarge(max_n, STONE_MAX_N));
    }
    let mut out = BridgeSuiteReport { max_n, terms: 0, failures: Vec::new() };
    for parents in rooted_trees_up_to(max_n) {
        let t = tree_term_from_parents(&parents);
        let r = bridge_tree(&t)?;
        out.terms += 1;
        if canonical(&lower_tree(&t)?.parents()) != canonical(&parents) {
            out.failures.push(format!("{t}: lowering does not reproduce the tree"));
        }
        out.failures.extend(r.failures.into_iter().map(|m| format!("{t}: {m}")));
    }
    Ok(out)
}
