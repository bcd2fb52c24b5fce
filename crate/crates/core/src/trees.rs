//! Symbolic trees: a well-ordered trunk with copies of subtrees attached
//! above the whole trunk.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cardinals::{count, Card, OMEGA, ONE, ZERO};
use crate::error::{Error, Result};
use crate::orders::{order_attrs, order_size, proper_cuts, OrderTerm};
use crate::tukey::{normalize, TukeyType, TypeTerm, WeakFactor};

/// `mult` pairwise incomparable copies of `subtree`, attached above a trunk.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Branch<T> {
    pub mult: Card,
    pub subtree: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeTerm {
    pub trunk: OrderTerm,
    pub branches: Vec<Branch<TreeTerm>>,
}

impl TreeTerm {
    pub fn leaf() -> TreeTerm {
        TreeTerm { trunk: OrderTerm::Fin(1), branches: Vec::new() }
    }

    pub fn new(trunk: OrderTerm, branches: impl IntoIterator<Item = (Card, TreeTerm)>) -> TreeTerm {
        TreeTerm {
            trunk,
            branches: branches.into_iter().map(|(mult, subtree)| Branch { mult, subtree }).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.trunk.validate()?;
        if !self.trunk.is_well_ordered() {
            return Err(Error::NotATree);
        }
        for b in &self.branches {
            if b.mult == ZERO {
                return Err(Error::EmptyBranch);
            }
            b.subtree.validate()?;
        }
        Ok(())
    }

    /// True when every trunk and multiplicity is finite.
    pub fn is_finite(&self) -> bool {
        self.trunk.is_finite() && self.branches.iter().all(|b| b.mult.is_finite() && b.subtree.is_finite())
    }
}

impl fmt::Display for TreeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(tree {}", self.trunk)?;
        for b in &self.branches {
            write!(f, " (branch {} {})", b.mult, b.subtree)?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreeClass {
    pub cf: Card,
    /// Number of immediate successors of the chain.
    pub succ: Card,
    pub tukey: TukeyType,
}

impl TreeClass {
    fn new(cf: Card, succ: Card) -> Result<TreeClass> {
        let tukey = if succ == ZERO {
            TukeyType::chain(cf)
        } else {
            normalize(&TypeTerm::prod([
                TypeTerm::Ord(cf),
                TypeTerm::WeakProd(vec![WeakFactor::new(Card::Fin(2), succ)]),
            ]))?
        };
        Ok(TreeClass { cf, succ, tukey })
    }
}

impl fmt::Display for TreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cf={} succ={} type={}", self.cf, self.succ, self.tukey)
    }
}

pub fn tree_chain_classes(t: &TreeTerm) -> Result<BTreeSet<TreeClass>> {
    t.validate()?;
    let mut out = BTreeSet::new();
    collect(t, &mut out)?;
    Ok(out)
}

fn collect(t: &TreeTerm, out: &mut BTreeSet<TreeClass>) -> Result<()> {
    // Inside a well-ordered trunk the remainder has a least element, which is
    // the only immediate successor.
    for (cf, _) in proper_cuts(&t.trunk) {
        out.insert(TreeClass::new(cf, ONE)?);
    }
    let succ = count(t.branches.iter().map(|b| b.mult))?;
    out.insert(TreeClass::new(order_attrs(&t.trunk).0, succ)?);
    for b in &t.branches {
        collect(&b.subtree, out)?;
    }
    Ok(())
}

pub fn tree_spectrum(t: &TreeTerm) -> Result<BTreeSet<TukeyType>> {
    Ok(tree_chain_classes(t)?.into_iter().map(|c| c.tukey).collect())
}

/// Whether the tree algebra has an ultrafilter of type `[κ]^{<ω}`, where `κ`
/// is the size of the algebra.
pub fn tree_has_max_type(t: &TreeTerm, kappa: Card) -> Result<bool> {
    if kappa.is_uncountable() {
        Ok(tree_chain_classes(t)?.iter().any(|c| c.succ == kappa))
    } else {
        Ok(tree_spectrum(t)?.contains(&TukeyType::top(if kappa == OMEGA { OMEGA } else { ONE })))
    }
}

pub fn tree_size(t: &TreeTerm) -> Result<Card> {
    let mut parts = vec![order_size(&t.trunk)?];
    for b in &t.branches {
        parts.push(tree_size(&b.subtree)?.checked_mul(b.mult)?);
    }
    count(parts)
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use crate::orders::strategies::infinite;
    use proptest::prelude::*;

    pub fn well_order() -> impl Strategy<Value = OrderTerm> {
        let leaf = prop_oneof![(1u64..4).prop_map(OrderTerm::Fin), infinite().prop_map(OrderTerm::Ord)];
        leaf.prop_recursive(2, 6, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 1..3).prop_map(OrderTerm::Sum),
                (infinite(), inner).prop_map(|(k, t)| OrderTerm::lexsum(k, t)),
            ]
        })
    }

    pub fn mult() -> impl Strategy<Value = Card> {
        prop_oneof![(1u64..4).prop_map(Card::Fin), infinite()]
    }

    pub fn tree_term() -> impl Strategy<Value = TreeTerm> {
        let leaf = well_order().prop_map(|trunk| TreeTerm { trunk, branches: vec![] });
        leaf.prop_recursive(3, 16, 3, |inner| {
            (well_order(), proptest::collection::vec((mult(), inner), 0..3))
                .prop_map(|(trunk, bs)| TreeTerm::new(trunk, bs))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::strategies::*;
    use super::*;
    use proptest::prelude::*;

    const W1: Card = Card::Aleph(1);

    fn star(k: Card) -> TreeTerm {
        TreeTerm::new(OrderTerm::Fin(1), [(k, TreeTerm::leaf())])
    }

    #[test]
    fn omega_star_classes() {
        let got = tree_chain_classes(&star(OMEGA)).unwrap();
        let want = BTreeSet::from([
            TreeClass { cf: ONE, succ: OMEGA, tukey: TukeyType::chain(OMEGA) },
            TreeClass { cf: ONE, succ: ZERO, tukey: TukeyType::one() },
        ]);
        assert_eq!(got, want);
        assert_eq!(tree_spectrum(&star(OMEGA)).unwrap(), BTreeSet::from([TukeyType::one(), TukeyType::chain(OMEGA)]));
    }

    #[test]
    fn omega1_trunk_classes() {
        let t = TreeTerm::new(OrderTerm::Ord(W1), []);
        let got = tree_chain_classes(&t).unwrap();
        let want = BTreeSet::from([
            TreeClass { cf: ONE, succ: ONE, tukey: TukeyType::one() },
            TreeClass { cf: OMEGA, succ: ONE, tukey: TukeyType::chain(OMEGA) },
            TreeClass { cf: W1, succ: ZERO, tukey: TukeyType::chain(W1) },
        ]);
        assert_eq!(got, want);
        assert_eq!(tree_spectrum(&t).unwrap().len(), 3);
        assert!(!tree_has_max_type(&t, W1).unwrap());
    }

    #[test]
    fn binary_tree_depth_two_is_finite() {
        let inner = TreeTerm::new(OrderTerm::Fin(1), [(Card::Fin(2), TreeTerm::leaf())]);
        let t = TreeTerm::new(OrderTerm::Fin(1), [(Card::Fin(2), inner)]);
        let classes = tree_chain_classes(&t).unwrap();
        assert!(classes.iter().all(|c| c.cf == ONE && c.succ.is_finite() && c.tukey.is_one()));
        assert_eq!(tree_size(&t), Ok(Card::Fin(7)));
    }

    #[test]
    fn uncountable_star() {
        let t = star(W1);
        assert_eq!(tree_spectrum(&t).unwrap(), BTreeSet::from([TukeyType::one(), TukeyType::top(W1)]));
        assert!(tree_has_max_type(&t, W1).unwrap());
        assert!(tree_has_max_type(&star(OMEGA), OMEGA).unwrap());
        assert_eq!(tree_size(&t), Ok(W1));
    }

    #[test]
    fn reversed_trunk_rejected() {
        let t = TreeTerm::new(OrderTerm::rev(OrderTerm::Ord(OMEGA)), []);
        assert_eq!(tree_chain_classes(&t), Err(Error::NotATree));
        let nested = TreeTerm::new(OrderTerm::Fin(1), [(ONE, TreeTerm::new(OrderTerm::lexsum(OMEGA, OrderTerm::rev(OrderTerm::Fin(2))), []))]);
        assert_eq!(tree_spectrum(&nested), Err(Error::NotATree));
        let zero = TreeTerm::new(OrderTerm::Fin(1), [(ZERO, TreeTerm::leaf())]);
        assert_eq!(tree_spectrum(&zero), Err(Error::EmptyBranch));
    }

    proptest! {
        #[test]
        fn trunk_cuts_never_give_finite_sets(t in tree_term()) {
            for c in tree_chain_classes(&t).unwrap() {
                if c.succ == ONE {
                    prop_assert!(c.tukey.finsets().is_none());
                }
            }
        }
    }
}
