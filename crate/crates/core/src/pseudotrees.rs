//! Symbolic pseudo-trees: a linearly ordered trunk (reversals allowed) with
//! copies of sub-pseudo-trees attached above the whole trunk.
//!
//! The top-level trunk gets a least point prepended, which is the single root.
//! Every initial chain then falls into one of two kinds. It either cuts the
//! trunk of some copy, and then its fan has exactly one class, or it is a whole
//! trunk, and then every branch copy above it is one fan class.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cardinals::{card_sum, count, Card, ONE, TWO, ZERO};
use crate::error::{Error, Result};
use crate::orders::{order_attrs, order_size, proper_cuts, OrderTerm};
use crate::trees::{Branch, TreeTerm};
use crate::tukey::{normalize, TukeyType, TypeTerm, WeakFactor};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PTreeTerm {
    pub trunk: OrderTerm,
    pub branches: Vec<Branch<PTreeTerm>>,
}

impl PTreeTerm {
    pub fn new(trunk: OrderTerm, branches: impl IntoIterator<Item = (Card, PTreeTerm)>) -> PTreeTerm {
        PTreeTerm {
            trunk,
            branches: branches.into_iter().map(|(mult, subtree)| Branch { mult, subtree }).collect(),
        }
    }

    pub fn leaf() -> PTreeTerm {
        PTreeTerm::new(OrderTerm::Fin(1), [])
    }

    pub fn validate(&self) -> Result<()> {
        self.trunk.validate()?;
        for b in &self.branches {
            if b.mult == ZERO {
                return Err(Error::EmptyBranch);
            }
            b.subtree.validate()?;
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.trunk.is_finite() && self.branches.iter().all(|b| b.mult.is_finite() && b.subtree.is_finite())
    }
}

impl From<&TreeTerm> for PTreeTerm {
    fn from(t: &TreeTerm) -> PTreeTerm {
        PTreeTerm {
            trunk: t.trunk.clone(),
            branches: t.branches.iter().map(|b| Branch { mult: b.mult, subtree: (&b.subtree).into() }).collect(),
        }
    }
}

impl fmt::Display for PTreeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ptree {}", self.trunk)?;
        for b in &self.branches {
            write!(f, " (branch {} {})", b.mult, b.subtree)?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FanEntry {
    pub mult: Card,
    /// Coinitiality of each class: `1` or an infinite regular cardinal.
    pub theta: Card,
}

/// The fan above an initial chain: `mult`-many pairwise incomparable classes
/// of coinitiality `theta`, per entry. Entries are merged by `theta` and
/// sorted, so two fans are equal iff they have the same number of classes
/// and the same multiset of coinitialities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Fan {
    entries: Vec<FanEntry>,
}

impl Fan {
    pub fn new(entries: impl IntoIterator<Item = FanEntry>) -> Result<Fan> {
        let mut merged: Vec<FanEntry> = Vec::new();
        for e in entries {
            if e.mult == ZERO {
                continue;
            }
            match merged.iter_mut().find(|m| m.theta == e.theta) {
                Some(m) => m.mult = m.mult.checked_add(e.mult)?,
                None => merged.push(e),
            }
        }
        merged.sort();
        Ok(Fan { entries: merged })
    }

    pub fn entries(&self) -> &[FanEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of classes.
    pub fn lambda(&self) -> Card {
        count(self.entries.iter().map(|e| e.mult)).expect("merged fan counts were already summed")
    }

    /// Total number of points in a minimal approximate-successor set.
    pub fn epsilon(&self) -> Result<Card> {
        if self.entries.is_empty() {
            return Ok(ZERO);
        }
        card_sum(&self.entries.iter().map(|e| (e.theta, e.mult)).collect::<Vec<_>>())
    }

    /// `∏ʷ (1 + θ)` over the classes, as a term.
    fn weak_product(&self) -> TypeTerm {
        TypeTerm::WeakProd(
            self.entries
                .iter()
                .map(|e| WeakFactor::new(if e.theta == ONE { TWO } else { e.theta }, e.mult))
                .collect(),
        )
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", e.mult, e.theta)?;
        }
        f.write_str("]")
    }
}

/// Where a chain class sits in the term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Site {
    /// Cuts of the trunk with this cofinality and remainder coinitiality.
    Cut { cf: Card, ci: Card },
    /// The whole trunk.
    Whole,
}

/// Identifies a chain class: branch indices from the top-level term down to
/// the trunk, and the site on that trunk.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassHandle {
    pub path: Vec<usize>,
    pub site: Site,
}

impl fmt::Display for ClassHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.path {
            write!(f, "/{i}")?;
        }
        match self.site {
            Site::Cut { cf, ci } => write!(f, "#cut({cf},{ci})"),
            Site::Whole => f.write_str("#whole"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PTreeClass {
    pub handle: ClassHandle,
    pub cf: Card,
    pub fan: Fan,
    pub tukey: TukeyType,
}

impl fmt::Display for PTreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cf={} fan={} type={}", self.handle, self.cf, self.fan, self.tukey)
    }
}

fn class_type(cf: Card, fan: &Fan) -> Result<TukeyType> {
    normalize(&TypeTerm::prod([TypeTerm::Ord(cf), fan.weak_product()]))
}

fn trunk_at(t: &PTreeTerm, top: bool) -> OrderTerm {
    if top {
        t.trunk.with_least()
    } else {
        t.trunk.clone()
    }
}

fn whole_fan(t: &PTreeTerm) -> Result<Fan> {
    Fan::new(t.branches.iter().map(|b| FanEntry { mult: b.mult, theta: order_attrs(&b.subtree.trunk).1 }))
}

/// All chain classes of the pseudo-tree, in handle order.
pub fn ptree_chain_classes(t: &PTreeTerm) -> Result<Vec<PTreeClass>> {
    t.validate()?;
    let mut out = Vec::new();
    collect(t, true, &mut Vec::new(), &mut out)?;
    Ok(out)
}

fn collect(t: &PTreeTerm, top: bool, path: &mut Vec<usize>, out: &mut Vec<PTreeClass>) -> Result<()> {
    let trunk = trunk_at(t, top);
    for (cf, ci) in proper_cuts(&trunk) {
        let fan = Fan::new([FanEntry { mult: ONE, theta: ci }])?;
        let tukey = class_type(cf, &fan)?;
        out.push(PTreeClass { handle: ClassHandle { path: path.clone(), site: Site::Cut { cf, ci } }, cf, fan, tukey });
    }
    let cf = order_attrs(&trunk).0;
    let fan = whole_fan(t)?;
    let tukey = class_type(cf, &fan)?;
    out.push(PTreeClass { handle: ClassHandle { path: path.clone(), site: Site::Whole }, cf, fan, tukey });
    for (i, b) in t.branches.iter().enumerate() {
        path.push(i);
        collect(&b.subtree, false, path, out)?;
        path.pop();
    }
    Ok(())
}

/// The fan above the chain class named by `handle`.
pub fn fan_at(t: &PTreeTerm, handle: &ClassHandle) -> Result<Fan> {
    t.validate()?;
    let mut node = t;
    for &i in &handle.path {
        node = &node
            .branches
            .get(i)
            .ok_or_else(|| Error::StaleHandle(format!("{handle}: no branch {i}")))?
            .subtree;
    }
    let trunk = trunk_at(node, handle.path.is_empty());
    match handle.site {
        Site::Cut { cf, ci } => {
            if !proper_cuts(&trunk).contains(&(cf, ci)) {
                return Err(Error::StaleHandle(format!("{handle}: no such cut on trunk {trunk}")));
            }
            Fan::new([FanEntry { mult: ONE, theta: ci }])
        }
        Site::Whole => whole_fan(node),
    }
}

pub fn ptree_spectrum(t: &PTreeTerm) -> Result<BTreeSet<TukeyType>> {
    Ok(ptree_chain_classes(t)?.into_iter().map(|c| c.tukey).collect())
}

/// `(ε_C, χ)`: the size of a minimal approximate-successor set and the
/// character of the ultrafilter.
pub fn epsilon_and_character(class: &PTreeClass) -> Result<(Card, Card)> {
    let eps = class.fan.epsilon()?;
    Ok((eps, eps.max(class.cf)))
}

/// A root carrying, for each requested factor, `mult` copies of a reversed
/// well-order (infinite base) or of a single point (base 2). The root class
/// has the type of the weak product of the factors.
pub fn realize_weak_product(factors: &[WeakFactor]) -> Result<PTreeTerm> {
    if factors.is_empty() {
        return Err(Error::EmptyCardList);
    }
    let mut branches = Vec::new();
    for &WeakFactor { base, mult } in factors {
        if !(base == TWO || base.is_infinite()) {
            return Err(Error::BadWeakFactor(base));
        }
        if mult == ZERO {
            return Err(Error::EmptyBranch);
        }
        let subtree = if base == TWO {
            PTreeTerm::leaf()
        } else {
            PTreeTerm::new(OrderTerm::rev(OrderTerm::Ord(base)), [])
        };
        branches.push((mult, subtree));
    }
    Ok(PTreeTerm::new(OrderTerm::Fin(1), branches))
}

/// Size of the pseudo-tree, counting the prepended root.
pub fn ptree_size(t: &PTreeTerm) -> Result<Card> {
    ONE.checked_add(inner_size(t)?)
}

fn inner_size(t: &PTreeTerm) -> Result<Card> {
    let mut parts = vec![order_size(&t.trunk)?];
    for b in &t.branches {
        parts.push(inner_size(&b.subtree)?.checked_mul(b.mult)?);
    }
    count(parts)
}

/// Whether some ultrafilter has the maximum type `[κ]^{<ω}`.
pub fn ptree_has_max_type(t: &PTreeTerm, kappa: Card) -> Result<bool> {
    Ok(ptree_spectrum(t)?.contains(&TukeyType::top(kappa)))
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use crate::orders::strategies::order_term;
    use crate::trees::strategies::mult;
    use proptest::prelude::*;

    pub fn ptree_term() -> impl Strategy<Value = PTreeTerm> {
        let leaf = order_term().prop_map(|trunk| PTreeTerm { trunk, branches: vec![] });
        leaf.prop_recursive(3, 16, 3, |inner| {
            (order_term(), proptest::collection::vec((mult(), inner), 0..3))
                .prop_map(|(trunk, bs)| PTreeTerm::new(trunk, bs))
        })
    }
}
