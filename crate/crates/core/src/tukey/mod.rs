//! Tukey types of the shape `[ν]^{<ω} × κ_1 × ... × κ_n`, the rewrite system
//! that brings product terms into that shape, and a three-valued comparator.

mod compare;
mod rewrite;
mod rules;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cardinals::{Card, ONE};

pub use compare::{compare_types, Comparison, Mode, Verdict};
pub use rewrite::{normalize, normalize_traced, normalize_with, Normalized, Step};
pub use rules::{Basis, Rule};

/// A product term before normalization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TypeTerm {
    One,
    /// `(κ, ≤)`. Finite `κ ≥ 1` is accepted and denotes a chain with a top.
    Ord(Card),
    /// `([κ]^{<ω}, ⊆)`.
    FinSets(Card),
    Prod(Vec<TypeTerm>),
    /// Weak product with `mult`-many copies of each `base`.
    WeakProd(Vec<WeakFactor>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakFactor {
    pub base: Card,
    pub mult: Card,
}

impl WeakFactor {
    pub fn new(base: Card, mult: Card) -> Self {
        WeakFactor { base, mult }
    }
}

impl TypeTerm {
    pub fn prod(factors: impl IntoIterator<Item = TypeTerm>) -> TypeTerm {
        TypeTerm::Prod(factors.into_iter().collect())
    }
}

impl fmt::Display for TypeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTerm::One => f.write_str("1"),
            TypeTerm::Ord(c) => write!(f, "(ord {c})"),
            TypeTerm::FinSets(c) => write!(f, "(finsets {c})"),
            TypeTerm::Prod(items) => {
                f.write_str("(prod")?;
                for t in items {
                    write!(f, " {t}")?;
                }
                f.write_str(")")
            }
            TypeTerm::WeakProd(items) => {
                f.write_str("(wprod")?;
                for w in items {
                    write!(f, " ({} {})", w.base, w.mult)?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Canonical Tukey type `[ν]^{<ω} × ∏ κ` with `ν` uncountable (or absent) and
/// every factor an infinite regular cardinal above `ν`.
///
/// Values are only built by [`normalize`], so equality of `TukeyType`s is
/// Tukey equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TukeyType {
    finsets: Option<Card>,
    factors: BTreeSet<Card>,
}

impl TukeyType {
    pub(crate) fn from_parts(finsets: Option<Card>, factors: BTreeSet<Card>) -> Self {
        debug_assert!(finsets.is_none_or(Card::is_uncountable));
        debug_assert!(factors.iter().all(|k| k.is_infinite() && finsets.is_none_or(|n| *k > n)));
        TukeyType { finsets, factors }
    }

    pub fn one() -> TukeyType {
        TukeyType { finsets: None, factors: BTreeSet::new() }
    }

    /// Type of the chain `(κ, ≤)`; `1` for finite `κ ≥ 1`.
    pub fn chain(kappa: Card) -> TukeyType {
        normalize(&TypeTerm::Ord(kappa)).unwrap_or_else(|_| TukeyType::one())
    }

    /// Type of `([κ]^{<ω}, ⊆)`.
    pub fn top(kappa: Card) -> TukeyType {
        normalize(&TypeTerm::FinSets(kappa)).unwrap_or_else(|_| TukeyType::one())
    }

    pub fn is_one(&self) -> bool {
        self.finsets.is_none() && self.factors.is_empty()
    }

    pub fn finsets(&self) -> Option<Card> {
        self.finsets
    }

    pub fn factors(&self) -> impl DoubleEndedIterator<Item = Card> + '_ {
        self.factors.iter().copied()
    }

    pub fn has_factor(&self, kappa: Card) -> bool {
        self.factors.contains(&kappa)
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Inverse of [`normalize`]: a term whose normal form is `self`.
    pub fn to_term(&self) -> TypeTerm {
        let mut parts: Vec<TypeTerm> = self.finsets.into_iter().map(TypeTerm::FinSets).collect();
        parts.extend(self.factors.iter().map(|&k| TypeTerm::Ord(k)));
        match parts.len() {
            0 => TypeTerm::One,
            1 => parts.pop().unwrap(),
            _ => TypeTerm::Prod(parts),
        }
    }

    /// S-expression text of [`TukeyType::to_term`].
    pub fn render(&self) -> String {
        self.to_term().to_string()
    }
}

/// Cardinality of the underlying directed set.
pub fn type_size(t: &TukeyType) -> Card {
    t.finsets.into_iter().chain(t.factors.iter().copied()).max().unwrap_or(ONE)
}

impl Ord for TukeyType {
    fn cmp(&self, other: &Self) -> Ordering {
        type_size(self)
            .cmp(&type_size(other))
            .then_with(|| self.finsets.cmp(&other.finsets))
            .then_with(|| self.factors.iter().rev().cmp(other.factors.iter().rev()))
    }
}

impl PartialOrd for TukeyType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TukeyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        if let Some(n) = self.finsets {
            parts.push(format!("[{n}]^<w"));
        }
        parts.extend(self.factors.iter().map(Card::to_string));
        f.write_str(&parts.join(" x "))
    }
}

impl Serialize for TukeyType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}


#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use proptest::prelude::*;

    fn card() -> impl Strategy<Value = Card> {
        prop_oneof![(1u64..4).prop_map(Card::Fin), (0u32..4).prop_map(Card::Aleph)]
    }

    pub fn type_term() -> impl Strategy<Value = TypeTerm> {
        let leaf = prop_oneof![
            Just(TypeTerm::One),
            card().prop_map(TypeTerm::Ord),
            card().prop_map(TypeTerm::FinSets),
            proptest::collection::vec((card(), card()).prop_map(|(b, m)| WeakFactor::new(b, m)), 0..3)
                .prop_map(TypeTerm::WeakProd),
        ];
        leaf.prop_recursive(3, 16, 4, |inner| proptest::collection::vec(inner, 0..4).prop_map(TypeTerm::Prod))
    }
}
