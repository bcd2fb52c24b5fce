//! Symbolic cardinals: naturals and the regular alephs `ℵ_i` for finite `i`.
//!
//! Every aleph here is regular, so cofinality bookkeeping never has to deal
//! with singular limits. The text form is `0`, `1`, `2`, ... for naturals and
//! `w`, `w1`, `w2`, ... for `ℵ_0`, `ℵ_1`, `ℵ_2`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Card {
    Fin(u64),
    /// `Aleph(i)` is `ℵ_i`.
    Aleph(u32),
}

pub const ZERO: Card = Card::Fin(0);
pub const ONE: Card = Card::Fin(1);
pub const TWO: Card = Card::Fin(2);
pub const OMEGA: Card = Card::Aleph(0);

impl Card {
    pub fn aleph(i: u32) -> Card {
        Card::Aleph(i)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Card::Fin(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    pub fn is_uncountable(self) -> bool {
        matches!(self, Card::Aleph(i) if i > 0)
    }

    /// True for `1` and for every infinite cardinal: the values a cofinality
    /// or coinitiality of a non-empty linear order can take.
    pub fn is_unit_or_infinite(self) -> bool {
        self == ONE || self.is_infinite()
    }

    /// The infinite regular cardinals strictly below `self`, ascending.
    pub fn infinite_below(self) -> impl Iterator<Item = Card> {
        let top = match self {
            Card::Fin(_) => 0,
            Card::Aleph(i) => i,
        };
        (0..top).map(Card::Aleph)
    }

    pub fn max(self, other: Card) -> Card {
        std::cmp::max(self, other)
    }

    /// Cardinal product of two cardinals.
    pub fn checked_mul(self, other: Card) -> Result<Card> {
        Ok(match (self, other) {
            (Card::Fin(0), _) | (_, Card::Fin(0)) => ZERO,
            (Card::Fin(a), Card::Fin(b)) => Card::Fin(a.checked_mul(b).ok_or(Error::Overflow)?),
            (a, b) => a.max(b),
        })
    }

    /// Cardinal sum of two cardinals.
    pub fn checked_add(self, other: Card) -> Result<Card> {
        Ok(match (self, other) {
            (Card::Fin(a), Card::Fin(b)) => Card::Fin(a.checked_add(b).ok_or(Error::Overflow)?),
            (a, b) => a.max(b),
        })
    }
}

pub fn compare_cards(a: Card, b: Card) -> Ordering {
    a.cmp(&b)
}

/// Sum of `part × multiplicity` over a non-empty multiset.
///
/// A part of size zero contributes nothing regardless of its multiplicity.
pub fn card_sum(parts: &[(Card, Card)]) -> Result<Card> {
    if parts.is_empty() {
        return Err(Error::EmptySum);
    }
    parts.iter().try_fold(ZERO, |acc, &(part, mult)| {
        if mult == ZERO {
            return Err(Error::ZeroMultiplicity);
        }
        acc.checked_add(part.checked_mul(mult)?)
    })
}

/// Sum of multiplicities, `0` for an empty list.
pub(crate) fn count(mults: impl IntoIterator<Item = Card>) -> Result<Card> {
    mults.into_iter().try_fold(ZERO, |acc, m| acc.checked_add(m))
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Card::Fin(n) => write!(f, "{n}"),
            Card::Aleph(0) => f.write_str("w"),
            Card::Aleph(i) => write!(f, "w{i}"),
        }
    }
}

impl Serialize for Card {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Reasons a cardinal token is rejected; positions are added by the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardSyntaxError(pub String);

impl FromStr for Card {
    type Err = CardSyntaxError;

    fn from_str(s: &str) -> std::result::Result<Card, CardSyntaxError> {
        if let Some(rest) = s.strip_prefix('w') {
            if rest.is_empty() {
                return Ok(OMEGA);
            }
            if rest.starts_with('w') || rest.eq_ignore_ascii_case("_w") || rest == "_omega" {
                return Err(CardSyntaxError(format!(
                    "`{s}` names a singular cardinal; only w, w1, w2, ... are supported"
                )));
            }
            let digits = rest.strip_prefix('_').unwrap_or(rest);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(CardSyntaxError(format!("malformed cardinal `{s}`")));
            }
            return digits
                .parse::<u32>()
                .map(Card::Aleph)
                .map_err(|_| CardSyntaxError(format!("aleph index out of range in `{s}`")));
        }
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            return s
                .parse::<u64>()
                .map(Card::Fin)
                .map_err(|_| CardSyntaxError(format!("natural number out of range: `{s}`")));
        }
        Err(CardSyntaxError(format!("malformed cardinal `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn card() -> impl Strategy<Value = Card> {
        prop_oneof![(0u64..6).prop_map(Card::Fin), (0u32..6).prop_map(Card::Aleph)]
    }

    fn mult() -> impl Strategy<Value = Card> {
        prop_oneof![(1u64..6).prop_map(Card::Fin), (0u32..6).prop_map(Card::Aleph)]
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare_cards(TWO, OMEGA), Ordering::Less);
        assert_eq!(compare_cards(Card::Aleph(1), Card::Aleph(1)), Ordering::Equal);
        assert_eq!(compare_cards(Card::Aleph(2), Card::Aleph(1)), Ordering::Greater);
        assert_eq!(compare_cards(Card::Fin(3), Card::Fin(7)), Ordering::Less);
    }

    #[test]
    fn sum_examples() {
        assert_eq!(card_sum(&[(OMEGA, ONE), (Card::Aleph(1), ONE)]), Ok(Card::Aleph(1)));
        assert_eq!(card_sum(&[(ONE, OMEGA)]), Ok(OMEGA));
        assert_eq!(card_sum(&[(TWO, Card::Fin(3))]), Ok(Card::Fin(6)));
        assert_eq!(card_sum(&[]), Err(Error::EmptySum));
        assert_eq!(card_sum(&[(ONE, ZERO)]), Err(Error::ZeroMultiplicity));
        assert_eq!(card_sum(&[(ZERO, Card::Aleph(3))]), Ok(ZERO));
        assert_eq!(card_sum(&[(Card::Fin(u64::MAX), TWO)]), Err(Error::Overflow));
    }

    #[test]
    fn parse_and_display() {
        for (text, card) in [("0", ZERO), ("17", Card::Fin(17)), ("w", OMEGA), ("w1", Card::Aleph(1))] {
            assert_eq!(text.parse::<Card>(), Ok(card));
            assert_eq!(card.to_string(), text);
        }
        assert_eq!("w0".parse::<Card>(), Ok(OMEGA));
        assert!("ww".parse::<Card>().is_err());
        assert!("w_w".parse::<Card>().is_err());
        assert!("w1x".parse::<Card>().is_err());
        assert!("x".parse::<Card>().is_err());
        assert!("".parse::<Card>().is_err());
    }

    #[test]
    fn infinite_below_lists_smaller_alephs() {
        assert_eq!(Card::Aleph(2).infinite_below().collect::<Vec<_>>(), vec![OMEGA, Card::Aleph(1)]);
        assert_eq!(OMEGA.infinite_below().count(), 0);
        assert_eq!(Card::Fin(9).infinite_below().count(), 0);
    }

    proptest! {
        #[test]
        fn total_order(a in card(), b in card(), c in card()) {
            let ab = compare_cards(a, b);
            prop_assert_eq!(ab.reverse(), compare_cards(b, a));
            if ab == Ordering::Equal { prop_assert_eq!(a, b); }
            if ab != Ordering::Greater && compare_cards(b, c) != Ordering::Greater {
                prop_assert_ne!(compare_cards(a, c), Ordering::Greater);
            }
        }

        #[test]
        fn sum_commutes_and_flattens(parts in proptest::collection::vec((card(), mult()), 1..6), split in 0usize..6) {
            let whole = card_sum(&parts).unwrap();
            let mut rev = parts.clone();
            rev.reverse();
            prop_assert_eq!(card_sum(&rev).unwrap(), whole);
            let k = split.min(parts.len() - 1).max(1).min(parts.len());
            let (l, r) = parts.split_at(k);
            let left = card_sum(l).unwrap();
            let nested = if r.is_empty() { left } else { card_sum(&[(left, ONE), (card_sum(r).unwrap(), ONE)]).unwrap() };
            prop_assert_eq!(nested, whole);
        }

        #[test]
        fn sum_dominates_summands(parts in proptest::collection::vec((card(), mult()), 1..6)) {
            let total = card_sum(&parts).unwrap();
            for (p, _) in parts {
                prop_assert_ne!(compare_cards(total, p), Ordering::Less);
            }
        }
    }
}
