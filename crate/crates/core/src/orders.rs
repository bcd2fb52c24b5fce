//! Symbolic linear orders and the classification of their initial chains.
//!
//! A cut of an order is a split into a non-empty initial part `C` and the
//! remainder. The cut is described by `(cf C, ci(remainder))`, or by `cf C`
//! alone when the remainder is empty. The set of such descriptions is computed
//! by structural recursion. Cut positions are not tracked, only the pairs they
//! produce.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cardinals::{count, Card, ONE};
use crate::error::{Error, Result};
use crate::tukey::{normalize, TukeyType, TypeTerm};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderTerm {
    /// A finite chain with `n ≥ 1` points.
    Fin(u64),
    /// The well-order `κ` for an infinite regular `κ`.
    Ord(Card),
    /// The reverse order.
    Rev(Box<OrderTerm>),
    /// Concatenation, left to right.
    Sum(Vec<OrderTerm>),
    /// `κ` copies of the order, concatenated in order type `κ`.
    LexSum(Card, Box<OrderTerm>),
}

impl OrderTerm {
    pub fn rev(t: OrderTerm) -> OrderTerm {
        OrderTerm::Rev(Box::new(t))
    }

    pub fn lexsum(kappa: Card, t: OrderTerm) -> OrderTerm {
        OrderTerm::LexSum(kappa, Box::new(t))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            OrderTerm::Fin(0) => Err(Error::EmptyOrder),
            OrderTerm::Fin(_) => Ok(()),
            OrderTerm::Ord(k) if k.is_finite() => Err(Error::NotInfinite(*k)),
            OrderTerm::Ord(_) => Ok(()),
            OrderTerm::Rev(t) => t.validate(),
            OrderTerm::Sum(items) if items.is_empty() => Err(Error::EmptyOrder),
            OrderTerm::Sum(items) => items.iter().try_for_each(OrderTerm::validate),
            OrderTerm::LexSum(k, _) if k.is_finite() => Err(Error::NotInfinite(*k)),
            OrderTerm::LexSum(_, t) => t.validate(),
        }
    }

    /// True when no `Rev` occurs anywhere, so the order is a well-order.
    pub fn is_well_ordered(&self) -> bool {
        match self {
            OrderTerm::Fin(_) | OrderTerm::Ord(_) => true,
            OrderTerm::Rev(_) => false,
            OrderTerm::Sum(items) => items.iter().all(OrderTerm::is_well_ordered),
            OrderTerm::LexSum(_, t) => t.is_well_ordered(),
        }
    }

    /// True when the term only uses `Fin`, `Rev` and `Sum`.
    pub fn is_finite(&self) -> bool {
        match self {
            OrderTerm::Fin(_) => true,
            OrderTerm::Ord(_) | OrderTerm::LexSum(..) => false,
            OrderTerm::Rev(t) => t.is_finite(),
            OrderTerm::Sum(items) => items.iter().all(OrderTerm::is_finite),
        }
    }

    /// The order with the one-point least block in front.
    pub(crate) fn with_least(&self) -> OrderTerm {
        OrderTerm::Sum(vec![OrderTerm::Fin(1), self.clone()])
    }
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTerm::Fin(n) => write!(f, "(fin {n})"),
            OrderTerm::Ord(k) => write!(f, "(ord {k})"),
            OrderTerm::Rev(t) => write!(f, "(rev {t})"),
            OrderTerm::Sum(items) => {
                f.write_str("(sum")?;
                for t in items {
                    write!(f, " {t}")?;
                }
                f.write_str(")")
            }
            OrderTerm::LexSum(k, t) => write!(f, "(lexsum {k} {t})"),
        }
    }
}

/// `(cofinality, coinitiality)` of the order.
pub fn order_attrs(t: &OrderTerm) -> (Card, Card) {
    match t {
        OrderTerm::Fin(_) => (ONE, ONE),
        OrderTerm::Ord(k) => (*k, ONE),
        OrderTerm::Rev(inner) => {
            let (cf, ci) = order_attrs(inner);
            (ci, cf)
        }
        OrderTerm::Sum(items) => {
            let cf = items.last().map_or(ONE, |l| order_attrs(l).0);
            let ci = items.first().map_or(ONE, |f| order_attrs(f).1);
            (cf, ci)
        }
        OrderTerm::LexSum(k, inner) => (*k, order_attrs(inner).1),
    }
}

/// Cardinality of the order.
pub fn order_size(t: &OrderTerm) -> Result<Card> {
    match t {
        OrderTerm::Fin(n) => Ok(Card::Fin(*n)),
        OrderTerm::Ord(k) => Ok(*k),
        OrderTerm::Rev(inner) => order_size(inner),
        OrderTerm::Sum(items) => count(items.iter().map(order_size).collect::<Result<Vec<_>>>()?),
        OrderTerm::LexSum(k, inner) => order_size(inner)?.checked_mul(*k),
    }
}

/// `(cf C, ci(remainder))` over all cuts with both sides non-empty.
pub(crate) fn proper_cuts(t: &OrderTerm) -> BTreeSet<(Card, Card)> {
    match t {
        OrderTerm::Fin(n) => {
            if *n >= 2 {
                BTreeSet::from([(ONE, ONE)])
            } else {
                BTreeSet::new()
            }
        }
        OrderTerm::Ord(k) => std::iter::once((ONE, ONE)).chain(k.infinite_below().map(|l| (l, ONE))).collect(),
        OrderTerm::Rev(inner) => proper_cuts(inner).into_iter().map(|(a, b)| (b, a)).collect(),
        OrderTerm::Sum(items) => {
            let mut iter = items.iter();
            let Some(first) = iter.next() else { return BTreeSet::new() };
            let mut cuts = proper_cuts(first);
            let mut cf = order_attrs(first).0;
            for next in iter {
                let (next_cf, next_ci) = order_attrs(next);
                cuts.insert((cf, next_ci));
                cuts.extend(proper_cuts(next));
                cf = next_cf;
            }
            cuts
        }
        OrderTerm::LexSum(k, inner) => {
            let (cf, ci) = order_attrs(inner);
            let mut cuts = proper_cuts(inner);
            cuts.insert((cf, ci));
            cuts.extend(k.infinite_below().map(|l| (l, ci)));
            cuts
        }
    }
}

/// What lies above an initial chain of a linear order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "ci")]
pub enum Rest {
    /// A non-empty remainder with this coinitiality.
    Coinitial(Card),
    /// The chain is the whole order.
    Empty,
}

/// An equivalence class of initial chains of a linear order, with the Tukey
/// type of the corresponding ultrafilter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChainClass {
    pub cf: Card,
    pub rest: Rest,
    pub tukey: TukeyType,
}

impl ChainClass {
    pub fn new(cf: Card, rest: Rest) -> Self {
        let tukey = match rest {
            Rest::Coinitial(ci) => normalize(&TypeTerm::prod([TypeTerm::Ord(cf), TypeTerm::Ord(ci)]))
                .expect("cofinalities are never zero"),
            Rest::Empty => TukeyType::chain(cf),
        };
        ChainClass { cf, rest, tukey }
    }
}

impl fmt::Display for ChainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rest {
            Rest::Coinitial(ci) => write!(f, "cf={} ci={} type={}", self.cf, ci, self.tukey),
            Rest::Empty => write!(f, "cf={} ci=empty type={}", self.cf, self.tukey),
        }
    }
}

/// Classes of initial chains of the order with a least point put in front.
pub fn classify_cuts(t: &OrderTerm) -> Result<BTreeSet<ChainClass>> {
    t.validate()?;
    let whole = t.with_least();
    let mut classes: BTreeSet<ChainClass> =
        proper_cuts(&whole).into_iter().map(|(cf, ci)| ChainClass::new(cf, Rest::Coinitial(ci))).collect();
    classes.insert(ChainClass::new(order_attrs(&whole).0, Rest::Empty));
    Ok(classes)
}

/// Tukey spectrum of the interval algebra of the order.
pub fn intalg_spectrum(t: &OrderTerm) -> Result<BTreeSet<TukeyType>> {
    Ok(classify_cuts(t)?.into_iter().map(|c| c.tukey).collect())
}

/// An order whose interval algebra has `cf × ci` in its spectrum for every
/// requested pair: one block of type `cf` followed by a reversed block of type
/// `ci`, per pair.
pub fn realize_interval(pairs: &[(Card, Card)]) -> Result<OrderTerm> {
    if pairs.is_empty() {
        return Err(Error::EmptyPairSet);
    }
    let block = |k: Card| if k == ONE { OrderTerm::Fin(1) } else { OrderTerm::Ord(k) };
    let rev_block = |k: Card| if k == ONE { OrderTerm::Fin(1) } else { OrderTerm::rev(OrderTerm::Ord(k)) };
    let mut seen = BTreeSet::new();
    let mut parts = Vec::new();
    for &(cf, ci) in pairs {
        for k in [cf, ci] {
            if !k.is_unit_or_infinite() {
                return Err(Error::NotUnitOrInfinite(k));
            }
        }
        if seen.insert((cf, ci)) {
            parts.push(block(cf));
            parts.push(rev_block(ci));
        }
    }
    Ok(OrderTerm::Sum(parts))
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use proptest::prelude::*;

    pub fn infinite() -> impl Strategy<Value = Card> {
        (0u32..4).prop_map(Card::Aleph)
    }

    pub fn order_term() -> impl Strategy<Value = OrderTerm> {
        let leaf = prop_oneof![(1u64..4).prop_map(OrderTerm::Fin), infinite().prop_map(OrderTerm::Ord)];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(OrderTerm::rev),
                proptest::collection::vec(inner.clone(), 1..4).prop_map(OrderTerm::Sum),
                (infinite(), inner).prop_map(|(k, t)| OrderTerm::lexsum(k, t)),
            ]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::strategies::*;
    use super::*;
    use crate::cardinals::OMEGA;
    use proptest::prelude::*;

    const W1: Card = Card::Aleph(1);

    fn class(cf: Card, ci: Option<Card>) -> ChainClass {
        ChainClass::new(cf, ci.map_or(Rest::Empty, Rest::Coinitial))
    }

    fn omega1_plus_reverse() -> OrderTerm {
        OrderTerm::Sum(vec![OrderTerm::Ord(W1), OrderTerm::rev(OrderTerm::Ord(W1))])
    }

    #[test]
    fn attrs_examples() {
        assert_eq!(order_attrs(&OrderTerm::Ord(W1)), (W1, ONE));
        assert_eq!(order_attrs(&OrderTerm::rev(OrderTerm::Ord(OMEGA))), (ONE, OMEGA));
        assert_eq!(order_attrs(&OrderTerm::lexsum(OMEGA, OrderTerm::Fin(2))), (OMEGA, ONE));
    }

    #[test]
    fn cuts_of_omega() {
        let got = classify_cuts(&OrderTerm::Ord(OMEGA)).unwrap();
        assert_eq!(got, BTreeSet::from([class(ONE, Some(ONE)), class(OMEGA, None)]));
    }

    #[test]
    fn cuts_of_omega1_plus_reverse() {
        let got = classify_cuts(&omega1_plus_reverse()).unwrap();
        let want = BTreeSet::from([
            class(ONE, Some(ONE)),
            class(OMEGA, Some(ONE)),
            class(W1, Some(W1)),
            class(ONE, Some(OMEGA)),
            class(ONE, None),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn cuts_of_finite_chain() {
        let got = classify_cuts(&OrderTerm::Fin(3)).unwrap();
        assert_eq!(got, BTreeSet::from([class(ONE, Some(ONE)), class(ONE, None)]));
    }

    #[test]
    fn spectrum_examples() {
        let spectrum = intalg_spectrum(&omega1_plus_reverse()).unwrap();
        assert_eq!(spectrum, BTreeSet::from([TukeyType::one(), TukeyType::chain(OMEGA), TukeyType::chain(W1)]));
        let spectrum = intalg_spectrum(&OrderTerm::Ord(OMEGA)).unwrap();
        assert_eq!(spectrum, BTreeSet::from([TukeyType::one(), TukeyType::chain(OMEGA)]));
        assert_eq!(intalg_spectrum(&OrderTerm::Fin(5)).unwrap(), BTreeSet::from([TukeyType::one()]));
    }

    #[test]
    fn realizer_examples() {
        let t = realize_interval(&[(OMEGA, W1)]).unwrap();
        assert_eq!(t, OrderTerm::Sum(vec![OrderTerm::Ord(OMEGA), OrderTerm::rev(OrderTerm::Ord(W1))]));
        let want = normalize(&TypeTerm::prod([TypeTerm::Ord(OMEGA), TypeTerm::Ord(W1)])).unwrap();
        assert!(intalg_spectrum(&t).unwrap().contains(&want));

        let t = realize_interval(&[(W1, W1)]).unwrap();
        assert_eq!(t, omega1_plus_reverse());
        assert_eq!(intalg_spectrum(&t).unwrap().len(), 3);

        let t = realize_interval(&[(ONE, ONE)]).unwrap();
        assert_eq!(t, OrderTerm::Sum(vec![OrderTerm::Fin(1), OrderTerm::Fin(1)]));
        assert_eq!(intalg_spectrum(&t).unwrap(), BTreeSet::from([TukeyType::one()]));
    }

    #[test]
    fn realizer_errors() {
        assert_eq!(realize_interval(&[]), Err(Error::EmptyPairSet));
        assert_eq!(realize_interval(&[(Card::Fin(2), ONE)]), Err(Error::NotUnitOrInfinite(Card::Fin(2))));
    }

    #[test]
    fn invalid_terms() {
        assert_eq!(classify_cuts(&OrderTerm::Fin(0)), Err(Error::EmptyOrder));
        assert_eq!(classify_cuts(&OrderTerm::Sum(vec![])), Err(Error::EmptyOrder));
        assert_eq!(classify_cuts(&OrderTerm::Ord(Card::Fin(4))), Err(Error::NotInfinite(Card::Fin(4))));
    }

    #[test]
    fn sizes() {
        assert_eq!(order_size(&omega1_plus_reverse()), Ok(W1));
        assert_eq!(order_size(&OrderTerm::Sum(vec![OrderTerm::Fin(2), OrderTerm::Fin(3)])), Ok(Card::Fin(5)));
        assert_eq!(order_size(&OrderTerm::lexsum(OMEGA, OrderTerm::Fin(2))), Ok(OMEGA));
    }

    proptest! {
        #[test]
        fn double_reverse_is_identity(t in order_term()) {
            let twice = OrderTerm::rev(OrderTerm::rev(t.clone()));
            prop_assert_eq!(classify_cuts(&twice).unwrap(), classify_cuts(&t).unwrap());
        }

        #[test]
        fn spectra_are_rectangular(t in order_term()) {
            for ty in intalg_spectrum(&t).unwrap() {
                prop_assert!(ty.finsets().is_none());
                prop_assert!(ty.factor_count() <= 2);
            }
        }

        #[test]
        fn sums_associate(a in order_term(), b in order_term(), c in order_term()) {
            let left = OrderTerm::Sum(vec![OrderTerm::Sum(vec![a.clone(), b.clone()]), c.clone()]);
            let right = OrderTerm::Sum(vec![a.clone(), OrderTerm::Sum(vec![b.clone(), c.clone()])]);
            let flat = OrderTerm::Sum(vec![a, b, c]);
            let cuts = classify_cuts(&flat).unwrap();
            prop_assert_eq!(classify_cuts(&left).unwrap(), cuts.clone());
            prop_assert_eq!(classify_cuts(&right).unwrap(), cuts);
        }

        #[test]
        fn realizer_covers_pairs(pairs in proptest::collection::vec(
            (prop_oneof![Just(ONE), infinite()], prop_oneof![Just(ONE), infinite()]), 1..5)) {
            let spectrum = intalg_spectrum(&realize_interval(&pairs).unwrap()).unwrap();
            for (cf, ci) in pairs {
                prop_assert!(spectrum.contains(&ChainClass::new(cf, Rest::Coinitial(ci)).tukey));
            }
        }
    }
}
