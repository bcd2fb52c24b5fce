//! Seeded random generators shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tukey_spectra::orders::OrderTerm;
use tukey_spectra::trees::TreeTerm;
use tukey_spectra::tukey::{TypeTerm, WeakFactor};
use tukey_spectra::Card;

/// Highest aleph index the generators produce.
pub const TOP_ALEPH: u32 = 5;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn infinite(r: &mut impl Rng) -> Card {
    Card::Aleph(r.gen_range(0..=TOP_ALEPH))
}

pub fn alephs() -> impl Iterator<Item = Card> {
    (0..=TOP_ALEPH).map(Card::Aleph)
}

/// A positive cardinal, finite or infinite, for factor bases and multiplicities.
pub fn positive(r: &mut impl Rng) -> Card {
    if r.gen_bool(0.4) {
        Card::Fin(r.gen_range(1..=4))
    } else {
        infinite(r)
    }
}

pub fn unit_or_infinite(r: &mut impl Rng) -> Card {
    if r.gen_bool(0.3) {
        Card::Fin(1)
    } else {
        infinite(r)
    }
}

pub fn type_term(r: &mut impl Rng, depth: u32) -> TypeTerm {
    let leaf = depth == 0 || r.gen_bool(0.4);
    if leaf {
        return match r.gen_range(0..4) {
            0 => TypeTerm::One,
            1 => TypeTerm::Ord(positive(r)),
            2 => TypeTerm::FinSets(positive(r)),
            _ => TypeTerm::WeakProd((0..r.gen_range(0..3)).map(|_| WeakFactor::new(positive(r), positive(r))).collect()),
        };
    }
    TypeTerm::Prod((0..r.gen_range(0..5)).map(|_| type_term(r, depth - 1)).collect())
}

pub fn order_term(r: &mut impl Rng, depth: u32, reversals: bool) -> OrderTerm {
    if depth == 0 || r.gen_bool(0.35) {
        return if r.gen_bool(0.4) { OrderTerm::Fin(r.gen_range(1..4)) } else { OrderTerm::Ord(infinite(r)) };
    }
    match r.gen_range(0..if reversals { 3 } else { 2 }) {
        0 => OrderTerm::Sum((0..r.gen_range(1..4)).map(|_| order_term(r, depth - 1, reversals)).collect()),
        1 => OrderTerm::lexsum(infinite(r), order_term(r, depth - 1, reversals)),
        _ => OrderTerm::rev(order_term(r, depth - 1, reversals)),
    }
}

pub fn tree_term(r: &mut impl Rng, depth: u32) -> TreeTerm {
    let trunk = order_term(r, 2, false);
    let branches = if depth == 0 { 0 } else { r.gen_range(0..3) };
    TreeTerm::new(trunk, (0..branches).map(|_| (positive(r), tree_term(r, depth - 1))).collect::<Vec<_>>())
}

/// A finite tree term with at most `budget` points.
pub fn finite_tree_term(r: &mut impl Rng, budget: &mut usize) -> TreeTerm {
    let len = r.gen_range(1..=(*budget).clamp(1, 3));
    *budget = budget.saturating_sub(len);
    let mut branches = Vec::new();
    while *budget > 0 && r.gen_bool(0.5) {
        let sub = finite_tree_term(r, &mut budget.clone());
        let size = lowered_size(&sub);
        let max_mult = (*budget / size).min(3);
        if max_mult == 0 {
            break;
        }
        let mult = r.gen_range(1..=max_mult);
        *budget -= mult * size;
        branches.push((Card::Fin(mult as u64), sub));
    }
    TreeTerm::new(OrderTerm::Fin(len as u64), branches)
}

fn lowered_size(t: &TreeTerm) -> usize {
    let trunk = match t.trunk {
        OrderTerm::Fin(n) => n as usize,
        _ => unreachable!("finite generator only builds Fin trunks"),
    };
    trunk
        + t.branches
            .iter()
            .map(|b| match b.mult {
                Card::Fin(m) => m as usize * lowered_size(&b.subtree),
                _ => unreachable!(),
            })
            .sum::<usize>()
}

pub fn pair_set(r: &mut impl Rng) -> Vec<(Card, Card)> {
    (0..r.gen_range(1..6)).map(|_| (unit_or_infinite(r), unit_or_infinite(r))).collect()
}

/// Weak-product factors with base 2 or infinite.
pub fn weak_factors(r: &mut impl Rng) -> Vec<WeakFactor> {
    (0..r.gen_range(1..5))
        .map(|_| {
            let base = if r.gen_bool(0.3) { Card::Fin(2) } else { infinite(r) };
            let mult = if r.gen_bool(0.5) { Card::Fin(r.gen_range(1..4)) } else { infinite(r) };
            WeakFactor::new(base, mult)
        })
        .collect()
}

pub fn subset_of<T: Copy>(r: &mut impl Rng, items: &[T]) -> Vec<T> {
    let mut v: Vec<T> = items.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
    v.shuffle(r);
    v
}
