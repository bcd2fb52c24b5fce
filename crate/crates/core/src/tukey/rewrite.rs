use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{Rule, TukeyType, TypeTerm, WeakFactor};
use crate::cardinals::{Card, OMEGA, ONE};
use crate::error::{Error, Result};

/// One factor of a flattened product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    Chain(Card),
    FinSets(Card),
    Weak(Card, Card),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Chain(k) => write!(f, "(ord {k})"),
            Atom::FinSets(k) => write!(f, "(finsets {k})"),
            Atom::Weak(b, m) => write!(f, "(wprod ({b} {m}))"),
        }
    }
}

/// A single rewrite, with the factors it consumed and produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: Rule,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub ty: TukeyType,
    pub steps: Vec<Step>,
}

impl Normalized {
    pub fn rules(&self) -> Vec<Rule> {
        let mut seen = Vec::new();
        for s in &self.steps {
            if !seen.contains(&s.rule) {
                seen.push(s.rule);
            }
        }
        seen
    }
}

struct Redex {
    rule: Rule,
    consumed: Vec<usize>,
    produced: Vec<Atom>,
}

pub fn normalize(term: &TypeTerm) -> Result<TukeyType> {
    normalize_with(term, &mut |_| 0).map(|n| n.ty)
}

pub fn normalize_traced(term: &TypeTerm) -> Result<Normalized> {
    normalize_with(term, &mut |_| 0)
}

/// Normalizes `term`, letting `choose` pick which applicable redex fires next.
///
/// `choose` receives the number of applicable redexes and returns an index
/// below it (out-of-range indices wrap). The result does not depend on the
/// choices made.
pub fn normalize_with(term: &TypeTerm, choose: &mut dyn FnMut(usize) -> usize) -> Result<Normalized> {
    let mut atoms = Vec::new();
    let mut steps = Vec::new();
    flatten(term, false, &mut atoms, &mut steps)?;

    loop {
        let mut redexes = redexes(&atoms);
        if redexes.is_empty() {
            break;
        }
        let pick = choose(redexes.len()) % redexes.len();
        let redex = redexes.swap_remove(pick);
        let before: Vec<String> = redex.consumed.iter().map(|&i| atoms[i].to_string()).collect();
        let after: Vec<String> = redex.produced.iter().map(Atom::to_string).collect();
        steps.push(Step {
            rule: redex.rule,
            detail: format!(
                "{} -> {}",
                before.join(" x "),
                if after.is_empty() { "1".to_string() } else { after.join(" x ") }
            ),
        });
        let mut consumed = redex.consumed;
        consumed.sort_unstable_by(|a, b| b.cmp(a));
        for i in consumed {
            atoms.remove(i);
        }
        atoms.extend(redex.produced);
    }

    let mut finsets = None;
    let mut factors = BTreeSet::new();
    for atom in atoms {
        match atom {
            Atom::FinSets(k) => finsets = Some(k),
            Atom::Chain(k) => {
                factors.insert(k);
            }
            Atom::Weak(..) => unreachable!("weak products always have a redex"),
        }
    }
    Ok(Normalized { ty: TukeyType::from_parts(finsets, factors), steps })
}

fn flatten(term: &TypeTerm, nested: bool, out: &mut Vec<Atom>, steps: &mut Vec<Step>) -> Result<()> {
    match term {
        TypeTerm::One => out.push(Atom::Chain(ONE)),
        TypeTerm::Ord(k) | TypeTerm::FinSets(k) if *k == Card::Fin(0) => return Err(Error::EmptyFactor),
        TypeTerm::Ord(k) => out.push(Atom::Chain(*k)),
        TypeTerm::FinSets(k) => out.push(Atom::FinSets(*k)),
        TypeTerm::Prod(items) => {
            if nested {
                steps.push(Step { rule: Rule::Flat, detail: format!("{term} -> inline") });
            }
            for t in items {
                flatten(t, true, out, steps)?;
            }
        }
        TypeTerm::WeakProd(items) => {
            for &WeakFactor { base, mult } in items {
                if base == Card::Fin(0) || mult == Card::Fin(0) {
                    return Err(Error::EmptyFactor);
                }
                out.push(Atom::Weak(base, mult));
            }
        }
    }
    Ok(())
}

fn redexes(atoms: &[Atom]) -> Vec<Redex> {
    let mut out = Vec::new();
    let unary = |i: usize, rule: Rule, produced: Vec<Atom>| Redex { rule, consumed: vec![i], produced };

    for (i, &atom) in atoms.iter().enumerate() {
        match atom {
            Atom::Chain(k) | Atom::FinSets(k) if k.is_finite() => out.push(unary(i, Rule::One, vec![])),
            Atom::FinSets(k) if k == OMEGA => out.push(unary(i, Rule::Day, vec![Atom::Chain(OMEGA)])),
            Atom::Weak(b, _) if b == ONE => out.push(unary(i, Rule::One, vec![])),
            Atom::Weak(b, m) if b.is_finite() && m.is_finite() => out.push(unary(i, Rule::TwoFin, vec![])),
            Atom::Weak(b, m) if b.is_finite() => out.push(unary(i, Rule::TwoInf, vec![Atom::FinSets(m)])),
            Atom::Weak(b, m) if m.is_finite() => out.push(unary(i, Rule::Idem, vec![Atom::Chain(b)])),
            Atom::Weak(b, m) if m >= b => out.push(unary(i, Rule::WeakFold, vec![Atom::FinSets(m)])),
            Atom::Weak(b, m) => out.push(unary(i, Rule::WeakSplit, vec![Atom::FinSets(m), Atom::Chain(b)])),
            _ => {}
        }
    }

    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            let pair = |rule: Rule, produced: Vec<Atom>| Redex { rule, consumed: vec![i, j], produced };
            match (atoms[i], atoms[j]) {
                (Atom::Chain(a), Atom::Chain(b)) if a == b && a.is_infinite() => {
                    out.push(pair(Rule::Idem, vec![Atom::Chain(a)]))
                }
                (Atom::Chain(k), Atom::FinSets(m)) | (Atom::FinSets(m), Atom::Chain(k))
                    if k.is_infinite() && m.is_infinite() && k <= m =>
                {
                    out.push(pair(Rule::Absorb, vec![Atom::FinSets(m)]))
                }
                (Atom::FinSets(a), Atom::FinSets(b)) if a.is_infinite() && b.is_infinite() => {
                    out.push(pair(Rule::FinsetsMax, vec![Atom::FinSets(a.max(b))]))
                }
                _ => {}
            }
        }
    }
    out
}
