use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Rule, TukeyType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Only rules from the cofinal-map calculus; undecided pairs are `Unknown`.
    #[default]
    Strict,
    /// Also refutes reductions with the chain and finite-set invariants (C4).
    Extended,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(Mode::Strict),
            "extended" => Ok(Mode::Extended),
            other => Err(format!("unknown mode `{other}` (expected strict or extended)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Le,
    Ge,
    Eq,
    Incomparable,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Le => "LE",
            Verdict::Ge => "GE",
            Verdict::Eq => "EQ",
            Verdict::Incomparable => "INCOMPARABLE",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    /// For `Le`/`Ge`: the reverse reduction was refuted, so the inequality is strict.
    pub strict: bool,
    pub mode: Mode,
    pub trace: Vec<Rule>,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        if self.strict {
            f.write_str(" (strict)")?;
        }
        let ids: Vec<&str> = self.trace.iter().map(|r| r.id()).collect();
        write!(f, " — trace: [{}]", ids.join(", "))
    }
}

#[derive(Clone, Copy)]
enum Component {
    FinSets(crate::cardinals::Card),
    Chain(crate::cardinals::Card),
}

fn components(t: &TukeyType) -> Vec<Component> {
    t.finsets().map(Component::FinSets).into_iter().chain(t.factors().map(Component::Chain)).collect()
}

fn push_all(trace: &mut Vec<Rule>, rules: impl IntoIterator<Item = Rule>) {
    for r in rules {
        if !trace.contains(&r) {
            trace.push(r);
        }
    }
}

/// Rules showing `a ≤_T b`, or `None` when the calculus does not derive it.
///
/// On canonical forms this is complete: it fails exactly when `a ≰_T b`.
fn derive_le(a: &TukeyType, b: &TukeyType) -> Option<Vec<Rule>> {
    if a.is_one() {
        return Some(vec![Rule::C0]);
    }
    let comps = components(a);
    let mut trace = Vec::new();
    for c in &comps {
        let rule = match *c {
            Component::Chain(k) if b.has_factor(k) => Rule::C3,
            Component::Chain(k) | Component::FinSets(k) if b.finsets().is_some_and(|n| k <= n) => {
                if b.factor_count() > 0 {
                    push_all(&mut trace, [Rule::C3]);
                }
                Rule::C1
            }
            _ => return None,
        };
        push_all(&mut trace, [rule]);
    }
    if comps.len() > 1 {
        push_all(&mut trace, [Rule::Join]);
    }
    Some(trace)
}

/// Rules showing `a ≰_T b`.
fn refute_le(a: &TukeyType, b: &TukeyType, mode: Mode) -> Option<Vec<Rule>> {
    if b.is_one() && !a.is_one() {
        return Some(vec![Rule::C0]);
    }
    // [κ]^{<ω} ≤ a and b = κ with κ uncountable: a ≤ b would give [κ]^{<ω} ≤ κ.
    if b.finsets().is_none() && b.factor_count() == 1 {
        let kappa = b.factors().next().unwrap();
        if let Some(nu) = a.finsets().filter(|&nu| kappa.is_uncountable() && nu >= kappa) {
            let mut trace = Vec::new();
            if nu > kappa {
                trace.push(Rule::C1);
            }
            if a.factor_count() > 0 {
                trace.push(Rule::C3);
            }
            trace.push(Rule::C2);
            return Some(trace);
        }
    }
    if mode == Mode::Extended && derive_le(a, b).is_none() {
        return Some(vec![Rule::C4]);
    }
    None
}

pub fn compare_types(a: &TukeyType, b: &TukeyType, mode: Mode) -> Comparison {
    let le = derive_le(a, b);
    let ge = derive_le(b, a);
    let mut trace = Vec::new();
    let (verdict, strict) = match (le, ge) {
        (Some(x), Some(y)) => {
            push_all(&mut trace, x.into_iter().chain(y));
            (Verdict::Eq, false)
        }
        (Some(x), None) => {
            push_all(&mut trace, x);
            let refuted = refute_le(b, a, mode);
            let strict = refuted.is_some();
            push_all(&mut trace, refuted.into_iter().flatten());
            (Verdict::Le, strict)
        }
        (None, Some(y)) => {
            push_all(&mut trace, y);
            let refuted = refute_le(a, b, mode);
            let strict = refuted.is_some();
            push_all(&mut trace, refuted.into_iter().flatten());
            (Verdict::Ge, strict)
        }
        (None, None) => match (refute_le(a, b, mode), refute_le(b, a, mode)) {
            (Some(x), Some(y)) => {
                push_all(&mut trace, x.into_iter().chain(y));
                (Verdict::Incomparable, false)
            }
            (x, y) => {
                push_all(&mut trace, x.into_iter().chain(y).flatten());
                (Verdict::Unknown, false)
            }
        },
    };
    Comparison { verdict, strict, mode, trace }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cardinals::{Card, OMEGA};
    use crate::tukey::{normalize, TypeTerm};

    const W1: Card = Card::Aleph(1);
    const W2: Card = Card::Aleph(2);

    fn n(t: TypeTerm) -> TukeyType {
        normalize(&t).unwrap()
    }

    #[test]
    fn chain_below_its_top_strictly() {
        let c = compare_types(&TukeyType::chain(W1), &TukeyType::top(W1), Mode::Strict);
        assert_eq!(c.verdict, Verdict::Le);
        assert!(c.strict);
        assert!(c.trace.contains(&Rule::C2));
        assert_eq!(c.to_string(), "LE (strict) — trace: [C1, C2]");
    }

    #[test]
    fn projection_gives_ge() {
        let prod = n(TypeTerm::prod([TypeTerm::Ord(OMEGA), TypeTerm::Ord(W1)]));
        let c = compare_types(&prod, &TukeyType::chain(OMEGA), Mode::Strict);
        assert_eq!((c.verdict, c.strict), (Verdict::Ge, false));
        assert_eq!(c.trace, vec![Rule::C3]);
        let c = compare_types(&prod, &TukeyType::chain(OMEGA), Mode::Extended);
        assert_eq!((c.verdict, c.strict), (Verdict::Ge, true));
        assert_eq!(c.trace, vec![Rule::C3, Rule::C4]);
    }

    #[test]
    fn distinct_regulars() {
        let (a, b) = (TukeyType::chain(W1), TukeyType::chain(W2));
        let s = compare_types(&a, &b, Mode::Strict);
        assert_eq!(s.verdict, Verdict::Unknown);
        assert!(!s.trace.contains(&Rule::C4));
        let e = compare_types(&a, &b, Mode::Extended);
        assert_eq!(e.verdict, Verdict::Incomparable);
        assert_eq!(e.trace, vec![Rule::C4]);
    }

    #[test]
    fn one_is_least() {
        let c = compare_types(&TukeyType::one(), &TukeyType::chain(OMEGA), Mode::Strict);
        assert_eq!((c.verdict, c.strict), (Verdict::Le, true));
        assert_eq!(c.trace, vec![Rule::C0]);
        let c = compare_types(&TukeyType::one(), &TukeyType::one(), Mode::Strict);
        assert_eq!(c.verdict, Verdict::Eq);
    }

    #[test]
    fn countable_top_is_omega() {
        let c = compare_types(&TukeyType::chain(OMEGA), &TukeyType::top(OMEGA), Mode::Strict);
        assert_eq!(c.verdict, Verdict::Eq);
        assert!(!c.trace.is_empty());
    }

    #[test]
    fn larger_top_dominates_product() {
        let a = n(TypeTerm::prod([TypeTerm::Ord(OMEGA), TypeTerm::Ord(W1)]));
        let c = compare_types(&a, &TukeyType::top(W2), Mode::Strict);
        assert_eq!(c.verdict, Verdict::Le);
        assert!(c.trace.contains(&Rule::Join));
        // strictness of [w2]^<w over w x w1 needs the invariants
        assert!(!c.strict);
        assert!(compare_types(&a, &TukeyType::top(W2), Mode::Extended).strict);
    }

    #[test]
    fn mixed_top_and_chain_incomparable_only_in_extended() {
        // [w1]^<w x w3  vs  [w2]^<w
        let a = n(TypeTerm::prod([TypeTerm::FinSets(W1), TypeTerm::Ord(Card::Aleph(3))]));
        let b = TukeyType::top(W2);
        assert_eq!(compare_types(&a, &b, Mode::Strict).verdict, Verdict::Unknown);
        assert_eq!(compare_types(&a, &b, Mode::Extended).verdict, Verdict::Incomparable);
    }
}
