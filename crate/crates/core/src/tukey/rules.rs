use std::fmt;

use serde::{Serialize, Serializer};

/// Identifiers of the rewrite and comparison rules. Each one has an entry with
/// a short proof in `docs/rules.md`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Nested products flatten.
    Flat,
    /// A factor with a maximum element (1, a finite chain, a finite weak
    /// product of 1's) is dropped.
    One,
    /// `κ^n ≡ κ` for finite `n`, and a repeated factor is kept once.
    Idem,
    /// Finitely many copies of a finite factor are dropped.
    TwoFin,
    /// The weak product of `μ`-many copies of a finite factor `≥ 2` is `[μ]^{<ω}`.
    TwoInf,
    /// `[ω]^{<ω} ≡ ω`.
    Day,
    /// `κ × [μ]^{<ω} ≡ [μ]^{<ω}` for `κ ≤ μ`.
    Absorb,
    /// `[κ]^{<ω} × [μ]^{<ω} ≡ [max(κ, μ)]^{<ω}`.
    FinsetsMax,
    /// `∏ʷ_μ κ ≡ [μ]^{<ω}` for infinite `μ ≥ κ`.
    WeakFold,
    /// `∏ʷ_μ κ ≡ [μ]^{<ω} × κ` for infinite `μ < κ`.
    WeakSplit,
    /// `1` is below everything, and nothing else is below `1`.
    C0,
    /// A directed set of size `≤ κ` is below `[κ]^{<ω}`.
    C1,
    /// `[κ]^{<ω}` is not below `(κ, ≤)` for uncountable `κ`.
    C2,
    /// Projection onto a sub-product is monotone and cofinal.
    C3,
    /// Refutation through the regular-chain and finite-set invariants.
    /// Not used in strict mode.
    C4,
    /// A product is below anything every factor is below.
    Join,
}

/// How a rule is justified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Follows from the cofinal-map calculus (monotone cofinal maps, size
    /// bounds, Day's equivalence, weak products of 2's).
    Calculus,
    /// Needs directed-set invariants from outside that calculus.
    Invariant,
}

impl Rule {
    pub const ALL: [Rule; 16] = [
        Rule::Flat,
        Rule::One,
        Rule::Idem,
        Rule::TwoFin,
        Rule::TwoInf,
        Rule::Day,
        Rule::Absorb,
        Rule::FinsetsMax,
        Rule::WeakFold,
        Rule::WeakSplit,
        Rule::C0,
        Rule::C1,
        Rule::C2,
        Rule::C3,
        Rule::C4,
        Rule::Join,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::Flat => "R-flat",
            Rule::One => "R-one",
            Rule::Idem => "R-idem",
            Rule::TwoFin => "R-2fin",
            Rule::TwoInf => "R-2inf",
            Rule::Day => "R-day",
            Rule::Absorb => "R-absorb",
            Rule::FinsetsMax => "R-finsets-max",
            Rule::WeakFold => "R-wfold",
            Rule::WeakSplit => "R-wsplit",
            Rule::C0 => "C0",
            Rule::C1 => "C1",
            Rule::C2 => "C2",
            Rule::C3 => "C3",
            Rule::C4 => "C4",
            Rule::Join => "C-join",
        }
    }

    pub fn basis(self) -> Basis {
        match self {
            Rule::C4 => Basis::Invariant,
            _ => Basis::Calculus,
        }
    }

    pub fn from_id(id: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.id() == id)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_and_are_unique() {
        let mut seen = std::collections::HashSet::new();
        for r in Rule::ALL {
            assert!(seen.insert(r.id()));
            assert_eq!(Rule::from_id(r.id()), Some(r));
        }
        assert_eq!(Rule::from_id("R-nope"), None);
    }

    #[test]
    fn every_rule_is_documented() {
        let ledger = include_str!("../../../../docs/rules.md");
        for r in Rule::ALL {
            assert!(ledger.contains(&format!("`{}`", r.id())), "{} missing from docs/rules.md", r.id());
        }
    }
}
