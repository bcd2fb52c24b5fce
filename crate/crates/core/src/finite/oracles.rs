use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::generate::rooted_trees_up_to;
use super::poset::{approx_successor_sets, initial_chains, lambda_fan_finite, FinitePoset, Set};
use crate::error::{Error, Result};

/// Largest `max_n` the fan sweep accepts.
pub const FAN_ORACLE_MAX_N: usize = 12;
pub const FAN_ORACLE_DEFAULT_N: usize = 7;
/// Largest poset whose algebra the Stone oracle builds explicitly.
pub const STONE_MAX_N: usize = 12;

const FAN_SCOPE: &str = "Finite posets only produce classes of coinitiality 1. \
This sweep checks the grouping of approximate successors into classes and the \
uniqueness of (lambda, theta multiset); it cannot exercise infinite coinitialities.";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub poset: String,
    pub chain: Set,
    pub set: Set,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chain {} set {}: {} in poset [{}]", self.chain, self.set, self.detail, self.poset.trim().replace('\n', "; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanOracleReport {
    pub scope: &'static str,
    pub max_n: usize,
    pub posets: usize,
    pub chains: usize,
    pub successor_sets: usize,
    pub violations: Vec<Violation>,
}

impl fmt::Display for FanOracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fan invariance oracle, pseudo-trees with at most {} elements", self.max_n)?;
        writeln!(f, "scope: {}", self.scope)?;
        writeln!(f, "posets: {}, initial chains: {}, successor sets: {}", self.posets, self.chains, self.successor_sets)?;
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        write!(f, "{} violations", self.violations.len())
    }
}

/// Checks every approximate-successor set of one initial chain. Returns the
/// number of sets examined.
fn check_chain(p: &FinitePoset, c: Set, violations: &mut Vec<Violation>) -> Result<usize> {
    let sets = approx_successor_sets(p, c)?;
    let minimal = p.minimal(p.above(c));
    let expected = (minimal.len(), vec![1; minimal.len()]);
    let mut report = |s: Set, detail: String| {
        violations.push(Violation { poset: p.to_edges(), chain: c, set: s, detail });
    };
    for &s in &sets {
        let fan = lambda_fan_finite(p, c, s)?;
        if fan.invariant() != expected {
            report(s, format!("invariant {:?}, expected {:?}", fan.invariant(), expected));
        }
        // Overlap above C is an equivalence whose classes are the groups.
        let part = |x: usize| p.down(x).0 & !c.0;
        let group_of: BTreeMap<usize, usize> =
            fan.classes.iter().enumerate().flat_map(|(i, g)| g.iter().map(move |x| (x, i))).collect();
        for x in s.iter() {
            for y in s.iter() {
                let overlap = part(x) & part(y) != 0;
                if overlap != (group_of[&x] == group_of[&y]) {
                    report(s, format!("overlap of {x} and {y} disagrees with the grouping"));
                }
            }
        }
        for (i, gi) in fan.classes.iter().enumerate() {
            for gj in &fan.classes[i + 1..] {
                if gi.iter().any(|x| gj.iter().any(|y| p.comparable(x, y))) {
                    report(s, format!("classes {gi} and {gj} are not pairwise incomparable"));
                }
            }
        }
        let points = fan.points();
        if !approx_successor_sets(p, c)?.contains(&points) {
            report(s, format!("fan points {points} are not approximate successors"));
        }
        if !points.is_subset(p.above(c)) || points.iter().any(|t| !s.iter().any(|x| p.leq(t, x))) {
            report(s, format!("fan points {points} are not coinitial in the set"));
        }
    }
    Ok(sets.len())
}

/// The fan check on one poset: every initial chain and every
/// approximate-successor set of it.
pub fn fan_invariance_poset(p: &FinitePoset) -> Result<FanOracleReport> {
    let mut report =
        FanOracleReport { scope: FAN_SCOPE, max_n: p.len(), posets: 1, chains: 0, successor_sets: 0, violations: Vec::new() };
    for c in initial_chains(p) {
        report.chains += 1;
        report.successor_sets += check_chain(p, c, &mut report.violations)?;
    }
    Ok(report)
}

/// Sweeps every single-rooted pseudo-tree with at most `max_n` elements, up
/// to isomorphism, and every approximate-successor set of each initial chain,
/// checking that the extracted `(λ, θ multiset)` never depends on the set.
pub fn fan_invariance_oracle(max_n: usize) -> Result<FanOracleReport> {
    if max_n > FAN_ORACLE_MAX_N {
        return Err(Error::TooLarge(max_n, FAN_ORACLE_MAX_N));
    }
    let mut report = FanOracleReport { scope: FAN_SCOPE, max_n, posets: 0, chains: 0, successor_sets: 0, violations: Vec::new() };
    for parents in rooted_trees_up_to(max_n) {
        let one = fan_invariance_poset(&FinitePoset::from_parents(&parents)?)?;
        report.posets += 1;
        report.chains += one.chains;
        report.successor_sets += one.successor_sets;
        report.violations.extend(one.violations);
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StoneReport {
    pub elements: usize,
    pub algebra_size: usize,
    pub ultrafilters: usize,
    pub initial_chains: usize,
    pub bijection: bool,
    pub generator_checks: usize,
    pub failures: Vec<String>,
}

impl StoneReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for StoneReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "elements: {}, algebra size: {}", self.elements, self.algebra_size)?;
        writeln!(f, "ultrafilters: {}, initial chains: {}", self.ultrafilters, self.initial_chains)?;
        writeln!(f, "chain map is a bijection: {}", self.bijection)?;
        writeln!(f, "generator checks passed: {}", self.generator_checks)?;
        for msg in &self.failures {
            writeln!(f, "failure: {msg}")?;
        }
        write!(f, "{} failures", self.failures.len())
    }
}

/// The set algebra on the points of `p` generated by the cones, closed under
/// complement and intersection.
fn cone_algebra(p: &FinitePoset) -> BTreeSet<u32> {
    let all = p.all().0;
    let mut seen = vec![false; 1 << p.len()];
    let mut algebra: Vec<u32> = Vec::new();
    let mut pending: Vec<u32> = (0..p.len()).map(|t| p.up(t).0).collect();
    while let Some(x) = pending.pop() {
        if std::mem::replace(&mut seen[x as usize], true) {
            continue;
        }
        algebra.push(x);
        pending.push(all & !x);
        pending.extend(algebra.iter().map(|&y| x & y).filter(|&z| !seen[z as usize]));
    }
    algebra.into_iter().collect()
}

/// Builds the cone algebra of `p` and checks that its ultrafilters correspond
/// to initial chains through `U ↦ {t : T↑t ∈ U}`, and that each ultrafilter
/// is generated by the sets `T↑t ∖ ⋃_{s∈S} T↑s` for `t ∈ C` and finite
/// antichains `S` above `C`.
pub fn stone_correspondence_oracle(p: &FinitePoset) -> Result<StoneReport> {
    if p.len() > STONE_MAX_N {
        return Err(Error::TooLarge(p.len(), STONE_MAX_N));
    }
    let mut failures = Vec::new();
    let algebra = cone_algebra(p);
    let all = p.all().0;
    // Dense membership table; masks stay below 2^STONE_MAX_N.
    let mut member = vec![false; 1 << p.len()];
    for &x in &algebra {
        member[x as usize] = true;
    }
    // Scanning by size, a non-zero element is an atom iff it contains no
    // atom found so far.
    let mut by_size: Vec<u32> = algebra.iter().copied().filter(|&x| x != 0).collect();
    by_size.sort_by_key(|x| (x.count_ones(), *x));
    let mut atoms: Vec<u32> = Vec::new();
    for x in by_size {
        if atoms.iter().all(|&a| a & x != a) {
            atoms.push(x);
        }
    }
    atoms.sort_unstable();

    let mut by_chain: BTreeMap<Set, BTreeSet<u32>> = BTreeMap::new();
    for &a in &atoms {
        let u: BTreeSet<u32> = algebra.iter().copied().filter(|&x| x & a == a).collect();
        let mut in_u = vec![false; member.len()];
        for &x in &u {
            in_u[x as usize] = true;
        }
        if in_u[0] || !in_u[all as usize] {
            failures.push(format!("filter of atom {} is improper", Set(a)));
        }
        for &x in &algebra {
            if in_u[x as usize] == in_u[(all & !x) as usize] {
                failures.push(format!("filter of atom {} does not decide {}", Set(a), Set(x)));
            }
        }
        // `u` is up-closed by construction, so it is closed under
        // intersection iff it contains its meet.
        let meet = u.iter().fold(all, |m, &x| m & x);
        if !in_u[meet as usize] {
            failures.push(format!("filter of atom {} is not closed under intersection", Set(a)));
        }
        let chain = Set::from_elems((0..p.len()).filter(|&t| u.contains(&p.up(t).0)));
        if by_chain.insert(chain, u).is_some() {
            failures.push(format!("two ultrafilters map to chain {chain}"));
        }
    }

    let chains = initial_chains(p);
    let image: BTreeSet<Set> = by_chain.keys().copied().collect();
    let bijection = image == chains.iter().copied().collect() && by_chain.len() == atoms.len();
    if !bijection {
        failures.push("the chain map is not a bijection onto the initial chains".into());
    }

    let mut generator_checks = 0;
    for &c in &chains {
        let antichains: Vec<Set> = p.above(c).subsets().filter(|&s| p.is_antichain(s)).collect();
        let mut generators: BTreeSet<u32> = BTreeSet::new();
        for t in c.iter() {
            for s in &antichains {
                let removed = s.iter().fold(0, |m, x| m | p.up(x).0);
                generators.insert(p.up(t).0 & !removed);
            }
        }
        let mut is_gen = vec![false; member.len()];
        for &g in &generators {
            is_gen[g as usize] = true;
        }
        if generators.iter().any(|&g| !member[g as usize]) {
            failures.push(format!("generators of chain {c} leave the algebra"));
        }
        if generators.iter().any(|&x| generators.iter().any(|&y| !is_gen[(x & y) as usize])) {
            failures.push(format!("generators of chain {c} are not closed under intersection"));
        }
        let generated: BTreeSet<u32> =
            algebra.iter().copied().filter(|&x| generators.iter().any(|&g| g & x == g)).collect();
        match by_chain.get(&c) {
            Some(u) if *u == generated => generator_checks += 1,
            Some(_) => failures.push(format!("generators of chain {c} give the wrong filter")),
            None => failures.push(format!("no ultrafilter maps to chain {c}")),
        }
    }

    Ok(StoneReport {
        elements: p.len(),
        algebra_size: algebra.len(),
        ultrafilters: atoms.len(),
        initial_chains: chains.len(),
        bijection,
        generator_checks,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StoneSuiteReport {
    pub max_n: usize,
    pub posets: usize,
    pub ultrafilters: usize,
    pub failures: Vec<String>,
}

impl fmt::Display for StoneSuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stone correspondence oracle, pseudo-trees with at most {} elements", self.max_n)?;
        writeln!(f, "posets: {}, ultrafilters: {}", self.posets, self.ultrafilters)?;
        for msg in &self.failures {
            writeln!(f, "failure: {msg}")?;
        }
        write!(f, "{} failures", self.failures.len())
    }
}

/// Runs the Stone oracle on every pseudo-tree with at most `max_n` elements,
/// also checking `|ultrafilters| = |initial chains| = |T|`.
pub fn stone_suite(max_n: usize) -> Result<StoneSuiteReport> {
    if max_n > STONE_MAX_N {
        return Err(Error::TooLarge(max_n, STONE_MAX_N));
    }
    let mut out = StoneSuiteReport { max_n, posets: 0, ultrafilters: 0, failures: Vec::new() };
    for parents in rooted_trees_up_to(max_n) {
        let p = FinitePoset::from_parents(&parents)?;
        let r = stone_correspondence_oracle(&p)?;
        out.posets += 1;
        out.ultrafilters += r.ultrafilters;
        let tag = p.to_edges().trim().replace('\n', "; ");
        if r.ultrafilters != p.len() || r.initial_chains != p.len() {
            out.failures.push(format!("[{tag}]: {} ultrafilters, {} chains, {} elements", r.ultrafilters, r.initial_chains, p.len()));
        }
        out.failures.extend(r.failures.into_iter().map(|m| format!("[{tag}]: {m}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::poset::five;
    use super::*;

    #[test]
    fn fan_oracle_small_sizes() {
        let r = fan_invariance_oracle(1).unwrap();
        assert_eq!((r.posets, r.chains, r.successor_sets), (1, 1, 1));
        assert!(r.violations.is_empty());
        let r = fan_invariance_oracle(5).unwrap();
        assert_eq!(r.posets, 1 + 1 + 2 + 4 + 9);
        assert!(r.violations.is_empty(), "{r}");
        assert!(r.to_string().ends_with("0 violations"));
        assert_eq!(fan_invariance_oracle(13), Err(Error::TooLarge(13, FAN_ORACLE_MAX_N)));
    }

    #[test]
    fn stone_examples() {
        let r = stone_correspondence_oracle(&five()).unwrap();
        assert_eq!((r.ultrafilters, r.initial_chains, r.generator_checks), (5, 5, 5));
        assert!(r.bijection && r.passed(), "{r}");
        let point = FinitePoset::parse_edges("1").unwrap();
        assert_eq!(stone_correspondence_oracle(&point).unwrap().ultrafilters, 1);
        let chain = FinitePoset::parse_edges("3\n0 < 1\n1 < 2").unwrap();
        let r = stone_correspondence_oracle(&chain).unwrap();
        assert_eq!((r.ultrafilters, r.generator_checks), (3, 3));
        assert!(r.passed());
    }

    #[test]
    fn cone_algebra_is_full_powerset() {
        // atoms of the cone algebra of a finite tree are the singletons
        let p = five();
        assert_eq!(cone_algebra(&p).len(), 1 << 5);
    }

    #[test]
    fn stone_suite_small() {
        let r = stone_suite(5).unwrap();
        assert!(r.failures.is_empty(), "{r}");
        assert_eq!(r.posets, 17);
    }
}
