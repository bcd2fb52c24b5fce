use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, ParseError, Result};

/// Largest poset the finite module accepts. Element sets are `u32` masks.
pub const MAX_ELEMENTS: usize = 20;

/// A set of poset elements, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Set(pub u32);

impl Set {
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Set) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn from_elems(elems: impl IntoIterator<Item = usize>) -> Set {
        Set(elems.into_iter().fold(0, |m, i| m | 1 << i))
    }

    /// All subsets of `self`, the empty set first.
    pub fn subsets(self) -> impl Iterator<Item = Set> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some(cur.wrapping_sub(full) & full) };
            Some(Set(cur))
        })
    }
}

impl fmt::Display for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for Set {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A finite single-rooted pseudo-tree on the elements `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    /// `up[i]` is the cone `{j : i ≤ j}`.
    up: Vec<Set>,
    /// `down[i]` is `{j : j ≤ i}`.
    down: Vec<Set>,
}

impl FinitePoset {
    /// Validates that `leq` is a partial order whose down-sets are chains and
    /// which has exactly one minimal element.
    pub fn from_relation(leq: &[Vec<bool>]) -> Result<FinitePoset> {
        let n = leq.len();
        if n == 0 {
            return Err(Error::NotPseudoTree("no elements".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n, MAX_ELEMENTS));
        }
        if let Some(row) = leq.iter().position(|r| r.len() != n) {
            return Err(Error::NotPartialOrder(format!("row {row} has the wrong length")));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::NotPartialOrder(format!("{a} ≤ {a} fails")));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::NotPartialOrder(format!("{a} and {b} are below each other")));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::NotPartialOrder(format!("{a} ≤ {b} ≤ {c} but not {a} ≤ {c}")));
                    }
                }
            }
        }
        let up: Vec<Set> = (0..n).map(|a| Set::from_elems((0..n).filter(|&b| leq[a][b]))).collect();
        let down: Vec<Set> = (0..n).map(|a| Set::from_elems((0..n).filter(|&b| leq[b][a]))).collect();
        let p = FinitePoset { n, up, down };
        for t in 0..n {
            if !p.is_chain(p.down[t]) {
                return Err(Error::NotPseudoTree(format!("the elements below {t} are not linearly ordered")));
            }
        }
        let minimal: Vec<usize> = (0..n).filter(|&t| p.down[t].len() == 1).collect();
        if minimal.len() != 1 {
            return Err(Error::NotPseudoTree(format!("{} minimal elements, expected a single root", minimal.len())));
        }
        Ok(p)
    }

    /// The tree with the given parent array. Exactly one entry is `None`.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<FinitePoset> {
        let n = parents.len();
        let mut leq = vec![vec![false; n]; n];
        for (t, row) in leq.iter_mut().enumerate() {
            let mut cur = Some(t);
            let mut steps = 0;
            while let Some(c) = cur {
                if c >= n {
                    return Err(Error::NotPartialOrder(format!("parent {c} out of range")));
                }
                if steps > n {
                    return Err(Error::NotPartialOrder(format!("cycle through {t}")));
                }
                row[c] = true;
                cur = parents[c];
                steps += 1;
            }
        }
        // row t lists the ancestors of t; transpose so leq[a][b] means a ≤ b
        let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| leq[b][a]).collect()).collect();
        FinitePoset::from_relation(&leq)
    }

    /// Reads the edge-list format: the element count on the first line, then
    /// one `a < b` per line. `#` starts a comment. The order is the reflexive
    /// and transitive closure of the listed pairs.
    pub fn parse_edges(src: &str) -> Result<FinitePoset> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut offset = 0;
        for line in src.split_inclusive('\n') {
            let start = offset;
            offset += line.len();
            let body = line.split('#').next().unwrap_or("");
            let trimmed = body.trim();
            if trimmed.is_empty() {
                continue;
            }
            let at = start + (body.len() - body.trim_start().len());
            let err = |msg: String| Error::Parse(ParseError::at(src, at, msg));
            match n {
                None => {
                    let count: usize = trimmed.parse().map_err(|_| err(format!("expected element count, found `{trimmed}`")))?;
                    if count > MAX_ELEMENTS {
                        return Err(Error::TooLarge(count, MAX_ELEMENTS));
                    }
                    n = Some(count);
                }
                Some(count) => {
                    let (a, b) = trimmed.split_once('<').ok_or_else(|| err(format!("expected `a < b`, found `{trimmed}`")))?;
                    let parse = |s: &str| -> Result<usize> {
                        let v: usize = s.trim().parse().map_err(|_| err(format!("expected element index, found `{}`", s.trim())))?;
                        if v >= count {
                            return Err(err(format!("element {v} out of range 0..{count}")));
                        }
                        Ok(v)
                    };
                    edges.push((parse(a)?, parse(b)?));
                }
            }
        }
        let n = n.ok_or_else(|| Error::Parse(ParseError::at(src, src.len(), "missing element count")))?;
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &edges {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let through = leq[k].clone();
                    for (to, reach) in leq[i].iter_mut().zip(through) {
                        *to |= reach;
                    }
                }
            }
        }
        FinitePoset::from_relation(&leq)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn all(&self) -> Set {
        Set(((1u64 << self.n) - 1) as u32)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// The cone `T↑t`.
    pub fn up(&self, t: usize) -> Set {
        self.up[t]
    }

    /// `T↓t`.
    pub fn down(&self, t: usize) -> Set {
        self.down[t]
    }

    pub fn root(&self) -> usize {
        (0..self.n).find(|&t| self.down[t].len() == 1).expect("validated on construction")
    }

    pub fn is_chain(&self, s: Set) -> bool {
        s.iter().all(|a| s.iter().all(|b| self.comparable(a, b)))
    }

    pub fn is_antichain(&self, s: Set) -> bool {
        s.iter().all(|a| s.iter().all(|b| a == b || !self.comparable(a, b)))
    }

    pub fn is_initial_chain(&self, c: Set) -> bool {
        !c.is_empty() && c.is_subset(self.all()) && self.is_chain(c) && c.iter().all(|t| self.down[t].is_subset(c))
    }

    /// Elements strictly above every member of `c`.
    pub fn above(&self, c: Set) -> Set {
        Set::from_elems((0..self.n).filter(|&t| !c.contains(t) && c.is_subset(self.down[t])))
    }

    /// Minimal elements of `s`.
    pub fn minimal(&self, s: Set) -> Set {
        Set::from_elems(s.iter().filter(|&t| (self.down[t].0 & s.0) == 1 << t))
    }

    /// The immediate predecessor of each element, `None` for the root.
    pub fn parents(&self) -> Vec<Option<usize>> {
        (0..self.n)
            .map(|b| {
                let below = Set(self.down[b].0 & !(1 << b));
                below.iter().find(|&a| self.down[a] == below)
            })
            .collect()
    }

    /// The edge-list text for this poset, listing cover relations.
    pub fn to_edges(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (b, parent) in self.parents().into_iter().enumerate() {
            if let Some(a) = parent {
                out.push_str(&format!("{a} < {b}\n"));
            }
        }
        out
    }
}

/// All non-empty downward-closed chains, by exhaustive search over subsets.
pub fn initial_chains(p: &FinitePoset) -> Vec<Set> {
    p.all().subsets().filter(|&c| p.is_initial_chain(c)).collect()
}

fn is_approx_successors(p: &FinitePoset, c: Set, r: Set) -> bool {
    let above = p.above(c);
    r.is_subset(above) && above.iter().all(|s| r.iter().any(|x| p.leq(x, s)))
}

/// Every `R` with `C < r` for all `r ∈ R` such that each `s > C` lies above
/// some member of `R`. Exhaustive over subsets of the elements above `C`.
pub fn approx_successor_sets(p: &FinitePoset, c: Set) -> Result<Vec<Set>> {
    if !p.is_initial_chain(c) {
        return Err(Error::NotInitialChain(c.to_string()));
    }
    Ok(p.above(c).subsets().filter(|&r| is_approx_successors(p, c, r)).collect())
}

/// The fan found inside an approximate-successor set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteFan {
    /// Members of `S` grouped by overlap of their down-sets above `C`.
    pub classes: Vec<Set>,
    pub lambda: usize,
    /// Coinitiality of each class; always 1 for finite posets.
    pub thetas: Vec<usize>,
    /// One coinitial chain per class. In a finite poset each is a single point.
    pub fan: Vec<Vec<usize>>,
}

impl FiniteFan {
    /// `(λ, sorted θs)`, the part of the fan that must not depend on `S`.
    pub fn invariant(&self) -> (usize, Vec<usize>) {
        let mut thetas = self.thetas.clone();
        thetas.sort_unstable();
        (self.lambda, thetas)
    }

    pub fn points(&self) -> Set {
        Set::from_elems(self.fan.iter().flatten().copied())
    }
}

/// Extracts the fan from `S` by grouping: list `S` in increasing order, give
/// each `s_δ` the least `γ` whose part above `C` meets that of `s_δ`, and
/// collect the `s_δ` with equal `γ`. Each class contributes the least point
/// above `C` below its representative `s_γ`.
pub fn lambda_fan_finite(p: &FinitePoset, c: Set, s: Set) -> Result<FiniteFan> {
    if !p.is_initial_chain(c) {
        return Err(Error::NotInitialChain(c.to_string()));
    }
    if !is_approx_successors(p, c, s) {
        return Err(Error::NotApproximateSuccessors(s.to_string()));
    }
    let elems: Vec<usize> = s.iter().collect();
    let part: Vec<u32> = elems.iter().map(|&x| p.down(x).0 & !c.0).collect();
    let gamma: Vec<usize> = (0..elems.len())
        .map(|d| (0..elems.len()).find(|&g| part[g] & part[d] != 0).expect("every part meets itself"))
        .collect();
    let mut reps: Vec<usize> = gamma.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut classes = Vec::new();
    let mut thetas = Vec::new();
    let mut fan = Vec::new();
    for &g in &reps {
        classes.push(Set::from_elems((0..elems.len()).filter(|&d| gamma[d] == g).map(|d| elems[d])));
        // The part of T↓s_γ above C is a non-empty finite chain, so it has a
        // least element and coinitiality 1.
        let chain = Set(part[g]);
        let least = chain.iter().find(|&x| chain.is_subset(p.up(x))).expect("finite chains have a least element");
        thetas.push(1);
        fan.push(vec![least]);
    }
    Ok(FiniteFan { lambda: classes.len(), classes, thetas, fan })
}

#[cfg(test)]
pub(crate) fn five() -> FinitePoset {
    // r=0 < a=1, r < b=2, a < c=3, a < d=4
    FinitePoset::parse_edges("5\n0 < 1\n0 < 2\n1 < 3\n1 < 4\n").unwrap()
}
