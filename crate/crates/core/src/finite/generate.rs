//! Isomorph-free generation of finite rooted trees, which are exactly the
//! finite single-rooted pseudo-trees.

use std::collections::BTreeSet;

/// Parent array of a rooted tree; element 0 is the root.
pub type Parents = Vec<Option<usize>>;

fn children(parents: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut ch = vec![Vec::new(); parents.len()];
    for (t, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            ch[*p].push(t);
        }
    }
    ch
}

/// Canonical string of the subtree at `t`: `(` then the sorted canonical
/// strings of the children, then `)`. Two rooted trees are isomorphic iff
/// their root strings agree.
pub fn canonical_at(parents: &[Option<usize>], t: usize) -> String {
    fn go(ch: &[Vec<usize>], t: usize) -> String {
        let mut subs: Vec<String> = ch[t].iter().map(|&c| go(ch, c)).collect();
        subs.sort();
        format!("({})", subs.concat())
    }
    go(&children(parents), t)
}

pub fn canonical(parents: &[Option<usize>]) -> String {
    let root = parents.iter().position(Option::is_none).expect("a rooted tree has a root");
    canonical_at(parents, root)
}

/// Rebuilds a parent array from a canonical string, numbering in preorder.
fn decode(code: &str) -> Parents {
    let mut parents = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for ch in code.chars() {
        if ch == '(' {
            parents.push(stack.last().copied());
            stack.push(parents.len() - 1);
        } else {
            stack.pop();
        }
    }
    parents
}

/// All rooted trees with `1..=max_n` nodes, one per isomorphism class,
/// ordered by size and then by canonical string.
pub fn rooted_trees_up_to(max_n: usize) -> Vec<Parents> {
    let mut out = Vec::new();
    let mut level: BTreeSet<String> = BTreeSet::new();
    if max_n == 0 {
        return out;
    }
    level.insert("()".to_string());
    for n in 1..=max_n {
        out.extend(level.iter().map(|c| decode(c)));
        if n == max_n {
            break;
        }
        let mut next = BTreeSet::new();
        for code in &level {
            let base = decode(code);
            for t in 0..base.len() {
                let mut grown = base.clone();
                grown.push(Some(t));
                next.insert(canonical(&grown));
            }
        }
        level = next;
    }
    out
}
