//! S-expression input syntax for every term kind.
//!
//! ```text
//! card    := 0 | 1 | 2 | ... | w | w1 | w2 | ...
//! type    := card | (ord card) | (finsets card) | (prod type...) | (wprod factor...)
//! factor  := card | (card card)                      ; base, or (base mult)
//! order   := card | (fin n) | (ord card) | (rev order) | (sum order...) | (lexsum card order)
//! tree    := leaf | (tree order (branch card tree)...)
//! ptree   := leaf | ((ptree | tree) order (branch card ptree)...)
//! catalog := (free card) | (fincofin card) | (adfamily card (mus card...))
//! pairs   := ((card card)...)
//! ```
//!
//! A bare type cardinal `1` is the trivial type and any other bare cardinal is
//! a chain. A bare order cardinal is `fin` when finite and `ord` otherwise.
//! `;` comments run to the end of the line. The parser only checks shape;
//! values such as `(fin 0)` are rejected later by the calculators.

use std::collections::BTreeSet;

use crate::cardinals::Card;
use crate::catalog::CatalogSpec;
use crate::error::{ParseError, Result};
use crate::orders::OrderTerm;
use crate::pseudotrees::PTreeTerm;
use crate::trees::TreeTerm;
use crate::tukey::{TypeTerm, WeakFactor};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn offset(&self) -> usize {
        match self {
            Sexp::Atom(_, o) | Sexp::List(_, o) => *o,
        }
    }
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.src, at, msg)
    }

    fn skip_space(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b';' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        self.skip_space();
        let start = self.pos;
        match self.src[self.pos..].chars().next() {
            None => Err(self.err(start, "unexpected end of input")),
            Some(')') => Err(self.err(start, "unexpected `)`")),
            Some('(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_space();
                    match self.src[self.pos..].chars().next() {
                        None => return Err(self.err(start, "unclosed `(`")),
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items, start));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let len = self.src[self.pos..]
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')' || c == ';')
                    .unwrap_or(self.src.len() - self.pos);
                self.pos += len;
                Ok(Sexp::Atom(self.src[start..self.pos].to_string(), start))
            }
        }
    }
}

fn read_all(src: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut r = Reader { src, pos: 0 };
    let mut out = Vec::new();
    loop {
        r.skip_space();
        if r.pos >= src.len() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

fn read_one(src: &str) -> Result<Sexp, ParseError> {
    let mut all = read_all(src)?;
    match all.len() {
        0 => Err(ParseError::at(src, src.len(), "expected a term, found nothing")),
        1 => Ok(all.pop().unwrap()),
        _ => Err(ParseError::at(src, all[1].offset(), "unexpected input after the term")),
    }
}

/// Converts read s-expressions into terms, keeping the source for positions.
struct Conv<'a> {
    src: &'a str,
}

impl<'a> Conv<'a> {
    fn err(&self, at: &Sexp, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.src, at.offset(), msg)
    }

    fn card(&self, s: &Sexp) -> Result<Card, ParseError> {
        match s {
            Sexp::Atom(a, _) => a.parse().map_err(|e: crate::cardinals::CardSyntaxError| self.err(s, e.0)),
            Sexp::List(..) => Err(self.err(s, "expected a cardinal, found a list")),
        }
    }

    fn natural(&self, s: &Sexp) -> Result<u64, ParseError> {
        match self.card(s)? {
            Card::Fin(n) => Ok(n),
            k => Err(self.err(s, format!("expected a natural number, found {k}"))),
        }
    }

    /// The head symbol and arguments of a list.
    fn form<'s>(&self, s: &'s Sexp, what: &str) -> Result<(&'s str, &'s [Sexp]), ParseError> {
        match s {
            Sexp::List(items, _) => match items.first() {
                Some(Sexp::Atom(head, _)) => Ok((head.as_str(), &items[1..])),
                Some(other) => Err(self.err(other, format!("expected a {what} keyword"))),
                None => Err(self.err(s, format!("empty list where a {what} was expected"))),
            },
            Sexp::Atom(a, _) => Err(self.err(s, format!("expected a {what}, found `{a}`"))),
        }
    }

    fn arity(&self, s: &Sexp, head: &str, args: &[Sexp], n: usize) -> Result<(), ParseError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(self.err(s, format!("`{head}` takes {n} argument(s), found {}", args.len())))
        }
    }

    fn type_term(&self, s: &Sexp) -> Result<TypeTerm, ParseError> {
        if let Sexp::Atom(..) = s {
            return Ok(match self.card(s)? {
                Card::Fin(1) => TypeTerm::One,
                k => TypeTerm::Ord(k),
            });
        }
        let (head, args) = self.form(s, "type")?;
        match head {
            "ord" | "finsets" => {
                self.arity(s, head, args, 1)?;
                let k = self.card(&args[0])?;
                Ok(if head == "ord" { TypeTerm::Ord(k) } else { TypeTerm::FinSets(k) })
            }
            "prod" => Ok(TypeTerm::Prod(args.iter().map(|a| self.type_term(a)).collect::<Result<_, _>>()?)),
            "wprod" => Ok(TypeTerm::WeakProd(args.iter().map(|a| self.weak_factor(a)).collect::<Result<_, _>>()?)),
            other => Err(self.err(s, format!("unknown type form `{other}` (expected ord, finsets, prod or wprod)"))),
        }
    }

    fn weak_factor(&self, s: &Sexp) -> Result<WeakFactor, ParseError> {
        match s {
            Sexp::Atom(..) => Ok(WeakFactor::new(self.card(s)?, Card::Fin(1))),
            Sexp::List(items, _) if items.len() == 2 => Ok(WeakFactor::new(self.card(&items[0])?, self.card(&items[1])?)),
            Sexp::List(..) => Err(self.err(s, "expected a weak factor `base` or `(base mult)`")),
        }
    }

    fn order(&self, s: &Sexp) -> Result<OrderTerm, ParseError> {
        if let Sexp::Atom(..) = s {
            return Ok(match self.card(s)? {
                Card::Fin(n) => OrderTerm::Fin(n),
                k => OrderTerm::Ord(k),
            });
        }
        let (head, args) = self.form(s, "order")?;
        match head {
            "fin" => {
                self.arity(s, head, args, 1)?;
                Ok(OrderTerm::Fin(self.natural(&args[0])?))
            }
            "ord" => {
                self.arity(s, head, args, 1)?;
                Ok(OrderTerm::Ord(self.card(&args[0])?))
            }
            "rev" => {
                self.arity(s, head, args, 1)?;
                Ok(OrderTerm::rev(self.order(&args[0])?))
            }
            "sum" => Ok(OrderTerm::Sum(args.iter().map(|a| self.order(a)).collect::<Result<_, _>>()?)),
            "lexsum" => {
                self.arity(s, head, args, 2)?;
                Ok(OrderTerm::lexsum(self.card(&args[0])?, self.order(&args[1])?))
            }
            other => Err(self.err(s, format!("unknown order form `{other}` (expected fin, ord, rev, sum or lexsum)"))),
        }
    }

    fn branches<T>(&self, args: &[Sexp], sub: &dyn Fn(&Sexp) -> Result<T, ParseError>) -> Result<Vec<(Card, T)>, ParseError> {
        args.iter()
            .map(|b| {
                let (head, bargs) = self.form(b, "branch")?;
                if head != "branch" {
                    return Err(self.err(b, format!("expected `branch`, found `{head}`")));
                }
                self.arity(b, head, bargs, 2)?;
                Ok((self.card(&bargs[0])?, sub(&bargs[1])?))
            })
            .collect()
    }

    fn is_leaf(s: &Sexp) -> bool {
        matches!(s, Sexp::Atom(a, _) if a == "leaf")
    }

    fn tree(&self, s: &Sexp) -> Result<TreeTerm, ParseError> {
        if Self::is_leaf(s) {
            return Ok(TreeTerm::leaf());
        }
        let (head, args) = self.form(s, "tree")?;
        if head != "tree" {
            return Err(self.err(s, format!("expected `tree`, found `{head}`")));
        }
        let trunk = args.first().ok_or_else(|| self.err(s, "`tree` needs a trunk"))?;
        Ok(TreeTerm::new(self.order(trunk)?, self.branches(&args[1..], &|x| self.tree(x))?))
    }

    fn ptree(&self, s: &Sexp) -> Result<PTreeTerm, ParseError> {
        if Self::is_leaf(s) {
            return Ok(PTreeTerm::leaf());
        }
        let (head, args) = self.form(s, "pseudo-tree")?;
        if head != "ptree" && head != "tree" {
            return Err(self.err(s, format!("expected `ptree`, found `{head}`")));
        }
        let trunk = args.first().ok_or_else(|| self.err(s, format!("`{head}` needs a trunk")))?;
        Ok(PTreeTerm::new(self.order(trunk)?, self.branches(&args[1..], &|x| self.ptree(x))?))
    }

    fn catalog(&self, s: &Sexp) -> Result<CatalogSpec, ParseError> {
        let (head, args) = self.form(s, "catalog family")?;
        match head {
            "free" | "fincofin" => {
                self.arity(s, head, args, 1)?;
                let k = self.card(&args[0])?;
                Ok(if head == "free" { CatalogSpec::Free(k) } else { CatalogSpec::FinCofin(k) })
            }
            "adfamily" => {
                if args.is_empty() || args.len() > 2 {
                    return Err(self.err(s, "`adfamily` takes a cardinal and an optional (mus ...) list"));
                }
                let k = self.card(&args[0])?;
                let mut mus = BTreeSet::new();
                if let Some(m) = args.get(1) {
                    let (mhead, margs) = self.form(m, "mus list")?;
                    if mhead != "mus" {
                        return Err(self.err(m, format!("expected `mus`, found `{mhead}`")));
                    }
                    for a in margs {
                        mus.insert(self.card(a)?);
                    }
                }
                Ok(CatalogSpec::ADFamily(k, mus))
            }
            other => Err(self.err(s, format!("unknown catalog family `{other}` (expected free, fincofin or adfamily)"))),
        }
    }

    fn pairs(&self, s: &Sexp) -> Result<Vec<(Card, Card)>, ParseError> {
        match s {
            Sexp::List(items, _) => items
                .iter()
                .map(|p| match p {
                    Sexp::List(xy, _) if xy.len() == 2 => Ok((self.card(&xy[0])?, self.card(&xy[1])?)),
                    _ => Err(self.err(p, "expected a pair `(cf ci)`")),
                })
                .collect(),
            Sexp::Atom(..) => Err(self.err(s, "expected a list of pairs")),
        }
    }
}

fn one<T>(src: &str, f: impl Fn(&Conv, &Sexp) -> Result<T, ParseError>) -> Result<T> {
    let s = read_one(src)?;
    Ok(f(&Conv { src }, &s)?)
}

pub fn parse_card(src: &str) -> Result<Card> {
    one(src, |c, s| c.card(s))
}

pub fn parse_type(src: &str) -> Result<TypeTerm> {
    one(src, |c, s| c.type_term(s))
}

/// Every type term in `src`, in order.
pub fn parse_types(src: &str) -> Result<Vec<TypeTerm>> {
    let conv = Conv { src };
    Ok(read_all(src)?.iter().map(|s| conv.type_term(s)).collect::<Result<_, _>>()?)
}

pub fn parse_order(src: &str) -> Result<OrderTerm> {
    one(src, |c, s| c.order(s))
}

pub fn parse_tree(src: &str) -> Result<TreeTerm> {
    one(src, |c, s| c.tree(s))
}

pub fn parse_ptree(src: &str) -> Result<PTreeTerm> {
    one(src, |c, s| c.ptree(s))
}

pub fn parse_catalog(src: &str) -> Result<CatalogSpec> {
    one(src, |c, s| c.catalog(s))
}

/// A list of `(cf ci)` pairs, as taken by the interval realizer.
pub fn parse_pairs(src: &str) -> Result<Vec<(Card, Card)>> {
    one(src, |c, s| c.pairs(s))
}

/// Weak-product factors: each item is `base` or `(base mult)`. The items may
/// be given bare or wrapped in one list.
pub fn parse_weak_factors(src: &str) -> Result<Vec<WeakFactor>> {
    let all = read_all(src)?;
    let conv = Conv { src };
    let items: &[Sexp] = match all.as_slice() {
        [Sexp::List(items, _)] if items.iter().all(|i| matches!(i, Sexp::Atom(..) | Sexp::List(..))) && !is_pair(items) => items,
        _ => &all,
    };
    Ok(items.iter().map(|s| conv.weak_factor(s)).collect::<Result<_, _>>()?)
}

/// `(a b)` with two atoms is read as one factor, not as a list of two.
fn is_pair(items: &[Sexp]) -> bool {
    items.len() == 2 && items.iter().all(|i| matches!(i, Sexp::Atom(..)))
}
