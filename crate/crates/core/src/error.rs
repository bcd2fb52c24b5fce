use std::fmt;

use crate::cardinals::Card;

/// A syntax error in term text, with a byte offset into the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { offset, line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("empty sum")]
    EmptySum,
    #[error("zero multiplicity in cardinal sum")]
    ZeroMultiplicity,
    #[error("finite cardinal arithmetic overflowed")]
    Overflow,
    #[error("empty factor")]
    EmptyFactor,
    #[error("expected an infinite cardinal, found {0}")]
    NotInfinite(Card),
    #[error("expected 1 or an infinite cardinal, found {0}")]
    NotUnitOrInfinite(Card),
    #[error("weak product factors must be 2 or infinite, found {0}")]
    BadWeakFactor(Card),
    #[error("linear order terms must be non-empty")]
    EmptyOrder,
    #[error("not a tree: reversed order inside a tree trunk")]
    NotATree,
    #[error("branch multiplicity must be at least 1")]
    EmptyBranch,
    #[error("stale chain-class handle: {0}")]
    StaleHandle(String),
    #[error("empty pair set")]
    EmptyPairSet,
    #[error("empty cardinal list")]
    EmptyCardList,
    #[error("realized cardinal {mu} exceeds family size {kappa}")]
    MuAboveKappa { mu: Card, kappa: Card },
    #[error("term is not finite: {0}")]
    NotFinite(String),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("not a pseudo-tree: {0}")]
    NotPseudoTree(String),
    #[error("poset has {0} elements, above the supported bound {1}")]
    TooLarge(usize, usize),
    #[error("{0} is not an approximate-successor set of the chain")]
    NotApproximateSuccessors(String),
    #[error("{0} is not an initial chain")]
    NotInitialChain(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
