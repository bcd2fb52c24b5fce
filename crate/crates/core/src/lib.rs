//! Symbolic calculator for the Tukey spectra of ultrafilters on interval,
//! tree and pseudo-tree algebras, with exhaustive finite oracles.

pub mod cardinals;
pub mod catalog;
pub mod error;
pub mod finite;
pub mod orders;
pub mod pseudotrees;
pub mod syntax;
pub mod trees;
pub mod tukey;

pub use cardinals::Card;
pub use error::{Error, ParseError, Result};
