//! Initial syntax for simply-typed binding signatures.
//!
//! A signature file declares object types and constructor arities; from it
//! this crate builds the intrinsically typed de Bruijn syntax with
//! capture-avoiding substitution, views it as a monad with modules over it,
//! folds terms into any other representation of the signature, and checks
//! every algebraic law involved exhaustively over finite budgets.

pub mod algebra;
pub mod catalog;
pub mod representation;
pub mod signature;
pub mod suite;
pub mod syntax;
pub mod types;
