//! A small kernel for a dependent type theory with explicit substitutions.
//!
//! The theory has Π, Σ, a unit type, booleans, identity types and a
//! non-cumulative hierarchy of universes `U i` with codes `c A` and
//! decoding `El a`. Syntax is nameless: `q` is the last variable and `p`
//! the weakening substitution.
//!
//! - [`syntax`]: the four sorts and their constructors.
//! - [`check`]: bidirectional typechecking of contexts, types, substitutions
//!   and terms.
//! - [`nbe`], [`conv`]: normalization by evaluation and conversion.
//! - [`termify`]: contexts, types and substitutions as closed terms.
//! - [`inject`]: the termification is injective, checked on instances.
//! - [`param`]: the unary parametricity translation.
//! - [`canon`]: canonicity for closed booleans.
//! - [`gen`], [`equations`], [`suite`]: generated instances and the property
//!   suites run by `ttk selftest`.
//! - [`surface`], [`cli`]: the s-expression syntax and the `ttk` commands.

pub mod canon;
pub mod check;
pub mod cli;
pub mod conv;
pub mod equations;
pub mod gen;
pub mod inject;
pub mod nbe;
pub mod param;
pub mod suite;
pub mod surface;
pub mod syntax;
pub mod termify;
