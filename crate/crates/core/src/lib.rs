//! Mirabolic q-Schur algebras and their bimodule `MV_{n|m}`: exact
//! Laurent-polynomial arithmetic, decorated matrices, the generator actions,
//! a finite-field convolution oracle, and structural checks.

pub mod action;
pub mod cli;
pub mod decorated;
pub mod error;
pub mod field;
pub mod laurent;
pub mod verify;

pub use action::{generator_element, Context, Engine, GeneratorToken, ModuleElement, Side, TokenKind};
pub use decorated::{dimension_count, enumerate_decorated, Convention, DecoratedMatrix, PairRule};
pub use error::{Error, Result};
pub use laurent::{gauss_bracket, specialize_v2, LaurentPolynomial, SpecializedValue};
