//! Finitely presented Z2-graded algebras over `Q(q)` and their normal forms.
//!
//! A presentation lists generators in normal order together with one
//! exchange rule per out-of-order pair. Elements are sums of normal-ordered
//! monomials; the rewriting engine in [`normal`] reduces products to that
//! form, and [`brute_force_nf`] is an independent random-order reducer used
//! to test confluence.

mod brute;
mod builtins;
mod descriptor;
mod element;
mod monomial;
mod normal;
mod presentation;

use thiserror::Error;

pub use brute::{brute_force_nf, random_word};
pub use builtins::{
    builtin, dual_algebra, dual_superplane, dual_with_inverses, gl_algebra, q_bracket, superplane,
    BUILTIN_NAMES,
};
pub use descriptor::{load_presentation, Descriptor};
pub use element::{normal_form, Algebra, Element, RenderStyle};
pub use monomial::Monomial;
pub use presentation::{
    AlgebraPresentation, ExchangeRule, GeneratorSpec, Letter, Parity, PresentationBuilder, Word,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("negative power of non-invertible generator `{0}`")]
    NegativeExponent(String),
    #[error("no exchange rule for {left}*{right}")]
    MissingRule { left: String, right: String },
    #[error("elements belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },
    #[error("generator name `{0}` occurs in both tensor factors")]
    NameCollision(String),
    #[error("not a quasi-unit: {0}")]
    NotQuasiUnit(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("descriptor: {0}")]
    Descriptor(String),
    #[error("rewriting did not terminate within {0} steps")]
    NoTermination(usize),
}
