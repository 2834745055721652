//! Exact scalars, presented algebras, graded tensors, rule maps and window solving.

pub mod elem;
pub mod frac;
pub mod linsolve;
pub mod map;
pub mod presentation;
pub mod scalar;
pub mod tensor;
pub mod window;

pub use elem::{AlgElem, Elem, FormElem};
pub use frac::QFrac;
pub use linsolve::{solve, solve_linear, Echelon, Solution};
pub use map::{BasisRuleMap, ExtensionMode};
pub use presentation::{Block, GeneratorSpec, Monomial, Presentation, PresentationBuilder, Rule, Terms, Word};
pub use scalar::Scalar;
pub use tensor::{TensorElem, TensorKey};
pub use window::MonomialWindow;

/// Normal form of a word of generator powers.
pub fn normalize(word: &[Block], pres: &std::sync::Arc<Presentation>) -> crate::Result<Elem> {
    Elem::word(pres, word)
}
