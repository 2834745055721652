//! Differential graded algebras: axiom checks, Cartan–Maurer forms, the
//! graded Hopf structure on `Ω•(H)` and bounded-degree prolongation.

mod axioms;
mod cartan;
mod graded;
mod prolong;

pub use axioms::{d_word, dga_axiom_check, generation_check};
pub use cartan::{cartan_maurer, cartan_maurer_equation_check, invariant_coordinates};
pub use graded::{four_term_display, graded_hopf_check, sweedler_differential_product};
pub use prolong::{prolong_relations, Prolongation};

#[cfg(test)]
mod tests;
