//! Bott–Samelson bimodules `θ_{t_1}⋯θ_{t_k} = R ⊗_{R^{t_1}} R ⊗ ⋯ ⊗_{R^{t_k}} R`
//! as free left `R`-modules on the normal basis
//! `1 ⊗ x_{t_1}^{i_1} ⊗ ⋯ ⊗ x_{t_k}^{i_k}`, and bimodule morphisms between
//! them stored as images of that basis.
//!
//! A basis vector is encoded as a bit mask whose bit `p` is the exponent
//! `i_{p+1}` of the tensor factor at position `p` of the word.

mod context;
mod element;
mod morphism;
mod solve;

pub use context::{BraidComposite, Context};
pub use element::{mask_string, parse_mask, BSElement, Coeffs, Mask};
pub use morphism::{BSMorphism, ValidationReport};
