//! Exact computations with Bott–Samelson bimodules over a Coxeter system:
//! the word problem, the Hecke algebra, the polynomial ring with its
//! reflection action, bimodule morphisms in the normal basis and the light
//! leaves basis of their Hom spaces.
#![no_std]

extern crate alloc;

pub mod bsmod;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod lightleaves;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod verify;

pub use coxeter::{BraidMove, CoxeterMatrix, CoxeterSystem, Generator, Order, Word};
pub use error::{Error, Result};
pub use hecke::{HeckeElement, LaurentPoly};
pub use poly::{CartanRealization, Monomial, Polynomial};
pub use scalar::Scalar;
