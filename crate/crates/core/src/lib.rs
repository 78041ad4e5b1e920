//! Deformed `(q,t)`-characters of quantum affinizations, generic and at roots of unity.
//!
//! The crate is organized bottom-up: [`laurent`] polynomials, [`cartan`] data and its
//! quantization, the quantum torus in [`yalgebra`], deformed [`screening`] operators,
//! the character algorithm in [`charalg`] and the Kazhdan-Lusztig decomposition in [`kl`].

pub mod cartan;
pub mod catalog;
pub mod charalg;
pub mod error;
pub mod io;
pub mod kl;
pub mod laurent;
pub mod screening;
pub mod yalgebra;

pub use error::{Error, Result};
