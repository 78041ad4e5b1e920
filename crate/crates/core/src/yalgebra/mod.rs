//! The quantum torus of `Y` and `A^{-1}` generators, generic or at a root of unity.

mod commutative;
mod context;
mod element;
mod exponent;
pub mod tau;
pub mod word;

pub use commutative::CommMonomial;
pub use context::{AlgebraContext, Mode, UVector};
pub use element::{bar, multiply, AlgebraElement};
pub use exponent::ExponentVector;
