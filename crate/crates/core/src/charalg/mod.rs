//! The deformed Frenkel-Mukhin algorithm and the characters built from it.

mod algorithm;
mod characters;
mod classical;
mod probe;
mod rep;
mod star;

pub use algorithm::{ft_algorithm, AlgorithmOptions};
pub use characters::{Characters, Route};
pub use classical::{classical_algorithm, ClassicalSeries};
pub use probe::{stops_probe, ProbeOutcome, ProbeReport};
pub use rep::{rep_add_term, RepElement, RepMonomial};
pub use star::{associator, rep_term, star_product};

use crate::yalgebra::{AlgebraElement, ExponentVector};

/// How a degree-truncated computation ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// Nothing was cut off: the series is exact.
    Complete,
    /// Terms beyond the degree bound exist and were dropped.
    Truncated,
    /// Two directions forced different coefficients on the witness.
    Inconsistent { witness: ExponentVector },
}

impl Status {
    /// Combines the statuses of the factors of a product.
    pub fn and(&self, other: &Status) -> Status {
        match (self, other) {
            (Status::Inconsistent { .. }, _) => self.clone(),
            (_, Status::Inconsistent { .. }) => other.clone(),
            (Status::Truncated, _) | (_, Status::Truncated) => Status::Truncated,
            _ => Status::Complete,
        }
    }

    pub fn is_complete(&self) -> bool {
        *self == Status::Complete
    }
}

/// A series exact up to `max_degree` relative to its head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    pub element: AlgebraElement,
    pub max_degree: i64,
    pub status: Status,
    pub seed: ExponentVector,
    /// Dominant monomials other than the seed that received a nonzero forced
    /// contribution before being reset to zero.
    pub collisions: Vec<ExponentVector>,
}

impl CharacterSeries {
    pub fn is_complete(&self) -> bool {
        self.status.is_complete()
    }
}
