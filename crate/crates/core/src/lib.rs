//! Arroids, their tropical fans, and tropical homology over exact arithmetic.

pub mod arrangement;
pub mod arroid;
pub mod error;
pub mod exactlin;
pub mod examples;
pub mod fan;
pub mod tropohom;

pub use arroid::{Arroid, Element, MultTable, Point, UniquePoint, ValidationReport};
pub use error::{Error, Result};
pub use fan::{QuotientLattice, WeightedFan};
