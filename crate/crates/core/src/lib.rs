//! Exact symbolic evaluation of boundary noncommutative residues for
//! Dirac-type operators on the Hodge complex of a 4-manifold with boundary.

pub mod cases;
pub mod clifford;
pub mod expected;
pub mod error;
pub mod invariants;
pub mod jet;
pub mod numeric;
pub mod poly;
pub mod report;
pub mod residue;
pub mod scalar;
pub mod symbols;
pub mod xi;

pub use error::{Error, Result};
