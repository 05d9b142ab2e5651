//! Knot diagrams on closed orientable surfaces and their group, Fox
//! calculus, coloring and Tait graph invariants.

pub mod coloring;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod fox;
pub mod group;
pub mod invariants;
pub mod reidemeister;
pub mod laurent;
pub mod matrix;
pub mod smith;
pub mod tait;

pub use diagram::{Corner, Dart, Shading, SurfaceDiagram};
pub use error::{Error, Result};
pub use group::{Presentation, Relation, Word};
pub use laurent::{LaurentPoly, Monomial};
pub use matrix::{IntMatrix, LaurentMatrix, Matrix};
