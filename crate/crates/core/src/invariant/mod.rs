//! Left-invariant forms on Lie-group models: a finite-dimensional complex on
//! which every operator is an exact matrix.

mod complex;
mod foliation;
mod model;
mod table;

pub use complex::{
    identity_residual, laplacian, Grade, GradedOperator, InvariantComplex, MatrixRoute, Shift,
};
pub use foliation::{inner, FoliationData, StructureCheck, TransversalSpaces};
pub use model::{catalog, catalog_model, catalog_names, LieModel, ModelFile};
pub use table::HarmonicTable;
