//! Pointwise exterior algebra of a Hermitian vector space: wedge, Hodge star,
//! the Lefschetz triple `{L, Λ, H}` and the `(p, q)` bigrading.

pub mod algebra;
mod form;
mod lefschetz;

pub use algebra::{binomial, degree_of, mask_indices, wedge_sign, FormAlgebra, Mask};
pub use form::{
    bidegree_projectors, fundamental_form, standard_complex_structure, Bidegree, Form,
    FrameData, HermitianFrame, MAX_COMPLEX_DIM,
};
pub use lefschetz::{primitive_decompose, primitive_subspace, primitive_test, LefschetzComponent};
