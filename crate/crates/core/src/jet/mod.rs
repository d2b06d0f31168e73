//! Pointwise first-order calculus on a coordinate chart via truncated jets.

mod chart;
mod form;
mod poly;
mod verify;

pub use chart::{
    dbar, differential, exterior_d, partial, wedge_matrix, ChartFile, ChartOperators, MetricChart,
    DEFAULT_ORDER,
};
pub use form::{max_component, JetForm, JetMatrix, JetOp};
pub use poly::{monomial_degree, monomials, Jet, Monomial, Var, MAX_VARS};
pub use verify::{
    random_jet_form, spanning_set, verify_identity, FormRoute, OperatorRoute, Residual, DEFAULT_SEED,
    DEFAULT_TRIALS,
};
