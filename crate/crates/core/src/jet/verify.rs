//! Evaluating catalog identities on a metric chart.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chart::{ChartOperators, MetricChart};
use super::form::{max_component, JetForm, JetOp};
use super::poly::{monomials, Jet};
use crate::error::Result;
use crate::exterior::HermitianFrame;
use crate::identities::{Identity, Op, OperatorRealization};
use crate::scalar::{Gq, Rational};

pub const DEFAULT_SEED: u64 = 0x1C4_2024;
pub const DEFAULT_TRIALS: usize = 32;

/// Operators acting by composition, so the residual of an identity applied to
/// the identity operator is the residual operator itself.
pub struct OperatorRoute<'a>(pub &'a ChartOperators);

impl OperatorRealization for OperatorRoute<'_> {
    type Vector = JetOp;

    fn apply(&self, op: Op, v: &JetOp) -> Result<JetOp> {
        self.0.get(op).compose(v)
    }

    fn combine(&self, terms: &[(Gq, JetOp)]) -> JetOp {
        let mut it = terms.iter();
        let (c, first) = it.next().expect("non-empty combination");
        it.fold(first.scale(c), |acc, (c, x)| acc.add(&x.scale(c)))
    }
}

/// Operators acting on jet forms one application at a time.
pub struct FormRoute<'a>(pub &'a ChartOperators);

impl OperatorRealization for FormRoute<'_> {
    type Vector = JetForm;

    fn apply(&self, op: Op, v: &JetForm) -> Result<JetForm> {
        self.0.get(op).apply(v)
    }

    fn combine(&self, terms: &[(Gq, JetForm)]) -> JetForm {
        let mut it = terms.iter();
        let (c, first) = it.next().expect("non-empty combination");
        it.fold(first.scale(c), |acc, (c, x)| acc.add(&x.scale(c)))
    }
}

/// Monomial forms `z^α z̄^β e^I` with `|α| + |β| ≤ order − 1`, every basis `e^I`.
pub fn spanning_set(frame: &HermitianFrame, order: u32) -> Vec<JetForm> {
    let alg = frame.algebra();
    let mut out = Vec::new();
    for m in monomials(frame.n(), order.saturating_sub(1)) {
        for i in 0..alg.len() {
            out.push(JetForm::basis_monomial(frame, order, m, alg.mask(i)));
        }
    }
    out
}

/// Random form with small Gaussian-integer jet coefficients on every basis element.
pub fn random_jet_form(frame: &HermitianFrame, order: u32, rng: &mut ChaCha8Rng) -> JetForm {
    let coeffs = (0..frame.algebra().len())
        .map(|_| Jet::random(frame.n(), order, rng))
        .collect();
    JetForm::from_coefficients(frame, coeffs)
}

#[derive(Clone, Debug)]
pub struct Residual {
    pub identity: &'static Identity,
    pub chart: String,
    pub spanning_forms: usize,
    pub trials: usize,
    /// Largest coefficient of `(lhs − rhs)(v)` at the base point over all test forms.
    pub base_point: Rational,
    /// Largest jet coefficient of the residual operator `lhs − rhs` itself.
    pub operator: Rational,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.base_point.is_zero() && self.operator.is_zero()
    }
}

/// Checks one identity on the chart over the monomial spanning set and
/// `trials` seeded random jet forms.
pub fn verify_identity(
    chart: &MetricChart,
    ops: &ChartOperators,
    identity: &'static Identity,
    trials: usize,
    seed: u64,
) -> Result<Residual> {
    let frame = chart.frame();
    let dim = frame.algebra().len();
    let residual_op = identity.residual(&OperatorRoute(ops), &JetOp::identity(dim, frame.n()))?;
    let mut base_point = Rational::zero();
    let mut record = |v: &JetForm| -> Result<()> {
        let value = residual_op.apply_at_base(v)?;
        for (_, c) in value.terms() {
            base_point = base_point.clone().max(max_component(c));
        }
        Ok(())
    };
    let spanning = spanning_set(frame, chart.order());
    for v in &spanning {
        record(v)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        record(&random_jet_form(frame, chart.order(), &mut rng))?;
    }
    Ok(Residual {
        identity,
        chart: chart.name().to_string(),
        spanning_forms: spanning.len(),
        trials,
        base_point,
        operator: residual_op.max_coefficient(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{lookup, CATALOG};

    fn flipped(id: &Identity) -> &'static Identity {
        Box::leak(Box::new(Identity {
            coefficient: (-id.coefficient.0, -id.coefficient.1),
            ..*id
        }))
    }

    #[test]
    fn hopf_catalog_vanishes_and_flips_are_caught() {
        let chart = MetricChart::hopf(3).unwrap();
        let ops = chart.operators().unwrap();
        for id in CATALOG.iter() {
            let r = verify_identity(&chart, &ops, id, 4, DEFAULT_SEED).unwrap();
            assert!(r.is_zero(), "{id}");
            if !id.rhs.is_empty() {
                let bad = verify_identity(&chart, &ops, flipped(id), 0, DEFAULT_SEED).unwrap();
                assert!(!bad.is_zero(), "{id}");
            }
        }
    }

    #[test]
    fn form_route_agrees_with_operator_route() {
        let chart = MetricChart::conformally_flat(2, 3).unwrap();
        let ops = chart.operators().unwrap();
        let frame = chart.frame();
        let dim = frame.algebra().len();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for id in ["E1.1", "E1.4", "E2.1", "E3.5"] {
            let id = lookup(id).unwrap();
            let r = id.residual(&OperatorRoute(&ops), &JetOp::identity(dim, 2)).unwrap();
            let v = random_jet_form(frame, 2, &mut rng);
            let direct = id.residual(&FormRoute(&ops), &v).unwrap();
            assert_eq!(direct.evaluate(), r.apply(&v).unwrap().evaluate());
            assert!(direct.evaluate().is_zero());
        }
    }

    #[test]
    fn spanning_set_size() {
        let f = HermitianFrame::new(2).unwrap();
        assert_eq!(spanning_set(&f, 3).len(), 15 * 16);
    }
}
