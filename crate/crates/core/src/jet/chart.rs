//! Hermitian metrics on a coordinate chart, given by jets of `h_{ab̄}` with
//! `ω = (i/2) Σ h_{ab̄} dz^a ∧ dz̄^b`, and the operators they induce.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::form::{JetForm, JetMatrix, JetOp};
use super::poly::{monomial_degree, Jet, Monomial, Var, MAX_VARS};
use crate::error::{DiagCode, Error, Result};
use crate::exterior::{mask_indices, standard_complex_structure, Form, HermitianFrame};
use crate::identities::Op;
use crate::linalg::Matrix;
use crate::scalar::Gq;

pub const DEFAULT_ORDER: u32 = 3;

/// `∂(a) = Σ_a dz^a ∧ ∂a/∂z^a`.
pub fn partial(a: &JetForm) -> Result<JetForm> {
    directional(a, |v| matches!(v, Var::Z(_)))
}

/// `∂̄(a) = Σ_a dz̄^a ∧ ∂a/∂z̄^a`.
pub fn dbar(a: &JetForm) -> Result<JetForm> {
    directional(a, |v| matches!(v, Var::Zbar(_)))
}

pub fn exterior_d(a: &JetForm) -> Result<JetForm> {
    directional(a, |_| true)
}

fn directional(a: &JetForm, keep: impl Fn(Var) -> bool) -> Result<JetForm> {
    let frame = a.frame();
    let mut out = JetForm::zero(frame, a.order().saturating_sub(1));
    if a.order() == 0 {
        return Err(Error::JetOrderExhausted);
    }
    for v in Var::all(frame.n()).into_iter().filter(|v| keep(*v)) {
        let w = JetForm::constant(&differential(frame, v), u32::MAX);
        out = out.add(&w.wedge(&a.derivative(v)?));
    }
    Ok(out)
}

/// `dz^a` or `dz̄^a` as a constant form.
pub fn differential(frame: &HermitianFrame, v: Var) -> Form {
    match v {
        Var::Z(a) => frame.dz(a + 1),
        Var::Zbar(a) => frame.dzbar(a + 1),
    }
}

/// Matrix of `x ↦ β ∧ x`.
pub fn wedge_matrix(beta: &JetForm) -> JetMatrix {
    let frame = beta.frame();
    let alg = frame.algebra();
    let n = frame.n();
    let mut out = JetMatrix::zeros(alg.len(), n);
    for (i, b) in beta.coefficients().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let m = alg.wedge_left(&alg.unit_vector(alg.mask(i)));
        let part = JetMatrix::constant(&m, n).mul_jet(b);
        out = out.add(&part);
    }
    out
}

fn first_order_op(frame: &HermitianFrame, keep: impl Fn(Var) -> bool) -> JetOp {
    let alg = frame.algebra();
    let n = frame.n();
    let parts: BTreeMap<Var, JetMatrix> = Var::all(n)
        .into_iter()
        .filter(|v| keep(*v))
        .map(|v| {
            let w = differential(frame, v).to_vector();
            (v, JetMatrix::constant(&alg.wedge_left(&w), n))
        })
        .collect();
    JetOp::from_first_order(parts, alg.len(), n)
}

fn parity(frame: &HermitianFrame) -> Vec<Gq> {
    let alg = frame.algebra();
    (0..alg.len())
        .map(|i| Gq::from_int(if alg.degree(i) % 2 == 0 { 1 } else { -1 }))
        .collect()
}

#[derive(Clone, Debug)]
pub struct MetricChart {
    name: String,
    frame: HermitianFrame,
    order: u32,
    h: Vec<Vec<Jet>>,
    omega: JetForm,
}

impl MetricChart {
    /// Validates `h` (Hermitian, positive definite at the origin) and builds `ω`.
    pub fn from_hermitian(name: impl Into<String>, n: usize, order: u32, h: Vec<Vec<Jet>>) -> Result<Self> {
        let frame = HermitianFrame::new(n)?;
        if h.len() != n || h.iter().any(|row| row.len() != n) {
            return Err(Error::invalid(DiagCode::Dim, format!("h must be a {n}×{n} matrix of jets")));
        }
        if order == 0 {
            return Err(Error::invalid(DiagCode::Chart, "jet order must be at least 1"));
        }
        let h: Vec<Vec<Jet>> = h
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.with_order(order)).collect())
            .collect();
        for a in 0..n {
            for b in 0..n {
                if h[b][a] != h[a][b].conj() {
                    return Err(Error::invalid(
                        DiagCode::Chart,
                        format!("h is not Hermitian at entry ({}, {})", a + 1, b + 1),
                    ));
                }
            }
        }
        let h0 = Matrix::from_rows(
            &h.iter().map(|row| row.iter().map(Jet::value).collect()).collect::<Vec<_>>(),
        );
        for k in 1..=n {
            let minor = Matrix::from_rows(
                &(0..k).map(|i| h0.row(i)[..k].to_vec()).collect::<Vec<_>>(),
            );
            let det = minor.determinant();
            if !det.is_real() || !det.re.is_positive() {
                return Err(Error::invalid(
                    DiagCode::Chart,
                    "h is not positive definite at the base point",
                ));
            }
        }
        let half_i = Gq::new(Zero::zero(), crate::scalar::rat(1, 2));
        let mut omega = JetForm::zero(&frame, order);
        for a in 0..n {
            for b in 0..n {
                if h[a][b].is_zero() {
                    continue;
                }
                let basis = frame.dz(a + 1).wedge(&frame.dzbar(b + 1))?.scale(&half_i);
                omega = omega.add(&JetForm::monomial(&basis, &h[a][b]));
            }
        }
        Ok(Self {
            name: name.into(),
            frame,
            order,
            h,
            omega,
        })
    }

    /// `h = φ·I` for a real positive jet `φ`.
    pub fn conformal(name: impl Into<String>, n: usize, phi: &Jet) -> Result<Self> {
        let zero = Jet::zero(n, phi.order());
        let h = (0..n)
            .map(|a| (0..n).map(|b| if a == b { phi.clone() } else { zero.clone() }).collect())
            .collect();
        Self::from_hermitian(name, n, phi.order(), h)
    }

    pub fn flat(n: usize, order: u32) -> Result<Self> {
        Self::conformal("flat", n, &Jet::one(n, order))
    }

    /// `ω = e^{z¹+z̄¹} ω_flat`, whose Lee form is `dz¹ + dz̄¹`.
    pub fn conformally_flat(n: usize, order: u32) -> Result<Self> {
        let t = Jet::var(n, order, Var::Z(0)).add(&Jet::var(n, order, Var::Zbar(0)));
        Self::conformal("conformally-flat", n, &t.exp_nilpotent())
    }

    /// The Hopf metric `|w|⁻² Σ dw^a ∧ dw̄^a` on `ℂ² ∖ 0`, re-centred at `w = (1, 0)`.
    pub fn hopf(order: u32) -> Result<Self> {
        let n = 2;
        let v = |x| Jet::var(n, order, x);
        let norm = Jet::one(n, order)
            .add(&v(Var::Z(0)))
            .add(&v(Var::Zbar(0)))
            .add(&v(Var::Z(0)).mul(&v(Var::Zbar(0))))
            .add(&v(Var::Z(1)).mul(&v(Var::Zbar(1))));
        let phi = norm.inverse().expect("|w|² = 1 at the base point");
        Self::conformal("hopf", n, &phi)
    }

    /// A chart by built-in name (`flat`, `conformally-flat`, `hopf`).
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "flat" => Self::flat(2, DEFAULT_ORDER),
            "conformally-flat" | "conformal" => Self::conformally_flat(2, DEFAULT_ORDER),
            "hopf" => Self::hopf(DEFAULT_ORDER),
            _ => Err(Error::invalid(DiagCode::Chart, format!("unknown built-in chart {name:?}"))),
        }
    }

    pub const BUILTIN: [&'static str; 3] = ["flat", "conformally-flat", "hopf"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn frame(&self) -> &HermitianFrame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn hermitian_matrix(&self) -> &[Vec<Jet>] {
        &self.h
    }

    pub fn omega(&self) -> &JetForm {
        &self.omega
    }

    pub fn d_omega(&self) -> Result<JetForm> {
        exterior_d(&self.omega)
    }

    pub fn del_omega(&self) -> Result<JetForm> {
        partial(&self.omega)
    }

    pub fn dbar_omega(&self) -> Result<JetForm> {
        dbar(&self.omega)
    }

    /// Metric on vectors in the real frame, `g(X, Y) = ω(X, JY)`.
    pub fn metric(&self) -> JetMatrix {
        let m = 2 * self.n();
        let alg = self.frame.algebra();
        let mut big_omega = JetMatrix::zeros(m, self.n());
        for i in 0..m {
            for k in i + 1..m {
                let c = &self.omega.coefficients()[alg.index_of((1 << i) | (1 << k))];
                big_omega.insert(i, k, c.clone());
                big_omega.insert(k, i, c.neg());
            }
        }
        big_omega.mul(&JetMatrix::constant(&standard_complex_structure(self.n()), self.n()))
    }

    /// Inverse metric `g^{ij}` (the metric on covectors).
    pub fn inverse_metric(&self) -> JetMatrix {
        let g = self.metric();
        let g0 = g.value();
        let g0_inv = g0.inverse().expect("positive definite at the base point");
        let n = self.n();
        let g0_inv_j = JetMatrix::constant(&g0_inv, n);
        // g = g₀(1 + g₀⁻¹N) ⇒ g⁻¹ = Σ (−g₀⁻¹N)^k g₀⁻¹
        let nil = g0_inv_j.mul(&g.sub(&JetMatrix::constant(&g0, n))).scale(&-Gq::one());
        let mut acc = g0_inv_j.clone();
        let mut power = JetMatrix::identity(g0.rows(), n);
        for _ in 0..self.order {
            power = power.mul(&nil);
            acc = acc.add(&power.mul(&g0_inv_j));
        }
        acc
    }

    /// Volume density relative to the flat frame: `ωⁿ/n! = ρ e^1∧…∧e^{2n}`.
    pub fn volume_density(&self) -> Jet {
        let mut power = JetForm::constant(&Form::one(&self.frame), self.order);
        let mut fact = 1i64;
        for k in 1..=self.n() {
            power = power.wedge(&self.omega);
            fact *= k as i64;
        }
        let alg = self.frame.algebra();
        power.coefficients()[alg.index_of(alg.top_mask())].scale(&Gq::from_ratio(1, fact))
    }

    /// Hodge star of the chart metric, `α ∧ ∗β = g(α, β) ωⁿ/n!` (complex-linear).
    pub fn hodge_star(&self) -> JetMatrix {
        let alg = self.frame.algebra();
        let n = self.n();
        let ginv = self.inverse_metric();
        // columns of g⁻¹ as 1-forms
        let columns: Vec<JetForm> = (0..2 * n)
            .map(|b| {
                let coeffs: Vec<Jet> = (0..alg.len())
                    .map(|i| {
                        let mask = alg.mask(i);
                        if mask.count_ones() == 1 {
                            ginv.get(mask.trailing_zeros() as usize, b)
                                .cloned()
                                .unwrap_or_else(|| Jet::zero(n, self.order))
                        } else {
                            Jet::zero(n, self.order)
                        }
                    })
                    .collect();
                JetForm::from_coefficients(&self.frame, coeffs)
            })
            .collect();
        let mut gram = JetMatrix::zeros(alg.len(), n);
        for col in 0..alg.len() {
            let mut image = JetForm::constant(&Form::one(&self.frame), self.order);
            for b in mask_indices(alg.mask(col)) {
                image = image.wedge(&columns[b]);
            }
            for (row, x) in image.coefficients().iter().enumerate() {
                gram.insert(row, col, x.clone());
            }
        }
        let rho = self.volume_density();
        JetMatrix::constant(&alg.star(), n).mul(&gram.mul_jet(&rho))
    }

    /// Lee form: the unique `θ` with `dω = θ ∧ ω`, required to be closed.
    pub fn lee_form(&self) -> Result<JetForm> {
        let n = self.n();
        if n < 2 {
            return Err(Error::UnsupportedDimension(n));
        }
        let ops = self.operators()?;
        let d_omega = self.d_omega()?;
        let lambda = ops.zeroth(Op::Lambda);
        let theta = lambda.apply(&d_omega).scale(&Gq::from_ratio(1, n as i64 - 1));
        if !theta.wedge(&self.omega).sub(&d_omega).is_zero() {
            return Err(Error::NotLck("dω is not divisible by ω".into()));
        }
        if !exterior_d(&theta)?.is_zero() {
            return Err(Error::NotLck("the candidate Lee form is not closed".into()));
        }
        Ok(theta)
    }

    pub fn operators(&self) -> Result<ChartOperators> {
        ChartOperators::build(self)
    }

    pub fn to_file(&self) -> ChartFile {
        let n = self.n();
        let h = self
            .h
            .iter()
            .map(|row| {
                row.iter()
                    .map(|jet| {
                        jet.terms()
                            .map(|(m, c)| (c.to_string(), m[..n].to_vec(), m[n..2 * n].to_vec()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ChartFile {
            name: self.name.clone(),
            n,
            order: self.order,
            h,
        }
    }

    pub fn from_file(file: ChartFile) -> Result<Self> {
        let n = file.n;
        if !(2..=MAX_VARS / 2).contains(&n) {
            return Err(Error::invalid(DiagCode::Dim, format!("n = {n} outside 2..=4")));
        }
        let mut h = Vec::new();
        for row in &file.h {
            let mut out_row = Vec::new();
            for entry in row {
                let mut jet = Jet::zero(n, file.order);
                for (c, z, zbar) in entry {
                    if z.len() != n || zbar.len() != n {
                        return Err(Error::invalid(
                            DiagCode::Dim,
                            "monomial exponent lists must have length n",
                        ));
                    }
                    let c: Gq = c.parse()?;
                    let mut m: Monomial = [0; MAX_VARS];
                    m[..n].copy_from_slice(z);
                    m[n..2 * n].copy_from_slice(zbar);
                    if monomial_degree(&m) > file.order {
                        continue;
                    }
                    jet = jet.add(&Jet::monomial(n, file.order, m, c));
                }
                out_row.push(jet);
            }
            h.push(out_row);
        }
        Self::from_hermitian(file.name, n, file.order, h)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let file: ChartFile = serde_json::from_str(&text)
            .map_err(|e| Error::invalid(DiagCode::Parse, e.to_string()))?;
        Self::from_file(file)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.to_file()).expect("serializable");
        std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

/// On-disk chart: `h[a][b]` is a list of `[coefficient, z-exponents, z̄-exponents]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartFile {
    pub name: String,
    pub n: usize,
    pub order: u32,
    pub h: Vec<Vec<Vec<(String, Vec<u8>, Vec<u8>)>>>,
}

/// Every catalog operator of a chart as a [`JetOp`].
#[derive(Clone, Debug)]
pub struct ChartOperators {
    frame: HermitianFrame,
    ops: BTreeMap<Op, JetOp>,
    d: JetOp,
    d_star: JetOp,
    star: JetMatrix,
}

impl ChartOperators {
    fn build(chart: &MetricChart) -> Result<Self> {
        let frame = chart.frame.clone();
        let n = frame.n();
        let star = chart.hodge_star();
        let star_inv = star.scale_columns(&parity(&frame));
        let l = wedge_matrix(&chart.omega);
        let lambda = star_inv.mul(&l).mul(&star);
        let del = first_order_op(&frame, |v| matches!(v, Var::Z(_)));
        let dbar_op = first_order_op(&frame, |v| matches!(v, Var::Zbar(_)));
        let d = del.add(&dbar_op);
        let del_omega = del.apply(&chart.omega)?;
        let dbar_omega = dbar_op.apply(&chart.omega)?;
        let lam = wedge_matrix(&del_omega);
        let lam_bar = wedge_matrix(&dbar_omega);
        let adjoint_wedge = |beta: &JetForm, b: usize| {
            let alg = frame.algebra();
            let signs: Vec<Gq> = (0..alg.len())
                .map(|i| {
                    let j = alg.degree(i);
                    let e = if j >= b { b * (j - b) } else { 0 };
                    Gq::from_int(if e % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            star_inv.mul(&wedge_matrix(&beta.conj())).mul(&star).scale_columns(&signs)
        };
        let lam_star = adjoint_wedge(&del_omega, 3);
        let lam_bar_star = adjoint_wedge(&dbar_omega, 3);
        let comm = |a: &JetMatrix, b: &JetMatrix| a.mul(b).sub(&b.mul(a));
        let tau = comm(&lambda, &lam);
        let tau_bar = comm(&lambda, &lam_bar);
        let tau_star = comm(&lam_star, &l);
        let tau_bar_star = comm(&lam_bar_star, &l);
        let s = JetOp::zeroth_order(star.clone());
        let minus = -Gq::one();
        let del_star = s.compose(&dbar_op.compose(&s)?)?.scale(&minus);
        let dbar_star = s.compose(&del.compose(&s)?)?.scale(&minus);
        let d_star = s.compose(&d.compose(&s)?)?.scale(&minus);
        let z = JetOp::zeroth_order;
        let ops = BTreeMap::from([
            (Op::L, z(l)),
            (Op::Lambda, z(lambda)),
            (Op::Del, del),
            (Op::Dbar, dbar_op),
            (Op::DelStar, del_star),
            (Op::DbarStar, dbar_star),
            (Op::Tau, z(tau)),
            (Op::TauBar, z(tau_bar)),
            (Op::TauStar, z(tau_star)),
            (Op::TauBarStar, z(tau_bar_star)),
            (Op::Lam, z(lam)),
            (Op::LamBar, z(lam_bar)),
            (Op::LamStar, z(lam_star)),
            (Op::LamBarStar, z(lam_bar_star)),
        ]);
        let _ = n;
        Ok(Self {
            frame,
            ops,
            d,
            d_star,
            star,
        })
    }

    pub fn frame(&self) -> &HermitianFrame {
        &self.frame
    }

    pub fn get(&self, op: Op) -> &JetOp {
        &self.ops[&op]
    }

    /// Matrix part of a zeroth-order catalog operator.
    pub fn zeroth(&self, op: Op) -> &JetMatrix {
        self.ops[&op].zeroth()
    }

    pub fn exterior_d(&self) -> &JetOp {
        &self.d
    }

    pub fn d_star(&self) -> &JetOp {
        &self.d_star
    }

    pub fn hodge_star(&self) -> &JetMatrix {
        &self.star
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Bidegree;
    use crate::scalar::rat;

    #[test]
    fn dbar_of_zbar_is_dzbar() {
        let f = HermitianFrame::new(2).unwrap();
        let zb = JetForm::monomial(&Form::one(&f), &Jet::var(2, 3, Var::Zbar(0)));
        let out = dbar(&zb).unwrap();
        assert_eq!(out.evaluate(), f.dzbar(1));
        assert!(partial(&zb).unwrap().is_zero());
    }

    #[test]
    fn d_squared_vanishes() {
        let f = HermitianFrame::new(2).unwrap();
        let coeff = Jet::var(2, 3, Var::Z(0)).mul(&Jet::var(2, 3, Var::Zbar(1)));
        let a = JetForm::monomial(&f.dz(1), &coeff);
        assert!(exterior_d(&exterior_d(&a).unwrap()).unwrap().is_zero());
        let da = exterior_d(&a).unwrap();
        assert_eq!(da, partial(&a).unwrap().add(&dbar(&a).unwrap()));
    }

    #[test]
    fn flat_chart_is_standard() {
        let c = MetricChart::flat(2, 3).unwrap();
        assert_eq!(c.omega().evaluate(), c.frame().omega());
        assert!(c.del_omega().unwrap().is_zero());
        assert_eq!(c.volume_density(), Jet::one(2, 3));
        assert_eq!(c.hodge_star().value(), c.frame().algebra().star());
        assert!(c.lee_form().unwrap().is_zero());
    }

    #[test]
    fn conformal_lee_form() {
        let c = MetricChart::conformally_flat(2, 3).unwrap();
        let theta = c.lee_form().unwrap();
        // dz¹ + dz̄¹ = 2e¹
        let expected = JetForm::constant(&c.frame().e(1).scale(&Gq::from_int(2)), 2);
        assert_eq!(theta.sub(&expected), JetForm::zero(c.frame(), 2));
        let _ = rat(1, 1);
    }

    #[test]
    fn hopf_lee_form_is_closed() {
        let c = MetricChart::hopf(3).unwrap();
        let theta = c.lee_form().unwrap();
        // θ = −d log|w|², so θ(0) = −(dz¹ + dz̄¹) = −2e¹
        assert_eq!(theta.evaluate(), c.frame().e(1).scale(&Gq::from_int(-2)));
    }

    #[test]
    fn non_lck_chart_fails() {
        let n = 2;
        // h₁₁ = 1 + z¹z̄² + z²z̄¹: θ would be (∂_{z²}h₁₁ dz² + c.c.)/h₁₁, not closed
        let v = |x| Jet::var(n, 3, x);
        let bump = Jet::one(n, 3)
            .add(&v(Var::Z(0)).mul(&v(Var::Zbar(1))))
            .add(&v(Var::Z(1)).mul(&v(Var::Zbar(0))));
        let zero = Jet::zero(n, 3);
        let h = vec![vec![bump, zero.clone()], vec![zero, Jet::one(n, 3)]];
        let c = MetricChart::from_hermitian("bump", n, 3, h).unwrap();
        assert!(matches!(c.lee_form(), Err(Error::NotLck(_))));
    }

    #[test]
    fn rejects_non_hermitian() {
        let n = 2;
        let h = vec![
            vec![Jet::one(n, 3), Jet::var(n, 3, Var::Z(0))],
            vec![Jet::var(n, 3, Var::Z(0)), Jet::one(n, 3)],
        ];
        let err = MetricChart::from_hermitian("bad", n, 3, h).unwrap_err();
        assert_eq!(err.code(), Some(DiagCode::Chart));
    }

    #[test]
    fn torsion_types() {
        let c = MetricChart::hopf(3).unwrap();
        let del_omega = c.del_omega().unwrap();
        assert_eq!(del_omega.bidegree_project(Bidegree::new(2, 1)), del_omega);
    }
}
