//! Forms with jet coefficients and first-order operators acting on them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::{Jet, Monomial, Var};
use crate::error::{Error, Result};
use crate::exterior::{wedge_sign, Bidegree, Form, HermitianFrame};
use crate::linalg::Matrix;
use crate::scalar::{Gq, Rational};

/// A form `Σ_I f_I e^I` whose coefficients are jets at the chart origin.
#[derive(Clone, PartialEq, Eq)]
pub struct JetForm {
    frame: HermitianFrame,
    coeffs: Vec<Jet>,
}

impl JetForm {
    pub fn zero(frame: &HermitianFrame, order: u32) -> Self {
        let n = frame.n();
        Self {
            frame: frame.clone(),
            coeffs: vec![Jet::zero(n, order); frame.algebra().len()],
        }
    }

    /// The constant-coefficient form `a`.
    pub fn constant(a: &Form, order: u32) -> Self {
        Self::monomial(a, &Jet::one(a.frame().n(), order))
    }

    /// `f · a` for a constant form `a`.
    pub fn monomial(a: &Form, f: &Jet) -> Self {
        let frame = a.frame();
        let mut out = Self::zero(frame, f.order());
        for (mask, c) in a.terms() {
            out.coeffs[frame.algebra().index_of(mask)] = f.scale(c);
        }
        out
    }

    pub fn from_coefficients(frame: &HermitianFrame, coeffs: Vec<Jet>) -> Self {
        assert_eq!(coeffs.len(), frame.algebra().len());
        Self {
            frame: frame.clone(),
            coeffs,
        }
    }

    pub fn frame(&self) -> &HermitianFrame {
        &self.frame
    }

    pub fn coefficients(&self) -> &[Jet] {
        &self.coeffs
    }

    pub fn order(&self) -> u32 {
        self.coeffs.iter().map(Jet::order).min().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Jet::is_zero)
    }

    /// Value at the base point.
    pub fn evaluate(&self) -> Form {
        let v: Vec<Gq> = self.coeffs.iter().map(Jet::value).collect();
        Form::from_vector(&self.frame, &v)
    }

    pub fn add(&self, rhs: &JetForm) -> JetForm {
        self.zip(rhs, Jet::add)
    }

    pub fn sub(&self, rhs: &JetForm) -> JetForm {
        self.zip(rhs, Jet::sub)
    }

    fn zip(&self, rhs: &JetForm, f: impl Fn(&Jet, &Jet) -> Jet) -> JetForm {
        JetForm {
            frame: self.frame.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Gq) -> JetForm {
        self.map(|j| j.scale(c))
    }

    pub fn mul_jet(&self, f: &Jet) -> JetForm {
        self.map(|j| j.mul(f))
    }

    pub fn truncate(&self, order: u32) -> JetForm {
        self.map(|j| j.truncate(order))
    }

    fn map(&self, f: impl Fn(&Jet) -> Jet) -> JetForm {
        JetForm {
            frame: self.frame.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> JetForm {
        self.map(Jet::conj)
    }

    pub fn wedge(&self, rhs: &JetForm) -> JetForm {
        let alg = self.frame.algebra();
        let order = self.order().min(rhs.order());
        let mut out = JetForm::zero(&self.frame, order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (ma, mb) = (alg.mask(i), alg.mask(j));
                if let Some(s) = wedge_sign(ma, mb) {
                    let idx = alg.index_of(ma | mb);
                    let term = a.mul(b).scale(&Gq::from_int(s));
                    out.coeffs[idx] = out.coeffs[idx].add(&term);
                }
            }
        }
        out
    }

    pub fn degree_part(&self, k: usize) -> JetForm {
        let alg = self.frame.algebra();
        let range = alg.degree_range(k);
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if !range.contains(&i) {
                *c = Jet::zero(c.n(), c.order());
            }
        }
        out
    }

    pub fn bidegree_project(&self, bd: Bidegree) -> JetForm {
        JetMatrix::constant(self.frame.data().projector(bd), self.frame.n()).apply(self)
    }

    /// Largest `max(|re|, |im|)` over every known jet coefficient.
    pub fn max_coefficient(&self) -> Rational {
        self.coeffs
            .iter()
            .flat_map(|j| j.terms().map(|(_, c)| max_component(c)))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

pub fn max_component(c: &Gq) -> Rational {
    let re = num_traits::Signed::abs(&c.re);
    let im = num_traits::Signed::abs(&c.im);
    re.max(im)
}

impl fmt::Display for JetForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alg = self.frame.algebra();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "[{c}]·{}", Form::basis(&self.frame, alg.mask(i)))?;
        }
        if first {
            write!(f, "0 + O({})", self.order().saturating_add(1))?;
        }
        Ok(())
    }
}

impl fmt::Debug for JetForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse square matrix with jet entries; missing entries are exact zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct JetMatrix {
    n: usize,
    rows: Vec<BTreeMap<usize, Jet>>,
}

impl JetMatrix {
    pub fn zeros(dim: usize, n: usize) -> Self {
        Self {
            n,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    /// Constant matrix, exact to every order.
    pub fn constant(m: &Matrix, n: usize) -> Self {
        let mut out = Self::zeros(m.rows(), n);
        for i in 0..m.rows() {
            for (j, x) in m.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out.rows[i].insert(j, Jet::constant(n, u32::MAX, x.clone()));
                }
            }
        }
        out
    }

    pub fn identity(dim: usize, n: usize) -> Self {
        Self::constant(&Matrix::identity(dim), n)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Jet> {
        self.rows[i].get(&j)
    }

    pub fn insert(&mut self, i: usize, j: usize, x: Jet) {
        if x.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, x);
        }
    }

    fn accumulate(&mut self, i: usize, j: usize, x: Jet) {
        if x.is_zero() {
            return;
        }
        let next = match self.rows[i].remove(&j) {
            Some(old) => old.add(&x),
            None => x,
        };
        self.insert(i, j, next);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Jet)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    /// Matrix of base-point values.
    pub fn value(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (i, j, x) in self.entries() {
            m.set(i, j, x.value());
        }
        m
    }

    pub fn mul(&self, rhs: &JetMatrix) -> JetMatrix {
        let mut out = JetMatrix::zeros(self.dim(), self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &rhs.rows[*k] {
                    out.accumulate(i, *j, a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &JetMatrix) -> JetMatrix {
        let mut out = self.clone();
        for (i, j, x) in rhs.entries() {
            out.accumulate(i, j, x.clone());
        }
        out
    }

    pub fn scale(&self, c: &Gq) -> JetMatrix {
        let mut out = JetMatrix::zeros(self.dim(), self.n);
        for (i, j, x) in self.entries() {
            out.insert(i, j, x.scale(c));
        }
        out
    }

    pub fn sub(&self, rhs: &JetMatrix) -> JetMatrix {
        self.add(&rhs.scale(&-Gq::one()))
    }

    /// Multiplies every entry by the jet `f`.
    pub fn mul_jet(&self, f: &Jet) -> JetMatrix {
        let mut out = JetMatrix::zeros(self.dim(), self.n);
        for (i, j, x) in self.entries() {
            out.insert(i, j, x.mul(f));
        }
        out
    }

    /// Left multiplication by a diagonal of constants.
    pub fn scale_rows(&self, d: &[Gq]) -> JetMatrix {
        let mut out = JetMatrix::zeros(self.dim(), self.n);
        for (i, j, x) in self.entries() {
            out.insert(i, j, x.scale(&d[i]));
        }
        out
    }

    pub fn scale_columns(&self, d: &[Gq]) -> JetMatrix {
        let mut out = JetMatrix::zeros(self.dim(), self.n);
        for (i, j, x) in self.entries() {
            out.insert(i, j, x.scale(&d[j]));
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Result<JetMatrix> {
        let mut out = JetMatrix::zeros(self.dim(), self.n);
        for (i, j, x) in self.entries() {
            out.insert(i, j, x.derivative(v)?);
        }
        Ok(out)
    }

    /// Transpose with pointwise conjugation.
    pub fn adjoint(&self) -> JetMatrix {
        let mut out = JetMatrix::zeros(self.dim(), self.n);
        for (i, j, x) in self.entries() {
            out.insert(j, i, x.conj());
        }
        out
    }

    pub fn apply(&self, v: &JetForm) -> JetForm {
        let frame = v.frame();
        let order = v.order();
        let mut coeffs = vec![Jet::zero(frame.n(), order); self.dim()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, a) in row {
                let x = &v.coeffs[*j];
                if !x.is_zero() {
                    coeffs[i] = coeffs[i].add(&a.mul(x));
                }
            }
        }
        JetForm::from_coefficients(frame, coeffs)
    }

    pub fn max_coefficient(&self) -> Rational {
        self.entries()
            .flat_map(|(_, _, j)| j.terms().map(|(_, c)| max_component(c)))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn min_order(&self) -> u32 {
        self.entries().map(|(_, _, j)| j.order()).min().unwrap_or(u32::MAX)
    }
}

impl fmt::Debug for JetMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j, x) in self.entries() {
            writeln!(f, "({i},{j}): {x}")?;
        }
        Ok(())
    }
}

/// A first-order linear differential operator `P₀ + Σ_v P_v ∂_v` with jet
/// matrix coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct JetOp {
    zeroth: JetMatrix,
    first: BTreeMap<Var, JetMatrix>,
}

impl JetOp {
    pub fn zeroth_order(m: JetMatrix) -> Self {
        Self {
            zeroth: m,
            first: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize, n: usize) -> Self {
        Self::zeroth_order(JetMatrix::identity(dim, n))
    }

    /// `Σ_v (w_v ∧ ·) ∂_v` for constant 1-forms `w_v`.
    pub fn from_first_order(parts: BTreeMap<Var, JetMatrix>, dim: usize, n: usize) -> Self {
        Self {
            zeroth: JetMatrix::zeros(dim, n),
            first: parts,
        }
    }

    pub fn zeroth(&self) -> &JetMatrix {
        &self.zeroth
    }

    pub fn first(&self) -> &BTreeMap<Var, JetMatrix> {
        &self.first
    }

    pub fn is_zeroth_order(&self) -> bool {
        self.first.values().all(JetMatrix::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.zeroth.is_zero() && self.is_zeroth_order()
    }

    pub fn apply(&self, v: &JetForm) -> Result<JetForm> {
        let mut out = self.zeroth.apply(v);
        for (var, m) in &self.first {
            if m.is_zero() {
                continue;
            }
            let dv = v.map_result(|j| j.derivative(*var))?;
            out = out.add(&m.apply(&dv));
        }
        Ok(out)
    }

    /// `self ∘ rhs`; fails if the composite would be of second order.
    pub fn compose(&self, rhs: &JetOp) -> Result<JetOp> {
        if !self.is_zeroth_order() && !rhs.is_zeroth_order() {
            return Err(Error::Unsupported(
                "composite of two first-order jet operators".into(),
            ));
        }
        let mut zeroth = self.zeroth.mul(&rhs.zeroth);
        let mut first: BTreeMap<Var, JetMatrix> = BTreeMap::new();
        for (w, b) in &rhs.first {
            first.insert(*w, self.zeroth.mul(b));
        }
        for (v, a) in &self.first {
            if a.is_zero() {
                continue;
            }
            // A_v ∂_v (B₀ x) = A_v (∂_v B₀) x + A_v B₀ ∂_v x
            zeroth = zeroth.add(&a.mul(&rhs.zeroth.derivative(*v)?));
            let term = a.mul(&rhs.zeroth);
            let slot = first
                .remove(v)
                .map(|m| m.add(&term))
                .unwrap_or(term);
            first.insert(*v, slot);
        }
        first.retain(|_, m| !m.is_zero());
        Ok(JetOp { zeroth, first })
    }

    pub fn add(&self, rhs: &JetOp) -> JetOp {
        let mut first = self.first.clone();
        for (v, m) in &rhs.first {
            let slot = first.remove(v).map(|x| x.add(m)).unwrap_or_else(|| m.clone());
            first.insert(*v, slot);
        }
        first.retain(|_, m| !m.is_zero());
        JetOp {
            zeroth: self.zeroth.add(&rhs.zeroth),
            first,
        }
    }

    pub fn scale(&self, c: &Gq) -> JetOp {
        let mut first: BTreeMap<Var, JetMatrix> =
            self.first.iter().map(|(v, m)| (*v, m.scale(c))).collect();
        first.retain(|_, m| !m.is_zero());
        JetOp {
            zeroth: self.zeroth.scale(c),
            first,
        }
    }

    pub fn sub(&self, rhs: &JetOp) -> JetOp {
        self.add(&rhs.scale(&-Gq::one()))
    }

    pub fn commutator(&self, rhs: &JetOp) -> Result<JetOp> {
        Ok(self.compose(rhs)?.sub(&rhs.compose(self)?))
    }

    /// Largest coefficient over every jet entry of every part.
    pub fn max_coefficient(&self) -> Rational {
        std::iter::once(self.zeroth.max_coefficient())
            .chain(self.first.values().map(JetMatrix::max_coefficient))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Value at the base point of `self(v)` using only the constant and linear
    /// terms of the coefficients of `v`.
    pub fn apply_at_base(&self, v: &JetForm) -> Result<Form> {
        Ok(self.apply(v)?.evaluate())
    }
}

impl fmt::Debug for JetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "zeroth:\n{:?}", self.zeroth)?;
        for (v, m) in &self.first {
            writeln!(f, "∂/∂{v:?}:\n{m:?}")?;
        }
        Ok(())
    }
}

impl JetForm {
    fn map_result(&self, f: impl Fn(&Jet) -> Result<Jet>) -> Result<JetForm> {
        Ok(JetForm {
            frame: self.frame.clone(),
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Applies `f ↦ ∂f/∂v` to every coefficient.
    pub fn derivative(&self, v: Var) -> Result<JetForm> {
        self.map_result(|j| j.derivative(v))
    }

    /// Monomial test form `z^α z̄^β e^I`.
    pub fn basis_monomial(frame: &HermitianFrame, order: u32, m: Monomial, mask: u32) -> JetForm {
        JetForm::monomial(&Form::basis(frame, mask), &Jet::monomial(frame.n(), order, m, Gq::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_matches_sequential_application() {
        let f = HermitianFrame::new(2).unwrap();
        let dim = f.algebra().len();
        let z = Jet::var(2, 3, Var::Z(0));
        let mut p = JetMatrix::zeros(dim, 2);
        p.insert(1, 1, z.clone());
        p.insert(2, 1, Jet::one(2, 3));
        let p = JetOp::zeroth_order(p);
        let mut q = BTreeMap::new();
        let mut m = JetMatrix::zeros(dim, 2);
        m.insert(1, 1, Jet::var(2, 3, Var::Zbar(1)));
        q.insert(Var::Z(0), m);
        let q = JetOp::from_first_order(q, dim, 2);
        let v = JetForm::monomial(&f.e(1), &z.mul(&z).add(&Jet::var(2, 3, Var::Zbar(0))));
        let direct = q.apply(&p.apply(&v).unwrap()).unwrap();
        let composed = q.compose(&p).unwrap().apply(&v).unwrap();
        assert_eq!(direct, composed);
        assert!(q.compose(&q).is_err());
    }
}
