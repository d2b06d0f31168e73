use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::algebra::{degree_of, wedge_sign, FormAlgebra, Mask};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Gq;

pub const MAX_COMPLEX_DIM: usize = 4;

/// `(p, q)` type of a complex form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub fn new(p: usize, q: usize) -> Self {
        Self { p, q }
    }

    pub fn total(self) -> usize {
        self.p + self.q
    }

    pub fn swapped(self) -> Self {
        Self::new(self.q, self.p)
    }

    /// All `(p, q)` with `p + q = k` and `0 ≤ p, q ≤ n`, ordered by `p`.
    pub fn of_degree(k: usize, n: usize) -> Vec<Bidegree> {
        (0..=k.min(n))
            .filter(|&p| k - p <= n)
            .map(|p| Bidegree::new(p, k - p))
            .collect()
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Cached matrices of the standard Hermitian structure on `ℂ^n`:
/// coframe `e^1, …, e^{2n}`, `J e_{2a-1} = e_{2a}`, `dz^a = e^{2a-1} + i e^{2a}`,
/// `ω = Σ e^{2a-1} ∧ e^{2a}`.
#[derive(Debug)]
pub struct FrameData {
    pub n: usize,
    pub algebra: FormAlgebra,
    pub complex_structure: Matrix,
    pub omega: Vec<Gq>,
    pub lefschetz: Matrix,
    pub dual_lefschetz: Matrix,
    pub star: Matrix,
    pub type_operator: Matrix,
    projectors: BTreeMap<Bidegree, Matrix>,
}

impl FrameData {
    fn build(n: usize) -> Self {
        let algebra = FormAlgebra::new(2 * n);
        let complex_structure = standard_complex_structure(n);
        let omega = fundamental_form(&algebra, &complex_structure);
        let lefschetz = algebra.wedge_left(&omega);
        // Λ = Σ_a ι_{e_{2a}} ι_{e_{2a-1}}
        let mut dual_lefschetz = Matrix::zeros(algebra.len(), algebra.len());
        for a in 0..n {
            let mut u = vec![Gq::zero(); 2 * n];
            let mut v = vec![Gq::zero(); 2 * n];
            u[2 * a] = Gq::one();
            v[2 * a + 1] = Gq::one();
            dual_lefschetz = dual_lefschetz.add(&algebra.interior(&v).mul(&algebra.interior(&u)));
        }
        let star = algebra.star();
        let type_operator = algebra.derivation(&complex_structure.transpose());
        let projectors = bidegree_projectors(&algebra, &type_operator, n);
        Self {
            n,
            algebra,
            complex_structure,
            omega,
            lefschetz,
            dual_lefschetz,
            star,
            type_operator,
            projectors,
        }
    }

    pub fn projector(&self, bd: Bidegree) -> &Matrix {
        &self.projectors[&bd]
    }

    pub fn projectors(&self) -> &BTreeMap<Bidegree, Matrix> {
        &self.projectors
    }
}

/// The standard complex structure on vectors: column `i` holds `J e_{i+1}`.
pub fn standard_complex_structure(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        j.set(2 * a + 1, 2 * a, Gq::one());
        j.set(2 * a, 2 * a + 1, -Gq::one());
    }
    j
}

/// `ω(X, Y) = g(JX, Y)` for the metric in which the frame is orthonormal.
pub fn fundamental_form(algebra: &FormAlgebra, j: &Matrix) -> Vec<Gq> {
    let m = algebra.real_dim();
    let mut omega = vec![Gq::zero(); algebra.len()];
    for a in 0..m {
        for b in a + 1..m {
            // g(J e_a, e_b) = J_{b a}
            let c = j.get(b, a);
            if !c.is_zero() {
                omega[algebra.index_of((1 << a) | (1 << b))] = c.clone();
            }
        }
    }
    omega
}

/// Projectors onto the `(p, q)` summands, built from the derivation extending
/// `α ↦ α ∘ J`, which acts as `i(p − q)` on `(p, q)`-forms.
pub fn bidegree_projectors(
    algebra: &FormAlgebra,
    type_operator: &Matrix,
    n: usize,
) -> BTreeMap<Bidegree, Matrix> {
    let mut out = BTreeMap::new();
    for k in 0..=2 * n {
        let types = Bidegree::of_degree(k, n);
        let spectrum: Vec<Gq> = types.iter().map(|bd| type_eigenvalue(*bd)).collect();
        for bd in types {
            let proj = algebra.eigen_projector(type_operator, k, &type_eigenvalue(bd), &spectrum);
            out.insert(bd, proj);
        }
    }
    out
}

fn type_eigenvalue(bd: Bidegree) -> Gq {
    Gq::complex(0, bd.p as i64 - bd.q as i64)
}

fn frame_cache(n: usize) -> Arc<FrameData> {
    static CACHE: OnceLock<Vec<OnceLock<Arc<FrameData>>>> = OnceLock::new();
    let slots = CACHE.get_or_init(|| (0..=MAX_COMPLEX_DIM).map(|_| OnceLock::new()).collect());
    slots[n].get_or_init(|| Arc::new(FrameData::build(n))).clone()
}

/// Orthonormal Hermitian frame of `ℂ^n` (`2 ≤ n ≤ 4`).
#[derive(Clone)]
pub struct HermitianFrame {
    data: Arc<FrameData>,
}

impl HermitianFrame {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_COMPLEX_DIM).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        Ok(Self {
            data: frame_cache(n),
        })
    }

    pub fn n(&self) -> usize {
        self.data.n
    }

    pub fn real_dim(&self) -> usize {
        2 * self.data.n
    }

    pub fn data(&self) -> &FrameData {
        &self.data
    }

    pub fn algebra(&self) -> &FormAlgebra {
        &self.data.algebra
    }

    /// `e^i` with 1-based `i`.
    pub fn e(&self, i: usize) -> Form {
        assert!((1..=self.real_dim()).contains(&i));
        Form::basis(self, 1 << (i - 1))
    }

    /// `e^{i_1} ∧ … ∧ e^{i_k}` with 1-based indices.
    pub fn e_wedge(&self, indices: &[usize]) -> Form {
        indices
            .iter()
            .fold(Form::one(self), |acc, &i| acc.wedge(&self.e(i)).expect("same frame"))
    }

    /// `dz^a = e^{2a-1} + i e^{2a}` (1-based `a`).
    pub fn dz(&self, a: usize) -> Form {
        &self.e(2 * a - 1) + &self.e(2 * a).scale(&Gq::i())
    }

    /// `dz̄^a = e^{2a-1} − i e^{2a}`.
    pub fn dzbar(&self, a: usize) -> Form {
        &self.e(2 * a - 1) - &self.e(2 * a).scale(&Gq::i())
    }

    pub fn omega(&self) -> Form {
        Form::from_vector(self, &self.data.omega)
    }

    pub fn volume(&self) -> Form {
        Form::basis(self, self.algebra().top_mask())
    }
}

impl PartialEq for HermitianFrame {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
    }
}

impl Eq for HermitianFrame {}

impl fmt::Debug for HermitianFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermitianFrame(n = {})", self.n())
    }
}

/// Element of the complexified exterior algebra of a Hermitian frame.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    frame: HermitianFrame,
    coeffs: BTreeMap<Mask, Gq>,
}

impl Form {
    pub fn zero(frame: &HermitianFrame) -> Self {
        Self {
            frame: frame.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(frame: &HermitianFrame) -> Self {
        Self::scalar(frame, Gq::one())
    }

    pub fn scalar(frame: &HermitianFrame, c: Gq) -> Self {
        Self::from_terms(frame, [(0, c)])
    }

    pub fn basis(frame: &HermitianFrame, mask: Mask) -> Self {
        Self::from_terms(frame, [(mask, Gq::one())])
    }

    pub fn from_terms(frame: &HermitianFrame, terms: impl IntoIterator<Item = (Mask, Gq)>) -> Self {
        let mut coeffs: BTreeMap<Mask, Gq> = BTreeMap::new();
        for (mask, c) in terms {
            assert!(mask < (1 << frame.real_dim()), "mask outside frame");
            *coeffs.entry(mask).or_insert_with(Gq::zero) += &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self {
            frame: frame.clone(),
            coeffs,
        }
    }

    pub fn from_vector(frame: &HermitianFrame, v: &[Gq]) -> Self {
        let alg = frame.algebra();
        assert_eq!(v.len(), alg.len());
        Self::from_terms(
            frame,
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (alg.mask(i), c.clone())),
        )
    }

    pub fn to_vector(&self) -> Vec<Gq> {
        let alg = self.frame.algebra();
        let mut v = vec![Gq::zero(); alg.len()];
        for (&m, c) in &self.coeffs {
            v[alg.index_of(m)] = c.clone();
        }
        v
    }

    pub fn frame(&self) -> &HermitianFrame {
        &self.frame
    }

    pub fn coefficient(&self, mask: Mask) -> Gq {
        self.coeffs.get(&mask).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &Gq)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Distinct degrees present, increasing.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.coeffs.keys().map(|&m| degree_of(m)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree of a homogeneous form; the zero form counts as homogeneous
    /// of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>> {
        match self.degrees().as_slice() {
            [] => Ok(None),
            [k] => Ok(Some(*k)),
            many => Err(Error::NotHomogeneous(many.to_vec())),
        }
    }

    fn check_frame(&self, other: &Form) -> Result<()> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch {
                left: self.frame.real_dim(),
                right: other.frame.real_dim(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Gq) -> Form {
        Form::from_terms(&self.frame, self.terms().map(|(m, x)| (m, x * c)))
    }

    pub fn conj(&self) -> Form {
        Form::from_terms(&self.frame, self.terms().map(|(m, x)| (m, x.conj())))
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_frame(other)?;
        let mut terms = Vec::new();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if let Some(s) = wedge_sign(a, b) {
                    terms.push((a | b, (x * y).scale(&crate::scalar::rat(s, 1))));
                }
            }
        }
        Ok(Form::from_terms(&self.frame, terms))
    }

    /// Pointwise Hermitian inner product, linear in `self`, conjugate-linear
    /// in `other`; the coframe is orthonormal.
    pub fn inner_product(&self, other: &Form) -> Result<Gq> {
        self.check_frame(other)?;
        Ok(self
            .terms()
            .filter_map(|(m, x)| other.coeffs.get(&m).map(|y| x * &y.conj()))
            .sum())
    }

    pub fn norm_sqr(&self) -> Gq {
        self.inner_product(self).expect("same frame")
    }

    pub fn apply(&self, op: &Matrix) -> Form {
        Form::from_vector(&self.frame, &op.mul_vec(&self.to_vector()))
    }

    /// `L = ω ∧ ·`.
    pub fn lefschetz_l(&self) -> Form {
        self.apply(&self.frame.data().lefschetz)
    }

    /// `Λ`, the pointwise adjoint of `L`.
    pub fn lefschetz_lambda(&self) -> Form {
        self.apply(&self.frame.data().dual_lefschetz)
    }

    /// Hodge star; `⟨a, b⟩ dV = a ∧ ∗b̄`.
    pub fn hodge_star(&self) -> Result<Form> {
        self.homogeneous_degree()?;
        Ok(self.apply(&self.frame.data().star))
    }

    /// Inverse Hodge star, `∗⁻¹ = (−1)^k ∗` on `k`-forms.
    pub fn hodge_star_inverse(&self) -> Result<Form> {
        let k = self.homogeneous_degree()?.unwrap_or(0);
        let s = self.hodge_star()?;
        Ok(if k % 2 == 0 { s } else { s.scale(&-Gq::one()) })
    }

    /// The `sl(2)` weight operator, `(k − n)` on `k`-forms.
    pub fn counting_h(&self) -> Result<Form> {
        let Some(k) = self.homogeneous_degree()? else {
            return Ok(self.clone());
        };
        Ok(self.scale(&Gq::from_int(k as i64 - self.frame.n() as i64)))
    }

    pub fn bidegree_project(&self, bd: Bidegree) -> Form {
        let n = self.frame.n();
        if bd.p > n || bd.q > n {
            return Form::zero(&self.frame);
        }
        self.apply(self.frame.data().projector(bd))
    }

    /// Nonzero `(p, q)` components, ordered by total degree then `p`.
    pub fn bidegree_components(&self) -> Vec<(Bidegree, Form)> {
        self.frame
            .data()
            .projectors()
            .iter()
            .map(|(bd, proj)| (*bd, self.apply(proj)))
            .filter(|(_, f)| !f.is_zero())
            .collect()
    }

    /// Bidegree of a form of pure type, `None` for zero or mixed forms.
    pub fn bidegree(&self) -> Option<Bidegree> {
        match self.bidegree_components().as_slice() {
            [(bd, _)] => Some(*bd),
            _ => None,
        }
    }
}

impl<'a> std::ops::Add<&'a Form> for &'a Form {
    type Output = Form;
    fn add(self, rhs: &'a Form) -> Form {
        assert_eq!(self.frame, rhs.frame, "frame mismatch");
        Form::from_terms(&self.frame, self.terms().chain(rhs.terms()).map(|(m, c)| (m, c.clone())))
    }
}

impl<'a> std::ops::Sub<&'a Form> for &'a Form {
    type Output = Form;
    fn sub(self, rhs: &'a Form) -> Form {
        self + &rhs.scale(&-Gq::one())
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let idx: Vec<String> = super::algebra::mask_indices(m)
                    .into_iter()
                    .map(|i| format!("e{}", i + 1))
                    .collect();
                if idx.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", idx.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[n={}]({self})", self.frame.n())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(n: usize) -> HermitianFrame {
        HermitianFrame::new(n).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let f = frame(2);
        assert_eq!(f.e(1).wedge(&f.e(2)).unwrap(), f.e_wedge(&[1, 2]));
        let omega = f.omega();
        assert_eq!(
            omega.wedge(&omega).unwrap(),
            f.volume().scale(&Gq::from_int(2))
        );
        assert!(f.e(1).wedge(&f.e(1)).unwrap().is_zero());
    }

    #[test]
    fn frame_mismatch_is_an_error() {
        let a = frame(2).e(1);
        let b = frame(3).e(1);
        assert!(matches!(a.wedge(&b), Err(Error::FrameMismatch { .. })));
        assert!(a.inner_product(&b).is_err());
    }

    #[test]
    fn lefschetz_examples() {
        let f = frame(2);
        assert_eq!(Form::one(&f).lefschetz_l(), f.omega());
        assert_eq!(f.omega().lefschetz_lambda(), Form::scalar(&f, Gq::from_int(2)));
        assert!(f.e_wedge(&[1, 3]).lefschetz_lambda().is_zero());
    }

    #[test]
    fn star_examples() {
        let f = frame(2);
        assert_eq!(
            Form::one(&f).hodge_star().unwrap(),
            f.omega().wedge(&f.omega()).unwrap().scale(&Gq::from_ratio(1, 2))
        );
        assert_eq!(f.e_wedge(&[1, 2]).hodge_star().unwrap(), f.e_wedge(&[3, 4]));
        let mixed = &Form::one(&f) + &f.e(1);
        assert!(matches!(mixed.hodge_star(), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn inner_product_examples() {
        let f = frame(3);
        assert_eq!(f.e(1).inner_product(&f.e(1)).unwrap(), Gq::one());
        assert_eq!(f.omega().norm_sqr(), Gq::from_int(3));
        assert!(f.e_wedge(&[1, 2]).inner_product(&f.e_wedge(&[3, 4])).unwrap().is_zero());
    }

    #[test]
    fn counting_operator() {
        let f = frame(2);
        assert_eq!(Form::one(&f).counting_h().unwrap(), Form::scalar(&f, Gq::from_int(-2)));
        assert!(f.omega().counting_h().unwrap().is_zero());
    }

    #[test]
    fn complex_coframe_types() {
        let f = frame(2);
        assert_eq!(f.dz(1).bidegree(), Some(Bidegree::new(1, 0)));
        assert_eq!(f.dzbar(2).bidegree(), Some(Bidegree::new(0, 1)));
        assert_eq!(f.omega().bidegree(), Some(Bidegree::new(1, 1)));
        // ω = (i/2) Σ dz^a ∧ dz̄^a
        let mut sum = Form::zero(&f);
        for a in 1..=2 {
            sum = &sum + &f.dz(a).wedge(&f.dzbar(a)).unwrap();
        }
        assert_eq!(sum.scale(&Gq::new(crate::scalar::rat(0, 1), crate::scalar::rat(1, 2))), f.omega());
        assert!(f.e(1).bidegree().is_none());
    }

    #[test]
    fn unsupported_dimensions() {
        assert!(HermitianFrame::new(1).is_err());
        assert!(HermitianFrame::new(5).is_err());
    }
}
