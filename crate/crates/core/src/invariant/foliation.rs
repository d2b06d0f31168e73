//! The vertical foliation of a Vaisman model and its transversal calculus.

use std::collections::BTreeMap;

use num_traits::One;

use super::complex::{laplacian, InvariantComplex};
use crate::error::{DiagCode, Error, Result};
use crate::exterior::Bidegree;
use crate::identities::Op;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Gq;

/// Hermitian inner product of coefficient vectors, linear in the first slot.
pub fn inner(a: &[Gq], b: &[Gq]) -> Gq {
    a.iter().zip(b).map(|(x, y)| x * &y.conj()).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// `Σ_{p+q=k} S^{p,q}` with `k ≤ n − 1`.
#[derive(Clone, Debug)]
pub struct TransversalSpaces {
    pub by_bidegree: BTreeMap<Bidegree, Subspace>,
    pub by_degree: Vec<Subspace>,
}

impl TransversalSpaces {
    pub fn s(&self, k: usize) -> usize {
        self.by_degree.get(k).map_or(0, Subspace::dim)
    }

    pub fn s_pq(&self, p: usize, q: usize) -> usize {
        self.by_bidegree.get(&Bidegree::new(p, q)).map_or(0, Subspace::dim)
    }

    pub fn space(&self, p: usize, q: usize, ambient: usize) -> Subspace {
        self.by_bidegree
            .get(&Bidegree::new(p, q))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(ambient))
    }
}

#[derive(Clone, Debug)]
pub struct FoliationData {
    n: usize,
    /// Full coefficient vectors of `θ` and `Jθ`.
    theta: Vec<Gq>,
    j_theta: Vec<Gq>,
    /// Interior products with the Lee and anti-Lee fields.
    i_x1: Matrix,
    i_x2: Matrix,
    leaf_projectors: BTreeMap<usize, Matrix>,
    d_prime: Matrix,
    d_second: Matrix,
    d_v: Matrix,
    omega_prime: Vec<Gq>,
    basic: Subspace,
    star_prime: Matrix,
}

impl FoliationData {
    /// Requires `θ ≠ 0`, `|θ| = 1` and `∇θ = 0`.
    pub fn new(cx: &InvariantComplex) -> Result<Self> {
        let model = cx.model();
        if model.theta_is_zero() {
            return Err(Error::invalid(DiagCode::Vaisman, "Lee form vanishes"));
        }
        if !model.theta_norm_sqr().is_one() {
            return Err(Error::invalid(DiagCode::Vaisman, "|theta| != 1"));
        }
        if !model.lee_form_parallel() {
            return Err(Error::invalid(DiagCode::Vaisman, "Lee form is not parallel"));
        }
        let alg = cx.algebra();
        let m = model.real_dim();
        let n = model.n();
        let th: Vec<Gq> = model.theta_gq();
        let jth: Vec<Gq> = model
            .complex_structure()
            .transpose()
            .mul_vec(&th)
            .into_iter()
            .map(|x| -x)
            .collect();
        let theta = alg.one_form(&th);
        let j_theta = alg.one_form(&jth);
        let i_x1 = alg.interior(&th);
        let i_x2 = alg.interior(&jth);

        let mut vertical = Matrix::zeros(m, m);
        for a in 0..m {
            for b in 0..m {
                vertical.set(a, b, &(&th[a] * &th[b]) + &(&jth[a] * &jth[b]));
            }
        }
        let leaf = alg.derivation(&vertical);
        let mut leaf_projectors: BTreeMap<usize, Matrix> = BTreeMap::new();
        for k in 0..=m {
            let levels: Vec<usize> = (0..=k.min(2)).filter(|l| k - l <= m - 2).collect();
            let spectrum: Vec<Gq> = levels.iter().map(|&l| Gq::from_int(l as i64)).collect();
            for &l in &levels {
                let p = alg.eigen_projector(&leaf, k, &Gq::from_int(l as i64), &spectrum);
                let e = leaf_projectors
                    .entry(l)
                    .or_insert_with(|| Matrix::zeros(alg.len(), alg.len()));
                *e = e.add(&p);
            }
        }
        let shift = |s: i64| {
            let mut out = Matrix::zeros(alg.len(), alg.len());
            for (&l, p) in &leaf_projectors {
                let t = l as i64 + s;
                if t < 0 {
                    continue;
                }
                if let Some(pt) = leaf_projectors.get(&(t as usize)) {
                    out = out.add(&pt.mul(cx.d()).mul(p));
                }
            }
            out
        };
        let (d_v, d_prime, d_second) = (shift(-1), shift(0), shift(1));
        if d_v.add(&d_prime).add(&d_second) != *cx.d() {
            return Err(Error::invalid(
                DiagCode::Vaisman,
                "d has leaf-degree components outside {-1, 0, 1}",
            ));
        }

        let omega_prime: Vec<Gq> = cx.d().mul_vec(&j_theta).into_iter().map(|x| -x).collect();
        let lie = |i_x: &Matrix| i_x.mul(cx.d()).add(&cx.d().mul(i_x));
        let constraints = i_x1.vstack(&i_x2).vstack(&lie(&i_x1)).vstack(&lie(&i_x2));
        let basic = Subspace::kernel(&constraints);
        let star_prime = i_x2.mul(&i_x1).mul(cx.star());
        Ok(Self {
            n,
            theta,
            j_theta,
            i_x1,
            i_x2,
            leaf_projectors,
            d_prime,
            d_second,
            d_v,
            omega_prime,
            basic,
            star_prime,
        })
    }

    pub fn theta(&self) -> &[Gq] {
        &self.theta
    }

    pub fn j_theta(&self) -> &[Gq] {
        &self.j_theta
    }

    pub fn omega_prime(&self) -> &[Gq] {
        &self.omega_prime
    }

    pub fn interior_lee(&self) -> &Matrix {
        &self.i_x1
    }

    pub fn interior_anti_lee(&self) -> &Matrix {
        &self.i_x2
    }

    pub fn leaf_projector(&self, l: usize) -> Option<&Matrix> {
        self.leaf_projectors.get(&l)
    }

    /// Transversal `(1,0)` part of `d`.
    pub fn d_prime(&self) -> &Matrix {
        &self.d_prime
    }

    /// Leaf `(0,1)` part of `d`.
    pub fn d_second(&self) -> &Matrix {
        &self.d_second
    }

    /// The `(2,−1)` part of `d`.
    pub fn d_v(&self) -> &Matrix {
        &self.d_v
    }

    /// Foliate forms: `i_X α = 0` and `L_X α = 0` for the Lee and anti-Lee fields.
    pub fn basic(&self) -> &Subspace {
        &self.basic
    }

    pub fn star_prime(&self) -> &Matrix {
        &self.star_prime
    }

    pub fn l_prime(&self, cx: &InvariantComplex) -> Matrix {
        cx.wedge(&self.omega_prime)
    }

    pub fn lambda_prime(&self, cx: &InvariantComplex) -> Matrix {
        self.l_prime(cx).adjoint()
    }

    pub fn laplacian_prime(&self) -> Matrix {
        laplacian(&self.d_prime)
    }

    /// `ω′^{n−1}/(n−1)!`.
    pub fn transversal_volume(&self, cx: &InvariantComplex) -> Vec<Gq> {
        let alg = cx.algebra();
        let mut v = alg.unit_vector(0);
        let mut fact = 1i64;
        for j in 1..self.n {
            v = alg.wedge(&v, &self.omega_prime);
            fact *= j as i64;
        }
        let inv = Gq::from_ratio(1, fact);
        v.iter().map(|x| x * &inv).collect()
    }

    /// `g_T(X, Y) = ω′(X, JY)` as a matrix on the frame.
    pub fn transversal_metric(&self, cx: &InvariantComplex) -> Matrix {
        let alg = cx.algebra();
        let m = alg.real_dim();
        let mut om = Matrix::zeros(m, m);
        for a in 0..m {
            for b in a + 1..m {
                let c = self.omega_prime[alg.index_of((1 << a) | (1 << b))].clone();
                om.set(b, a, -&c);
                om.set(a, b, c);
            }
        }
        om.mul(cx.model().complex_structure())
    }

    fn basic_in_degree(&self, cx: &InvariantComplex, k: usize) -> Subspace {
        self.basic.intersect(&cx.domain(super::Grade::Degree(k)))
    }

    pub fn transversal_spaces(&self, cx: &InvariantComplex) -> TransversalSpaces {
        let stacked = self.laplacian_prime().vstack(&self.lambda_prime(cx));
        let mut by_bidegree = BTreeMap::new();
        let mut by_degree = Vec::new();
        for k in 0..self.n {
            let mut total = Subspace::zero(cx.dim());
            for p in 0..=k {
                let domain = self.basic.intersect(&Subspace::image(cx.projector(Bidegree::new(p, k - p))));
                let s = Subspace::kernel_within(&stacked, &domain);
                total = total.sum(&s);
                by_bidegree.insert(Bidegree::new(p, k - p), s);
            }
            by_degree.push(total);
        }
        TransversalSpaces {
            by_bidegree,
            by_degree,
        }
    }

    /// `S^k` computed without the bigrading, for the direct-sum check.
    pub fn transversal_degree_space(&self, cx: &InvariantComplex, k: usize) -> Subspace {
        let stacked = self.laplacian_prime().vstack(&self.lambda_prime(cx));
        Subspace::kernel_within(&stacked, &self.basic_in_degree(cx, k))
    }

    /// Structural identities of the foliation, each checked exactly.
    pub fn structure_checks(&self, cx: &InvariantComplex) -> Vec<StructureCheck> {
        let alg = cx.algebra();
        let model = cx.model();
        let mut out = Vec::new();
        let mut push = |name, holds| out.push(StructureCheck { name, holds });
        push("nabla theta = 0", model.lee_form_parallel());
        push("|theta| = 1", model.theta_norm_sqr().is_one());
        let d_omega = cx.d().mul_vec(cx.omega());
        push("d omega = theta ^ omega", d_omega == alg.wedge(&self.theta, cx.omega()));
        let split: Vec<Gq> = alg
            .wedge(&self.theta, &self.j_theta)
            .iter()
            .zip(&self.omega_prime)
            .map(|(a, b)| a + b)
            .collect();
        push("omega = theta ^ J theta - d J theta", split == cx.omega());
        let (t10, t01) = cx.theta_types();
        let two_i = Gq::complex(0, 2);
        let lit: Vec<Gq> = cx.get(Op::Del).mul_vec(&t01).iter().map(|x| x * &two_i).collect();
        let alt: Vec<Gq> = cx.get(Op::Dbar).mul_vec(&t10).iter().map(|x| x * &two_i).collect();
        push("omega' = 2i del theta^{0,1}", lit == self.omega_prime);
        push("omega' = 2i dbar theta^{1,0}", alt == self.omega_prime);
        let m = alg.real_dim();
        let th: Vec<Gq> = (0..m).map(|i| self.theta[alg.index_of(1 << i)].clone()).collect();
        let jth: Vec<Gq> = (0..m).map(|i| self.j_theta[alg.index_of(1 << i)].clone()).collect();
        let mut metric = self.transversal_metric(cx);
        for a in 0..m {
            for b in 0..m {
                metric.add_at(a, b, &(&(&th[a] * &th[b]) + &(&jth[a] * &jth[b])));
            }
        }
        push("g = g_T + theta theta + J theta J theta", metric == Matrix::identity(m));
        push(
            "d = d' + d'' + d_V",
            self.d_prime.add(&self.d_second).add(&self.d_v) == *cx.d(),
        );
        let d_star = cx.d_star();
        let leaf_part = |s: i64| {
            let mut out = Matrix::zeros(alg.len(), alg.len());
            for (&l, p) in &self.leaf_projectors {
                let t = l as i64 + s;
                if let Some(pt) = (t >= 0).then(|| self.leaf_projectors.get(&(t as usize))).flatten() {
                    out = out.add(&pt.mul(&d_star).mul(p));
                }
            }
            out
        };
        push(
            "d* = d'* + d''* + d_V*",
            leaf_part(0) == self.d_prime.adjoint()
                && leaf_part(-1) == self.d_second.adjoint()
                && leaf_part(1) == self.d_v.adjoint(),
        );
        let b = self.basic.as_columns();
        push(
            "d preserves basic forms",
            self.basic.contains_space(&self.basic.map(cx.d())),
        );
        push(
            "d'' = d_V = 0 on basic forms",
            self.d_second.mul(&b).is_zero() && self.d_v.mul(&b).is_zero(),
        );
        push(
            "basic forms are J-stable",
            cx.projectors().values().all(|p| self.basic.contains_space(&self.basic.map(p))),
        );
        let frame_wedge = cx.wedge(&alg.wedge(&self.j_theta, &self.theta)).neg();
        push(
            "* = -J theta ^ theta ^ *' on basic forms",
            cx.star().mul(&b) == frame_wedge.mul(&self.star_prime).mul(&b),
        );
        let parity = alg.degree_scaling(|k| Gq::from_int(if k % 2 == 0 { 1 } else { -1 }));
        push(
            "*'*' = (-1)^k on basic forms",
            self.star_prime.mul(&self.star_prime).mul(&b) == parity.mul(&b),
        );
        let vol = self.transversal_volume(cx);
        let volume_ok = (0..=alg.real_dim() - 2).all(|k| {
            let bk = self.basic_in_degree(cx, k);
            bk.basis().iter().all(|x| {
                bk.basis().iter().all(|y| {
                    let ybar: Vec<Gq> = y.iter().map(Gq::conj).collect();
                    let c = inner(x, y);
                    let rhs: Vec<Gq> = vol.iter().map(|v| v * &c).collect();
                    alg.wedge(x, &self.star_prime.mul_vec(&ybar)) == rhs
                })
            })
        });
        push("a ^ *'conj(b) = <a, b> vol'", volume_ok);
        push(
            "|theta^{0,1}|^2 = 1/2",
            inner(&t01, &t01) == Gq::from_ratio(1, 2),
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::catalog_model;

    fn data(name: &str) -> (InvariantComplex, FoliationData) {
        let cx = InvariantComplex::new(&catalog_model(name).unwrap()).unwrap();
        let f = FoliationData::new(&cx).unwrap();
        (cx, f)
    }

    #[test]
    fn torus_has_no_foliation() {
        let cx = InvariantComplex::new(&catalog_model("torus4").unwrap()).unwrap();
        assert!(FoliationData::new(&cx).is_err());
    }

    #[test]
    fn structure_checks_on_vaisman_models() {
        for name in ["hopf-surface", "kodaira-surface"] {
            let (cx, f) = data(name);
            for c in f.structure_checks(&cx) {
                let expected = c.name != "omega' = 2i del theta^{0,1}";
                assert_eq!(c.holds, expected, "{name}: {}", c.name);
            }
        }
    }

    #[test]
    fn transversal_dimensions() {
        let (cx, f) = data("hopf-surface");
        let s = f.transversal_spaces(&cx);
        assert_eq!((s.s(0), s.s(1)), (1, 0));
        let (cx, f) = data("kodaira-surface");
        let s = f.transversal_spaces(&cx);
        assert_eq!((s.s(0), s.s(1), s.s_pq(1, 0), s.s_pq(0, 1)), (1, 2, 1, 1));
        for k in 0..2 {
            assert_eq!(s.by_degree[k], f.transversal_degree_space(&cx, k));
        }
    }
}
