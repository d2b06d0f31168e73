//! Betti, Hodge, `□`-harmonic and transversal dimensions of a model.

use std::collections::BTreeMap;

use super::complex::{Grade, InvariantComplex};
use super::foliation::{FoliationData, TransversalSpaces};
use crate::exterior::Bidegree;
use crate::identities::Op;
use crate::linalg::Subspace;

#[derive(Clone, Debug)]
pub struct HarmonicTable {
    pub model: String,
    pub n: usize,
    /// `ker Δ_d ∩ Ω^k`.
    pub betti: Vec<Subspace>,
    /// `ker Δ_∂̄ ∩ Ω^{p,q}`.
    pub hodge: BTreeMap<Bidegree, Subspace>,
    /// `ker □ ∩ Ω^{p,q}`.
    pub box_harmonic: BTreeMap<Bidegree, Subspace>,
    /// `ker □ ∩ Ω^k`.
    pub box_degree: Vec<Subspace>,
    /// `ker Δ_θ ∩ Ω^k`.
    pub morse_novikov: Vec<Subspace>,
    /// Present on Vaisman models only.
    pub transversal: Option<TransversalSpaces>,
}

impl HarmonicTable {
    pub fn compute(cx: &InvariantComplex) -> Self {
        let n = cx.n();
        let lap_d = cx.laplacian_d();
        let lap_dbar = cx.laplacian(Op::Dbar);
        let boxed = cx.box_operator();
        let (_, lap_theta) = cx.morse_novikov();
        let mut hodge = BTreeMap::new();
        let mut box_harmonic = BTreeMap::new();
        for p in 0..=n {
            for q in 0..=n {
                let g = Grade::Bidegree(p, q);
                hodge.insert(Bidegree::new(p, q), cx.kernel(&lap_dbar, g));
                box_harmonic.insert(Bidegree::new(p, q), cx.kernel(&boxed, g));
            }
        }
        let degrees = 0..=2 * n;
        let transversal = FoliationData::new(cx).ok().map(|f| f.transversal_spaces(cx));
        Self {
            model: cx.model().name().to_string(),
            n,
            betti: degrees.clone().map(|k| cx.kernel(&lap_d, Grade::Degree(k))).collect(),
            box_degree: degrees.clone().map(|k| cx.kernel(&boxed, Grade::Degree(k))).collect(),
            morse_novikov: degrees.map(|k| cx.kernel(&lap_theta, Grade::Degree(k))).collect(),
            hodge,
            box_harmonic,
            transversal,
        }
    }

    pub fn b(&self, k: usize) -> usize {
        self.betti.get(k).map_or(0, Subspace::dim)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.betti.iter().map(Subspace::dim).collect()
    }

    pub fn h(&self, p: usize, q: usize) -> usize {
        self.hodge.get(&Bidegree::new(p, q)).map_or(0, Subspace::dim)
    }

    pub fn h_box(&self, p: usize, q: usize) -> usize {
        self.box_harmonic.get(&Bidegree::new(p, q)).map_or(0, Subspace::dim)
    }

    pub fn h_box_degree(&self, k: usize) -> usize {
        self.box_degree.get(k).map_or(0, Subspace::dim)
    }

    pub fn b_theta(&self, k: usize) -> usize {
        self.morse_novikov.get(k).map_or(0, Subspace::dim)
    }

    pub fn s(&self, k: usize) -> Option<usize> {
        self.transversal.as_ref().map(|t| t.s(k))
    }

    pub fn s_pq(&self, p: usize, q: usize) -> Option<usize> {
        self.transversal.as_ref().map(|t| t.s_pq(p, q))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { b.dim() as i64 } else { -(b.dim() as i64) })
            .sum()
    }

    /// Bidegrees `(p, k − p)` with `0 ≤ p, k − p ≤ n`, in increasing `p`.
    pub fn bidegrees_of(&self, k: usize) -> Vec<Bidegree> {
        Bidegree::of_degree(k, self.n)
    }

    /// `ker □ ∩ Ω^k = ⊕_{p+q=k} ker □^{p,q}`.
    pub fn box_direct_sum_holds(&self) -> bool {
        (0..=2 * self.n).all(|k| {
            let parts: Vec<&Subspace> =
                self.bidegrees_of(k).iter().map(|bd| &self.box_harmonic[bd]).collect();
            let sum = parts
                .iter()
                .fold(Subspace::zero(self.box_degree[k].ambient()), |acc, s| acc.sum(s));
            let dims: usize = parts.iter().map(|s| s.dim()).sum();
            sum == self.box_degree[k] && dims == sum.dim()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::catalog_model;

    fn table(name: &str) -> HarmonicTable {
        HarmonicTable::compute(&InvariantComplex::new(&catalog_model(name).unwrap()).unwrap())
    }

    #[test]
    fn kodaira_numbers() {
        let t = table("kodaira-surface");
        assert_eq!(t.betti_numbers(), vec![1, 3, 4, 3, 1]);
        assert_eq!((t.h_box(1, 0), t.h_box(0, 1)), (1, 1));
        assert_eq!((t.h_box(2, 0), t.h_box(1, 1), t.h_box(0, 2)), (1, 2, 1));
        assert_eq!((t.h(1, 0), t.h(0, 1), t.h(2, 0)), (1, 2, 1));
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.box_direct_sum_holds());
    }

    #[test]
    fn hopf_and_torus() {
        let t = table("hopf-surface");
        assert_eq!(t.betti_numbers(), vec![1, 1, 0, 1, 1]);
        assert!((0..=4).all(|k| t.h_box_degree(k) == 0));
        assert_eq!((t.s(0), t.s(1)), (Some(1), Some(0)));
        let t = table("torus4");
        assert_eq!(t.betti_numbers(), vec![1, 4, 6, 4, 1]);
        assert!((0..=4).all(|k| t.h_box_degree(k) == t.b(k)));
        assert!(t.transversal.is_none());
    }
}
