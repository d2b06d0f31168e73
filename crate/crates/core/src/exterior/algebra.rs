//! Matrix realisation of the exterior algebra `Λ(ℝ^m)* ⊗ ℂ` over a fixed
//! orthonormal coframe `e^1, …, e^m`.
//!
//! Basis elements are bit masks (bit `i` set ⇔ `e^{i+1}` present), ordered by
//! degree and then by mask value.

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::scalar::Gq;

pub type Mask = u32;

pub fn degree_of(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Sign of `e^a ∧ e^b` relative to `e^{a∪b}`, or `None` when they overlap.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> (bit + 1)).count_ones();
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// Indices (0-based) of the set bits of `mask`, increasing.
pub fn mask_indices(mask: Mask) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormAlgebra {
    real_dim: usize,
    masks: Vec<Mask>,
    index: Vec<usize>,
    degree_start: Vec<usize>,
}

impl FormAlgebra {
    pub fn new(real_dim: usize) -> Self {
        assert!(real_dim <= 12, "exterior algebra too large");
        let mut masks: Vec<Mask> = (0..(1u32 << real_dim)).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        let mut index = vec![0; masks.len()];
        for (i, &m) in masks.iter().enumerate() {
            index[m as usize] = i;
        }
        let mut degree_start = vec![0; real_dim + 2];
        for k in 0..=real_dim {
            degree_start[k + 1] = degree_start[k] + binomial(real_dim, k);
        }
        Self {
            real_dim,
            masks,
            index,
            degree_start,
        }
    }

    pub fn real_dim(&self) -> usize {
        self.real_dim
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, i: usize) -> Mask {
        self.masks[i]
    }

    pub fn index_of(&self, mask: Mask) -> usize {
        self.index[mask as usize]
    }

    pub fn degree(&self, i: usize) -> usize {
        degree_of(self.masks[i])
    }

    /// Index range occupied by the degree-`k` basis elements.
    pub fn degree_range(&self, k: usize) -> std::ops::Range<usize> {
        if k > self.real_dim {
            return self.len()..self.len();
        }
        self.degree_start[k]..self.degree_start[k + 1]
    }

    pub fn top_mask(&self) -> Mask {
        ((1u64 << self.real_dim) - 1) as Mask
    }

    pub fn unit_vector(&self, mask: Mask) -> Vec<Gq> {
        let mut v = vec![Gq::zero(); self.len()];
        v[self.index_of(mask)] = Gq::one();
        v
    }

    /// Coefficient vector of the 1-form `Σ c_i e^{i+1}`.
    pub fn one_form(&self, coeffs: &[Gq]) -> Vec<Gq> {
        assert_eq!(coeffs.len(), self.real_dim);
        let mut v = vec![Gq::zero(); self.len()];
        for (i, c) in coeffs.iter().enumerate() {
            v[self.index_of(1 << i)] = c.clone();
        }
        v
    }

    /// Exterior product of coefficient vectors.
    pub fn wedge(&self, a: &[Gq], b: &[Gq]) -> Vec<Gq> {
        let mut out = vec![Gq::zero(); self.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let ma = self.masks[i];
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let mb = self.masks[j];
                if let Some(s) = wedge_sign(ma, mb) {
                    let idx = self.index_of(ma | mb);
                    let term = x * y;
                    if s > 0 {
                        out[idx] += &term;
                    } else {
                        out[idx] -= &term;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ α ∧ x`.
    pub fn wedge_left(&self, alpha: &[Gq]) -> Matrix {
        let mut m = Matrix::zeros(self.len(), self.len());
        for (i, x) in alpha.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let ma = self.masks[i];
            for col in 0..self.len() {
                let mb = self.masks[col];
                if let Some(s) = wedge_sign(ma, mb) {
                    let row = self.index_of(ma | mb);
                    let term = if s > 0 { x.clone() } else { -x };
                    m.add_at(row, col, &term);
                }
            }
        }
        m
    }

    /// Matrix of the interior product `ι_v` for `v = Σ v_i e_{i+1}`.
    pub fn interior(&self, v: &[Gq]) -> Matrix {
        assert_eq!(v.len(), self.real_dim);
        let mut m = Matrix::zeros(self.len(), self.len());
        for col in 0..self.len() {
            let mask = self.masks[col];
            for (pos, j) in mask_indices(mask).into_iter().enumerate() {
                if v[j].is_zero() {
                    continue;
                }
                let row = self.index_of(mask & !(1 << j));
                let term = if pos % 2 == 0 { v[j].clone() } else { -&v[j] };
                m.add_at(row, col, &term);
            }
        }
        m
    }

    /// Extends a linear map on 1-forms (column `k` = image of `e^{k+1}`) to
    /// the exterior algebra as a derivation.
    pub fn derivation(&self, on_one_forms: &Matrix) -> Matrix {
        assert_eq!(on_one_forms.rows(), self.real_dim);
        assert_eq!(on_one_forms.cols(), self.real_dim);
        let images: Vec<Vec<Gq>> = (0..self.real_dim)
            .map(|k| self.one_form(&on_one_forms.column(k)))
            .collect();
        self.derivation_from_images(&images, false)
    }

    /// Derivation determined by the images of `e^{k+1}` (full coefficient
    /// vectors). `odd` selects the graded Leibniz rule for odd-degree maps.
    pub fn derivation_from_images(&self, images: &[Vec<Gq>], odd: bool) -> Matrix {
        let odd_shift = odd;
        let mut m = Matrix::zeros(self.len(), self.len());
        for col in 0..self.len() {
            let idx = mask_indices(self.masks[col]);
            for (r, &k) in idx.iter().enumerate() {
                // e^{i_1..i_{r-1}} ∧ D(e^{i_r}) ∧ e^{i_{r+1}..}, with the Koszul
                // sign for odd-degree derivations
                let before: Mask = idx[..r].iter().map(|&i| 1 << i).sum();
                let after: Mask = idx[r + 1..].iter().map(|&i| 1 << i).sum();
                let sign = if odd_shift && r % 2 == 1 { -1 } else { 1 };
                let left = self.unit_vector(before);
                let right = self.unit_vector(after);
                let term = self.wedge(&self.wedge(&left, &images[k]), &right);
                for (row, x) in term.iter().enumerate() {
                    if !x.is_zero() {
                        let x = if sign < 0 { -x } else { x.clone() };
                        m.add_at(row, col, &x);
                    }
                }
            }
        }
        m
    }

    /// Hodge star of the flat metric in which the coframe is orthonormal:
    /// `e^I ∧ ∗e^I = e^1 ∧ … ∧ e^m`.
    pub fn star(&self) -> Matrix {
        let top = self.top_mask();
        let mut m = Matrix::zeros(self.len(), self.len());
        for col in 0..self.len() {
            let mask = self.masks[col];
            let comp = top & !mask;
            let s = wedge_sign(mask, comp).expect("disjoint");
            m.set(self.index_of(comp), col, Gq::from_int(s));
        }
        m
    }

    pub fn degree_projector(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(self.len(), self.len());
        for i in self.degree_range(k) {
            m.set(i, i, Gq::one());
        }
        m
    }

    /// Diagonal matrix multiplying degree-`k` elements by `f(k)`.
    pub fn degree_scaling(&self, f: impl Fn(usize) -> Gq) -> Matrix {
        let diag: Vec<Gq> = (0..self.len()).map(|i| f(self.degree(i))).collect();
        Matrix::diagonal(&diag)
    }

    /// Spectral projector of a degree-preserving, diagonalisable operator onto
    /// the eigenvalue `target` inside degree `k`, given all eigenvalues that
    /// occur in that degree.
    pub fn eigen_projector(
        &self,
        op: &Matrix,
        k: usize,
        target: &Gq,
        spectrum: &[Gq],
    ) -> Matrix {
        let range = self.degree_range(k);
        let size = range.len();
        let mut block = Matrix::zeros(size, size);
        for (a, i) in range.clone().enumerate() {
            for (b, j) in range.clone().enumerate() {
                block.set(a, b, op.get(i, j).clone());
            }
        }
        let mut proj = Matrix::identity(size);
        for mu in spectrum.iter().filter(|&mu| mu != target) {
            let shifted = block.sub(&Matrix::identity(size).scale(mu));
            let denom = (target - mu).inv().expect("distinct eigenvalues");
            proj = proj.mul(&shifted).scale(&denom);
        }
        let mut full = Matrix::zeros(self.len(), self.len());
        for (a, i) in range.clone().enumerate() {
            for (b, j) in range.clone().enumerate() {
                full.set(i, j, proj.get(a, b).clone());
            }
        }
        full
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_ranges() {
        let alg = FormAlgebra::new(4);
        assert_eq!(alg.len(), 16);
        assert_eq!(alg.degree_range(2), 5..11);
        for i in 0..alg.len() {
            assert_eq!(alg.index_of(alg.mask(i)), i);
        }
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b11, 0b01), None);
        // e^2∧e^3 ∧ e^1 = e^1∧e^2∧e^3
        assert_eq!(wedge_sign(0b110, 0b001), Some(1));
    }

    #[test]
    fn star_squares_to_sign() {
        let alg = FormAlgebra::new(4);
        let s = alg.star();
        let sign = alg.degree_scaling(|k| Gq::from_int(if k % 2 == 0 { 1 } else { -1 }));
        assert_eq!(s.mul(&s), sign);
    }

    #[test]
    fn interior_is_adjoint_of_wedge() {
        let alg = FormAlgebra::new(4);
        for i in 0..4 {
            let mut v = vec![Gq::zero(); 4];
            v[i] = Gq::one();
            assert_eq!(alg.interior(&v), alg.wedge_left(&alg.one_form(&v)).adjoint());
        }
    }
}
