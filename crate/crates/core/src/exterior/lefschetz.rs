//! Primitive forms and the Lefschetz decomposition `α = Σ_r L^r β_{k−2r}`.

use num_traits::Zero;

use super::form::Form;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Gq;

/// One summand `L^r β` of a Lefschetz decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzComponent {
    pub power: usize,
    pub primitive: Form,
}

impl LefschetzComponent {
    pub fn expand(&self) -> Form {
        (0..self.power).fold(self.primitive.clone(), |acc, _| acc.lefschetz_l())
    }
}

/// Whether `a` is primitive (`Λa = 0`). Requires degree `≤ n`.
pub fn primitive_test(a: &Form) -> Result<bool> {
    let n = a.frame().n();
    if let Some(k) = a.homogeneous_degree()? {
        if k > n {
            return Err(Error::DegreeTooHigh { degree: k, n });
        }
    }
    Ok(a.lefschetz_lambda().is_zero())
}

/// Primitive forms of degree `j` as a subspace of the full coefficient space.
pub fn primitive_subspace(frame: &super::HermitianFrame, j: usize) -> Subspace {
    let alg = frame.algebra();
    let degree_j = Subspace::span(
        alg.len(),
        alg.degree_range(j).map(|i| alg.unit_vector(alg.mask(i))),
    );
    Subspace::kernel_within(&frame.data().dual_lefschetz, &degree_j)
}

/// Unique decomposition of a homogeneous `k`-form into `L^r` of primitive
/// forms, `r ≥ max(0, k − n)`. Components with zero primitive part are omitted.
pub fn primitive_decompose(a: &Form) -> Result<Vec<LefschetzComponent>> {
    let frame = a.frame().clone();
    let n = frame.n();
    let Some(k) = a.homogeneous_degree()? else {
        return Ok(Vec::new());
    };
    let l = &frame.data().lefschetz;
    let mut columns: Vec<Vec<Gq>> = Vec::new();
    let mut owners: Vec<(usize, Vec<Gq>)> = Vec::new();
    let r_min = k.saturating_sub(n);
    for r in r_min..=k / 2 {
        let j = k - 2 * r;
        let prim = primitive_subspace(&frame, j);
        let lr = l.pow(r as u32);
        for beta in prim.basis() {
            columns.push(lr.mul_vec(beta));
            owners.push((r, beta.clone()));
        }
    }
    let len = frame.algebra().len();
    let system = Matrix::from_columns(len, &columns);
    // L^r is injective on primitive j-forms with r ≤ n − j, so the columns are
    // independent and the solution is unique.
    debug_assert_eq!(system.rank(), columns.len());
    let coeffs = system
        .solve(&a.to_vector())
        .expect("Lefschetz decomposition spans every homogeneous degree");
    let mut parts: Vec<LefschetzComponent> = Vec::new();
    for (c, (r, beta)) in coeffs.iter().zip(owners) {
        if c.is_zero() {
            continue;
        }
        let term: Vec<Gq> = beta.iter().map(|x| x * c).collect();
        match parts.iter_mut().find(|p| p.power == r) {
            Some(p) => p.primitive = &p.primitive + &Form::from_vector(&frame, &term),
            None => parts.push(LefschetzComponent {
                power: r,
                primitive: Form::from_vector(&frame, &term),
            }),
        }
    }
    parts.retain(|p| !p.primitive.is_zero());
    parts.sort_by_key(|p| p.power);
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::HermitianFrame;
    use num_traits::One;

    #[test]
    fn primitive_examples() {
        let f = HermitianFrame::new(2).unwrap();
        assert!(primitive_test(&Form::one(&f)).unwrap());
        assert!(!primitive_test(&f.omega()).unwrap());
        assert!(primitive_test(&f.e_wedge(&[1, 3])).unwrap());
        assert!(matches!(
            primitive_test(&f.e_wedge(&[1, 2, 3])),
            Err(Error::DegreeTooHigh { degree: 3, n: 2 })
        ));
    }

    #[test]
    fn decompose_examples() {
        let f = HermitianFrame::new(2).unwrap();
        let parts = primitive_decompose(&f.omega()).unwrap();
        assert_eq!(parts, vec![LefschetzComponent { power: 1, primitive: Form::one(&f) }]);

        let p = f.e_wedge(&[1, 3]);
        assert_eq!(
            primitive_decompose(&p).unwrap(),
            vec![LefschetzComponent { power: 0, primitive: p.clone() }]
        );

        let parts = primitive_decompose(&f.volume()).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].power, 2);
        assert_eq!(parts[0].primitive, Form::scalar(&f, Gq::from_ratio(1, 2)));
        assert_eq!(parts[0].expand(), f.volume());
        let _ = Gq::one();
    }
}
