//! The twenty commutator relations between `L`, `Λ`, `∂`, `∂̄`, the torsion
//! operators `τ = [Λ, λ]`, `λ = ∂ω ∧ ·` and their adjoints on a Hermitian
//! manifold.
//!
//! Each relation has the shape `[A, B] = c · (X₁ + … + X_r)` and is checked by
//! applying both sides through an [`OperatorRealization`].

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Gq;

/// Operator symbols appearing in the identity catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    L,
    Lambda,
    Del,
    Dbar,
    DelStar,
    DbarStar,
    Tau,
    TauBar,
    TauStar,
    TauBarStar,
    Lam,
    LamBar,
    LamStar,
    LamBarStar,
}

impl Op {
    pub const ALL: [Op; 14] = [
        Op::L,
        Op::Lambda,
        Op::Del,
        Op::Dbar,
        Op::DelStar,
        Op::DbarStar,
        Op::Tau,
        Op::TauBar,
        Op::TauStar,
        Op::TauBarStar,
        Op::Lam,
        Op::LamBar,
        Op::LamStar,
        Op::LamBarStar,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Op::L => "L",
            Op::Lambda => "Λ",
            Op::Del => "∂",
            Op::Dbar => "∂̄",
            Op::DelStar => "∂*",
            Op::DbarStar => "∂̄*",
            Op::Tau => "τ",
            Op::TauBar => "τ̄",
            Op::TauStar => "τ*",
            Op::TauBarStar => "τ̄*",
            Op::Lam => "λ",
            Op::LamBar => "λ̄",
            Op::LamStar => "λ*",
            Op::LamBarStar => "λ̄*",
        }
    }

    /// Whether the operator differentiates its argument.
    pub fn is_first_order(self) -> bool {
        matches!(self, Op::Del | Op::Dbar | Op::DelStar | Op::DbarStar)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Identity {
    pub id: &'static str,
    pub left: Op,
    pub right: Op,
    /// `c = re + im·i`, integer parts suffice for the whole catalog.
    pub coefficient: (i64, i64),
    pub rhs: &'static [Op],
}

impl Identity {
    pub fn coefficient(&self) -> Gq {
        Gq::complex(self.coefficient.0, self.coefficient.1)
    }

    pub fn group(&self) -> &'static str {
        &self.id[..2]
    }

    pub fn involves_derivatives(&self) -> bool {
        self.left.is_first_order()
            || self.right.is_first_order()
            || self.rhs.iter().any(|op| op.is_first_order())
    }

    /// `[A, B]v − c Σ X_r v`, which vanishes when the identity holds.
    pub fn residual<R: OperatorRealization>(&self, realization: &R, v: &R::Vector) -> Result<R::Vector> {
        let ab = realization.apply(self.left, &realization.apply(self.right, v)?)?;
        let ba = realization.apply(self.right, &realization.apply(self.left, v)?)?;
        let c = self.coefficient();
        let mut terms = vec![(Gq::from_int(1), ab), (Gq::from_int(-1), ba)];
        for &op in self.rhs {
            terms.push((-&c, realization.apply(op, v)?));
        }
        Ok(realization.combine(&terms))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficient();
        let rhs = if self.rhs.is_empty() || c.is_zero() {
            "0".to_string()
        } else {
            let sum: Vec<&str> = self.rhs.iter().map(|op| op.symbol()).collect();
            if self.rhs.len() == 1 {
                format!("({c})·{}", sum[0])
            } else {
                format!("({c})·({})", sum.join(" + "))
            }
        };
        write!(f, "{}: [{}, {}] = {}", self.id, self.left, self.right, rhs)
    }
}

/// A concrete model in which catalog operators act on vectors.
pub trait OperatorRealization {
    type Vector;

    fn apply(&self, op: Op, v: &Self::Vector) -> Result<Self::Vector>;

    /// `Σ c_i v_i`.
    fn combine(&self, terms: &[(Gq, Self::Vector)]) -> Self::Vector;
}

macro_rules! ident {
    ($id:literal, $a:ident, $b:ident, ($re:literal, $im:literal), [$($op:ident),*]) => {
        Identity { id: $id, left: Op::$a, right: Op::$b, coefficient: ($re, $im), rhs: &[$(Op::$op),*] }
    };
}

pub const CATALOG: [Identity; 20] = [
    ident!("E1.1", Lambda, Dbar, (0, -1), [DelStar, TauStar]),
    ident!("E1.2", Lambda, Del, (0, 1), [DbarStar, TauBarStar]),
    ident!("E1.3", L, DbarStar, (0, -1), [Del, Tau]),
    ident!("E1.4", L, DelStar, (0, 1), [Dbar, TauBar]),
    ident!("E2.1", Lambda, Tau, (0, -2), [TauBarStar]),
    ident!("E2.2", L, TauBar, (3, 0), [LamBar]),
    ident!("E2.3", Lambda, TauBar, (0, 2), [TauStar]),
    ident!("E2.4", L, Tau, (3, 0), [Lam]),
    ident!("E2.5", L, TauStar, (0, -2), [TauBar]),
    ident!("E2.6", Lambda, TauBarStar, (-3, 0), [LamBarStar]),
    ident!("E2.7", L, TauBarStar, (0, 2), [Tau]),
    ident!("E2.8", Lambda, TauStar, (-3, 0), [LamStar]),
    ident!("E3.1", Lambda, Lam, (1, 0), [Tau]),
    ident!("E3.2", L, Lam, (0, 0), []),
    ident!("E3.3", Lambda, LamBar, (1, 0), [TauBar]),
    ident!("E3.4", L, LamBar, (0, 0), []),
    ident!("E3.5", L, LamStar, (-1, 0), [TauStar]),
    ident!("E3.6", Lambda, LamStar, (0, 0), []),
    ident!("E3.7", L, LamBarStar, (-1, 0), [TauBarStar]),
    ident!("E3.8", Lambda, LamBarStar, (0, 0), []),
];

pub fn lookup(id: &str) -> Result<&'static Identity> {
    CATALOG
        .iter()
        .find(|ident| ident.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        assert_eq!(CATALOG.iter().filter(|i| i.group() == "E1").count(), 4);
        assert_eq!(CATALOG.iter().filter(|i| i.group() == "E2").count(), 8);
        assert_eq!(CATALOG.iter().filter(|i| i.group() == "E3").count(), 8);
        assert_eq!(lookup("e1.1").unwrap().to_string(), "E1.1: [Λ, ∂̄] = (-1*i)·(∂* + τ*)");
        assert_eq!(lookup("E2.4").unwrap().to_string(), "E2.4: [L, τ] = (3)·λ");
        assert!(matches!(lookup("E9.9"), Err(Error::UnknownIdentity(_))));
    }
}
