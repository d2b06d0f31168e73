//! Truncated Taylor polynomials in `z¹…zⁿ, z̄¹…z̄ⁿ` at the chart origin.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{Gq, Rational};

pub const MAX_VARS: usize = 8;

/// Exponents of `z¹…zⁿ` followed by those of `z̄¹…z̄ⁿ`.
pub type Monomial = [u8; MAX_VARS];

pub fn monomial_degree(m: &Monomial) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// A variable of the chart: holomorphic `z^a` or antiholomorphic `z̄^a` (0-based `a`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z(usize),
    Zbar(usize),
}

impl Var {
    pub fn all(n: usize) -> Vec<Var> {
        (0..n).map(Var::Z).chain((0..n).map(Var::Zbar)).collect()
    }

    fn slot(self, n: usize) -> usize {
        match self {
            Var::Z(a) => a,
            Var::Zbar(a) => n + a,
        }
    }

    pub fn conj(self) -> Var {
        match self {
            Var::Z(a) => Var::Zbar(a),
            Var::Zbar(a) => Var::Z(a),
        }
    }
}

/// Polynomial jet known exactly through total degree `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Jet {
    n: usize,
    order: u32,
    terms: BTreeMap<Monomial, Gq>,
}

impl Jet {
    pub fn zero(n: usize, order: u32) -> Self {
        assert!(2 * n <= MAX_VARS, "too many jet variables");
        Self {
            n,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, order: u32, c: Gq) -> Self {
        let mut j = Self::zero(n, order);
        j.add_term([0; MAX_VARS], c);
        j
    }

    pub fn one(n: usize, order: u32) -> Self {
        Self::constant(n, order, Gq::one())
    }

    pub fn var(n: usize, order: u32, v: Var) -> Self {
        Self::monomial(n, order, v.exponent(n), Gq::one())
    }

    pub fn monomial(n: usize, order: u32, m: Monomial, c: Gq) -> Self {
        let mut j = Self::zero(n, order);
        j.add_term(m, c);
        j
    }

    pub fn from_terms(n: usize, order: u32, terms: impl IntoIterator<Item = (Monomial, Gq)>) -> Self {
        let mut j = Self::zero(n, order);
        for (m, c) in terms {
            j.add_term(m, c);
        }
        j
    }

    fn add_term(&mut self, m: Monomial, c: Gq) {
        if c.is_zero() || monomial_degree(&m) > self.order {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Gq::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gq)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Gq {
        self.terms.get(m).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at the base point.
    pub fn value(&self) -> Gq {
        self.coefficient(&[0; MAX_VARS])
    }

    pub fn truncate(&self, order: u32) -> Jet {
        let order = order.min(self.order);
        Jet {
            n: self.n,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial_degree(m) <= order)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn with_order(mut self, order: u32) -> Jet {
        if order < self.order {
            return self.truncate(order);
        }
        self.order = order;
        self
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        let mut out = self.truncate(self.order.min(rhs.order));
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Jet {
        self.scale(&-Gq::one())
    }

    pub fn scale(&self, c: &Gq) -> Jet {
        let mut out = Jet::zero(self.n, self.order);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(*m, x * c);
        }
        out
    }

    pub fn mul(&self, rhs: &Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero(self.n, order);
        for (ma, a) in &self.terms {
            let da = monomial_degree(ma);
            if da > order {
                continue;
            }
            for (mb, b) in &rhs.terms {
                if da + monomial_degree(mb) > order {
                    continue;
                }
                let mut m = *ma;
                for (x, y) in m.iter_mut().zip(mb) {
                    *x += y;
                }
                out.add_term(m, a * b);
            }
        }
        out
    }

    /// Coefficient conjugation combined with `z ↔ z̄`, i.e. the jet of `f̄`.
    pub fn conj(&self) -> Jet {
        let n = self.n;
        let mut out = Jet::zero(n, self.order);
        for (m, c) in &self.terms {
            let mut swapped = [0u8; MAX_VARS];
            for a in 0..n {
                swapped[a] = m[n + a];
                swapped[n + a] = m[a];
            }
            out.terms.insert(swapped, c.conj());
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Result<Jet> {
        if self.order == 0 {
            return Err(Error::JetOrderExhausted);
        }
        let slot = v.slot(self.n);
        let mut out = Jet::zero(self.n, self.order - 1);
        for (m, c) in &self.terms {
            let e = m[slot];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm[slot] -= 1;
            out.add_term(dm, c * &Gq::from_int(e as i64));
        }
        Ok(out)
    }

    /// Multiplicative inverse via the geometric series around the constant term.
    pub fn inverse(&self) -> Option<Jet> {
        let c0 = self.value();
        let inv0 = c0.inv()?;
        // f = c0 (1 + u), 1/f = inv0 Σ (−u)^k
        let u = self.scale(&inv0).sub(&Jet::one(self.n, self.order));
        let minus_u = u.neg();
        let mut acc = Jet::one(self.n, self.order);
        let mut power = Jet::one(self.n, self.order);
        for _ in 0..self.order {
            power = power.mul(&minus_u);
            acc = acc.add(&power);
        }
        Some(acc.scale(&inv0))
    }

    /// `exp(t)` for a jet without constant term.
    pub fn exp_nilpotent(&self) -> Jet {
        assert!(self.value().is_zero(), "exp needs a vanishing constant term");
        let mut acc = Jet::one(self.n, self.order);
        let mut power = Jet::one(self.n, self.order);
        for k in 1..=self.order {
            power = power.mul(self).scale(&Gq::from_ratio(1, k as i64));
            acc = acc.add(&power);
        }
        acc
    }

    pub fn max_norm_sqr(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.norm_sqr())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Uniformly random small Gaussian-integer coefficients on every monomial
    /// up to `order`.
    pub fn random<R: Rng>(n: usize, order: u32, rng: &mut R) -> Jet {
        let mut out = Jet::zero(n, order);
        for m in monomials(n, order) {
            let c = Gq::complex(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            out.add_term(m, c);
        }
        out
    }
}

impl Var {
    pub fn exponent(self, n: usize) -> Monomial {
        let mut m = [0u8; MAX_VARS];
        m[self.slot(n)] = 1;
        m
    }
}

/// All monomials in `2n` variables of total degree `≤ order`, by degree.
pub fn monomials(n: usize, order: u32) -> Vec<Monomial> {
    let vars = 2 * n;
    let mut out = vec![[0u8; MAX_VARS]];
    let mut frontier = out.clone();
    for _ in 0..order {
        let mut next = Vec::new();
        for m in &frontier {
            // non-decreasing variable index keeps each monomial once
            let last = (0..vars).rev().find(|&i| m[i] > 0).unwrap_or(0);
            for i in last..vars {
                let mut nm = *m;
                nm[i] += 1;
                next.push(nm);
            }
        }
        out.extend(next.iter().copied());
        frontier = next;
    }
    out
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.order.saturating_add(1));
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for a in 0..self.n {
                for (slot, name) in [(a, "z"), (self.n + a, "zb")] {
                    match m[slot] {
                        0 => {}
                        1 => write!(f, "·{name}{}", a + 1)?,
                        e => write!(f, "·{name}{}^{e}", a + 1)?,
                    }
                }
            }
        }
        write!(f, " + O({})", self.order.saturating_add(1))
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
