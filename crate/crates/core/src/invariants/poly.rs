//! Exact Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

pub trait Exponent: Copy + Ord + Eq + Hash + Debug {
    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
}

impl Exponent for i32 {
    fn zero() -> Self {
        0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
}

impl Exponent for [i32; 2] {
    fn zero() -> Self {
        [0, 0]
    }
    fn plus(self, other: Self) -> Self {
        [self[0] + other[0], self[1] + other[1]]
    }
}

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly<E: Exponent> {
    terms: BTreeMap<E, i64>,
}

pub type Poly1 = LaurentPoly<i32>;
pub type Poly2 = LaurentPoly<[i32; 2]>;

impl<E: Exponent> Debug for LaurentPoly<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<E: Exponent> LaurentPoly<E> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(E::zero(), 1)
    }

    pub fn monomial(e: E, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (E, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: E) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (E, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn add_term(&mut self, e: E, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, shift: E, c: i64) {
        for (e, k) in other.terms() {
            self.add_term(e.plus(shift), k * c);
        }
    }

    pub fn mul_monomial(&self, shift: E, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (e.plus(shift), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Re-indexes every term; colliding images are summed.
    pub fn map_terms<F: Exponent>(&self, mut f: impl FnMut(E, i64) -> (F, i64)) -> LaurentPoly<F> {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            let (e2, c2) = f(e, c);
            out.add_term(e2, c2);
        }
        out
    }

    pub fn sum_coefficients(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Poly1 {
    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn span(&self) -> i32 {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    /// x ↦ x^-1
    pub fn invert_variable(&self) -> Self {
        self.map_terms(|e, c| (-e, c))
    }

    pub fn leading_coeff(&self) -> i64 {
        self.terms.values().next_back().copied().unwrap_or(0)
    }
}

impl<E: Exponent> Add for &LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn add(self, rhs: Self) -> LaurentPoly<E> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, E::zero(), 1);
        out
    }
}

impl<E: Exponent> Sub for &LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn sub(self, rhs: Self) -> LaurentPoly<E> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, E::zero(), -1);
        out
    }
}

impl<E: Exponent> Mul for &LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn mul(self, rhs: Self) -> LaurentPoly<E> {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_assign_scaled(rhs, e, c);
        }
        out
    }
}

impl<E: Exponent> Neg for &LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn neg(self) -> LaurentPoly<E> {
        self.mul_monomial(E::zero(), -1)
    }
}

impl<E: Exponent> Add for LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn add(self, rhs: Self) -> LaurentPoly<E> {
        &self + &rhs
    }
}

impl<E: Exponent> Sub for LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn sub(self, rhs: Self) -> LaurentPoly<E> {
        &self - &rhs
    }
}

impl<E: Exponent> Mul for LaurentPoly<E> {
    type Output = LaurentPoly<E>;
    fn mul(self, rhs: Self) -> LaurentPoly<E> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cancels_to_zero() {
        let a = Poly1::from_terms([(-1, 2), (3, -1)]);
        let b = &a - &a;
        assert!(b.is_zero());
        assert_eq!((&a + &a).coeff(-1), 4);
    }

    #[test]
    fn product_of_binomials() {
        let x = Poly1::from_terms([(1, 1), (-1, -1)]);
        let sq = &x * &x;
        assert_eq!(sq, Poly1::from_terms([(2, 1), (0, -2), (-2, 1)]));
        assert_eq!(x.pow(2), sq);
        assert_eq!(sq.span(), 4);
    }

    #[test]
    fn two_variable_monomials() {
        let p = Poly2::from_terms([([2, 0], 2), ([4, 0], -1), ([2, 2], 1)]);
        let q = p.map_terms(|[a, b], c| ([-a, b], c));
        assert_eq!(q.coeff([-4, 0]), -1);
        assert_eq!(p.sum_coefficients(), 2);
    }
}
