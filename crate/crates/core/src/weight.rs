//! Commutative semirings used as DP weights.
//!
//! The counting engines in [`crate::enumeration`] are generic over
//! [`Weight`]: exact counts use [`BigUint`], partition functions use `f64`,
//! and [`Strata`] tracks the number of blocks `k` and coloured symbols `ℓ`.

use alloc::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub trait Weight: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;

    /// `self += a · b`.
    fn add_product(&mut self, a: &Self, b: &Self) {
        self.add_assign(&a.mul(b));
    }

    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Weight for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_one() {
            *self += b;
        } else if b.is_one() {
            *self += a;
        } else {
            *self += a * b;
        }
    }

    fn pow(&self, e: usize) -> Self {
        num_traits::Pow::pow(self, e)
    }
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn pow(&self, e: usize) -> Self {
        libm::pow(*self, e as f64)
    }
}

/// Bivariate polynomial `Σ c_{k,ℓ} x^k y^ℓ` with big-integer coefficients,
/// keyed by `(k, ℓ)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Strata(pub BTreeMap<(usize, usize), BigUint>);

impl Strata {
    /// `c · x^k y^ℓ`.
    pub fn monomial(k: usize, ell: usize, c: BigUint) -> Self {
        let mut m = BTreeMap::new();
        if !Zero::is_zero(&c) {
            m.insert((k, ell), c);
        }
        Strata(m)
    }

    pub fn get(&self, k: usize, ell: usize) -> BigUint {
        self.0.get(&(k, ell)).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.0.values().sum()
    }
}

impl Weight for Strata {
    fn zero() -> Self {
        Strata::default()
    }

    fn one() -> Self {
        Strata::monomial(0, 0, One::one())
    }

    fn add_assign(&mut self, other: &Self) {
        for (key, c) in &other.0 {
            *self.0.entry(*key).or_default() += c;
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Strata::default();
        for (&(k1, l1), c1) in &self.0 {
            for (&(k2, l2), c2) in &other.0 {
                *out.0.entry((k1 + k2, l1 + l2)).or_default() += c1 * c2;
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}
