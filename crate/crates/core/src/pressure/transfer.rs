//! Pressure on the full shift through the transfer matrix.
//!
//! For range `r ≥ 2` the states are `(r-1)`-words and `u → v` is allowed when
//! `v` is `u` shifted by one symbol, with weight `e^{f(u·s)}`. The matrix is
//! primitive, so power iteration from the all-ones vector converges and
//! every iterate brackets the spectral radius between the smallest and the
//! largest ratio `(Mx)_u / x_u`.

use alloc::vec::Vec;

use super::Potential;
use crate::bigmath::log_sum_exp;

const MAX_ITERATIONS: usize = 1_000_000;
const TOLERANCE: f64 = 1e-13;

/// Perron data of the transfer matrix scaled by `e^{-sup f}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronData {
    /// Bracket for the spectral radius of the scaled matrix.
    pub radius_lower: f64,
    pub radius_upper: f64,
    /// Right and left eigenvectors, each normalised to maximum 1.
    pub right: Vec<f64>,
    pub left: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasePressure {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

struct Transfer {
    nu: usize,
    states: usize,
    weights: Vec<f64>,
}

impl Transfer {
    fn new(f: &Potential) -> Self {
        let sup = f.sup();
        let nu = f.nu() as usize;
        Transfer {
            nu,
            states: nu.pow(f.range() as u32 - 1),
            weights: f.values().iter().map(|v| libm::exp(v - sup)).collect(),
        }
    }

    fn successor(&self, u: usize, s: usize) -> usize {
        (u % (self.states / self.nu)) * self.nu + s
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (u, yu) in y.iter_mut().enumerate() {
            *yu = (0..self.nu).map(|s| self.weights[u * self.nu + s] * x[self.successor(u, s)]).sum();
        }
    }

    fn apply_transposed(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (u, &xu) in x.iter().enumerate() {
            for s in 0..self.nu {
                y[self.successor(u, s)] += self.weights[u * self.nu + s] * xu;
            }
        }
    }

    fn iterate(&self, transposed: bool) -> (f64, f64, Vec<f64>, usize) {
        let mut x = alloc::vec![1.0; self.states];
        let mut y = alloc::vec![0.0; self.states];
        let (mut lo, mut hi) = (0.0, f64::INFINITY);
        let mut it = 0;
        while it < MAX_ITERATIONS {
            it += 1;
            if transposed {
                self.apply_transposed(&x, &mut y);
            } else {
                self.apply(&x, &mut y);
            }
            lo = f64::INFINITY;
            hi = 0.0;
            for (a, b) in y.iter().zip(&x) {
                let r = a / b;
                lo = f64::min(lo, r);
                hi = f64::max(hi, r);
            }
            let top = y.iter().copied().fold(0.0, f64::max);
            for (xi, yi) in x.iter_mut().zip(&y) {
                *xi = yi / top;
            }
            if hi - lo <= TOLERANCE * hi {
                break;
            }
        }
        (lo, hi, x, it)
    }
}

/// Perron data for a potential of range at least 2.
pub fn perron(f: &Potential) -> PerronData {
    let t = Transfer::new(f);
    let (lo, hi, right, it_r) = t.iterate(false);
    let (lo_t, hi_t, left, it_l) = t.iterate(true);
    PerronData {
        radius_lower: f64::max(lo, lo_t),
        radius_upper: f64::min(hi, hi_t),
        right,
        left,
        iterations: it_r + it_l,
    }
}

/// Pressure of `f` on the full `ν`-shift.
pub fn base_pressure(f: &Potential) -> BasePressure {
    if f.range() == 1 {
        let value = log_sum_exp(f.values());
        return BasePressure { value, lower: value, upper: value, iterations: 0 };
    }
    let data = perron(f);
    let sup = f.sup();
    let lower = libm::log(data.radius_lower) + sup;
    let upper = libm::log(data.radius_upper) + sup;
    BasePressure { value: 0.5 * (lower + upper), lower, upper, iterations: data.iterations }
}
