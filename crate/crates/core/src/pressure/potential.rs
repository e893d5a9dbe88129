//! Locally constant potentials on the full `ν`-shift over `{1, …, ν}`.

use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result, Symbol};

/// `f(x) = values[x_0 … x_{r-1}]`, a function of the `r` coordinates starting
/// at the origin. Words are indexed big-endian in base `ν` on the digits
/// `x_i - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    nu: u32,
    range: usize,
    values: Vec<f64>,
}

impl Potential {
    pub fn new(nu: u32, range: usize, values: Vec<f64>) -> Result<Self> {
        if nu < 2 {
            return Err(Error::InvalidParams(format!("nu must be at least 2, got {nu}")));
        }
        if range < 1 {
            return Err(Error::InvalidParams("potential range must be at least 1".into()));
        }
        let expected = (nu as usize)
            .checked_pow(range as u32)
            .ok_or_else(|| Error::InvalidParams(format!("ν^r too large for r = {range}")))?;
        if values.len() != expected {
            return Err(Error::InvalidParams(format!(
                "potential of range {range} needs {expected} values, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("potential value {v} is not finite")));
        }
        Ok(Potential { nu, range, values })
    }

    pub fn constant(nu: u32, c: f64) -> Result<Self> {
        Potential::new(nu, 1, alloc::vec![c; nu as usize])
    }

    /// Builds the table from a function of the `r`-word (symbols `1..=ν`).
    pub fn from_fn(nu: u32, range: usize, mut f: impl FnMut(&[Symbol]) -> f64) -> Result<Self> {
        let size = (nu as usize).pow(range as u32);
        let mut word = alloc::vec![0; range];
        let values = (0..size)
            .map(|idx| {
                let mut rest = idx;
                for slot in word.iter_mut().rev() {
                    *slot = (rest % nu as usize) as Symbol + 1;
                    rest /= nu as usize;
                }
                f(&word)
            })
            .collect();
        Potential::new(nu, range, values)
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn inf(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Index of a word over digits `0..ν`; shorter words are padded with
    /// digit 0 (the smallest symbol).
    pub(crate) fn index_of_digits(&self, digits: &[u32]) -> usize {
        debug_assert!(digits.len() <= self.range);
        let nu = self.nu as usize;
        let mut idx = 0;
        for t in 0..self.range {
            idx = idx * nu + digits.get(t).copied().unwrap_or(0) as usize;
        }
        idx
    }

    /// `f` on a word over `1..=ν` of length at most `r`, padded on the right
    /// with symbol 1.
    pub fn eval(&self, word: &[Symbol]) -> Result<f64> {
        if word.len() > self.range {
            return Err(Error::Domain(format!(
                "word of length {} exceeds range {}",
                word.len(),
                self.range
            )));
        }
        if let Some(&s) = word.iter().find(|&&s| s < 1 || s > self.nu) {
            return Err(Error::InvalidSymbol { symbol: s, max: self.nu });
        }
        let digits: Vec<u32> = word.iter().map(|s| s - 1).collect();
        Ok(self.values[self.index_of_digits(&digits)])
    }

    /// The same function viewed as a potential of a larger range.
    pub fn lift(&self, range: usize) -> Result<Self> {
        if range < self.range {
            return Err(Error::Domain(format!("cannot lift range {} down to {range}", self.range)));
        }
        let shift = (self.nu as usize).pow((range - self.range) as u32);
        let size = self.values.len() * shift;
        Potential::new(self.nu, range, (0..size).map(|i| self.values[i / shift]).collect())
    }

    /// `C` with `var_n f ≤ C·θ^n` for every `n`: `2(max − min)·θ^{-r}`.
    pub fn holder_constant(&self, theta: f64) -> Result<f64> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::Domain(format!("θ = {theta} must lie in (0, 1)")));
        }
        Ok(2.0 * (self.sup() - self.inf()) * libm::pow(theta, -(self.range as f64)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_lookup() {
        let f = Potential::new(3, 1, alloc::vec![0.0, -0.05, -0.1]).unwrap();
        assert_eq!(f.sup(), 0.0);
        assert_eq!(f.inf(), -0.1);
        assert_eq!(f.eval(&[2]).unwrap(), -0.05);
        assert!(f.eval(&[4]).is_err());
        assert!(f.eval(&[1, 1]).is_err());
        assert!(Potential::new(3, 1, alloc::vec![0.0; 2]).is_err());
        assert!(Potential::new(3, 1, alloc::vec![0.0, f64::NAN, 1.0]).is_err());
        assert!(Potential::new(1, 1, alloc::vec![0.0]).is_err());
    }

    #[test]
    fn from_fn_is_big_endian() {
        let f = Potential::from_fn(2, 2, |w| (10 * w[0] + w[1]) as f64).unwrap();
        assert_eq!(f.values(), &[11.0, 12.0, 21.0, 22.0]);
        assert_eq!(f.eval(&[2, 1]).unwrap(), 21.0);
        assert_eq!(f.eval(&[2]).unwrap(), 21.0);
    }

    #[test]
    fn lifting_ignores_new_coordinates() {
        let f = Potential::new(3, 1, alloc::vec![1.0, 2.0, 3.0]).unwrap();
        let g = f.lift(3).unwrap();
        assert_eq!(g.range(), 3);
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    assert_eq!(g.eval(&[a, b, c]).unwrap(), f.eval(&[a]).unwrap());
                }
            }
        }
        assert!(g.lift(2).is_err());
    }

    #[test]
    fn holder_constant_bounds_oscillation() {
        let f = Potential::new(2, 2, alloc::vec![0.0, 1.0, -1.0, 0.5]).unwrap();
        let c = f.holder_constant(0.5).unwrap();
        assert_eq!(c, 2.0 * 2.0 * 4.0);
        assert!(f.holder_constant(1.0).is_err());
        assert_eq!(Potential::constant(2, 3.0).unwrap().holder_constant(0.3).unwrap(), 0.0);
    }
}
