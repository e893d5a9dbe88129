//! Extension of a base potential to the whole shift.
//!
//! At a zero the extension takes the value `sup f`. At a coloured symbol it
//! looks at the largest `n` such that `x_{-n} … x_n` is monochromatic, caps
//! `n` at `r - 1`, and evaluates `f` on the colour-1 translate of
//! `x_0 … x_n`, padding the remaining coordinates with the smallest symbol
//! of the colour. The result depends on coordinates within radius `r - 1`.

use alloc::vec::Vec;

use rand::Rng;

use super::Potential;
use crate::language::{extend_randomly, is_admissible, random_admissible_word};
use crate::measures::seeded_rng;
use crate::{Error, Result, ShiftParams, Symbol, Word};

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedPotential {
    base: Potential,
    params: ShiftParams,
}

impl ExtendedPotential {
    pub fn new(base: Potential, params: ShiftParams) -> Result<Self> {
        if base.nu() != params.nu() {
            return Err(Error::InvalidParams(alloc::format!(
                "potential is over {} symbols, shift has ν = {}",
                base.nu(),
                params.nu()
            )));
        }
        Ok(ExtendedPotential { base, params })
    }

    pub fn base(&self) -> &Potential {
        &self.base
    }

    pub fn params(&self) -> &ShiftParams {
        &self.params
    }

    /// Value at position `center` of `window`.
    pub fn evaluate(&self, window: &[Symbol], center: usize) -> Result<f64> {
        let r = self.base.range();
        let available = if center < window.len() { center.min(window.len() - 1 - center) } else { 0 };
        if center >= window.len() || available < r {
            return Err(Error::WindowTooShort { required: r, available });
        }
        if !is_admissible(window, &self.params)? {
            return Err(Error::Inadmissible(alloc::format!("{}", Word::from(window))));
        }
        Ok(self.evaluate_unchecked(window, center))
    }

    /// Odd-length window evaluated at its middle.
    pub fn evaluate_centered(&self, window: &[Symbol]) -> Result<f64> {
        if window.len().is_multiple_of(2) {
            return Err(Error::Domain("centred window must have odd length".into()));
        }
        self.evaluate(window, window.len() / 2)
    }

    pub(crate) fn evaluate_unchecked(&self, window: &[Symbol], center: usize) -> f64 {
        let x0 = window[center];
        let Some(color) = self.params.color(x0) else {
            return self.base.sup();
        };
        let r = self.base.range();
        let same = |i: usize| window[i] != 0 && self.params.color(window[i]) == Some(color);
        let mut n = 0;
        while n < r - 1 && center > n && center + n + 1 < window.len() && same(center - n - 1) && same(center + n + 1) {
            n += 1;
        }
        let digits: Vec<u32> = (0..=n).map(|t| self.params.base_symbol(window[center + t]) - 1).collect();
        self.base.values()[self.base.index_of_digits(&digits)]
    }

    /// Table of the extension restricted to monochromatic points of colour
    /// `color`, read back on `1..=ν`.
    pub fn color_table(&self, color: u32) -> Result<Potential> {
        if color < 1 || color > self.params.colors() {
            return Err(Error::Domain(alloc::format!("colour {color} outside 1..={}", self.params.colors())));
        }
        let r = self.base.range();
        let offset = self.params.first_symbol(color) - 1;
        let pad = offset + 1;
        Potential::from_fn(self.base.nu(), r, |w| {
            let mut window = alloc::vec![pad; r];
            window.extend(w.iter().map(|s| s + offset));
            window.push(pad);
            self.evaluate_unchecked(&window, r)
        })
    }

    /// Summed weight `Σ_{|β| = b} exp(Σ_i g(σ^i x) − b·log_scale)` over
    /// complete blocks `β` of colour 1 and length `b` inside a zero-padded
    /// point, for `b = 0..=n_max` (entry 0 is 1). Every colour gives the
    /// same values.
    ///
    /// Position `i` of a block sees radius `min(i, b − 1 − i, r − 1)`.
    /// Short blocks are summed directly; longer ones start from all
    /// `2r − 2`-prefixes and then run over the last `r − 1` symbols.
    pub fn block_weights(&self, n_max: usize, log_scale: f64) -> Result<Vec<f64>> {
        let r = self.base.range();
        let nu = self.base.nu() as usize;
        let prefix = 2 * (r - 1);
        if r >= 2 && n_max >= prefix && nu.checked_pow(prefix as u32).is_none_or(|v| v > PREFIX_BUDGET) {
            return Err(Error::BudgetExceeded {
                required: (nu as u128).saturating_pow(prefix as u32),
                budget: PREFIX_BUDGET as u128,
            });
        }
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(1.0);
        if r == 1 {
            let w: f64 = self.base.values().iter().map(|v| libm::exp(v - log_scale)).sum();
            for b in 1..=n_max {
                out.push(out[b - 1] * w);
            }
            return Ok(out);
        }
        for b in 1..=n_max.min(prefix - 1) {
            out.push(self.block_weight_direct(b, log_scale));
        }
        if n_max >= prefix {
            self.block_weights_long(n_max, log_scale, &mut out);
        }
        Ok(out)
    }

    fn digits_of(&self, mut code: usize, len: usize) -> Vec<u32> {
        let nu = self.base.nu() as usize;
        let mut d = alloc::vec![0u32; len];
        for slot in d.iter_mut().rev() {
            *slot = (code % nu) as u32;
            code /= nu;
        }
        d
    }

    fn block_term(&self, digits: &[u32], i: usize, b: usize) -> f64 {
        let m = i.min(b - 1 - i).min(self.base.range() - 1);
        self.base.values()[self.base.index_of_digits(&digits[i..=i + m])]
    }

    fn block_weight_direct(&self, b: usize, log_scale: f64) -> f64 {
        let nu = self.base.nu() as usize;
        (0..nu.pow(b as u32))
            .map(|code| {
                let digits = self.digits_of(code, b);
                libm::exp((0..b).map(|i| self.block_term(&digits, i, b) - log_scale).sum())
            })
            .sum()
    }

    fn block_weights_long(&self, n_max: usize, log_scale: f64, out: &mut Vec<f64>) {
        let r = self.base.range();
        let nu = self.base.nu() as usize;
        let prefix = 2 * (r - 1);
        let states = nu.pow(r as u32 - 1);
        let head = states / nu;
        // positions 0..r-1 of the prefix see their left boundary only
        let mut weight = alloc::vec![0.0; states];
        for code in 0..nu.pow(prefix as u32) {
            let digits = self.digits_of(code, prefix);
            let s: f64 = (0..r - 1).map(|i| self.block_term(&digits, i, usize::MAX) - log_scale).sum();
            weight[code % states] += libm::exp(s);
        }
        // the last r - 1 positions see the right boundary only
        let close: Vec<f64> = (0..states)
            .map(|s| {
                let digits = self.digits_of(s, r - 1);
                let t: f64 = (0..r - 1)
                    .map(|i| self.base.values()[self.base.index_of_digits(&digits[i..])] - log_scale)
                    .sum();
                libm::exp(t)
            })
            .collect();
        let step: Vec<f64> = self.base.values().iter().map(|v| libm::exp(v - log_scale)).collect();
        let mut next = alloc::vec![0.0; states];
        for b in prefix..=n_max {
            if b > prefix {
                next.iter_mut().for_each(|v| *v = 0.0);
                for (s, &w) in weight.iter().enumerate() {
                    for d in 0..nu {
                        next[(s % head) * nu + d] += w * step[s * nu + d];
                    }
                }
                core::mem::swap(&mut weight, &mut next);
            }
            out.push(weight.iter().zip(&close).map(|(w, c)| w * c).sum());
        }
    }
}

const PREFIX_BUDGET: usize = 10_000_000;

/// `var_n` for `n = 0..=radius_max`: the largest `|g(x) − g(y)|` over
/// `samples` random pairs of admissible windows agreeing on `|i| < n`.
pub fn variation_profile(g: &ExtendedPotential, radius_max: usize, samples: usize, seed: u64) -> Result<Vec<f64>> {
    let r = g.base.range();
    if radius_max < r {
        return Err(Error::Domain(alloc::format!("radius_max {radius_max} is below the range {r}")));
    }
    let radius = radius_max + r;
    let len = 2 * radius + 1;
    let mut rng = seeded_rng(seed);
    let mut out = Vec::with_capacity(radius_max + 1);
    for n in 0..=radius_max {
        let mut var: f64 = 0.0;
        for k in 0..samples {
            // every other sample grows x out of a monochromatic core so that
            // long single-colour stretches through the centre are common
            let x = if k % 2 == 0 {
                random_admissible_word(len, &g.params, &mut rng)
            } else {
                let color = rng.gen_range(1..=g.params.colors());
                let first = g.params.first_symbol(color);
                let core_len = rng.gen_range(1..=2 * r + 1);
                let core: Vec<Symbol> = (0..core_len).map(|_| first + rng.gen_range(0..g.params.nu())).collect();
                let left = radius - core_len / 2;
                extend_randomly(&Word::new(core), left, len - left - core_len, &g.params, &mut rng)?
            };
            let y = if n == 0 {
                random_admissible_word(len, &g.params, &mut rng)
            } else {
                let pad = radius + 1 - n;
                extend_randomly(&Word::from(&x[pad..radius + n]), pad, pad, &g.params, &mut rng)?
            };
            var = var.max((g.evaluate_unchecked(&x, radius) - g.evaluate_unchecked(&y, radius)).abs());
        }
        out.push(var);
    }
    Ok(out)
}
