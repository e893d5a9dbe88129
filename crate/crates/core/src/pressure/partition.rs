//! Partition functions on the shift.
//!
//! Each word `α` is read in the point `0^∞ α 0^∞`. Zeros contribute `sup f`,
//! and a block's contribution depends on the block alone, so `Z_n` is the
//! block convolution with block weights from
//! [`ExtendedPotential::block_weights`]. For range 1 the total is recomputed
//! by the symbol automaton, and the one-colour stratum always comes from the
//! closed form `L·Σ_ℓ (n − ℓ + 1)·e^{(n−ℓ) sup f}·B(ℓ)`.

use alloc::vec::Vec;

use super::{base_pressure, threshold_constant, ExtendedPotential, Potential, ThresholdCheck};
use crate::enumeration::{automaton, bicolored_bound, convolution};
use crate::{Error, Result, ShiftParams};

/// Largest `n` accepted by [`partition_series`].
pub const PARTITION_MAX_N: usize = 3000;
const AUTOMATON_MAX_N: usize = 500;
const PILOT_N: usize = 150;

#[derive(Debug, Clone, PartialEq)]
pub struct PressureReport {
    pub n: usize,
    pub log_z: f64,
    /// `log Z_n / n`.
    pub rate: f64,
    /// Monochromatic words of one colour.
    pub log_z_mono: f64,
    /// One colour plus zeros, summed over colours.
    pub log_z_one_color: f64,
    /// At least two colours; `-∞` when there are none.
    pub log_z_multi: f64,
    pub log_z_zero: f64,
    /// `|Z_n − (zero + one colour + multi)| / Z_n`.
    pub stratum_residual: f64,
    pub base_pressure: f64,
    pub sup_f: f64,
    /// `sup f + max(log 2, log(cν)/(τ+1)) + 5 log n / n`.
    pub multi_rate_bound: Option<f64>,
    pub threshold: Option<ThresholdCheck>,
    /// `P_1(f) > sup f + log 2`.
    pub gap_condition: bool,
}

fn ln_scaled(x: f64, n: usize, log_scale: f64) -> f64 {
    if x > 0.0 {
        libm::log(x) + n as f64 * log_scale
    } else {
        f64::NEG_INFINITY
    }
}

struct Sums {
    total: Vec<f64>,
    multi: Vec<f64>,
    one: Vec<f64>,
    mono: Vec<f64>,
    zero: f64,
}

fn sums(n_max: usize, g: &ExtendedPotential, log_scale: f64) -> Result<Sums> {
    let params = g.params();
    let sup = g.base().sup();
    let block = g.block_weights(n_max, log_scale)?;
    let zero = libm::exp(sup - log_scale);
    let layers = convolution::run(n_max, params, &convolution::BlockModel { block: block.clone(), zero });
    let total = if g.base().range() == 1 && n_max <= AUTOMATON_MAX_N {
        let model = automaton::SymbolModel::uniform(block.get(1).copied().unwrap_or(0.0), zero);
        automaton::run(n_max, params, &model).total
    } else {
        layers.total
    };
    let colors = f64::from(params.colors());
    let one = (0..=n_max)
        .map(|n| {
            let mut zpow = 1.0;
            let mut acc = 0.0;
            for ell in (1..=n).rev() {
                acc += (n - ell + 1) as f64 * zpow * block[ell];
                zpow *= zero;
            }
            colors * acc
        })
        .collect();
    Ok(Sums { total, multi: layers.multi, one, mono: block, zero })
}

/// Reports for `n = 1..=n_max` from one pass.
pub fn partition_series(n_max: usize, f: &Potential, params: &ShiftParams) -> Result<Vec<PressureReport>> {
    if n_max > PARTITION_MAX_N {
        return Err(Error::BudgetExceeded { required: n_max as u128, budget: PARTITION_MAX_N as u128 });
    }
    if n_max == 0 {
        return Err(Error::Domain("partition function needs n ≥ 1".into()));
    }
    let g = ExtendedPotential::new(f.clone(), *params)?;
    let p1 = base_pressure(f).value;
    let sup = f.sup();
    // a pilot run fixes the scale near the true growth rate so that long
    // runs stay inside the range of f64
    let pilot_scale = p1.max(sup);
    let pilot_n = n_max.min(PILOT_N);
    let pilot = sums(pilot_n, &g, pilot_scale)?;
    let log_scale = ln_scaled(pilot.total[pilot_n], pilot_n, pilot_scale) / pilot_n as f64;
    let log_scale = if log_scale.is_finite() { log_scale.max(pilot_scale) } else { pilot_scale };
    let s = sums(n_max, &g, log_scale)?;

    let threshold = threshold_constant(params.colors())
        .map(|c| ThresholdCheck::new(f, c, params.tau()))
        .transpose()
        .ok()
        .flatten();
    let gap_condition = p1 - sup > core::f64::consts::LN_2;
    let bic = bicolored_bound(params);
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let total = s.total[n];
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::Domain(alloc::format!("partition sum at n = {n} left the floating range")));
        }
        let zero_n = libm::pow(s.zero, n as f64);
        let residual = ((total - (zero_n + s.one[n] + s.multi[n])) / total).abs();
        let nf = n as f64;
        let log_z = ln_scaled(total, n, log_scale);
        out.push(PressureReport {
            n,
            log_z,
            rate: log_z / nf,
            log_z_mono: ln_scaled(s.mono[n], n, log_scale),
            log_z_one_color: ln_scaled(s.one[n], n, log_scale),
            log_z_multi: ln_scaled(s.multi[n], n, log_scale),
            log_z_zero: nf * sup,
            stratum_residual: residual,
            base_pressure: p1,
            sup_f: sup,
            multi_rate_bound: bic.map(|b| sup + b + 5.0 * libm::log(nf) / nf),
            threshold: threshold.clone(),
            gap_condition,
        });
    }
    Ok(out)
}

pub fn partition_function(n: usize, f: &Potential, params: &ShiftParams) -> Result<PressureReport> {
    let mut series = partition_series(n, f, params)?;
    Ok(series.swap_remove(n - 1))
}
