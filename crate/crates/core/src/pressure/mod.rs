//! Potentials, their extension to the shift, and pressure.
//!
//! A base potential `f` lives on the full shift over `{1, …, ν}`. Its
//! extension `g` agrees with `f` on every embedded colour class (after
//! translating symbols down to colour 1) and equals `sup f` at zeros.
//! [`partition_function`] sums `exp` of ergodic sums of `g` over all
//! admissible words; [`equilibrium_states_report`] builds the Gibbs state of
//! `f` on every colour class.

mod equilibrium;
mod extension;
mod partition;
mod potential;
mod transfer;

use crate::{Error, Result, ShiftParams, Tau};

pub use equilibrium::{
    equilibrium_states_report, infinite_family_report, EquilibriumReport, GibbsState, InfiniteFamilyReport,
    ThresholdCheck,
};
pub use extension::{variation_profile, ExtendedPotential};
pub use partition::{partition_function, partition_series, PressureReport, PARTITION_MAX_N};
pub use potential::Potential;
pub use transfer::{base_pressure, perron, BasePressure, PerronData};

/// Precision of rational thresholds.
pub const TAU_PRECISION: f64 = 1e-6;

/// Constant `c` in `log(cν)` used by the proofs: 3 for two colours, 5 for
/// more. `None` for a single colour.
pub fn threshold_constant(colors: u32) -> Option<u32> {
    match colors {
        0 | 1 => None,
        2 => Some(3),
        _ => Some(5),
    }
}

/// Constant of the stated (rather than proved) threshold, `log(4ν)`.
pub const STATEMENT_CONSTANT: u32 = 4;

/// Rational upper bound of `log(cν)/(P_1(f) − sup f) − 1`, clamped at 0.
pub fn required_tau(f: &Potential, c: u32) -> Result<Tau> {
    let p = base_pressure(f).value;
    let margin = p - f.sup();
    if margin.is_nan() || margin <= 0.0 {
        return Err(Error::Precondition(alloc::format!(
            "P_1(f) = {p} does not exceed sup f = {}",
            f.sup()
        )));
    }
    let x = libm::log(f64::from(c) * f64::from(f.nu())) / margin - 1.0;
    Tau::upper_bound_of(x.max(0.0), TAU_PRECISION)
}

/// `log c / log ν`, the entropy threshold for `τ`.
pub fn entropy_threshold(nu: u32, c: u32) -> f64 {
    libm::log(f64::from(c)) / libm::log(f64::from(nu))
}

/// Rational upper bound of [`entropy_threshold`].
pub fn entropy_threshold_tau(nu: u32, c: u32) -> Result<Tau> {
    Tau::upper_bound_of(entropy_threshold(nu, c), TAU_PRECISION)
}

/// `P_1(f) − sup f − log 2`; positive when several equilibrium states are
/// guaranteed.
pub fn gap_margin(f: &Potential) -> f64 {
    base_pressure(f).value - f.sup() - core::f64::consts::LN_2
}

/// Whether `params.tau()` meets the threshold for `f` with the proofs' constant.
pub fn tau_condition(f: &Potential, params: &ShiftParams) -> Result<Option<ThresholdCheck>> {
    threshold_constant(params.colors())
        .map(|c| ThresholdCheck::new(f, c, params.tau()))
        .transpose()
}
