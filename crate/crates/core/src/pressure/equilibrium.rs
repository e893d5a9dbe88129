//! Gibbs states on the colour classes.
//!
//! For range 1 the Gibbs state of `f` is Bernoulli with weights
//! `e^{f(i)} / Σ e^{f}`. For range 2 it is the Markov chain
//! `P_ab = M_ab v_b / (ρ v_a)` with stationary vector `π_a ∝ u_a v_a`, where
//! `u`, `v` are the left and right Perron vectors of `M_ab = e^{f(ab)}`.
//! Colour `j` carries the same chain on the symbols shifted by `(j−1)ν`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{base_pressure, perron, required_tau, threshold_constant, ExtendedPotential, Potential, STATEMENT_CONSTANT};
use crate::enumeration::truncated_count_rl;
use crate::measures::{singularity_from_supports, MarkovMeasure, SingularityWitness};
use crate::{Error, Result, ShiftParams, Tau};

/// `τ ≥ log(cν)/(P_1(f) − sup f) − 1` for one constant `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdCheck {
    pub c: u32,
    pub required: Tau,
    pub tau: Tau,
    pub satisfied: bool,
}

impl ThresholdCheck {
    pub fn new(f: &Potential, c: u32, tau: Tau) -> Result<Self> {
        let required = required_tau(f, c)?;
        Ok(ThresholdCheck { c, required, tau, satisfied: tau.ratio() >= required.ratio() })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GibbsState {
    pub color: u32,
    pub measure: MarkovMeasure,
    /// Pressure of the colour's own table.
    pub pressure: f64,
    pub entropy: f64,
    /// `∫ f dμ`.
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub base_pressure: f64,
    pub sup_f: f64,
    /// `P_1(f) − sup f`.
    pub margin: f64,
    pub threshold: ThresholdCheck,
    /// Same inequality with `log(4ν)`, as stated rather than proved.
    pub statement_threshold: ThresholdCheck,
    pub states: Vec<GibbsState>,
    pub witnesses: Vec<SingularityWitness>,
}

fn check_margin(f: &Potential) -> Result<f64> {
    let p = base_pressure(f).value;
    let margin = p - f.sup();
    if margin > core::f64::consts::LN_2 {
        Ok(margin)
    } else {
        Err(Error::Precondition(format!(
            "P_1(f) − sup f = {margin:.6} is not above log 2 = {:.6}",
            core::f64::consts::LN_2
        )))
    }
}

fn gibbs_state(g: &ExtendedPotential, color: u32) -> Result<GibbsState> {
    let table = g.color_table(color)?;
    let nu = table.nu() as usize;
    let first = g.params().first_symbol(color);
    let symbols = (0..nu as u32).map(|a| first + a).collect();
    let pressure = base_pressure(&table).value;
    let (stationary, transition, energy) = match table.range() {
        1 => {
            let p: Vec<f64> = table.values().iter().map(|v| libm::exp(v - pressure)).collect();
            let energy = p.iter().zip(table.values()).map(|(p, v)| p * v).sum();
            (p.clone(), alloc::vec![p; nu], energy)
        }
        2 => {
            let data = perron(&table);
            let sup = table.sup();
            let (u, v) = (&data.left, &data.right);
            let transition: Vec<Vec<f64>> = (0..nu)
                .map(|a| {
                    let row: Vec<f64> = (0..nu).map(|b| libm::exp(table.values()[a * nu + b] - sup) * v[b]).collect();
                    let total: f64 = row.iter().sum();
                    row.into_iter().map(|x| x / total).collect()
                })
                .collect();
            let weights: Vec<f64> = (0..nu).map(|a| u[a] * v[a]).collect();
            let total: f64 = weights.iter().sum();
            let stationary: Vec<f64> = weights.iter().map(|w| w / total).collect();
            let energy = (0..nu)
                .flat_map(|a| (0..nu).map(move |b| (a, b)))
                .map(|(a, b)| stationary[a] * transition[a][b] * table.values()[a * nu + b])
                .sum();
            (stationary, transition, energy)
        }
        r => {
            return Err(Error::Precondition(format!(
                "explicit Gibbs states need range at most 2, got {r}"
            )))
        }
    };
    let measure = MarkovMeasure { symbols, stationary, transition };
    let entropy = measure.entropy_rate();
    Ok(GibbsState { color, measure, pressure, entropy, energy })
}

fn witnesses(states: &[GibbsState]) -> Result<Vec<SingularityWitness>> {
    let mut out = Vec::new();
    for (i, a) in states.iter().enumerate() {
        for b in &states[i + 1..] {
            out.push(singularity_from_supports(a.color, a.measure.support(), b.color, b.measure.support())?);
        }
    }
    Ok(out)
}

/// One Gibbs state per colour, after checking both preconditions.
pub fn equilibrium_states_report(f: &Potential, params: &ShiftParams) -> Result<EquilibriumReport> {
    let Some(c) = threshold_constant(params.colors()) else {
        return Err(Error::Precondition("several equilibrium states need at least two colours".into()));
    };
    let margin = check_margin(f)?;
    let threshold = ThresholdCheck::new(f, c, params.tau())?;
    if !threshold.satisfied {
        return Err(Error::Precondition(format!(
            "τ = {} is below log({c}ν)/(P_1(f) − sup f) − 1 ≤ {}",
            params.tau(),
            threshold.required
        )));
    }
    let statement_threshold = ThresholdCheck::new(f, STATEMENT_CONSTANT, params.tau())?;
    let g = ExtendedPotential::new(f.clone(), *params)?;
    let states = (1..=params.colors()).map(|j| gibbs_state(&g, j)).collect::<Result<Vec<_>>>()?;
    Ok(EquilibriumReport {
        base_pressure: base_pressure(f).value,
        sup_f: f.sup(),
        margin,
        threshold,
        statement_threshold,
        witnesses: witnesses(&states)?,
        states,
    })
}

/// The countable family: `μ_j` for every colour `j ≥ 1`, each the colour-1
/// Gibbs state moved to the symbols `(j−1)ν+1 … jν`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfiniteFamilyReport {
    pub schema: String,
    pub threshold: ThresholdCheck,
    /// The first few members of the family.
    pub states: Vec<GibbsState>,
    pub witnesses: Vec<SingularityWitness>,
    pub n: usize,
    /// `(L, R_L(n))` for `L = 1, 2, …`.
    pub truncated_counts: Vec<(u32, BigUint)>,
    pub monotone: bool,
}

pub fn infinite_family_report(
    f: &Potential,
    params: &ShiftParams,
    shown: u32,
    n: usize,
    l_max: u32,
) -> Result<InfiniteFamilyReport> {
    let margin = check_margin(f)?;
    let _ = margin;
    let threshold = ThresholdCheck::new(f, 5, params.tau())?;
    if !threshold.satisfied {
        return Err(Error::Precondition(format!(
            "τ = {} is below log(5ν)/(P_1(f) − sup f) − 1 ≤ {}",
            params.tau(),
            threshold.required
        )));
    }
    let wide = params.with_colors(shown.max(1))?;
    let g = ExtendedPotential::new(f.clone(), wide)?;
    let states = (1..=shown).map(|j| gibbs_state(&g, j)).collect::<Result<Vec<_>>>()?;
    let truncated_counts = (1..=l_max)
        .map(|l| Ok((l, truncated_count_rl(n, l, params)?)))
        .collect::<Result<Vec<_>>>()?;
    let monotone = truncated_counts.windows(2).all(|w| w[0].1 <= w[1].1);
    Ok(InfiniteFamilyReport {
        schema: format!(
            "mu_j(s) = mu_1(s - (j-1)*{nu}) on symbols (j-1)*{nu}+1 ..= j*{nu}, j = 1, 2, 3, ...",
            nu = params.nu()
        ),
        threshold,
        witnesses: witnesses(&states)?,
        states,
        n,
        truncated_counts,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(nu: u32, tau: Tau, colors: u32) -> ShiftParams {
        ShiftParams::new(nu, tau, colors).unwrap()
    }

    #[test]
    fn zero_potential_gives_uniform_bernoulli() {
        let params = p(3, Tau::integer(2), 2);
        let f = Potential::constant(3, 0.0).unwrap();
        let report = equilibrium_states_report(&f, &params).unwrap();
        assert_eq!(report.states.len(), 2);
        for s in &report.states {
            for &q in &s.measure.stationary {
                assert!((q - 1.0 / 3.0).abs() < 1e-15);
            }
            assert!((s.entropy - 3f64.ln()).abs() < 1e-12);
        }
        assert_eq!(report.states[1].measure.symbols, vec![4, 5, 6]);
        assert!(report.witnesses.iter().all(|w| w.disjoint));
    }

    #[test]
    fn range_one_weights() {
        let params = p(3, Tau::new(3, 2).unwrap(), 3);
        let f = Potential::new(3, 1, vec![0.0, -0.05, -0.1]).unwrap();
        // three colours need the log 5ν threshold: ≈ 1.58
        assert!(matches!(equilibrium_states_report(&f, &params), Err(Error::Precondition(_))));
        let params = params.with_tau(Tau::integer(2));
        let report = equilibrium_states_report(&f, &params).unwrap();
        let w: f64 = f.values().iter().map(|v| v.exp()).sum();
        for s in &report.states {
            for (q, v) in s.measure.stationary.iter().zip(f.values()) {
                assert!((q - v.exp() / w).abs() < 1e-15);
            }
            assert_eq!(s.pressure, report.states[0].pressure);
            assert!((s.entropy + s.energy - report.base_pressure).abs() < 1e-12);
        }
        assert_eq!(report.witnesses.len(), 3);
    }

    #[test]
    fn range_two_variational_identity() {
        let params = p(3, Tau::integer(3), 2);
        let f = Potential::new(3, 2, vec![0.0, -0.1, 0.05, -0.2, 0.0, -0.05, 0.02, -0.01, -0.3]).unwrap();
        let report = equilibrium_states_report(&f, &params).unwrap();
        for s in &report.states {
            assert!((s.entropy + s.energy - report.base_pressure).abs() < 1e-10);
            assert_eq!(s.pressure, report.states[0].pressure);
            for row in &s.measure.transition {
                assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
        // lifting a range-1 potential reproduces the Bernoulli state
        let f1 = Potential::new(3, 1, vec![0.0, -0.05, -0.1]).unwrap();
        let a = equilibrium_states_report(&f1, &params).unwrap();
        let b = equilibrium_states_report(&f1.lift(2).unwrap(), &params).unwrap();
        for (x, y) in a.states[0].measure.stationary.iter().zip(&b.states[0].measure.stationary) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn preconditions() {
        let f = Potential::new(2, 1, vec![0.0, -3.0]).unwrap();
        let err = equilibrium_states_report(&f, &p(2, Tau::integer(10), 2)).unwrap_err();
        assert!(format!("{err}").contains("log 2"));
        let f = Potential::constant(3, 0.0).unwrap();
        assert!(equilibrium_states_report(&f, &p(3, Tau::new(1, 2).unwrap(), 2)).is_err());
        assert!(equilibrium_states_report(&f, &p(3, Tau::integer(2), 1)).is_err());
        assert!(equilibrium_states_report(&f.lift(3).unwrap(), &p(3, Tau::integer(2), 2)).is_err());
    }

    #[test]
    fn infinite_family() {
        let params = p(3, Tau::integer(2), 1);
        let f = Potential::constant(3, 0.0).unwrap();
        let r = infinite_family_report(&f, &params, 4, 8, 4).unwrap();
        assert_eq!(r.states.len(), 4);
        assert_eq!(r.states[3].measure.symbols, vec![10, 11, 12]);
        assert!(r.monotone);
        assert_eq!(r.truncated_counts.len(), 4);
        assert_eq!(r.witnesses.len(), 6);
    }
}
