//! The property and acceptance suite behind `subshift verify`.

use std::f64::consts::LN_2;
use std::time::Instant;

use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use subshift_core::bigmath::{binomial, ln_biguint};
use subshift_core::enumeration::{
    arrangements_p, bicolored_bound, brute, compositions, count_layers, entropy_estimate, gap_placements_q,
    satisfies_full_shift_lower_bound,
};
use subshift_core::language::{is_admissible, random_admissible_word};
use subshift_core::measures::{empirical_block_entropy, mutual_singularity_witness, sample_path, seeded_rng, BernoulliMeasure};
use subshift_core::mixing::minimal_mixing_gap;
use subshift_core::pressure::{
    base_pressure, equilibrium_states_report, infinite_family_report, partition_function, required_tau,
    variation_profile, ExtendedPotential, Potential,
};
use subshift_core::{Result as CoreResult, ShiftParams, Tau};

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type Check = fn(u64) -> CoreResult<(bool, String)>;

const CHECKS: [(&str, Check); 11] = [
    ("oracle equivalence", oracle_equivalence),
    ("arrangement and gap formulas", combinatorial_formulas),
    ("full-shift lower bound", full_shift_lower_bound),
    ("entropy convergence", entropy_convergence),
    ("bicoloured growth bound", bicolored_growth),
    ("mixing gaps", mixing_gaps),
    ("maximal-entropy measures", max_entropy_measures),
    ("base pressure", base_pressure_exactness),
    ("pressure on the shift", pressure_on_shift),
    ("extension regularity", extension_regularity),
    ("equilibrium states", equilibrium_states),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs every check (concurrently) and returns the outcomes in order.
pub fn run_suite(seed: u64) -> Vec<CheckOutcome> {
    CHECKS
        .par_iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let start = Instant::now();
            let (passed, detail) = match check(seed) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome { id: i + 1, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
        })
        .collect()
}

fn params(nu: u32, tau: Tau, colors: u32) -> ShiftParams {
    ShiftParams::new(nu, tau, colors).expect("suite parameters are valid")
}

fn oracle_equivalence(_: u64) -> CoreResult<(bool, String)> {
    let sets = [(2, 1, 2), (2, 2, 2), (2, 1, 3), (3, 1, 2)];
    let results: Vec<CoreResult<Option<String>>> = sets
        .par_iter()
        .map(|&(nu, tau, colors)| {
            let p = params(nu, Tau::integer(tau), colors);
            let layers = count_layers(10, &p);
            for n in 0..=10 {
                let b = brute::count_brute(n, &p, brute::DEFAULT_BUDGET)?;
                if BigUint::from(b) != layers.total[n] {
                    return Ok(Some(format!("(ν,τ,L)=({nu},{tau},{colors}) n={n}: dp {} vs brute {b}", layers.total[n])));
                }
            }
            Ok(None)
        })
        .collect();
    for r in results {
        if let Some(msg) = r? {
            return Ok((false, msg));
        }
    }
    Ok((true, "count_dp equals brute force for n ≤ 10 on all four parameter sets".into()))
}

fn combinatorial_formulas(_: u64) -> CoreResult<(bool, String)> {
    for ell in 1..=8usize {
        for k in 1..=ell {
            let p = arrangements_p(k, ell)?;
            if p != binomial(ell as u64 - 1, k as u64 - 1) || p != BigUint::from(compositions(ell, k).len()) {
                return Ok((false, format!("P({k},{ell}) = {p}")));
            }
        }
    }
    for k in 1..=8usize {
        for m in 0..=8i64 {
            let q = gap_placements_q(k, m)?;
            // distributions of m zeros into k + 1 slots
            let direct = (0..=m as usize).map(|first| compositions(m as usize - first + k, k).len()).sum::<usize>();
            if q != binomial(m as u64 + k as u64, k as u64) || q != BigUint::from(direct) {
                return Ok((false, format!("Q({k},{m}) = {q}, direct {direct}")));
            }
        }
    }
    Ok((true, "P and Q match binomials and direct enumeration for k ≤ ℓ ≤ 8, m ≤ 8".into()))
}

fn full_shift_lower_bound(_: u64) -> CoreResult<(bool, String)> {
    for (nu, tau, colors) in [(2, 1, 1), (2, 1, 2), (2, 2, 2), (2, 1, 3), (3, 1, 2)] {
        let p = params(nu, Tau::integer(tau), colors);
        let layers = count_layers(12, &p);
        for (n, c) in layers.total.iter().enumerate() {
            if !satisfies_full_shift_lower_bound(n, c, &p) {
                return Ok((false, format!("(ν,τ,L)=({nu},{tau},{colors}) n={n}: {c}")));
            }
        }
    }
    Ok((true, "|W_n| ≥ L·ν^n for n ≤ 12, strictly for L ≥ 2".into()))
}

fn entropy_convergence(_: u64) -> CoreResult<(bool, String)> {
    let mut detail = Vec::new();
    let mut ok = true;
    for (tau, colors) in [(2, 2), (3, 3)] {
        let e = entropy_estimate(500, &params(2, Tau::integer(tau), colors))?;
        ok &= e.rate >= LN_2 && e.rate <= LN_2 + 0.05;
        detail.push(format!("τ={tau} L={colors}: rate {:.6}", e.rate));
    }
    Ok((ok, format!("{} (bracket [{LN_2:.6}, {:.6}])", detail.join(", "), LN_2 + 0.05)))
}

fn bicolored_growth(_: u64) -> CoreResult<(bool, String)> {
    let p = params(2, Tau::integer(2), 2);
    let layers = count_layers(400, &p);
    let bound = bicolored_bound(&p).expect("two colours");
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [100usize, 200, 400] {
        let nf = n as f64;
        let rate = ln_biguint(&layers.multi[n]) / nf;
        let limit = bound + 5.0 * nf.ln() / nf;
        ok &= rate <= limit;
        detail.push(format!("n={n}: {rate:.4} ≤ {limit:.4}"));
    }
    Ok((ok, detail.join(", ")))
}

fn ceil_tau_plus_one(tau: Tau, x: usize) -> usize {
    ((u128::from(tau.numer()) + u128::from(tau.denom())) * x as u128).div_ceil(u128::from(tau.denom())) as usize
}

fn mixing_gaps(seed: u64) -> CoreResult<(bool, String)> {
    let p = params(2, Tau::integer(1), 2);
    let mut rng = seeded_rng(seed);
    let pairs: Vec<_> = (0..100)
        .map(|_| {
            let la = rng.gen_range(1..=6);
            let lb = rng.gen_range(1..=6);
            (random_admissible_word(la, &p, &mut rng), random_admissible_word(lb, &p, &mut rng))
        })
        .collect();
    let outcomes: Vec<CoreResult<(Option<String>, f64)>> = pairs
        .par_iter()
        .map(|(eta, omega)| {
            let bound = ceil_tau_plus_one(p.tau(), eta.len() + 2 + omega.len());
            let r = minimal_mixing_gap(eta, omega, &p, bound + 30)?;
            let covered = r.certificates.len() == bound + 30 + 1 - r.n_min;
            let ratio = r.n_min as f64 / bound as f64;
            if r.n_min > bound || !covered {
                return Ok((Some(format!("η = {eta}, ω = {omega}: N_min {} vs bound {bound}", r.n_min)), ratio));
            }
            Ok((None, ratio))
        })
        .collect();
    let mut worst = 0.0f64;
    for r in outcomes {
        let (failure, ratio) = r?;
        if let Some(msg) = failure {
            return Ok((false, msg));
        }
        worst = worst.max(ratio);
    }
    Ok((true, format!("100 pairs connected up to bound + 30; max N_min / bound = {worst:.3}")))
}

fn max_entropy_measures(seed: u64) -> CoreResult<(bool, String)> {
    let mut worst: f64 = 0.0;
    for nu in [2u32, 3] {
        let p = params(nu, Tau::integer(1), 3);
        let measures: Vec<_> = (1..=3).map(|j| BernoulliMeasure::max_entropy(j, &p)).collect::<CoreResult<_>>()?;
        for i in 0..3 {
            for j in i + 1..3 {
                if !mutual_singularity_witness(&measures[i], &measures[j])?.disjoint {
                    return Ok((false, format!("ν={nu}: supports of colours {} and {} meet", i + 1, j + 1)));
                }
            }
        }
        for m in &measures {
            let path = sample_path(m, 100_000, seed ^ u64::from(nu));
            if !is_admissible(&path, &p)? {
                return Ok((false, format!("ν={nu}: sampled path is not admissible")));
            }
            for k in [1, 3, 5] {
                let h = empirical_block_entropy(&path, k)?;
                worst = worst.max((h - f64::from(nu).ln()).abs());
            }
        }
    }
    Ok((worst <= 0.05, format!("largest |ĥ − log ν| = {worst:.5}")))
}

fn base_pressure_exactness(_: u64) -> CoreResult<(bool, String)> {
    let zero = base_pressure(&Potential::constant(3, 0.0)?).value;
    let f = Potential::new(3, 1, vec![0.0, -0.05, -0.1])?;
    let pf = base_pressure(&f).value;
    let exact = (1.0 + (-0.05f64).exp() + (-0.1f64).exp()).ln();
    let e1 = (zero - 3f64.ln()).abs();
    let e2 = (pf - exact).abs();
    let gap = pf - f.sup() > LN_2;
    Ok((e1 <= 1e-12 && e2 <= 1e-12 && gap, format!("errors {e1:.1e}, {e2:.1e}; P − sup f = {:.6}", pf - f.sup())))
}

fn pressure_on_shift(_: u64) -> CoreResult<(bool, String)> {
    let p = params(3, Tau::new(3, 2)?, 2);
    let f = Potential::new(3, 1, vec![0.0, -0.05, -0.1])?;
    let tau_ok = p.tau().ratio() >= required_tau(&f, 3)?.ratio();
    let r = partition_function(400, &f, &p)?;
    let p1 = r.base_pressure;
    let in_bracket = r.rate >= p1 && r.rate <= p1 + 0.05;
    let multi_ok = r.log_z_multi / 400.0 <= r.multi_rate_bound.unwrap_or(f64::INFINITY);
    Ok((
        tau_ok && in_bracket && r.stratum_residual <= 1e-9 && multi_ok,
        format!(
            "rate {:.6} vs P_1 {:.6}, stratum residual {:.1e}, multi rate {:.4} ≤ {:.4}",
            r.rate,
            p1,
            r.stratum_residual,
            r.log_z_multi / 400.0,
            r.multi_rate_bound.unwrap_or(f64::NAN)
        ),
    ))
}

fn extension_regularity(seed: u64) -> CoreResult<(bool, String)> {
    let p = params(3, Tau::integer(1), 2);
    let potentials = [
        Potential::new(3, 1, vec![0.0, -0.05, -0.1])?,
        Potential::from_fn(3, 2, |w| 0.1 * f64::from(w[0]) - 0.07 * f64::from(w[1]))?,
    ];
    let mut detail = Vec::new();
    for f in potentials {
        let r = f.range();
        let g = ExtendedPotential::new(f, p)?;
        let var = variation_profile(&g, r + 2, 10_000, seed)?;
        if var[r..].iter().any(|&v| v != 0.0) {
            return Ok((false, format!("range {r}: {var:?}")));
        }
        detail.push(format!("r={r}: var = {}", var.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>().join(",")));
    }
    Ok((true, detail.join("; ")))
}

fn equilibrium_states(_: u64) -> CoreResult<(bool, String)> {
    let f = Potential::new(3, 1, vec![0.0, -0.05, -0.1])?;
    for (colors, tau) in [(2, Tau::new(3, 2)?), (3, Tau::integer(2))] {
        let report = equilibrium_states_report(&f, &params(3, tau, colors))?;
        let p0 = report.states[0].pressure;
        let same = report.states.iter().all(|s| s.pressure == p0);
        let disjoint = report.witnesses.iter().all(|w| w.disjoint);
        if report.states.len() != colors as usize || !same || !disjoint {
            return Ok((false, format!("L={colors}: {} states, equal pressures {same}, disjoint {disjoint}", report.states.len())));
        }
    }
    let family = infinite_family_report(&f, &params(3, Tau::integer(2), 1), 5, 12, 6)?;
    Ok((family.monotone, format!("L=2,3 reports consistent; R_L(12) for L ≤ 6 monotone: {}", family.monotone)))
}
