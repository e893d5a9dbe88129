//! Counting admissible words and estimating topological entropy.
//!
//! Four independent routes produce `|W_n|`:
//!
//! | route | module | cost |
//! |---|---|---|
//! | prefix-pruned brute force | [`brute`] | `~(Lν+1)·Σ|W_k|` membership tests |
//! | symbol automaton | [`automaton`] | `O(L·n³)` |
//! | block convolution | [`convolution`] | `O(L·n³/6)` |
//! | explicit compositions | [`closed_form`] | `O(2^n)` |
//!
//! [`count_dp`] is the convolution; the others exist to check it.

pub mod automaton;
pub mod brute;
pub mod closed_form;
pub mod convolution;

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::bigmath::ln_biguint;
use crate::weight::Strata;
use crate::{Error, Result, ShiftParams};

pub use brute::{count_brute, enumerate_brute, DEFAULT_BUDGET};
pub use closed_form::{arrangements_p, closed_form_strata, color_walks, compositions, gap_placements_q};

fn counting_blocks(n_max: usize, params: &ShiftParams) -> convolution::BlockModel<BigUint> {
    let nu = BigUint::from(params.nu());
    let mut block = Vec::with_capacity(n_max + 1);
    let mut acc = BigUint::one();
    for _ in 0..=n_max {
        block.push(acc.clone());
        acc *= &nu;
    }
    convolution::BlockModel { block, zero: BigUint::one() }
}

/// Exact counts for every length `0..=n_max`, split into all-zero, one-block
/// and multi-block words.
pub fn count_layers(n_max: usize, params: &ShiftParams) -> convolution::Layers<BigUint> {
    convolution::run(n_max, params, &counting_blocks(n_max, params))
}

/// `|W_n|` by block convolution.
pub fn count_dp(n: usize, params: &ShiftParams) -> BigUint {
    count_layers(n, params).total.swap_remove(n)
}

/// `|W_n|` for all `n ≤ n_max` by the symbol automaton.
pub fn count_automaton(n_max: usize, params: &ShiftParams) -> automaton::AutomatonTotals<BigUint> {
    let model = automaton::SymbolModel::uniform(BigUint::from(params.nu()), BigUint::one());
    automaton::run(n_max, params, &model)
}

/// Words using at least two colours (`|W″_n|`).
pub fn bicolored_count(n: usize, params: &ShiftParams) -> BigUint {
    count_layers(n, params).multi.swap_remove(n)
}

/// One colour plus optional leading/trailing zeros, summed over colours:
/// `L · Σ_{ℓ=1}^{n} (n - ℓ + 1) ν^ℓ`.
pub fn one_color_count(n: usize, params: &ShiftParams) -> BigUint {
    let nu = BigUint::from(params.nu());
    let per_color: BigUint = (1..=n)
        .map(|ell| BigUint::from(n - ell + 1) * nu.clone().pow(ell as u32))
        .sum();
    per_color * params.colors()
}

/// Counts by `(k, ℓ)` from the convolution run over [`Strata`] weights.
pub fn stratified_counts(n_max: usize, params: &ShiftParams) -> Vec<Strata> {
    let nu = BigUint::from(params.nu());
    let block = (0..=n_max)
        .map(|b| Strata::monomial(1, b, nu.clone().pow(b as u32)))
        .collect();
    let model = convolution::BlockModel { block, zero: <Strata as crate::weight::Weight>::one() };
    convolution::run(n_max, params, &model).total
}

/// `R_L(n)`: words over `{0, …, L_trunc·ν}` of the colour chain.
pub fn truncated_count_rl(n: usize, l_trunc: u32, params: &ShiftParams) -> Result<BigUint> {
    if l_trunc < 1 {
        return Err(Error::Domain(alloc::format!("truncation level must be ≥ 1, got {l_trunc}")));
    }
    Ok(count_dp(n, &params.with_colors(l_trunc)?))
}

/// Exact word counts by length.
#[derive(Debug, Clone)]
pub struct CountTable {
    pub params: ShiftParams,
    pub counts: Vec<BigUint>,
    pub bicolored: Vec<BigUint>,
    pub strata: Option<Vec<Strata>>,
}

impl CountTable {
    pub fn build(n_max: usize, params: &ShiftParams, stratify: bool) -> Self {
        let layers = count_layers(n_max, params);
        CountTable {
            params: *params,
            counts: layers.total,
            bicolored: layers.multi,
            strata: stratify.then(|| stratified_counts(n_max, params)),
        }
    }

    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn estimate(&self, n: usize) -> EntropyEstimate {
        EntropyEstimate::from_count(n, &self.counts[n], &self.params)
    }
}

/// `max(log 2, log(cν)/(τ+1))` with `c = 3` for two colours and `c = 5`
/// beyond; `None` for a single colour (no multi-colour words).
pub fn bicolored_bound(params: &ShiftParams) -> Option<f64> {
    let c = match params.colors() {
        1 => return None,
        2 => 3.0,
        _ => 5.0,
    };
    let nu = f64::from(params.nu());
    Some(f64::max(core::f64::consts::LN_2, libm::log(c * nu) / (params.tau().to_f64() + 1.0)))
}

/// `max(log ν, bicolored bound)`, the asymptotic upper bound on entropy.
pub fn entropy_bound(params: &ShiftParams) -> f64 {
    let log_nu = libm::log(f64::from(params.nu()));
    bicolored_bound(params).map_or(log_nu, |b| b.max(log_nu))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyEstimate {
    pub n: usize,
    pub count: BigUint,
    pub log_count: f64,
    /// `log |W_n| / n`.
    pub rate: f64,
    /// `log ν`, the entropy of each embedded full shift.
    pub lower_bound: f64,
    pub bicolored_bound: Option<f64>,
    pub entropy_bound: f64,
}

impl EntropyEstimate {
    fn from_count(n: usize, count: &BigUint, params: &ShiftParams) -> Self {
        let log_count = ln_biguint(count);
        EntropyEstimate {
            n,
            count: count.clone(),
            log_count,
            rate: if n == 0 { 0.0 } else { log_count / n as f64 },
            lower_bound: libm::log(f64::from(params.nu())),
            bicolored_bound: bicolored_bound(params),
            entropy_bound: entropy_bound(params),
        }
    }
}

pub fn entropy_estimate(n: usize, params: &ShiftParams) -> Result<EntropyEstimate> {
    if n == 0 {
        return Err(Error::Domain("entropy estimate needs n ≥ 1".into()));
    }
    Ok(EntropyEstimate::from_count(n, &count_dp(n, params), params))
}

/// Estimates for `n = 1..=n_max` from a single DP run.
pub fn entropy_series(n_max: usize, params: &ShiftParams) -> Vec<EntropyEstimate> {
    let table = CountTable::build(n_max, params, false);
    (1..=n_max).map(|n| table.estimate(n)).collect()
}

/// `|W_n| ≥ L·ν^n`, strict when `L ≥ 2` and `n ≥ 1`.
pub fn satisfies_full_shift_lower_bound(n: usize, count: &BigUint, params: &ShiftParams) -> bool {
    let floor = BigUint::from(params.colors()) * BigUint::from(params.nu()).pow(n as u32);
    if params.colors() >= 2 && n >= 1 {
        *count > floor
    } else {
        *count >= floor || (n == 0 && count.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::Tau;

    fn p(nu: u32, tau: Tau, colors: u32) -> ShiftParams {
        ShiftParams::new(nu, tau, colors).unwrap()
    }

    #[test]
    fn small_examples() {
        let params = p(2, Tau::integer(1), 2);
        assert_eq!(enumerate_brute(0, &params, DEFAULT_BUDGET).unwrap(), [crate::Word::empty()]);
        let one: Vec<_> = enumerate_brute(1, &params, DEFAULT_BUDGET).unwrap();
        assert_eq!(one.len(), 5);
        assert_eq!(count_brute(2, &params, DEFAULT_BUDGET).unwrap(), 17);
        assert_eq!(count_dp(2, &params), BigUint::from(17u32));
        assert_eq!(bicolored_count(4, &params), BigUint::from(8u32));
        // shortest bicoloured word is c 0^g c'
        for n in 0..2 + params.required_gap(1, 1) {
            assert!(bicolored_count(n, &params).is_zero());
        }
    }

    #[test]
    fn brute_is_lexicographic_and_budgeted() {
        let params = p(2, Tau::integer(1), 2);
        let words = enumerate_brute(3, &params, DEFAULT_BUDGET).unwrap();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(enumerate_brute(6, &params, 100), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn routes_agree() {
        for (nu, tau, colors) in [
            (2, Tau::integer(1), 2),
            (2, Tau::integer(2), 2),
            (2, Tau::integer(1), 3),
            (3, Tau::integer(1), 2),
            (2, Tau::new(1, 3).unwrap(), 2),
            (2, Tau::zero(), 3),
            (2, Tau::new(3, 2).unwrap(), 1),
        ] {
            let params = p(nu, tau, colors);
            let layers = count_layers(12, &params);
            let auto = count_automaton(12, &params);
            for n in 0..=12 {
                assert_eq!(layers.total[n], auto.total[n], "{params:?} n={n}");
                assert_eq!(layers.multi[n], auto.multi[n], "{params:?} n={n}");
                assert_eq!(layers.one_block[n], one_color_count(n, &params));
                assert_eq!(closed_form_strata(n, &params).total(), layers.total[n]);
                if n <= 6 {
                    let brute = count_brute(n, &params, DEFAULT_BUDGET).unwrap();
                    assert_eq!(layers.total[n], BigUint::from(brute), "{params:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn strata_match_closed_form() {
        let params = p(2, Tau::new(2, 3).unwrap(), 3);
        let strata = stratified_counts(10, &params);
        for (n, s) in strata.iter().enumerate() {
            assert_eq!(*s, closed_form_strata(n, &params), "n={n}");
        }
    }

    #[test]
    fn single_color_has_no_multi_words() {
        let params = p(3, Tau::integer(1), 1);
        let layers = count_layers(8, &params);
        assert!(layers.multi.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn truncated_counts_are_monotone() {
        let params = p(2, Tau::integer(1), 2);
        let mut prev = BigUint::zero();
        for l in 1..6 {
            let r = truncated_count_rl(15, l, &params).unwrap();
            assert!(r >= prev);
            prev = r;
        }
        assert_eq!(truncated_count_rl(9, 1, &params).unwrap(), one_color_count(9, &params.with_colors(1).unwrap()) + 1u32);
        assert!(truncated_count_rl(3, 0, &params).is_err());
    }

    #[test]
    fn first_coordinate_reading() {
        let params = p(2, Tau::integer(1), 2);
        // words too short for a colour change agree with the chain truncated at L
        for n in 0..4 {
            let fc = count_first_coordinate(n, 1, &params);
            assert_eq!(BigUint::from(fc), truncated_count_rl(n, 1, &params).unwrap());
        }
        // from n = 4 the second colour becomes reachable
        assert!(BigUint::from(count_first_coordinate(4, 1, &params)) > truncated_count_rl(4, 1, &params).unwrap());
    }

    fn count_first_coordinate(n: usize, l: u32, params: &ShiftParams) -> u64 {
        brute::count_first_coordinate(n, l, params, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn bounds_and_estimates() {
        let params = p(2, Tau::integer(2), 2);
        assert_eq!(bicolored_bound(&params), Some(core::f64::consts::LN_2));
        let low = p(2, Tau::new(1, 4).unwrap(), 2);
        assert!((bicolored_bound(&low).unwrap() - libm::log(6.0) / 1.25).abs() < 1e-15);
        assert_eq!(bicolored_bound(&p(2, Tau::zero(), 1)), None);
        let est = entropy_estimate(40, &params).unwrap();
        assert!(est.rate >= est.lower_bound);
        assert!(entropy_estimate(0, &params).is_err());
        let series = entropy_series(30, &params);
        assert_eq!(series.len(), 30);
        for e in &series {
            assert!(satisfies_full_shift_lower_bound(e.n, &e.count, &params));
        }
    }

    #[test]
    fn larger_tau_never_adds_words() {
        let mut prev: Option<Vec<BigUint>> = None;
        for num in 0..8 {
            let params = p(2, Tau::new(num, 2).unwrap(), 3);
            let counts = count_layers(25, &params).total;
            if let Some(prev) = &prev {
                for n in 0..=25 {
                    assert!(counts[n] <= prev[n]);
                }
            }
            prev = Some(counts);
        }
    }
}
