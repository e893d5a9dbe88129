//! Connecting words between cylinders.
//!
//! Given admissible `eta` and `omega`, look for an admissible
//! `eta · fill · omega` with `|fill| = gap`. A non-empty fill may not glue a
//! same-coloured symbol directly onto the last block of `eta` or the first
//! block of `omega`; otherwise two words of one colour would connect at every
//! gap through the full shift of that colour. Gap 0 is plain concatenation.
//!
//! Search order per gap:
//!
//! 1. the all-zero fill,
//! 2. a bridge `0^κ ε 0^λ` (a staircase of single-symbol blocks when the
//!    end colours are further apart), placing the fewest zeros in front,
//! 3. every fill with at most two canonical blocks.

use alloc::vec::Vec;

use crate::language::{admissible_unchecked, is_admissible};
use crate::{Error, Result, ShiftParams, Symbol, Word};

/// Which bound a [`MixingReport`] is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// End colours are neighbours, or one side has no colour: `⌈(1+τ)(|η|+|ω|)⌉`.
    Direct,
    /// Same end colour, one bridging symbol: `⌈(τ+1)(|η|+2+|ω|)⌉`.
    Bridged,
    /// End colours two or more apart: length of the constructed staircase.
    Staircase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub gap: usize,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixingReport {
    pub n_min: usize,
    pub horizon: usize,
    /// Bound of the kind given by `bound_kind`.
    pub bound: usize,
    pub bound_kind: BoundKind,
    /// `⌈(τ+1)(|η|+2+|ω|)⌉`, reported for every pair.
    pub general_bound: usize,
    /// Minimal gap for the bridge construction, when it applies.
    pub constructed_gap: Option<usize>,
    pub within_bound: bool,
    /// One certificate per gap in `n_min..=horizon`, ascending.
    pub certificates: Vec<Certificate>,
}

fn last_color(w: &[Symbol], params: &ShiftParams) -> Option<u32> {
    w.iter().rev().find(|&&s| s != 0).and_then(|&s| params.color(s))
}

fn first_color(w: &[Symbol], params: &ShiftParams) -> Option<u32> {
    w.iter().find(|&&s| s != 0).and_then(|&s| params.color(s))
}

/// Colours of the single-symbol blocks needed between the end colours.
fn bridge_colors(eta: &[Symbol], omega: &[Symbol], params: &ShiftParams) -> Option<Vec<u32>> {
    let (Some(a), Some(b)) = (last_color(eta, params), first_color(omega, params)) else {
        return Some(Vec::new());
    };
    if a == b {
        if a > 1 {
            Some(alloc::vec![a - 1])
        } else if a < params.colors() {
            Some(alloc::vec![a + 1])
        } else {
            None
        }
    } else if a < b {
        Some((a + 1..b).collect())
    } else {
        Some((b + 1..a).rev().collect())
    }
}

fn ceil_times_tau_plus_one(params: &ShiftParams, x: usize) -> usize {
    let tau = params.tau();
    let num = (u128::from(tau.numer()) + u128::from(tau.denom())) * x as u128;
    num.div_ceil(u128::from(tau.denom())) as usize
}

fn fill_respects_ends(eta: &[Symbol], fill: &[Symbol], omega: &[Symbol], params: &ShiftParams) -> bool {
    let same = |x: Option<&Symbol>, y: Option<&Symbol>| match (x, y) {
        (Some(&x), Some(&y)) if x != 0 && y != 0 => params.color(x) == params.color(y),
        _ => false,
    };
    fill.is_empty() || !(same(eta.last(), fill.first()) || same(fill.last(), omega.first()))
}

fn try_fill(eta: &[Symbol], fill: &[Symbol], omega: &[Symbol], params: &ShiftParams) -> Option<Word> {
    if !fill_respects_ends(eta, fill, omega, params) {
        return None;
    }
    let mut w = Vec::with_capacity(eta.len() + fill.len() + omega.len());
    w.extend_from_slice(eta);
    w.extend_from_slice(fill);
    w.extend_from_slice(omega);
    admissible_unchecked(&w, params).then(|| Word::new(w))
}

/// Bridge with the fewest zeros before each intermediate block. Returns the
/// word prefix up to the last bridge symbol.
fn greedy_bridge(eta: &[Symbol], bridge: &[u32], budget: usize, params: &ShiftParams) -> Option<Vec<Symbol>> {
    let mut w = eta.to_vec();
    let mut used = 0;
    for &c in bridge {
        let eps = params.first_symbol(c);
        let mut z = 0;
        loop {
            if used + z + 1 > budget {
                return None;
            }
            let mark = w.len();
            w.extend(core::iter::repeat_n(0, z));
            w.push(eps);
            if admissible_unchecked(&w, params) {
                break;
            }
            w.truncate(mark);
            z += 1;
        }
        used += z + 1;
    }
    Some(w)
}

fn bridge_fill(eta: &[Symbol], omega: &[Symbol], gap: usize, params: &ShiftParams) -> Option<Word> {
    let bridge = bridge_colors(eta, omega, params)?;
    if bridge.is_empty() {
        return None;
    }
    let head = greedy_bridge(eta, &bridge, gap, params)?;
    let rest = gap - (head.len() - eta.len());
    let mut fill = head[eta.len()..].to_vec();
    fill.extend(core::iter::repeat_n(0, rest));
    try_fill(eta, &fill, omega, params)
}

fn exhaustive_fill(eta: &[Symbol], omega: &[Symbol], gap: usize, params: &ShiftParams) -> Option<Word> {
    let colors = params.colors();
    let mut fill = alloc::vec![0; gap];
    // one block: 0^z0 c^len 0^rest
    for z0 in 0..gap {
        for len in 1..=gap - z0 {
            for c in 1..=colors {
                fill.iter_mut().for_each(|s| *s = 0);
                fill[z0..z0 + len].fill(params.first_symbol(c));
                if let Some(w) = try_fill(eta, &fill, omega, params) {
                    return Some(w);
                }
            }
        }
    }
    // two blocks: 0^z0 c1^l1 0^z1 c2^l2 0^rest, z1 ≥ 1
    for z0 in 0..gap {
        for l1 in 1..gap - z0 {
            for z1 in 1..gap - z0 - l1 {
                for l2 in 1..=gap - z0 - l1 - z1 {
                    for c1 in 1..=colors {
                        for c2 in [c1.wrapping_sub(1), c1 + 1] {
                            if c2 < 1 || c2 > colors {
                                continue;
                            }
                            fill.iter_mut().for_each(|s| *s = 0);
                            fill[z0..z0 + l1].fill(params.first_symbol(c1));
                            let s2 = z0 + l1 + z1;
                            fill[s2..s2 + l2].fill(params.first_symbol(c2));
                            if let Some(w) = try_fill(eta, &fill, omega, params) {
                                return Some(w);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn check_inputs(eta: &[Symbol], omega: &[Symbol], params: &ShiftParams) -> Result<()> {
    for w in [eta, omega] {
        if !is_admissible(w, params)? {
            return Err(Error::Inadmissible(alloc::format!("{}", Word::from(w))));
        }
    }
    Ok(())
}

/// An admissible word `eta · fill · omega` with `|fill| = gap`, if one exists
/// among the fills searched.
pub fn connecting_word(eta: &[Symbol], omega: &[Symbol], gap: usize, params: &ShiftParams) -> Result<Option<Word>> {
    check_inputs(eta, omega, params)?;
    Ok(connect_unchecked(eta, omega, gap, params))
}

fn connect_unchecked(eta: &[Symbol], omega: &[Symbol], gap: usize, params: &ShiftParams) -> Option<Word> {
    try_fill(eta, &alloc::vec![0; gap], omega, params)
        .or_else(|| bridge_fill(eta, omega, gap, params))
        .or_else(|| exhaustive_fill(eta, omega, gap, params))
}

/// Bound for the pair: its kind, its value, and the constructed bridge gap.
pub fn mixing_bound(eta: &[Symbol], omega: &[Symbol], params: &ShiftParams) -> (BoundKind, usize, Option<usize>) {
    let general = ceil_times_tau_plus_one(params, eta.len() + 2 + omega.len());
    let ends = (last_color(eta, params), first_color(omega, params));
    let constructed = bridge_colors(eta, omega, params)
        .filter(|b| !b.is_empty())
        .and_then(|b| greedy_bridge(eta, &b, usize::MAX, params))
        .map(|head| {
            let used = head.len() - eta.len();
            (0..)
                .find(|&z| {
                    let mut w = head.clone();
                    w.extend(core::iter::repeat_n(0, z));
                    w.extend_from_slice(omega);
                    admissible_unchecked(&w, params)
                })
                .map(|z| used + z)
                .unwrap_or(usize::MAX)
        });
    match ends {
        (Some(a), Some(b)) if a == b => (BoundKind::Bridged, general, constructed),
        (Some(a), Some(b)) if a.abs_diff(b) > 1 => {
            (BoundKind::Staircase, constructed.unwrap_or(usize::MAX), constructed)
        }
        _ => (BoundKind::Direct, ceil_times_tau_plus_one(params, eta.len() + omega.len()), constructed),
    }
}

/// Least `N` such that every gap in `N..=horizon` connects `eta` to `omega`.
pub fn minimal_mixing_gap(eta: &[Symbol], omega: &[Symbol], params: &ShiftParams, horizon: usize) -> Result<MixingReport> {
    check_inputs(eta, omega, params)?;
    let (bound_kind, bound, constructed_gap) = mixing_bound(eta, omega, params);
    let general_bound = ceil_times_tau_plus_one(params, eta.len() + 2 + omega.len());
    let required = bound.max(general_bound);
    if horizon < required {
        return Err(Error::HorizonTooSmall { horizon, bound: required });
    }
    let mut certificates = Vec::new();
    let mut n_min = 0;
    for gap in (0..=horizon).rev() {
        match connect_unchecked(eta, omega, gap, params) {
            Some(word) => certificates.push(Certificate { gap, word }),
            None if gap == horizon => return Err(Error::NoMixingGap { gap, horizon }),
            None => {
                n_min = gap + 1;
                break;
            }
        }
    }
    certificates.reverse();
    Ok(MixingReport {
        n_min,
        horizon,
        bound,
        bound_kind,
        general_bound,
        constructed_gap,
        within_bound: n_min <= bound,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::random_admissible_word;
    use crate::measures::seeded_rng;
    use crate::Tau;
    use proptest::prelude::*;

    fn p(tau: u64, colors: u32) -> ShiftParams {
        ShiftParams::new(2, Tau::integer(tau), colors).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Independent minimal gap: every fill over the alphabet, subject to the
    /// end rule.
    fn brute_connects(eta: &[Symbol], omega: &[Symbol], gap: usize, params: &ShiftParams) -> bool {
        let k = params.alphabet_size() as u64;
        let total = k.pow(gap as u32);
        (0..total).any(|mut code| {
            let fill: Vec<Symbol> = (0..gap)
                .map(|_| {
                    let s = (code % k) as Symbol;
                    code /= k;
                    s
                })
                .collect();
            try_fill(eta, &fill, omega, params).is_some()
        })
    }

    #[test]
    fn spec_examples() {
        let params = p(1, 2);
        assert_eq!(connecting_word(&w("1"), &w("3"), 2, &params).unwrap(), Some(w("1 0 0 3")));
        assert_eq!(connecting_word(&w("1"), &w("3"), 1, &params).unwrap(), None);
        assert_eq!(connecting_word(&w("1"), &w("1"), 5, &params).unwrap(), Some(w("1 0 0 3 0 0 1")));
        assert_eq!(connecting_word(&w("1"), &w("1"), 4, &params).unwrap(), None);
        assert_eq!(connecting_word(&w("1 2"), &w("2"), 0, &params).unwrap(), Some(w("1 2 2")));

        let r = minimal_mixing_gap(&w("1"), &w("3"), &params, 10).unwrap();
        assert_eq!((r.n_min, r.bound, r.bound_kind), (2, 4, BoundKind::Direct));
        let r = minimal_mixing_gap(&w("1"), &w("1"), &params, 12).unwrap();
        assert_eq!((r.n_min, r.bound, r.bound_kind), (5, 8, BoundKind::Bridged));
        assert_eq!(r.constructed_gap, Some(5));
        assert_eq!(r.certificates.len(), 12 - 5 + 1);
        assert!(r.within_bound);
    }

    #[test]
    fn zero_fills_between_uncoloured_ends() {
        let params = p(1, 2);
        let r = minimal_mixing_gap(&w("1 1"), &w("0 0"), &params, 20).unwrap();
        assert_eq!(r.n_min, 0);
        assert!(r.certificates.iter().all(|c| c.word.iter().skip(2).all(|&s| s == 0)));
    }

    #[test]
    fn errors() {
        let params = p(1, 2);
        assert!(matches!(connecting_word(&w("1 0 3"), &w("1"), 3, &params), Err(Error::Inadmissible(_))));
        assert!(matches!(
            minimal_mixing_gap(&w("1"), &w("1"), &params, 7),
            Err(Error::HorizonTooSmall { bound: 8, .. })
        ));
        // one colour only: nothing can separate two blocks
        let one = p(1, 1);
        assert!(matches!(minimal_mixing_gap(&w("1"), &w("1"), &one, 8), Err(Error::NoMixingGap { .. })));
    }

    #[test]
    fn staircase_across_three_colours() {
        let params = p(2, 3);
        let r = minimal_mixing_gap(&w("1"), &w("5"), &params, 20).unwrap();
        assert_eq!(r.bound_kind, BoundKind::Staircase);
        // 4 zeros, the colour-2 symbol, 4 zeros
        assert_eq!(r.constructed_gap, Some(9));
        assert_eq!(r.n_min, 9);
        assert_eq!(r.certificates[0].word, w("1 0 0 0 0 3 0 0 0 0 5"));
        assert!(r.n_min <= r.general_bound);
    }

    #[test]
    fn search_matches_all_fills_on_small_pairs() {
        let params = p(1, 2);
        let words = ["1", "3", "0", "1 2", "2 0", "0 4", "1 0 0 3"];
        for a in words {
            for b in words {
                for gap in 0..=6 {
                    let found = connecting_word(&w(a), &w(b), gap, &params).unwrap().is_some();
                    assert_eq!(found, brute_connects(&w(a), &w(b), gap, &params), "{a} | {b} gap {gap}");
                }
            }
        }
    }

    #[test]
    fn random_pairs_meet_the_bound() {
        for (tau, colors) in [(1, 2), (2, 3)] {
            let params = p(tau, colors);
            let mut rng = seeded_rng(7);
            for _ in 0..30 {
                use rand::Rng;
                let la = rng.gen_range(1..=6);
                let lb = rng.gen_range(1..=6);
                let eta = random_admissible_word(la, &params, &mut rng);
                let omega = random_admissible_word(lb, &params, &mut rng);
                let (_, bound, _) = mixing_bound(&eta, &omega, &params);
                let general = ceil_times_tau_plus_one(&params, la + lb + 2);
                let r = minimal_mixing_gap(&eta, &omega, &params, bound.max(general) + 30).unwrap();
                assert!(r.n_min <= general, "{eta} | {omega}: {}", r.n_min);
                for c in &r.certificates {
                    assert!(is_admissible(&c.word, &params).unwrap());
                    assert_eq!(&c.word[..la], eta.symbols());
                    assert_eq!(&c.word[la + c.gap..], omega.symbols());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn certificates_cover_every_gap(seed in 0u64..500, la in 1usize..5, lb in 1usize..5) {
            let params = p(1, 2);
            let mut rng = seeded_rng(seed);
            let eta = random_admissible_word(la, &params, &mut rng);
            let omega = random_admissible_word(lb, &params, &mut rng);
            let horizon = ceil_times_tau_plus_one(&params, la + lb + 2) + 5;
            let r = minimal_mixing_gap(&eta, &omega, &params, horizon).unwrap();
            let gaps: Vec<usize> = r.certificates.iter().map(|c| c.gap).collect();
            prop_assert_eq!(gaps, (r.n_min..=horizon).collect::<Vec<_>>());
            prop_assert!(r.within_bound);
        }
    }
}
