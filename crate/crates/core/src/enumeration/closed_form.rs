//! Block combinatorics: compositions, stars and bars, colour walks.
//!
//! A word with `k` blocks holding `ℓ` coloured symbols is fixed by
//!
//! * a composition `(b₁, …, b_k)` of `ℓ` into positive parts
//!   (`C(ℓ-1, k-1)` of them),
//! * a walk of `k` vertices on the colour chain,
//! * `ν^ℓ` symbol choices,
//! * the zeros: each interior gap takes its minimum `required_gap(bᵢ, bᵢ₊₁)`
//!   and the `m` spare zeros spread over `k + 1` bins in `C(m + k, k)` ways.
//!
//! Summing over explicit compositions gives exact counts for small `n`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use crate::bigmath::binomial;
use crate::weight::{self, Strata};
use crate::{Error, Result, ShiftParams};

/// Ways to cut `ℓ` coloured symbols into `k` consecutive non-empty blocks.
pub fn arrangements_p(k: usize, ell: usize) -> Result<BigUint> {
    if k < 1 || k > ell {
        return Err(Error::Domain(format!("need 1 ≤ k ≤ ℓ, got k = {k}, ℓ = {ell}")));
    }
    Ok(binomial((ell - 1) as u64, (k - 1) as u64))
}

/// Ways to spread `m` zeros over the `k + 1` gaps around `k` blocks.
pub fn gap_placements_q(k: usize, m: i64) -> Result<BigUint> {
    if k < 1 {
        return Err(Error::Domain(format!("need k ≥ 1, got {k}")));
    }
    if m < 0 {
        return Err(Error::Domain(format!("negative zero count {m}")));
    }
    Ok(binomial(m as u64 + k as u64, k as u64))
}

/// Compositions of `ell` into exactly `k` positive parts, lexicographic.
pub fn compositions(ell: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < parts {
            return;
        }
        for first in 1..=left - (parts - 1) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 {
        rec(ell, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Walks with `k` vertices on the path graph with `colors` vertices.
pub fn color_walks(k: usize, colors: u32) -> BigUint {
    if k == 0 {
        return BigUint::zero();
    }
    let l = colors as usize;
    let mut ways: Vec<BigUint> = alloc::vec![BigUint::one(); l];
    for _ in 1..k {
        let mut next: Vec<BigUint> = alloc::vec![BigUint::zero(); l];
        for (j, w) in ways.iter().enumerate() {
            if j > 0 {
                next[j - 1] += w;
            }
            if j + 1 < l {
                next[j + 1] += w;
            }
        }
        ways = next;
    }
    ways.into_iter().sum()
}

/// Counts of admissible `n`-words by `(k blocks, ℓ coloured symbols)`,
/// assembled from explicit compositions. `(0, 0)` is the all-zero word.
pub fn closed_form_strata(n: usize, params: &ShiftParams) -> Strata {
    let mut out = Strata::monomial(0, 0, BigUint::one());
    let nu = BigUint::from(params.nu());
    for k in 1..=n {
        let walks = color_walks(k, params.colors());
        if walks.is_zero() {
            continue;
        }
        for ell in k..=n {
            let mut zero_layouts = BigUint::zero();
            for comp in compositions(ell, k) {
                let min_zeros: usize = comp
                    .windows(2)
                    .map(|p| params.required_gap(p[0], p[1]))
                    .sum();
                let spare = n as i64 - ell as i64 - min_zeros as i64;
                if spare >= 0 {
                    zero_layouts += gap_placements_q(k, spare).expect("k ≥ 1, spare ≥ 0");
                }
            }
            if !zero_layouts.is_zero() {
                let c = &walks * nu.clone().pow(ell as u32) * zero_layouts;
                weight::Weight::add_assign(&mut out, &Strata::monomial(k, ell, c));
            }
        }
    }
    out
}
