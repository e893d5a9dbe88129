//! Symbol-by-symbol automaton over the block grammar.
//!
//! States:
//!
//! * `Lead`: only zeros so far,
//! * `Block(m, j, len, cap)`: inside a block of colour `j` of length `len`
//!   that may grow up to `cap` (the first block is capped only by `n`),
//! * `Gap(m, j, a, λ)`: `λ` zeros after a block of colour `j` and length `a`.
//!
//! `m` records whether more than one block has been seen. Leaving a gap into
//! a block of colour `j ± 1` is allowed once `λ ≥ required_gap(a, 1)`, and the
//! new block inherits `cap = max{b : λ ≥ τ(a + b)}`.
//!
//! Cost is `O(L·n³)` weight operations, which makes this the slow but
//! independent route next to [`super::convolution`].

use alloc::vec::Vec;

use crate::weight::Weight;
use crate::ShiftParams;

/// Per-symbol weights.
#[derive(Debug, Clone)]
pub struct SymbolModel<W> {
    /// Summed weight of the `ν` symbols of one colour.
    pub colored: W,
    pub zero: W,
    /// Extra factor applied whenever a new block starts.
    pub block_start: W,
}

impl<W: Weight> SymbolModel<W> {
    pub fn uniform(colored: W, zero: W) -> Self {
        SymbolModel { colored, zero, block_start: W::one() }
    }
}

/// Weighted word totals for every length `0..=n_max`, split by block count.
#[derive(Debug, Clone)]
pub struct AutomatonTotals<W> {
    pub total: Vec<W>,
    /// Words with at least two blocks.
    pub multi: Vec<W>,
}

struct Dims {
    colors: usize,
    side: usize,
}

impl Dims {
    fn idx(&self, m: usize, j: usize, x: usize, y: usize) -> usize {
        ((m * self.colors + j) * self.side + x) * self.side + y
    }

    fn len(&self) -> usize {
        2 * self.colors * self.side * self.side
    }
}

pub fn run<W: Weight>(n_max: usize, params: &ShiftParams, model: &SymbolModel<W>) -> AutomatonTotals<W> {
    let colors = params.colors() as usize;
    let dims = Dims { colors, side: n_max + 1 };
    let tau = params.tau();
    let (tn, td) = (u128::from(tau.numer()), u128::from(tau.denom()));
    // largest block length b allowed after a gap of λ zeros behind a block of length a
    let cap_after = |a: usize, lambda: usize| -> Option<usize> {
        if !tau.gap_suffices(lambda, a, 1) {
            return None;
        }
        if tn == 0 {
            return Some(n_max);
        }
        let bmax = (lambda as u128 * td) / tn - a as u128;
        Some((bmax.min(n_max as u128)) as usize)
    };
    let start = model.block_start.mul(&model.colored);

    let mut lead = W::one();
    let mut block: Vec<W> = alloc::vec![W::zero(); dims.len()];
    let mut gap: Vec<W> = alloc::vec![W::zero(); dims.len()];
    let mut nblock: Vec<W> = alloc::vec![W::zero(); dims.len()];
    let mut ngap: Vec<W> = alloc::vec![W::zero(); dims.len()];
    let mut total = Vec::with_capacity(n_max + 1);
    let mut multi = Vec::with_capacity(n_max + 1);
    total.push(W::one());
    multi.push(W::zero());

    for t in 1..=n_max {
        // states reachable after t - 1 symbols have len, a, λ ≤ t - 1
        let prev = t - 1;
        nblock.iter_mut().chain(ngap.iter_mut()).for_each(|w| *w = W::zero());
        for j in 0..colors {
            nblock[dims.idx(0, j, 1, n_max)].add_product(&lead, &start);
        }
        for m in 0..2 {
            for j in 0..colors {
                for len in 1..=prev {
                    for cap in len..=n_max {
                        let w = &block[dims.idx(m, j, len, cap)];
                        if w.is_zero() {
                            continue;
                        }
                        if len < cap {
                            nblock[dims.idx(m, j, len + 1, cap)].add_product(w, &model.colored);
                        }
                        ngap[dims.idx(m, j, len, 1)].add_product(w, &model.zero);
                    }
                }
                for a in 1..=prev {
                    for lambda in 1..=prev {
                        let w = &gap[dims.idx(m, j, a, lambda)];
                        if w.is_zero() {
                            continue;
                        }
                        if lambda < n_max {
                            ngap[dims.idx(m, j, a, lambda + 1)].add_product(w, &model.zero);
                        }
                        if let Some(cap) = cap_after(a, lambda) {
                            for nj in [j.wrapping_sub(1), j + 1] {
                                if nj < colors {
                                    nblock[dims.idx(1, nj, 1, cap)].add_product(w, &start);
                                }
                            }
                        }
                    }
                }
            }
        }
        lead = lead.mul(&model.zero);
        core::mem::swap(&mut block, &mut nblock);
        core::mem::swap(&mut gap, &mut ngap);

        let mut tot = lead.clone();
        let mut mul = W::zero();
        for m in 0..2 {
            let mut part = W::zero();
            for j in 0..colors {
                for x in 1..=t {
                    for y in 1..=n_max {
                        let bi = dims.idx(m, j, x, y);
                        if !block[bi].is_zero() {
                            part.add_assign(&block[bi]);
                        }
                        if !gap[bi].is_zero() {
                            part.add_assign(&gap[bi]);
                        }
                    }
                }
            }
            if m == 1 {
                mul.add_assign(&part);
            }
            tot.add_assign(&part);
        }
        total.push(tot);
        multi.push(mul);
    }
    AutomatonTotals { total, multi }
}
