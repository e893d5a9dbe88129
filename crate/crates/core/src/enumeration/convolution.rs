//! Convolution over block-length compositions.
//!
//! `H[q][b][j]` is the weight of all words of length `q` whose last block has
//! colour `j` and length `b` (followed by any number of trailing zeros).
//! A word ending in a block either has that block as its only block, or
//! extends a shorter word `H[q - b - g][b₀][j ± 1]` by a gap `g ≥
//! required_gap(b₀, b)` and the new block. Trailing zeros are folded in via
//! `H[q] = E[q] + Z·H[q - 1]`, so the gap sum needs no explicit loop.
//!
//! Cost is `O(L·n³/6)` additions, cheap enough for exact counts at `n = 500`.

use alloc::vec::Vec;

use crate::weight::Weight;
use crate::ShiftParams;

/// Weights of complete blocks and of single zeros.
#[derive(Debug, Clone)]
pub struct BlockModel<W> {
    /// `block[b]` is the summed weight of one block of length `b` (any colour;
    /// colours are assumed to carry identical weights). `block[0]` is unused.
    pub block: Vec<W>,
    pub zero: W,
}

/// Per-length totals, split into the all-zero word, words with exactly one
/// block (summed over colours) and words with at least two blocks.
#[derive(Debug, Clone)]
pub struct Layers<W> {
    pub total: Vec<W>,
    pub all_zero: Vec<W>,
    pub one_block: Vec<W>,
    pub multi: Vec<W>,
}

pub fn run<W: Weight>(n_max: usize, params: &ShiftParams, model: &BlockModel<W>) -> Layers<W> {
    assert!(model.block.len() > n_max, "block weights needed up to length n_max");
    let colors = params.colors() as usize;
    let zpow: Vec<W> = {
        let mut v = Vec::with_capacity(n_max + 1);
        let mut acc = W::one();
        for _ in 0..=n_max {
            v.push(acc.clone());
            acc = acc.mul(&model.zero);
        }
        v
    };
    // triangular storage: (q, b, j) with 1 ≤ b ≤ q
    let base = |q: usize| q * q.saturating_sub(1) / 2 * colors;
    let idx = |q: usize, b: usize, j: usize| base(q) + (b - 1) * colors + j;
    let mut h: Vec<W> = alloc::vec![W::zero(); base(n_max + 1)];
    let tau = params.tau();

    let mut out = Layers {
        total: Vec::with_capacity(n_max + 1),
        all_zero: Vec::with_capacity(n_max + 1),
        one_block: Vec::with_capacity(n_max + 1),
        multi: Vec::with_capacity(n_max + 1),
    };
    for q in 0..=n_max {
        let mut sum_one = W::zero();
        let mut sum_multi = W::zero();
        for b in 1..=q {
            let e1 = zpow[q - b].mul(&model.block[b]);
            for j in 0..colors {
                let mut acc = W::zero();
                for j0 in [j.wrapping_sub(1), j + 1] {
                    if j0 >= colors {
                        continue;
                    }
                    for b0 in 1.. {
                        let g = tau.required_gap(b0, b);
                        if b0 + g + b > q {
                            break;
                        }
                        acc.add_product(&zpow[g], &h[idx(q - b - g, b0, j0)]);
                    }
                }
                let e2 = acc.mul(&model.block[b]);
                let mut hv = e1.clone();
                hv.add_assign(&e2);
                if b < q {
                    hv.add_product(&model.zero, &h[idx(q - 1, b, j)]);
                }
                sum_one.add_assign(&e1);
                sum_multi.add_assign(&e2);
                h[idx(q, b, j)] = hv;
            }
        }
        if q > 0 {
            sum_one.add_product(&model.zero, &out.one_block[q - 1]);
            sum_multi.add_product(&model.zero, &out.multi[q - 1]);
        }
        let mut total = zpow[q].clone();
        total.add_assign(&sum_one);
        total.add_assign(&sum_multi);
        out.total.push(total);
        out.all_zero.push(zpow[q].clone());
        out.one_block.push(sum_one);
        out.multi.push(sum_multi);
    }
    out
}
