//! Exhaustive enumeration, the oracle for the counting engines.
//!
//! Admissible words are prefix-closed, so a depth-first search that only
//! extends admissible prefixes visits exactly the admissible words, in
//! lexicographic order. Every extension costs one call to the membership
//! test; the budget caps the number of such calls.

use alloc::vec::Vec;

use crate::language::admissible_unchecked;
use crate::{Error, Result, ShiftParams, Symbol, Word};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Calls `visit` on every admissible word of length `n`, lexicographically.
/// `first` restricts the first symbol.
pub fn for_each_admissible<F>(
    n: usize,
    params: &ShiftParams,
    budget: u128,
    first: impl Fn(Symbol) -> bool,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[Symbol]),
{
    let max = params.max_symbol();
    let naive = (params.alphabet_size() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if n == 0 {
        visit(&[]);
        return Ok(());
    }
    let mut checks: u128 = 0;
    let mut prefix: Vec<Symbol> = Vec::with_capacity(n);
    // next symbol to try at each depth
    let mut next: Vec<Symbol> = alloc::vec![0; n];
    let mut depth = 0usize;
    loop {
        if next[depth] > max {
            if depth == 0 {
                return Ok(());
            }
            next[depth] = 0;
            depth -= 1;
            prefix.pop();
            continue;
        }
        let s = next[depth];
        next[depth] += 1;
        if depth == 0 && !first(s) {
            continue;
        }
        checks += 1;
        if checks > budget {
            return Err(Error::BudgetExceeded { required: naive, budget });
        }
        prefix.push(s);
        if !admissible_unchecked(&prefix, params) {
            prefix.pop();
            continue;
        }
        if depth + 1 == n {
            visit(&prefix);
            prefix.pop();
        } else {
            depth += 1;
        }
    }
}

/// All admissible words of length `n` in lexicographic order.
pub fn enumerate_brute(n: usize, params: &ShiftParams, budget: u128) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for_each_admissible(n, params, budget, |_| true, |w| out.push(Word::from(w)))?;
    Ok(out)
}

pub fn count_brute(n: usize, params: &ShiftParams, budget: u128) -> Result<u64> {
    let mut count = 0u64;
    for_each_admissible(n, params, budget, |_| true, |_| count += 1)?;
    Ok(count)
}

/// Words of the infinite-colour chain whose first coloured symbol has
/// colour `≤ l_trunc` (all-zero word included). Later blocks may climb the
/// chain, at most one colour per block.
pub fn count_first_coordinate(n: usize, l_trunc: u32, params: &ShiftParams, budget: u128) -> Result<u64> {
    let wide = params.with_colors(l_trunc + n as u32)?;
    let mut count = 0u64;
    for_each_admissible(n, &wide, budget, |_| true, |w| {
        let first = w.iter().find(|&&s| s != 0).map(|&s| wide.color(s).unwrap_or(0));
        if first.is_none_or(|c| c <= l_trunc) {
            count += 1;
        }
    })?;
    Ok(count)
}
