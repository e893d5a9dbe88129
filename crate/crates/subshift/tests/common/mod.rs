//! Reference implementations used as oracles. Nothing here calls into the
//! library; the point is to disagree with it if it is wrong.

#![allow(dead_code)]

pub mod schema;

use std::collections::HashMap;

/// Plain description of a shift: `nu` symbols per colour, gap factor
/// `tau_num / tau_den`, `colors` colours.
#[derive(Debug, Clone, Copy)]
pub struct Shift {
    pub nu: u32,
    pub tau_num: u64,
    pub tau_den: u64,
    pub colors: u32,
}

impl Shift {
    pub const fn new(nu: u32, tau_num: u64, tau_den: u64, colors: u32) -> Self {
        Shift { nu, tau_num, tau_den, colors }
    }

    pub fn alphabet(&self) -> u32 {
        self.colors * self.nu + 1
    }

    pub fn color_of(&self, s: u32) -> u32 {
        s.div_ceil(self.nu)
    }
}

/// Maximal runs: `(is_zero, color, start, len)`.
fn runs(w: &[u32], sh: &Shift) -> Option<Vec<(bool, u32, usize)>> {
    let mut out: Vec<(bool, u32, usize)> = Vec::new();
    for &s in w {
        let zero = s == 0;
        let c = if zero { 0 } else { sh.color_of(s) };
        match out.last_mut() {
            Some((z, col, len)) if *z == zero => {
                if !zero && *col != c {
                    return None;
                }
                *len += 1;
            }
            _ => out.push((zero, c, 1)),
        }
    }
    Some(out)
}

/// Local rule read straight off the definition: blocks are monochromatic,
/// an interior zero run of length λ between blocks of lengths a and b needs
/// neighbouring colours and λ ≥ max(1, τ(a+b)); boundary zeros are free.
pub fn admissible(w: &[u32], sh: &Shift) -> bool {
    if w.iter().any(|&s| s >= sh.alphabet()) {
        return false;
    }
    let Some(rs) = runs(w, sh) else { return false };
    for i in 1..rs.len().saturating_sub(1) {
        let (zero, _, lambda) = rs[i];
        if !zero {
            continue;
        }
        let (_, c1, a) = rs[i - 1];
        let (_, c2, b) = rs[i + 1];
        if c1.abs_diff(c2) != 1 {
            return false;
        }
        if (lambda as u64) * sh.tau_den < sh.tau_num * (a + b) as u64 {
            return false;
        }
    }
    true
}

/// Depth-first walk over admissible words of length `n` (the language is
/// factor closed, so inadmissible prefixes are cut).
pub fn walk(n: usize, sh: &Shift, visit: &mut dyn FnMut(&[u32])) {
    fn go(w: &mut Vec<u32>, n: usize, sh: &Shift, visit: &mut dyn FnMut(&[u32])) {
        if w.len() == n {
            visit(w);
            return;
        }
        for s in 0..sh.alphabet() {
            w.push(s);
            if admissible(w, sh) {
                go(w, n, sh, visit);
            }
            w.pop();
        }
    }
    go(&mut Vec::with_capacity(n), n, sh, visit);
}

pub fn brute_count(n: usize, sh: &Shift) -> u64 {
    let mut c = 0;
    walk(n, sh, &mut |_| c += 1);
    c
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Ordered ways to write `total` as `parts` summands, each at least `min`.
pub fn count_compositions(total: usize, parts: usize, min: usize) -> u64 {
    if parts == 0 {
        return u64::from(total == 0);
    }
    (min..=total).map(|first| count_compositions(total - first, parts - 1, min)).sum()
}

/// Plug-in entropy of length-`k` blocks, divided by `k`.
pub fn block_entropy(path: &[u32], k: usize) -> f64 {
    let mut counts: HashMap<&[u32], u64> = HashMap::new();
    for win in path.windows(k) {
        *counts.entry(win).or_default() += 1;
    }
    let total = (path.len() - k + 1) as f64;
    -counts.values().map(|&c| c as f64 / total).map(|p| p * p.ln()).sum::<f64>() / k as f64
}

pub fn parse_words(text: &str) -> Vec<u32> {
    text.split_whitespace().map(|t| t.parse().unwrap()).collect()
}

/// Natural log of a big decimal integer string, good to ~15 digits.
pub fn ln_decimal(digits: &str) -> f64 {
    let head: String = digits.chars().take(17).collect();
    let mant: f64 = head.parse().unwrap();
    mant.ln() + (digits.len() - head.len()) as f64 * std::f64::consts::LN_10
}
