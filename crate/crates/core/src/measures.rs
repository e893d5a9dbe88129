//! Invariant measures on the embedded full shifts.
//!
//! The uniform Bernoulli measure on colour `j` gives weight `1/ν` to each of
//! `(j-1)ν+1, …, jν`. It has entropy `log ν` and lives on the colour-`j`
//! full shift, so measures of different colours are carried by disjoint
//! symbol sets and are mutually singular.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result, ShiftParams, Symbol, Word};

/// Generator used by every sampler in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// I.i.d. measure with exact rational weights `numerators[s] / denom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliMeasure {
    color: Option<u32>,
    numerators: Vec<u64>,
    denom: u64,
}

impl BernoulliMeasure {
    /// Uniform measure on the symbols of colour `color`.
    pub fn max_entropy(color: u32, params: &ShiftParams) -> Result<Self> {
        if color < 1 || color > params.colors() {
            return Err(Error::Domain(format!(
                "colour {color} outside 1..={}",
                params.colors()
            )));
        }
        let mut numerators = alloc::vec![0; params.alphabet_size()];
        let first = params.first_symbol(color) as usize;
        for n in &mut numerators[first..first + params.nu() as usize] {
            *n = 1;
        }
        Ok(BernoulliMeasure { color: Some(color), numerators, denom: u64::from(params.nu()) })
    }

    /// Uniform over the whole alphabet. Not invariant for the shift; useful
    /// as an estimator sanity input.
    pub fn uniform_alphabet(params: &ShiftParams) -> Self {
        let k = params.alphabet_size();
        BernoulliMeasure { color: None, numerators: alloc::vec![1; k], denom: k as u64 }
    }

    pub fn color(&self) -> Option<u32> {
        self.color
    }

    pub fn weight(&self, s: Symbol) -> Ratio<u64> {
        let num = self.numerators.get(s as usize).copied().unwrap_or(0);
        Ratio::new(num, self.denom)
    }

    /// Sum of the weights; exactly one by construction.
    pub fn total_weight(&self) -> Ratio<u64> {
        Ratio::new(self.numerators.iter().sum(), self.denom)
    }

    pub fn support(&self) -> BTreeSet<Symbol> {
        self.numerators
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(s, _)| s as Symbol)
            .collect()
    }

    /// `-Σ p log p`, in nats.
    pub fn metric_entropy(&self) -> f64 {
        let d = self.denom as f64;
        -self
            .numerators
            .iter()
            .filter(|&&n| n > 0)
            .map(|&n| {
                let p = n as f64 / d;
                p * libm::log(p)
            })
            .sum::<f64>()
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Word {
        let mut cumulative = Vec::with_capacity(self.numerators.len());
        let mut acc = 0u64;
        for &w in &self.numerators {
            acc += w;
            cumulative.push(acc);
        }
        let symbols = (0..n)
            .map(|_| {
                let u = rng.gen_range(0..self.denom);
                cumulative.partition_point(|&c| c <= u) as Symbol
            })
            .collect();
        Word::new(symbols)
    }
}

/// `n` i.i.d. symbols from `measure`, deterministic in `seed`.
pub fn sample_path(measure: &BernoulliMeasure, n: usize, seed: u64) -> Word {
    measure.sample_with(n, &mut seeded_rng(seed))
}

/// A convex combination of Bernoulli measures: picks a component once, then
/// samples i.i.d. from it. Invariant but not ergodic.
#[derive(Debug, Clone)]
pub struct Mixture {
    pub components: Vec<(f64, BernoulliMeasure)>,
}

impl Mixture {
    pub fn sample(&self, n: usize, seed: u64) -> Result<Word> {
        let mut rng = seeded_rng(seed);
        let pick = WeightedIndex::new(self.components.iter().map(|(w, _)| *w))
            .map_err(|e| Error::Domain(format!("mixture weights: {e}")))?;
        let (_, measure) = &self.components[pick.sample(&mut rng)];
        Ok(measure.sample_with(n, &mut rng))
    }
}

/// Stationary Markov chain on a finite symbol set.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovMeasure {
    pub symbols: Vec<Symbol>,
    pub stationary: Vec<f64>,
    /// Row-stochastic, indexed like `symbols`.
    pub transition: Vec<Vec<f64>>,
}

impl MarkovMeasure {
    pub fn support(&self) -> BTreeSet<Symbol> {
        self.symbols
            .iter()
            .zip(&self.stationary)
            .filter(|(_, &p)| p > 0.0)
            .map(|(&s, _)| s)
            .collect()
    }

    /// Entropy rate `-Σ π_a P_ab log P_ab`.
    pub fn entropy_rate(&self) -> f64 {
        let mut h = 0.0;
        for (pi, row) in self.stationary.iter().zip(&self.transition) {
            for &p in row {
                if p > 0.0 {
                    h -= pi * p * libm::log(p);
                }
            }
        }
        h
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<Word> {
        let mut rng = seeded_rng(seed);
        let err = |e: rand::distributions::WeightedError| Error::Domain(format!("{e}"));
        let start = WeightedIndex::new(&self.stationary).map_err(err)?;
        let rows = self
            .transition
            .iter()
            .map(|row| WeightedIndex::new(row).map_err(err))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::with_capacity(n);
        if n > 0 {
            let mut state = start.sample(&mut rng);
            out.push(self.symbols[state]);
            for _ in 1..n {
                state = rows[state].sample(&mut rng);
                out.push(self.symbols[state]);
            }
        }
        Ok(Word::new(out))
    }
}

/// Plug-in entropy of the overlapping `k`-blocks of `path`, divided by `k`
/// (nats per symbol).
pub fn empirical_block_entropy(path: &[Symbol], k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("block length must be ≥ 1".into()));
    }
    let required = k.saturating_mul(100);
    if path.len() < required {
        return Err(Error::PathTooShort { len: path.len(), required });
    }
    let freq = block_frequencies(path, k);
    let total = (path.len() - k + 1) as f64;
    let h: f64 = freq
        .values()
        .map(|&c| {
            let p = c as f64 / total;
            -p * libm::log(p)
        })
        .sum();
    Ok(h / k as f64)
}

/// Counts of each overlapping `k`-block.
pub fn block_frequencies(path: &[Symbol], k: usize) -> BTreeMap<&[Symbol], u64> {
    let mut freq: BTreeMap<&[Symbol], u64> = BTreeMap::new();
    if k > 0 {
        for w in path.windows(k) {
            *freq.entry(w).or_default() += 1;
        }
    }
    freq
}

/// Disjoint supports of two measures of different colours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityWitness {
    pub first_color: u32,
    pub second_color: u32,
    pub first_support: BTreeSet<Symbol>,
    pub second_support: BTreeSet<Symbol>,
    pub disjoint: bool,
}

pub fn mutual_singularity_witness(m1: &BernoulliMeasure, m2: &BernoulliMeasure) -> Result<SingularityWitness> {
    let (Some(c1), Some(c2)) = (m1.color(), m2.color()) else {
        return Err(Error::Domain("singularity witness needs single-colour measures".into()));
    };
    singularity_from_supports(c1, m1.support(), c2, m2.support())
}

pub(crate) fn singularity_from_supports(
    c1: u32,
    first_support: BTreeSet<Symbol>,
    c2: u32,
    second_support: BTreeSet<Symbol>,
) -> Result<SingularityWitness> {
    if c1 == c2 {
        return Err(Error::SameColor(c1));
    }
    let disjoint = first_support.is_disjoint(&second_support);
    Ok(SingularityWitness { first_color: c1, second_color: c2, first_support, second_support, disjoint })
}
