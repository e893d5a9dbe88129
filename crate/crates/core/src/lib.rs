//! Gap-constrained multi-colour subshifts.
//!
//! The shift space lives over the alphabet `{0, 1, ..., L·ν}`. Symbol `0` is
//! neutral and every other symbol carries a colour `⌈s/ν⌉ ∈ {1, ..., L}`, so
//! each colour class spans an embedded full `ν`-shift. Blocks of different
//! colours may only meet across a run of zeros whose length is at least
//! `τ·(a + b)`, `a` and `b` being the lengths of the flanking blocks, and only
//! when the two colours are neighbours on the colour chain `1 - 2 - ... - L`.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`language`]: factor-language membership and the block grammar,
//! * [`enumeration`]: exact word counts by brute force, a symbol automaton,
//!   a block-length convolution and a closed form, plus entropy estimates,
//! * [`mixing`]: constructive connecting words between cylinders,
//! * [`measures`]: the Bernoulli measures of maximal entropy and samplers,
//! * [`pressure`]: locally constant potentials, their extension to the
//!   whole shift, and partition-function pressure.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bigmath;
pub mod enumeration;
mod error;
pub mod language;
pub mod measures;
pub mod mixing;
mod params;
pub mod pressure;
pub mod weight;
mod word;

pub use error::{Error, Result};
pub use params::{ShiftParams, Symbol, Tau};
pub use word::{decompose, reconstruct, BlockDecomposition, Segment, Word};
