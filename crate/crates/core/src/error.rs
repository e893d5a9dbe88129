use alloc::string::String;

use crate::Symbol;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("symbol {symbol} is outside the alphabet 0..={max}")]
    InvalidSymbol { symbol: Symbol, max: Symbol },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("brute force needs up to {required} candidate checks, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("word is not admissible: {0}")]
    Inadmissible(String),

    #[error("path of length {len} is too short, need at least {required}")]
    PathTooShort { len: usize, required: usize },

    #[error("both measures live on colour {0}")]
    SameColor(u32),

    #[error("window needs radius {required} around the centre, has {available}")]
    WindowTooShort { required: usize, available: usize },

    #[error("horizon {horizon} is below the bound {bound}")]
    HorizonTooSmall { horizon: usize, bound: usize },

    #[error("no connecting word exists at gap {gap} (horizon {horizon})")]
    NoMixingGap { gap: usize, horizon: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),
}
