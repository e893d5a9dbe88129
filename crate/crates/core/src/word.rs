use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use crate::{Error, Result, ShiftParams, Symbol};

/// A finite string over the alphabet `{0, ..., L·ν}`.
///
/// The text form is space-separated decimal symbols; the empty word prints
/// as the empty string.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn zeros(n: usize) -> Self {
        Word(alloc::vec![0; n])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    /// `self · other`.
    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    /// `0^left · self · 0^right`.
    pub fn pad_zeros(&self, left: usize, right: usize) -> Word {
        let mut v = alloc::vec![0; left];
        v.extend_from_slice(&self.0);
        v.resize(v.len() + right, 0);
        Word(v)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|t| {
                t.parse::<Symbol>()
                    .map_err(|_| Error::Parse(format!("invalid symbol {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// One maximal run of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Segment {
    ZeroRun { len: usize },
    ColorBlock { color: u32, len: usize },
}

impl Segment {
    pub fn len(&self) -> usize {
        match *self {
            Segment::ZeroRun { len } | Segment::ColorBlock { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn color(&self) -> Option<u32> {
        match *self {
            Segment::ZeroRun { .. } => None,
            Segment::ColorBlock { color, .. } => Some(color),
        }
    }
}

/// Run-length structure of a word: maximal zero-runs and maximal
/// single-colour blocks, left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BlockDecomposition {
    pub segments: Vec<Segment>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.segments.iter().map(Segment::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Colour blocks as `(index into segments, color, len)`.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        self.segments.iter().enumerate().filter_map(|(i, s)| match *s {
            Segment::ColorBlock { color, len } => Some((i, color, len)),
            Segment::ZeroRun { .. } => None,
        })
    }

    pub fn block_count(&self) -> usize {
        self.blocks().count()
    }

    pub fn colored_symbols(&self) -> usize {
        self.blocks().map(|(_, _, len)| len).sum()
    }

    /// Number of distinct colours used.
    pub fn distinct_colors(&self) -> usize {
        let mut colors: Vec<u32> = self.blocks().map(|(_, c, _)| c).collect();
        colors.sort_unstable();
        colors.dedup();
        colors.len()
    }
}

pub fn decompose(word: &[Symbol], params: &ShiftParams) -> Result<BlockDecomposition> {
    params.check_symbols(word)?;
    let mut segments: Vec<Segment> = Vec::new();
    for &s in word {
        let next = match params.color(s) {
            None => Segment::ZeroRun { len: 1 },
            Some(color) => Segment::ColorBlock { color, len: 1 },
        };
        match (segments.last_mut(), next) {
            (Some(Segment::ZeroRun { len }), Segment::ZeroRun { .. }) => *len += 1,
            (Some(Segment::ColorBlock { color: c, len }), Segment::ColorBlock { color, .. })
                if *c == color =>
            {
                *len += 1
            }
            _ => segments.push(next),
        }
    }
    Ok(BlockDecomposition { segments })
}

/// Canonical word for a decomposition: every block uses the first symbol of
/// its colour.
pub fn reconstruct(decomposition: &BlockDecomposition, params: &ShiftParams) -> Word {
    let mut v = Vec::with_capacity(decomposition.len());
    for seg in &decomposition.segments {
        let sym = match *seg {
            Segment::ZeroRun { .. } => 0,
            Segment::ColorBlock { color, .. } => params.first_symbol(color),
        };
        v.resize(v.len() + seg.len(), sym);
    }
    Word(v)
}
