use alloc::format;
use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Alphabet member. `0` is the neutral symbol.
pub type Symbol = u32;

/// Gap growth factor, an exact non-negative rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tau(Ratio<u64>);

impl Tau {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParams("tau denominator is zero".to_string()));
        }
        Ok(Tau(Ratio::new(numer, denom)))
    }

    pub fn integer(n: u64) -> Self {
        Tau(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Tau(Ratio::zero())
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Smallest `λ ≥ 1` with `λ ≥ τ·(a + b)`, by integer cross-multiplication.
    pub fn required_gap(&self, a: usize, b: usize) -> usize {
        let num = u128::from(self.numer()) * (a as u128 + b as u128);
        let den = u128::from(self.denom());
        let ceil = num.div_ceil(den);
        ceil.max(1) as usize
    }

    /// Whether a zero-run of length `lambda` may separate blocks of lengths `a` and `b`.
    pub fn gap_suffices(&self, lambda: usize, a: usize, b: usize) -> bool {
        lambda >= 1
            && u128::from(self.denom()) * lambda as u128
                >= u128::from(self.numer()) * (a as u128 + b as u128)
    }

    /// Rational `p/q ≥ x` with `q = ⌈1/precision⌉` and `p/q - x ≤ precision`.
    ///
    /// Thresholds such as `log 3 / log ν` are irrational; this turns them into
    /// an admissible exact `τ`.
    pub fn upper_bound_of(x: f64, precision: f64) -> Result<Self> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Domain(format!("cannot bound {x} by a non-negative rational")));
        }
        if !(precision > 0.0 && precision <= 1.0) {
            return Err(Error::Domain(format!("precision {precision} must lie in (0, 1]")));
        }
        let denom = libm::ceil(1.0 / precision) as u64;
        let mut numer = libm::ceil(x * denom as f64) as u64;
        while (numer as f64) / (denom as f64) < x {
            numer += 1;
        }
        Tau::new(numer, denom)
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Tau {
    type Err = Error;

    /// Accepts `p/q`, an integer, or a finite decimal such as `1.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid tau {s:?}, expected p/q or a decimal"));
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse::<u64>().map_err(|_| bad())?;
            let q = q.trim().parse::<u64>().map_err(|_| bad())?;
            return Tau::new(p, q).map_err(|_| bad());
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let int = if int.is_empty() { 0 } else { int.parse::<u64>().map_err(|_| bad())? };
            let frac_val = frac.parse::<u64>().map_err(|_| bad())?;
            let denom = 10u64.pow(frac.len() as u32);
            let numer = int
                .checked_mul(denom)
                .and_then(|v| v.checked_add(frac_val))
                .ok_or_else(bad)?;
            return Tau::new(numer, denom);
        }
        s.parse::<u64>().map(Tau::integer).map_err(|_| bad())
    }
}

/// `(ν, τ, L)`: symbols per colour, gap factor, number of colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftParams {
    nu: u32,
    tau: Tau,
    colors: u32,
}

impl ShiftParams {
    pub fn new(nu: u32, tau: Tau, colors: u32) -> Result<Self> {
        if nu < 2 {
            return Err(Error::InvalidParams(format!("nu must be at least 2, got {nu}")));
        }
        if colors < 1 {
            return Err(Error::InvalidParams("at least one colour is required".to_string()));
        }
        if (u64::from(nu) * u64::from(colors)) > u64::from(u32::MAX - 1) {
            return Err(Error::InvalidParams("alphabet does not fit in 32 bits".to_string()));
        }
        Ok(ShiftParams { nu, tau, colors })
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn tau(&self) -> Tau {
        self.tau
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn with_colors(&self, colors: u32) -> Result<Self> {
        ShiftParams::new(self.nu, self.tau, colors)
    }

    pub fn with_tau(&self, tau: Tau) -> Self {
        ShiftParams { tau, ..*self }
    }

    /// Largest symbol, `L·ν`.
    pub fn max_symbol(&self) -> Symbol {
        self.nu * self.colors
    }

    pub fn alphabet_size(&self) -> usize {
        self.max_symbol() as usize + 1
    }

    /// Colour index `⌈s/ν⌉` of a non-zero symbol; `None` for `0`.
    pub fn color(&self, s: Symbol) -> Option<u32> {
        if s == 0 {
            None
        } else {
            Some(s.div_ceil(self.nu))
        }
    }

    /// First symbol of colour `j`.
    pub fn first_symbol(&self, color: u32) -> Symbol {
        (color - 1) * self.nu + 1
    }

    /// Maps a symbol of colour `j` onto `1..=ν` (identification with colour 1).
    pub fn base_symbol(&self, s: Symbol) -> Symbol {
        debug_assert!(s != 0);
        (s - 1) % self.nu + 1
    }

    /// Colours `j` and `j'` may face each other across a zero-run.
    pub fn colors_adjacent(&self, a: u32, b: u32) -> bool {
        a.abs_diff(b) == 1
    }

    pub fn required_gap(&self, a: usize, b: usize) -> usize {
        self.tau.required_gap(a, b)
    }

    pub fn check_symbol(&self, s: Symbol) -> Result<()> {
        if s > self.max_symbol() {
            Err(Error::InvalidSymbol { symbol: s, max: self.max_symbol() })
        } else {
            Ok(())
        }
    }

    pub fn check_symbols(&self, symbols: &[Symbol]) -> Result<()> {
        symbols.iter().try_for_each(|&s| self.check_symbol(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn required_gap_examples() {
        assert_eq!(Tau::integer(1).required_gap(1, 1), 2);
        assert_eq!(Tau::zero().required_gap(3, 5), 1);
        assert_eq!(Tau::new(3, 2).unwrap().required_gap(1, 2), 5);
    }

    #[test]
    fn tau_is_reduced() {
        let t = Tau::new(6, 4).unwrap();
        assert_eq!((t.numer(), t.denom()), (3, 2));
        assert!(Tau::new(1, 0).is_err());
    }

    #[test]
    fn tau_parsing() {
        assert_eq!("3/2".parse::<Tau>().unwrap(), Tau::new(3, 2).unwrap());
        assert_eq!("1.5".parse::<Tau>().unwrap(), Tau::new(3, 2).unwrap());
        assert_eq!("0.25".parse::<Tau>().unwrap(), Tau::new(1, 4).unwrap());
        assert_eq!("2".parse::<Tau>().unwrap(), Tau::integer(2));
        assert!("-1".parse::<Tau>().is_err());
        assert!("1/0".parse::<Tau>().is_err());
        assert!("abc".parse::<Tau>().is_err());
        assert_eq!(Tau::new(3, 2).unwrap().to_string(), "3/2");
    }

    #[test]
    fn upper_bound_is_above_and_close() {
        let x = libm::log(3.0) / libm::log(2.0);
        let t = Tau::upper_bound_of(x, 1e-6).unwrap();
        assert!(t.to_f64() >= x);
        assert!(t.to_f64() - x <= 1e-6);
        assert!(Tau::upper_bound_of(-1.0, 1e-6).is_err());
    }

    #[test]
    fn colors_and_identification() {
        let p = ShiftParams::new(3, Tau::integer(1), 3).unwrap();
        assert_eq!(p.alphabet_size(), 10);
        assert_eq!(p.color(0), None);
        assert_eq!(p.color(3), Some(1));
        assert_eq!(p.color(4), Some(2));
        assert_eq!(p.color(9), Some(3));
        assert_eq!(p.base_symbol(8), 2);
        assert_eq!(p.first_symbol(3), 7);
        assert!(p.check_symbol(10).is_err());
        assert!(ShiftParams::new(1, Tau::zero(), 2).is_err());
        assert!(ShiftParams::new(2, Tau::zero(), 0).is_err());
    }

    proptest! {
        #[test]
        fn required_gap_symmetric_monotone(p in 0u64..20, q in 1u64..20, a in 1usize..50, b in 1usize..50) {
            let t = Tau::new(p, q).unwrap();
            prop_assert_eq!(t.required_gap(a, b), t.required_gap(b, a));
            prop_assert!(t.required_gap(a + 1, b) >= t.required_gap(a, b));
            prop_assert!(t.required_gap(a, b + 1) >= t.required_gap(a, b));
            let g = t.required_gap(a, b);
            prop_assert!(t.gap_suffices(g, a, b));
            prop_assert!(g == 1 || !t.gap_suffices(g - 1, a, b));
        }

        #[test]
        fn required_gap_exact_when_integral(k in 0u64..30, a in 1usize..40, b in 1usize..40) {
            // denominators dividing a + b make τ(a+b) an integer
            let s = (a + b) as u64;
            let t = Tau::new(k, s).unwrap();
            prop_assert_eq!(t.required_gap(a, b), (k as usize).max(1));
        }
    }
}
