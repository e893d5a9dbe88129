//! File formats: parameter and potential JSON, words as text.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};
use subshift_core::pressure::Potential;
use subshift_core::{ShiftParams, Symbol, Tau, Word};

/// `{"nu": 2, "tau": "3/2", "colors": 2}`. `tau` may also be a JSON number
/// written as an integer or a finite decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsFile {
    pub nu: u32,
    #[serde(with = "tau_text")]
    pub tau: Tau,
    pub colors: u32,
}

mod tau_text {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};
    use subshift_core::Tau;

    pub fn serialize<S: Serializer>(tau: &Tau, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", tau.numer(), tau.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Tau, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        let text = match &raw {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(D::Error::custom(format!("tau must be a string or number, got {other}"))),
        };
        text.parse().map_err(D::Error::custom)
    }
}

impl From<&ShiftParams> for ParamsFile {
    fn from(p: &ShiftParams) -> Self {
        ParamsFile { nu: p.nu(), tau: p.tau(), colors: p.colors() }
    }
}

impl ParamsFile {
    pub fn to_params(&self) -> Result<ShiftParams> {
        Ok(ShiftParams::new(self.nu, self.tau, self.colors)?)
    }
}

pub fn parse_params(json: &str) -> Result<ShiftParams> {
    let file: ParamsFile = serde_json::from_str(json).context("parameters JSON")?;
    file.to_params()
}

pub fn read_params(path: &Path) -> Result<ShiftParams> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_params(&text)
}

/// `{"range": r, "values": {"1 2": -0.1, ...}}` with keys over `1..=ν`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialFile {
    pub range: usize,
    pub values: BTreeMap<String, f64>,
}

pub fn potential_from_file(file: &PotentialFile, nu: u32) -> Result<Potential> {
    ensure!(file.range >= 1, "potential range must be at least 1");
    let size = (nu as usize)
        .checked_pow(file.range as u32)
        .filter(|&s| s <= 1 << 24)
        .with_context(|| format!("ν^r too large for ν = {nu}, r = {}", file.range))?;
    let mut table: Vec<Option<f64>> = vec![None; size];
    for (key, &value) in &file.values {
        let word = parse_word(key).with_context(|| format!("potential key {key:?}"))?;
        ensure!(word.len() == file.range, "potential key {key:?} must have {} symbols", file.range);
        let mut idx = 0usize;
        for &s in word.iter() {
            ensure!((1..=nu).contains(&s), "potential key {key:?} uses symbol {s} outside 1..={nu}");
            idx = idx * nu as usize + (s - 1) as usize;
        }
        ensure!(table[idx].is_none(), "potential key {key:?} given twice");
        table[idx] = Some(value);
    }
    let missing = table.iter().filter(|v| v.is_none()).count();
    ensure!(missing == 0, "potential table is missing {missing} of {size} words");
    Ok(Potential::new(nu, file.range, table.into_iter().flatten().collect())?)
}

pub fn potential_to_file(f: &Potential) -> PotentialFile {
    let nu = f.nu() as usize;
    let values = f
        .values()
        .iter()
        .enumerate()
        .map(|(mut idx, &v)| {
            let mut digits = vec![0usize; f.range()];
            for slot in digits.iter_mut().rev() {
                *slot = idx % nu + 1;
                idx /= nu;
            }
            let key = digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
            (key, v)
        })
        .collect();
    PotentialFile { range: f.range(), values }
}

pub fn parse_potential(json: &str, nu: u32) -> Result<Potential> {
    let file: PotentialFile = serde_json::from_str(json).context("potential JSON")?;
    potential_from_file(&file, nu)
}

pub fn read_potential(path: &Path, nu: u32) -> Result<Potential> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_potential(&text, nu)
}

/// Space-separated decimal symbols; an empty line is the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    text.split_whitespace()
        .map(|t| t.parse::<Symbol>().with_context(|| format!("invalid symbol {t:?}")))
        .collect::<Result<Vec<_>>>()
        .map(Word::new)
}

pub fn word_text(w: &[Symbol]) -> String {
    w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

/// Decimal rendering that round-trips and never uses exponents for the
/// magnitudes printed here.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.12}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn check_word_alphabet(w: &[Symbol], params: &ShiftParams) -> Result<()> {
    if let Some(&s) = w.iter().find(|&&s| s > params.max_symbol()) {
        bail!("symbol {s} is outside the alphabet 0..={}", params.max_symbol());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_roundtrip() {
        let p = parse_params(r#"{"nu": 2, "tau": "3/2", "colors": 3}"#).unwrap();
        assert_eq!((p.nu(), p.tau(), p.colors()), (2, Tau::new(3, 2).unwrap(), 3));
        let json = serde_json::to_string(&ParamsFile::from(&p)).unwrap();
        assert_eq!(json, r#"{"nu":2,"tau":"3/2","colors":3}"#);
        assert_eq!(parse_params(&json).unwrap(), p);
        assert_eq!(parse_params(r#"{"nu": 2, "tau": 1, "colors": 2}"#).unwrap().tau(), Tau::integer(1));
        assert_eq!(parse_params(r#"{"nu": 2, "tau": 0.25, "colors": 2}"#).unwrap().tau(), Tau::new(1, 4).unwrap());
        assert!(parse_params(r#"{"nu": 1, "tau": "1", "colors": 2}"#).is_err());
        assert!(parse_params(r#"{"nu": 2, "tau": "x", "colors": 2}"#).is_err());
        assert!(parse_params(r#"{"nu": 2, "colors": 2}"#).is_err());
    }

    #[test]
    fn potential_roundtrip() {
        let f = parse_potential(r#"{"range": 1, "values": {"1": 0.0, "2": -0.05, "3": -0.1}}"#, 3).unwrap();
        assert_eq!(f.values(), &[0.0, -0.05, -0.1]);
        let f2 = Potential::from_fn(2, 2, |w| (w[0] * 10 + w[1]) as f64).unwrap();
        let file = potential_to_file(&f2);
        assert_eq!(file.values["2 1"], 21.0);
        assert_eq!(potential_from_file(&file, 2).unwrap(), f2);
    }

    #[test]
    fn potential_errors() {
        assert!(parse_potential(r#"{"range": 1, "values": {"1": 0.0}}"#, 2).is_err());
        assert!(parse_potential(r#"{"range": 1, "values": {"1": 0.0, "3": 1.0}}"#, 2).is_err());
        assert!(parse_potential(r#"{"range": 2, "values": {"1": 0.0, "2": 1.0}}"#, 2).is_err());
        assert!(parse_potential(r#"{"range": 1, "values": {"1": 0.0, " 1": 1.0, "2": 1.0}}"#, 2).is_err());
        assert!(parse_potential(r#"{"range": 0, "values": {}}"#, 2).is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("1 0  3").unwrap().symbols(), &[1, 0, 3]);
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("1 x").is_err());
        assert_eq!(word_text(&[1, 0, 3]), "1 0 3");
        assert_eq!(real(0.5), "0.500000000000");
        assert_eq!(real(f64::NEG_INFINITY), "-inf");
    }
}
