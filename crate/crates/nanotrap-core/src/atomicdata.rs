//! Cesium transition data: parsing, validation and conversion of the tabulated
//! (wavelength, partial lifetime) pairs into transition frequencies and reduced
//! dipole strengths.
//!
//! Two datasets ship with the crate: `cs_mckeever_corrected.csv` (the default)
//! and `cs_clark.csv` (for sensitivity analysis). Both carry fine-structure
//! wavelengths only; hyperfine splittings are neglected everywhere downstream.
//! The corrected table contains no 6S1/2 <-> 6P1/2 entry, so the shipped files
//! append one External-tagged D1 record (894.59 nm, 0.0348 us, standard Cs
//! reference data); without it the ground-state polarizability would be badly
//! wrong at the red trapping wavelengths.

use std::fmt;
use std::str::FromStr;

use crate::constants::{C, EPS0, HBAR};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;

pub const MCKEEVER_CORRECTED_CSV: &str = include_str!("../data/cs_mckeever_corrected.csv");
pub const CLARK_CSV: &str = include_str!("../data/cs_clark.csv");

const ORBITAL_LETTERS: &[char] = &['S', 'P', 'D', 'F', 'G', 'H', 'I', 'K'];

/// A fine-structure level, e.g. 6P3/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelId {
    pub n: u32,
    pub l: u32,
    pub j: HalfInt,
}

impl LevelId {
    pub fn new(n: u32, l: u32, j: HalfInt) -> Result<Self> {
        let id = LevelId { n, l, j };
        if n == 0 {
            return Err(Error::InvalidLevel(format!("{id}: n must be >= 1")));
        }
        let tl = 2 * l as i32;
        if (j.twice() - tl).abs() != 1 {
            return Err(Error::InvalidLevel(format!("{id}: need |L - 1/2| <= J <= L + 1/2")));
        }
        Ok(id)
    }
}

impl fmt::Display for LevelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = ORBITAL_LETTERS.get(self.l as usize).copied().unwrap_or('?');
        write!(f, "{}{}{}", self.n, letter, self.j)
    }
}

impl FromStr for LevelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidLevel(s.to_string());
        let letter_pos = s.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
        let n: u32 = s[..letter_pos].parse().map_err(|_| bad())?;
        let letter = s[letter_pos..].chars().next().unwrap().to_ascii_uppercase();
        let l = ORBITAL_LETTERS
            .iter()
            .position(|&c| c == letter)
            .ok_or_else(bad)? as u32;
        let j: HalfInt = s[letter_pos + 1..].parse().map_err(|_| bad())?;
        LevelId::new(n, l, j)
    }
}

/// Provenance of a tabulated transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    McKeeverCorrected,
    Clark,
    External,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Source::McKeeverCorrected => "McKeeverCorrected",
            Source::Clark => "Clark",
            Source::External => "External",
        };
        f.write_str(s)
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "McKeeverCorrected" => Ok(Source::McKeeverCorrected),
            "Clark" => Ok(Source::Clark),
            "External" => Ok(Source::External),
            other => Err(Error::InvalidLevel(format!("unknown source tag `{other}`"))),
        }
    }
}

/// One fine-structure transition: `lower` and `upper` are ordered by energy,
/// `tau_us` is the partial lifetime of the upper -> lower decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionRecord {
    pub lower: LevelId,
    pub upper: LevelId,
    pub lambda_nm: f64,
    pub tau_us: f64,
    pub source: Source,
}

impl TransitionRecord {
    /// Transition angular frequency ω = 2πc/λ, rad/s (always positive; the
    /// sign bookkeeping for downward partners lives in the polarizability
    /// sums).
    pub fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI * C / (self.lambda_nm * 1e-9)
    }

    /// Squared reduced dipole matrix element
    /// d² = 3πε₀ħc³/ω³ · (2J'+1)/τ with (J, J') the (lower, upper) levels,
    /// in C²·m². Symmetric between the two levels in this convention.
    pub fn reduced_dipole_sq(&self) -> f64 {
        let w = self.omega();
        let two_jp_plus_1 = self.upper.j.twice() as f64 + 1.0;
        3.0 * std::f64::consts::PI * EPS0 * HBAR * C.powi(3) / w.powi(3) * two_jp_plus_1
            / (self.tau_us * 1e-6)
    }

    fn validate(&self, line: usize) -> Result<()> {
        if self.lambda_nm <= 0.0 || !self.lambda_nm.is_finite() {
            return Err(Error::InvalidValue {
                line,
                msg: format!("lambda_nm must be positive, got {}", self.lambda_nm),
            });
        }
        if self.tau_us <= 0.0 || !self.tau_us.is_finite() {
            return Err(Error::InvalidValue {
                line,
                msg: format!("tau_us must be positive, got {}", self.tau_us),
            });
        }
        if self.lower == self.upper {
            return Err(Error::InvalidValue {
                line,
                msg: format!("lower and upper must differ, both are {}", self.lower),
            });
        }
        if (self.lower.l as i32 - self.upper.l as i32).abs() != 1 {
            return Err(Error::SelectionRule {
                line,
                lower: self.lower.to_string(),
                upper: self.upper.to_string(),
            });
        }
        Ok(())
    }
}

/// Parse a transition table. Format: UTF-8, comma-delimited, `#` comments,
/// header `lower,upper,lambda_nm,tau_us,source`; the source column may be
/// omitted per row, in which case `default_source` applies. Any malformed row
/// aborts the whole load.
pub fn load_transition_table(text: &str, default_source: Source) -> Result<Vec<TransitionRecord>> {
    let mut records = Vec::new();
    let mut header_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.first() != Some(&"lower") {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected header starting with `lower`, got `{line}`"),
                });
            }
            header_seen = true;
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 4 && cols.len() != 5 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 4 or 5 columns, got {}", cols.len()),
            });
        }
        let field = |what: &str, e: Error| Error::Parse {
            line: line_no,
            msg: format!("{what}: {e}"),
        };
        let lower: LevelId = cols[0].parse().map_err(|e| field("lower", e))?;
        let upper: LevelId = cols[1].parse().map_err(|e| field("upper", e))?;
        let lambda_nm: f64 = cols[2].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("cannot parse lambda_nm `{}`", cols[2]),
        })?;
        let tau_us: f64 = cols[3].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("cannot parse tau_us `{}`", cols[3]),
        })?;
        let source = match cols.get(4) {
            Some(s) => s.parse().map_err(|e| field("source", e))?,
            None => default_source,
        };
        let rec = TransitionRecord { lower, upper, lambda_nm, tau_us, source };
        rec.validate(line_no)?;
        records.push(rec);
    }
    if !header_seen {
        return Err(Error::Parse { line: 0, msg: "empty table (no header)".into() });
    }
    Ok(records)
}

/// Canonical text form of a table; `load_transition_table` inverts it.
pub fn format_transition_table(records: &[TransitionRecord]) -> String {
    let mut out = String::from("lower,upper,lambda_nm,tau_us,source\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.lower, r.upper, r.lambda_nm, r.tau_us, r.source
        ));
    }
    out
}

/// The atom: nuclear spin plus the transition table. Immutable after load.
#[derive(Debug, Clone)]
pub struct AtomModel {
    nuclear_spin: HalfInt,
    transitions: Vec<TransitionRecord>,
}

impl AtomModel {
    /// ¹³³Cs (I = 7/2) with the given transitions.
    pub fn cesium(transitions: Vec<TransitionRecord>) -> Result<Self> {
        for (i, a) in transitions.iter().enumerate() {
            for b in &transitions[..i] {
                if a.lower == b.lower && a.upper == b.upper {
                    return Err(Error::InvalidConfig(format!(
                        "duplicate transition {} <-> {}",
                        a.lower, a.upper
                    )));
                }
            }
        }
        Ok(AtomModel { nuclear_spin: HalfInt::from_twice(7), transitions })
    }

    /// The shipped default dataset (corrected Tables I-II plus the D1 supplement).
    pub fn mckeever_corrected() -> Self {
        let recs = load_transition_table(MCKEEVER_CORRECTED_CSV, Source::McKeeverCorrected)
            .expect("embedded dataset is valid");
        Self::cesium(recs).expect("embedded dataset is valid")
    }

    /// The alternate dataset built from the Clark columns.
    pub fn clark() -> Self {
        let recs =
            load_transition_table(CLARK_CSV, Source::Clark).expect("embedded dataset is valid");
        Self::cesium(recs).expect("embedded dataset is valid")
    }

    pub fn from_table_str(text: &str, default_source: Source) -> Result<Self> {
        Self::cesium(load_transition_table(text, default_source)?)
    }

    pub fn nuclear_spin(&self) -> HalfInt {
        self.nuclear_spin
    }

    pub fn transitions(&self) -> &[TransitionRecord] {
        &self.transitions
    }

    /// Every record touching `level`, as (record, signed ω_ji, partner level):
    /// ω_ji > 0 when the partner lies above `level`, < 0 when below.
    pub fn partners(&self, level: LevelId) -> Vec<(&TransitionRecord, f64, LevelId)> {
        self.transitions
            .iter()
            .filter_map(|r| {
                if r.lower == level {
                    Some((r, r.omega(), r.upper))
                } else if r.upper == level {
                    Some((r, -r.omega(), r.lower))
                } else {
                    None
                }
            })
            .collect()
    }
}
