//! CSV loading, synthetic test signals and mask export.

use std::f64::consts::TAU;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::cellular::Diagram;
use crate::error::{Error, Result};
use crate::series::Series;

/// Reads one column of comma-separated text as a series.
///
/// Empty lines are skipped. If the selected field of the first non-empty
/// line does not parse as a number it is treated as a header. Line numbers
/// in errors are 1-based.
pub fn parse_csv(text: &str, column: usize) -> Result<Series> {
    let mut values = Vec::new();
    let mut first = true;
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        let is_first = std::mem::replace(&mut first, false);
        let Some(field) = line.split(',').nth(column) else {
            return Err(Error::Parse {
                line: line_no,
                message: format!(
                    "column {column} out of range ({} fields)",
                    line.split(',').count()
                ),
            });
        };
        let field = field.trim();
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(v) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("value {v} is not finite"),
                })
            }
            Err(_) if is_first => {}
            Err(_) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("{field:?} is not a number"),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Series::new(values)
}

/// Writes a single-column CSV, one value per line, in shortest round-trip
/// notation.
pub fn series_to_csv(series: &Series) -> String {
    let mut out = String::with_capacity(series.len() * 8);
    for v in series.values() {
        writeln!(out, "{v}").expect("writing to a String cannot fail");
    }
    out
}

/// `K` lines of `N` comma-separated `0`/`1` values, `1` for black.
pub fn export_mask_csv(diagram: &Diagram) -> Result<String> {
    diagram.require_steps()?;
    let mut out = String::with_capacity(diagram.steps() * (2 * diagram.width() + 1));
    for row in diagram.mask_rows() {
        for (t, &black) in row.iter().enumerate() {
            if t > 0 {
                out.push(',');
            }
            out.push(if black { '1' } else { '0' });
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SyntheticKind {
    /// `sin(scale * t)`
    Sin,
    /// `(scale * t) * sin(scale * t)`
    XSin,
    /// `sin(scale * t) + cos(3 * scale * t)`
    SinPlusCos3x,
    /// `-(t - (n - 1) / 2)^2`
    Parabola,
    /// Zeros with a single 1 at `n / 2`.
    Spike,
    /// `t mod 2`
    Sawtooth,
    /// Tiles of `[5, 9, 9, 9, 9, 9, 4]`.
    Weekly,
    Constant,
    Linear,
}

pub const WEEKLY_PATTERN: [f64; 7] = [5.0, 9.0, 9.0, 9.0, 9.0, 9.0, 4.0];

/// Default x-axis step for trigonometric kinds: 50 samples per cycle.
pub const DEFAULT_SCALE: f64 = TAU / 50.0;

impl SyntheticKind {
    pub const ALL: [SyntheticKind; 9] = [
        SyntheticKind::Sin,
        SyntheticKind::XSin,
        SyntheticKind::SinPlusCos3x,
        SyntheticKind::Parabola,
        SyntheticKind::Spike,
        SyntheticKind::Sawtooth,
        SyntheticKind::Weekly,
        SyntheticKind::Constant,
        SyntheticKind::Linear,
    ];

    pub fn is_trigonometric(self) -> bool {
        matches!(
            self,
            SyntheticKind::Sin | SyntheticKind::XSin | SyntheticKind::SinPlusCos3x
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            SyntheticKind::Sin => "sin",
            SyntheticKind::XSin => "x-sin",
            SyntheticKind::SinPlusCos3x => "sin-plus-cos3x",
            SyntheticKind::Parabola => "parabola",
            SyntheticKind::Spike => "spike",
            SyntheticKind::Sawtooth => "sawtooth",
            SyntheticKind::Weekly => "weekly",
            SyntheticKind::Constant => "constant",
            SyntheticKind::Linear => "linear",
        }
    }
}

impl fmt::Display for SyntheticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SyntheticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        SyntheticKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .or(match key.as_str() {
                "xsin" => Some(SyntheticKind::XSin),
                "sin-cos3x" | "sin+cos3x" => Some(SyntheticKind::SinPlusCos3x),
                _ => None,
            })
            .ok_or_else(|| Error::invalid_argument(format!("unknown synthetic kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub kind: SyntheticKind,
    pub n: usize,
    /// x-axis step between samples; only trigonometric kinds read it.
    pub scale: f64,
}

impl SyntheticSpec {
    pub fn new(kind: SyntheticKind, n: usize) -> Self {
        SyntheticSpec {
            kind,
            n,
            scale: DEFAULT_SCALE,
        }
    }

    pub fn with_scale(self, scale: f64) -> Self {
        SyntheticSpec { scale, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid_argument("sample count must be at least 1"));
        }
        if self.kind.is_trigonometric() && !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::invalid_argument(format!(
                "scale must be positive and finite, got {}",
                self.scale
            )));
        }
        Ok(())
    }
}

pub fn generate(spec: &SyntheticSpec) -> Result<Series> {
    spec.validate()?;
    let n = spec.n;
    let h = spec.scale;
    let centre = (n - 1) as f64 / 2.0;
    let values = (0..n)
        .map(|t| {
            let tf = t as f64;
            match spec.kind {
                SyntheticKind::Sin => (h * tf).sin(),
                SyntheticKind::XSin => (h * tf) * (h * tf).sin(),
                SyntheticKind::SinPlusCos3x => (h * tf).sin() + (3.0 * h * tf).cos(),
                SyntheticKind::Parabola => -(tf - centre).powi(2),
                SyntheticKind::Spike => {
                    if t == n / 2 {
                        1.0
                    } else {
                        0.0
                    }
                }
                SyntheticKind::Sawtooth => (t % 2) as f64,
                SyntheticKind::Weekly => WEEKLY_PATTERN[t % WEEKLY_PATTERN.len()],
                SyntheticKind::Constant => 1.0,
                SyntheticKind::Linear => tf,
            }
        })
        .collect();
    Series::new(values)
}
