//! Feature extraction from a finished diagram: vertical stripe depth,
//! periodicity, instability regions and the convexity class.

use serde::{Deserialize, Serialize};

use crate::cellular::Diagram;
use crate::error::{Error, Result};

/// Minimum normalised autocorrelation for a lag to count as a period.
pub const MIN_PERIOD_STRENGTH: f64 = 0.2;
/// Shortest series `estimate_periods` accepts.
pub const MIN_PERIOD_SERIES_LEN: usize = 8;
/// Rows inspected by `detect_instability`.
pub const INSTABILITY_ROWS: usize = 32;
pub const DEFAULT_WINDOW: usize = 16;
pub const DEFAULT_THRESHOLD: f64 = 0.5;
pub const DEFAULT_MAX_PERIODS: usize = 5;

/// Black cells per column, summed over every mask row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthProfile(Vec<usize>);

impl DepthProfile {
    pub fn depths(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodEstimate {
    /// Period in samples.
    pub period: usize,
    /// Height of the normalised autocorrelation peak.
    pub strength: f64,
}

/// Inclusive column range with sustained colour flipping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstabilityInterval {
    pub start: usize,
    pub end: usize,
    /// Highest window flip fraction inside the interval.
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Convexity {
    /// Every mask cell is white: the source is midpoint-convex.
    FixedPoint,
    /// Every interior cell of the first row is black: a solid band.
    StrictlyConcaveInterior,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureReport {
    pub periods: Vec<PeriodEstimate>,
    pub instabilities: Vec<InstabilityInterval>,
    pub convexity: Convexity,
}

/// Options for [`analyze`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub max_periods: usize,
    pub window: usize,
    pub threshold: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_periods: DEFAULT_MAX_PERIODS,
            window: DEFAULT_WINDOW,
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

pub fn depth_profile(diagram: &Diagram) -> Result<DepthProfile> {
    diagram.require_steps()?;
    let mut depths = vec![0usize; diagram.width()];
    for row in diagram.mask_rows() {
        for (d, &black) in depths.iter_mut().zip(row) {
            *d += usize::from(black);
        }
    }
    Ok(DepthProfile(depths))
}

/// Normalised autocorrelation of the mean-removed `profile` for lags
/// `0..=max_lag`. Returns `None` for a zero-variance profile.
fn autocorrelation(profile: &[usize], max_lag: usize) -> Option<Vec<f64>> {
    let n = profile.len();
    let mean = profile.iter().sum::<usize>() as f64 / n as f64;
    let centred: Vec<f64> = profile.iter().map(|&d| d as f64 - mean).collect();
    let energy: f64 = centred.iter().map(|v| v * v).sum();
    if energy <= 0.0 {
        return None;
    }
    Some(
        (0..=max_lag.min(n - 1))
            .map(|lag| {
                centred[..n - lag]
                    .iter()
                    .zip(&centred[lag..])
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
                    / energy
            })
            .collect(),
    )
}

fn is_harmonic(lag: usize, of: usize) -> bool {
    let multiple = ((lag as f64) / (of as f64)).round() as usize;
    multiple >= 1 && (lag as i64 - (multiple * of) as i64).abs() <= 1
}

/// Finds periodic components as autocorrelation peaks of the depth profile.
///
/// Candidate lags run over `2..=N/2`. A lag qualifies when it is a local
/// maximum of the autocorrelation with height at least
/// [`MIN_PERIOD_STRENGTH`]; candidates within one sample of an integer
/// multiple of a stronger accepted period are dropped. At most
/// `max_candidates` estimates are returned, strongest first.
pub fn estimate_periods(diagram: &Diagram, max_candidates: usize) -> Result<Vec<PeriodEstimate>> {
    if max_candidates == 0 {
        return Err(Error::invalid_argument("max_candidates must be positive"));
    }
    let n = diagram.width();
    if n < MIN_PERIOD_SERIES_LEN {
        return Err(Error::invalid_argument(format!(
            "series too short for period estimation: {n} < {MIN_PERIOD_SERIES_LEN}"
        )));
    }
    let profile = depth_profile(diagram)?;
    let max_lag = n / 2;
    let Some(r) = autocorrelation(profile.depths(), max_lag + 1) else {
        return Ok(Vec::new());
    };

    let mut candidates: Vec<PeriodEstimate> = (2..=max_lag)
        .filter(|&lag| r[lag] >= MIN_PERIOD_STRENGTH && r[lag] > r[lag - 1] && r[lag] >= r[lag + 1])
        .map(|lag| PeriodEstimate {
            period: lag,
            strength: r[lag].min(1.0),
        })
        .collect();
    candidates.sort_by(|a, b| {
        b.strength
            .total_cmp(&a.strength)
            .then(a.period.cmp(&b.period))
    });

    let mut accepted: Vec<PeriodEstimate> = Vec::new();
    for c in candidates {
        if accepted.len() == max_candidates {
            break;
        }
        if accepted.iter().all(|p| !is_harmonic(c.period, p.period)) {
            accepted.push(c);
        }
    }
    Ok(accepted)
}

/// Per-column count of colour flips between consecutive rows among the
/// first `rows` mask rows, ignoring the flip that first turns a cell black.
fn flip_counts(diagram: &Diagram, rows: usize) -> Vec<usize> {
    let mut counts = vec![0usize; diagram.width()];
    let mut onset = vec![false; diagram.width()];
    let mut prev: Option<&[bool]> = None;
    for row in diagram.mask_rows().take(rows) {
        if let Some(prev) = prev {
            for t in 0..row.len() {
                if onset[t] && row[t] != prev[t] {
                    counts[t] += 1;
                }
            }
        }
        for (seen, &black) in onset.iter_mut().zip(row) {
            *seen |= black;
        }
        prev = Some(row);
    }
    counts
}

/// Locates regions of sustained checkerboarding.
///
/// Within the first `R = min(K, 32)` mask rows a column's activity is the
/// number of colour flips between consecutive rows after its first black
/// cell, out of `R - 1` possible. Windows of `window` columns whose mean
/// activity reaches `threshold` are flagged and overlapping or adjacent
/// windows are merged. Each merged span is trimmed to the outermost columns
/// whose own activity reaches `threshold`. Fewer than two rows cannot
/// flip, so such diagrams report no intervals.
pub fn detect_instability(
    diagram: &Diagram,
    window: usize,
    threshold: f64,
) -> Result<Vec<InstabilityInterval>> {
    diagram.require_steps()?;
    let n = diagram.width();
    if window == 0 {
        return Err(Error::invalid_argument("window must be positive"));
    }
    if window > n {
        return Err(Error::invalid_argument(format!(
            "window {window} exceeds series length {n}"
        )));
    }
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::invalid_argument(format!(
            "threshold {threshold} outside (0, 1]"
        )));
    }
    let rows = diagram.steps().min(INSTABILITY_ROWS);
    if rows < 2 {
        return Ok(Vec::new());
    }
    let transitions = (rows - 1) as f64;
    let counts = flip_counts(diagram, rows);
    let column_active = |t: usize| counts[t] as f64 >= threshold * transitions;

    let window_cells = transitions * window as f64;
    let mut sum: usize = counts[..window].iter().sum();
    // (first column, last column, best fraction) of each merged span.
    let mut spans: Vec<(usize, usize, f64)> = Vec::new();
    for s in 0..=n - window {
        if s > 0 {
            sum = sum + counts[s + window - 1] - counts[s - 1];
        }
        let fraction = sum as f64 / window_cells;
        if sum as f64 >= threshold * window_cells {
            let end = s + window - 1;
            match spans.last_mut() {
                Some(last) if s <= last.1 + 1 => {
                    last.1 = end;
                    last.2 = last.2.max(fraction);
                }
                _ => spans.push((s, end, fraction)),
            }
        }
    }

    Ok(spans
        .into_iter()
        .filter_map(|(lo, hi, score)| {
            // A window mean at or above threshold implies some column is too.
            let start = (lo..=hi).find(|&t| column_active(t))?;
            let end = (lo..=hi).rev().find(|&t| column_active(t))?;
            Some(InstabilityInterval { start, end, score })
        })
        .collect())
}

pub fn classify_convexity(diagram: &Diagram) -> Result<Convexity> {
    diagram.require_steps()?;
    if diagram.is_all_white() {
        return Ok(Convexity::FixedPoint);
    }
    let first = diagram.mask(1).expect("diagram has at least one step");
    let n = first.len();
    if n >= 3 && first[1..n - 1].iter().all(|&b| b) {
        Ok(Convexity::StrictlyConcaveInterior)
    } else {
        Ok(Convexity::Mixed)
    }
}

/// Runs all three analyses.
///
/// Period estimation is skipped (empty list) for series shorter than
/// [`MIN_PERIOD_SERIES_LEN`]; the instability window is clamped to the
/// series length.
pub fn analyze(diagram: &Diagram, options: &AnalysisOptions) -> Result<FeatureReport> {
    let periods = if diagram.width() < MIN_PERIOD_SERIES_LEN {
        diagram.require_steps()?;
        Vec::new()
    } else {
        estimate_periods(diagram, options.max_periods)?
    };
    let window = options.window.min(diagram.width());
    let instabilities = if window == 0 {
        diagram.require_steps()?;
        Vec::new()
    } else {
        detect_instability(diagram, window, options.threshold)?
    };
    Ok(FeatureReport {
        periods,
        instabilities,
        convexity: classify_convexity(diagram)?,
    })
}
