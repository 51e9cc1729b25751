//! The peak-smoothing operator and the layered diagram it produces.
//!
//! One step replaces every interior value lying strictly above the mean of
//! its two neighbours with that mean and leaves everything else alone. A cell
//! is black when its value was replaced and white when it was copied. Steps
//! are synchronous: every read in step `k` targets layer `k - 1`.

use crate::error::{Error, Result};
use crate::series::{check_finite, Series};

/// One application of the smoothing operator.
#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    values: Vec<f64>,
    mask: Vec<bool>,
    step_index: usize,
}

impl StepResult {
    /// The smoothed layer.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `true` (black) where the averaging branch fired.
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// The 1-based step this layer belongs to.
    pub fn step_index(&self) -> usize {
        self.step_index
    }

    pub fn changed(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<bool>) {
        (self.values, self.mask)
    }
}

/// Writes one smoothing step of `prev` into `out` and `mask`.
///
/// Returns whether any cell turned black. All three slices must have the
/// same length.
#[inline]
fn smooth_into(prev: &[f64], out: &mut [f64], mask: &mut [bool]) -> bool {
    debug_assert_eq!(prev.len(), out.len());
    debug_assert_eq!(prev.len(), mask.len());
    let n = prev.len();
    out.copy_from_slice(prev);
    mask.fill(false);
    if n < 3 {
        return false;
    }
    let mut any = false;
    for (t, window) in prev.windows(3).enumerate() {
        let mean = (window[0] + window[2]) / 2.0;
        // Ties stay white: the unchanged branch uses `<=`.
        if window[1] > mean {
            out[t + 1] = mean;
            mask[t + 1] = true;
            any = true;
        }
    }
    any
}

/// Applies the smoothing operator once to `previous`.
pub fn smooth_step(previous: &[f64]) -> Result<StepResult> {
    check_finite(previous)?;
    let mut values = vec![0.0; previous.len()];
    let mut mask = vec![false; previous.len()];
    smooth_into(previous, &mut values, &mut mask);
    Ok(StepResult {
        values,
        mask,
        step_index: 1,
    })
}

/// Returns `true` when one smoothing step would leave `series` unchanged,
/// i.e. every interior value is at or below its neighbour mean.
pub fn is_fixed_point(series: &[f64]) -> Result<bool> {
    check_finite(series)?;
    Ok(series.windows(3).all(|w| w[1] <= (w[0] + w[2]) / 2.0))
}

/// Runs exactly `steps` smoothing steps over `source`.
///
/// There is no early exit: once a row comes out all white the remaining
/// rows are stored as copies.
pub fn iterate(source: &Series, steps: usize) -> Result<Diagram> {
    let n = source.len();
    let cells = steps
        .checked_mul(n)
        .ok_or_else(|| Error::invalid_argument("diagram size overflows"))?;
    let mut layers = vec![0.0; cells];
    let mut masks = vec![false; cells];

    let mut settled = false;
    for k in 0..steps {
        let (done, rest) = layers.split_at_mut(k * n);
        let prev: &[f64] = if k == 0 {
            source.values()
        } else {
            &done[(k - 1) * n..]
        };
        let out = &mut rest[..n];
        let mask = &mut masks[k * n..(k + 1) * n];
        if settled {
            out.copy_from_slice(prev);
        } else {
            settled = !smooth_into(prev, out, mask);
        }
    }

    Ok(Diagram {
        source: source.clone(),
        steps,
        layers,
        masks,
    })
}

/// The source series together with `steps` smoothed layers and mask rows.
///
/// Step 0 is the source itself; steps `1..=steps` are the smoothed layers.
/// Mask rows exist for steps `1..=steps` only.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagram {
    source: Series,
    steps: usize,
    layers: Vec<f64>,
    masks: Vec<bool>,
}

impl Diagram {
    /// Builds a diagram directly from mask rows, with every layer equal to a
    /// zero source. Used to render or analyse grids produced elsewhere.
    ///
    /// All rows must share one length.
    pub fn from_masks(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid_argument("mask rows differ in length"));
        }
        Ok(Diagram {
            source: Series::new(vec![0.0; n])?,
            steps: rows.len(),
            layers: vec![0.0; rows.len() * n],
            masks: rows.concat(),
        })
    }

    pub fn source(&self) -> &Series {
        &self.source
    }

    /// Number of smoothing steps (mask rows), `K`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Number of positions per row, `N`.
    pub fn width(&self) -> usize {
        self.source.len()
    }

    /// Layer for `step`, where step 0 is the source.
    pub fn layer(&self, step: usize) -> Option<&[f64]> {
        let n = self.width();
        match step {
            0 => Some(self.source.values()),
            k if k <= self.steps => Some(&self.layers[(k - 1) * n..k * n]),
            _ => None,
        }
    }

    /// Mask row for `step` in `1..=steps`.
    pub fn mask(&self, step: usize) -> Option<&[bool]> {
        let n = self.width();
        if step == 0 || step > self.steps {
            return None;
        }
        Some(&self.masks[(step - 1) * n..step * n])
    }

    /// Smoothed layers in step order, excluding the source.
    pub fn layers(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        let n = self.width();
        (0..self.steps).map(move |k| &self.layers[k * n..(k + 1) * n])
    }

    /// Mask rows in step order, step 1 first.
    pub fn mask_rows(&self) -> impl ExactSizeIterator<Item = &[bool]> + '_ {
        let n = self.width();
        (0..self.steps).map(move |k| &self.masks[k * n..(k + 1) * n])
    }

    pub fn black_cells(&self) -> usize {
        self.masks.iter().filter(|&&b| b).count()
    }

    pub fn is_all_white(&self) -> bool {
        !self.masks.contains(&true)
    }

    /// First step whose mask row is all white, if any.
    pub fn first_settled_step(&self) -> Option<usize> {
        self.mask_rows()
            .position(|row| !row.contains(&true))
            .map(|i| i + 1)
    }

    pub(crate) fn require_steps(&self) -> Result<()> {
        if self.steps == 0 {
            Err(Error::invalid_argument("diagram has no steps"))
        } else {
            Ok(())
        }
    }
}
