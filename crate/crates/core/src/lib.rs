//! Peak smoothing of measurement series as a one-dimensional cellular
//! structure.
//!
//! Each step of the smoothing operator lowers every value that sits strictly
//! above the mean of its two neighbours to that mean. Recording which cells
//! changed (black) and which were copied (white) at every step gives a
//! two-dimensional diagram: step index down the vertical axis, series
//! position along the horizontal one. Periodic components show up as
//! regularly spaced vertical stripes, concave regions as solid bands, and
//! jagged stretches as checkerboards.
//!
//! ```
//! use peakcell::{iterate, render_ascii, Series};
//!
//! let series = Series::new(vec![0.0, 2.0, 0.5, 2.0, 0.5, 2.0, 0.0]).unwrap();
//! let diagram = iterate(&series, 2).unwrap();
//! assert_eq!(render_ascii(&diagram).unwrap(), ".#.#.#.\n..#.#..\n");
//! ```

pub mod analysis;
pub mod cellular;
pub mod error;
pub mod ingest;
pub mod render;
pub mod series;

pub use analysis::{
    analyze, classify_convexity, depth_profile, detect_instability, estimate_periods,
    AnalysisOptions, Convexity, DepthProfile, FeatureReport, InstabilityInterval, PeriodEstimate,
};
pub use cellular::{is_fixed_point, iterate, smooth_step, Diagram, StepResult};
pub use error::{Error, Result};
pub use ingest::{
    export_mask_csv, generate, parse_csv, series_to_csv, SyntheticKind, SyntheticSpec,
};
pub use render::{render, render_ascii, render_raster, RenderFormat, RenderSpec};
pub use series::Series;

/// Iteration count used when none is given: `min(N, 256)`.
pub fn default_steps(len: usize) -> usize {
    len.min(256)
}
