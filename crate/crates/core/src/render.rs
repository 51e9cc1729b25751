//! Raster and text output of a diagram.
//!
//! Step 1 is the top row and series position 0 the left column. Black cells
//! are ink (pixel value 0), white cells paper (maximum value).

use std::fmt;
use std::str::FromStr;

use crate::cellular::Diagram;
use crate::error::{Error, Result};

const INK: u8 = 0;
const PAPER: u8 = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RenderFormat {
    /// Binary PBM, one bit per pixel.
    PbmP4,
    /// Binary PGM, 8-bit.
    PgmP5,
    /// 8-bit grayscale PNG.
    Png,
    Ascii,
}

impl RenderFormat {
    pub fn extension(self) -> &'static str {
        match self {
            RenderFormat::PbmP4 => "pbm",
            RenderFormat::PgmP5 => "pgm",
            RenderFormat::Png => "png",
            RenderFormat::Ascii => "txt",
        }
    }
}

impl fmt::Display for RenderFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RenderFormat::PbmP4 => "pbm",
            RenderFormat::PgmP5 => "pgm",
            RenderFormat::Png => "png",
            RenderFormat::Ascii => "ascii",
        })
    }
}

impl FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pbm" | "p4" | "pbm_p4" => Ok(RenderFormat::PbmP4),
            "pgm" | "p5" | "pgm_p5" => Ok(RenderFormat::PgmP5),
            "png" => Ok(RenderFormat::Png),
            "ascii" | "txt" | "text" => Ok(RenderFormat::Ascii),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub format: RenderFormat,
    /// Pixels per cell along both axes.
    pub cell_size: usize,
    /// Draw the source series above the mask grid.
    pub composite: bool,
    /// Height of the source panel in cells, used only when `composite`.
    pub panel_height: usize,
}

pub const MIN_PANEL_HEIGHT: usize = 8;

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            format: RenderFormat::PbmP4,
            cell_size: 1,
            composite: false,
            panel_height: 64,
        }
    }
}

impl RenderSpec {
    pub fn new(format: RenderFormat) -> Self {
        RenderSpec {
            format,
            ..RenderSpec::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cell_size == 0 {
            return Err(Error::invalid_argument("cell_size must be at least 1"));
        }
        if self.composite && self.panel_height < MIN_PANEL_HEIGHT {
            return Err(Error::invalid_argument(format!(
                "panel_height must be at least {MIN_PANEL_HEIGHT}"
            )));
        }
        Ok(())
    }

    /// Pixel dimensions `(width, height)` of a raster for `diagram`.
    pub fn dimensions(&self, diagram: &Diagram) -> (usize, usize) {
        let cells_high = diagram.steps()
            + if self.composite {
                self.panel_height + 1
            } else {
                0
            };
        (
            diagram.width() * self.cell_size,
            cells_high * self.cell_size,
        )
    }
}

/// Row-major grayscale cell grid before scaling.
struct CellGrid {
    width: usize,
    height: usize,
    cells: Vec<u8>,
}

impl CellGrid {
    fn build(diagram: &Diagram, spec: &RenderSpec) -> Self {
        let width = diagram.width();
        let panel_rows = if spec.composite {
            spec.panel_height + 1
        } else {
            0
        };
        let height = panel_rows + diagram.steps();
        let mut cells = vec![PAPER; width * height];

        if spec.composite {
            let ink_rows = source_panel_rows(diagram.source().values(), spec.panel_height);
            for (t, row) in ink_rows.into_iter().enumerate() {
                cells[row * width + t] = INK;
            }
        }
        for (k, mask) in diagram.mask_rows().enumerate() {
            let base = (panel_rows + k) * width;
            for (t, &black) in mask.iter().enumerate() {
                if black {
                    cells[base + t] = INK;
                }
            }
        }
        CellGrid {
            width,
            height,
            cells,
        }
    }

    fn pixel_rows(&self, cell_size: usize) -> impl Iterator<Item = Vec<u8>> + '_ {
        (0..self.height).flat_map(move |r| {
            let row: Vec<u8> = self.cells[r * self.width..(r + 1) * self.width]
                .iter()
                .flat_map(|&v| std::iter::repeat(v).take(cell_size))
                .collect();
            std::iter::repeat(row).take(cell_size)
        })
    }
}

/// Panel row (0 = top) holding the ink cell for each source value.
///
/// Values are min-max normalised so the maximum lands on the top row; a
/// constant series sits on the middle row.
fn source_panel_rows(values: &[f64], panel_height: usize) -> Vec<usize> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let last = (panel_height - 1) as f64;
    values
        .iter()
        .map(|&v| {
            if span > 0.0 && span.is_finite() {
                ((hi - v) / span * last).round() as usize
            } else {
                (panel_height - 1) / 2
            }
        })
        .collect()
}

fn write_pbm(grid: &CellGrid, cell_size: usize, out: &mut Vec<u8>) {
    let width = grid.width * cell_size;
    for row in grid.pixel_rows(cell_size) {
        let mut packed = vec![0u8; width.div_ceil(8)];
        for (x, &v) in row.iter().enumerate() {
            if v == INK {
                packed[x / 8] |= 0x80 >> (x % 8);
            }
        }
        out.extend_from_slice(&packed);
    }
}

fn encode_png(grid: &CellGrid, cell_size: usize, width: usize, height: usize) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut buf, width as u32, height as u32);
        encoder.set_color(png::ColorType::Grayscale);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder
            .write_header()
            .map_err(|e| Error::Encode(e.to_string()))?;
        let data: Vec<u8> = grid.pixel_rows(cell_size).flatten().collect();
        writer
            .write_image_data(&data)
            .map_err(|e| Error::Encode(e.to_string()))?;
        writer.finish().map_err(|e| Error::Encode(e.to_string()))?;
    }
    Ok(buf)
}

/// Encodes `diagram` as a raster image in `spec.format`.
///
/// The image is `N * cell_size` pixels wide and
/// `(K + composite * (panel_height + 1)) * cell_size` pixels high.
pub fn render_raster(diagram: &Diagram, spec: &RenderSpec) -> Result<Vec<u8>> {
    diagram.require_steps()?;
    spec.validate()?;
    if spec.format == RenderFormat::Ascii {
        return Err(Error::UnsupportedFormat(
            "ascii is not a raster format".to_string(),
        ));
    }
    let (width, height) = spec.dimensions(diagram);
    if width == 0 || u32::try_from(width).is_err() || u32::try_from(height).is_err() {
        return Err(Error::invalid_argument(format!(
            "cannot encode a {width}x{height} image"
        )));
    }
    let grid = CellGrid::build(diagram, spec);

    match spec.format {
        RenderFormat::PbmP4 => {
            let mut out = format!("P4\n{width} {height}\n").into_bytes();
            out.reserve(width.div_ceil(8) * height);
            write_pbm(&grid, spec.cell_size, &mut out);
            Ok(out)
        }
        RenderFormat::PgmP5 => {
            let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
            out.reserve(width * height);
            for row in grid.pixel_rows(spec.cell_size) {
                out.extend_from_slice(&row);
            }
            Ok(out)
        }
        RenderFormat::Png => encode_png(&grid, spec.cell_size, width, height),
        RenderFormat::Ascii => unreachable!(),
    }
}

/// One line per step, `#` for black and `.` for white.
pub fn render_ascii(diagram: &Diagram) -> Result<String> {
    diagram.require_steps()?;
    let mut out = String::with_capacity((diagram.width() + 1) * diagram.steps());
    for row in diagram.mask_rows() {
        out.extend(row.iter().map(|&b| if b { '#' } else { '.' }));
        out.push('\n');
    }
    Ok(out)
}

/// Renders in any [`RenderFormat`]; ASCII output is returned as UTF-8 bytes.
pub fn render(diagram: &Diagram, spec: &RenderSpec) -> Result<Vec<u8>> {
    match spec.format {
        RenderFormat::Ascii => render_ascii(diagram).map(String::into_bytes),
        _ => render_raster(diagram, spec),
    }
}
