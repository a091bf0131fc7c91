//! Black-on-white point plots and circle overlays, written as binary PPM (P6).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::attractor::PointCloud;
use crate::circle::Circle;

pub const WHITE: u8 = 255;
pub const BLACK: u8 = 0;

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("raster must be at least 1x1, got {0}x{1}")]
    InvalidSize(usize, usize),
    #[error("viewport must have positive finite extent on both axes")]
    InvalidViewport,
    #[error("failed to write image: {0}")]
    IoFailure(#[from] io::Error),
}

/// Visible region of the complex plane, `x` rightward and `y` upward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Viewport {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self, RasterError> {
        let ok = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite())
            && x_max > x_min
            && y_max > y_min;
        if !ok {
            return Err(RasterError::InvalidViewport);
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// The square `[−1.1, 1.1]²`, the unit disc with a margin.
    pub fn unit_disc() -> Self {
        Self {
            x_min: -1.1,
            x_max: 1.1,
            y_min: -1.1,
            y_max: 1.1,
        }
    }
}

impl Default for Viewport {
    fn default() -> Self {
        Self::unit_disc()
    }
}

/// Row-major RGB pixel grid tied to a viewport. Row 0 is the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
    viewport: ViewportBits,
}

// Viewport with bitwise equality so Raster can be Eq.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ViewportBits([u64; 4]);

impl From<Viewport> for ViewportBits {
    fn from(v: Viewport) -> Self {
        Self([v.x_min, v.x_max, v.y_min, v.y_max].map(f64::to_bits))
    }
}

impl Raster {
    /// An all-white raster.
    pub fn new(width: usize, height: usize, viewport: Viewport) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::InvalidSize(width, height));
        }
        Viewport::new(
            viewport.x_min,
            viewport.x_max,
            viewport.y_min,
            viewport.y_max,
        )?;
        Ok(Self {
            width,
            height,
            pixels: vec![[WHITE; 3]; width * height],
            viewport: viewport.into(),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn viewport(&self) -> Viewport {
        let [x_min, x_max, y_min, y_max] = self.viewport.0.map(f64::from_bits);
        Viewport {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn pixel(&self, col: usize, row: usize) -> [u8; 3] {
        self.pixels[row * self.width + col]
    }

    pub fn set_pixel(&mut self, col: usize, row: usize, rgb: [u8; 3]) {
        self.pixels[row * self.width + col] = rgb;
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    /// World width and height of one pixel.
    pub fn pixel_size(&self) -> (f64, f64) {
        let v = self.viewport();
        (
            (v.x_max - v.x_min) / self.width as f64,
            (v.y_max - v.y_min) / self.height as f64,
        )
    }

    /// Pixel `(col, row)` containing `(x, y)`, or `None` outside the viewport.
    pub fn pixel_of(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let v = self.viewport();
        let fx = (x - v.x_min) / (v.x_max - v.x_min) * self.width as f64;
        let fy = (v.y_max - y) / (v.y_max - v.y_min) * self.height as f64;
        if !(fx >= 0.0 && fy >= 0.0) {
            return None;
        }
        let (col, row) = (fx.floor() as usize, fy.floor() as usize);
        (col < self.width && row < self.height).then_some((col, row))
    }

    /// World coordinates of the center of pixel `(col, row)`.
    pub fn pixel_center(&self, col: usize, row: usize) -> (f64, f64) {
        let v = self.viewport();
        let (sx, sy) = self.pixel_size();
        (
            v.x_min + (col as f64 + 0.5) * sx,
            v.y_max - (row as f64 + 0.5) * sy,
        )
    }

    /// Pixels whose intensity is not white.
    pub fn inked(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pixels
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != [WHITE; 3])
            .map(|(i, _)| (i % self.width, i / self.width))
    }

    /// The PPM (P6) encoding.
    pub fn to_ppm(&self) -> Vec<u8> {
        let header = format!("P6\n{} {}\n255\n", self.width, self.height);
        let mut out = Vec::with_capacity(header.len() + 3 * self.pixels.len());
        out.extend_from_slice(header.as_bytes());
        for p in &self.pixels {
            out.extend_from_slice(p);
        }
        out
    }

    pub fn write_ppm<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(&self.to_ppm())?;
        w.flush()
    }
}

/// Plots each point as one black pixel on a white background.
pub fn rasterize(
    cloud: &PointCloud,
    width: usize,
    height: usize,
    viewport: Viewport,
) -> Result<Raster, RasterError> {
    let mut raster = Raster::new(width, height, viewport)?;
    for z in cloud.points() {
        if let Some((col, row)) = raster.pixel_of(z.re, z.im) {
            raster.set_pixel(col, row, [BLACK; 3]);
        }
    }
    Ok(raster)
}

/// Strokes each circle with a one-pixel outline and marks its center with a
/// 3×3 dot, in gray level `stroke`.
///
/// A pixel belongs to the outline when its center lies within half a pixel of
/// the circle, measured radially.
pub fn draw_circles(mut raster: Raster, circles: &[Circle], stroke: u8) -> Raster {
    let (sx, sy) = raster.pixel_size();
    let half = 0.5 * sx.max(sy);
    let ink = [stroke; 3];
    let v = raster.viewport();
    for circle in circles {
        let (m, r) = (circle.center(), circle.radius());
        let reach = r + half;
        let col_lo = ((m.re - reach - v.x_min) / sx).floor().max(0.0) as usize;
        let col_hi = (((m.re + reach - v.x_min) / sx).ceil().max(0.0) as usize).min(raster.width);
        let row_lo = ((v.y_max - m.im - reach) / sy).floor().max(0.0) as usize;
        let row_hi = (((v.y_max - m.im + reach) / sy).ceil().max(0.0) as usize).min(raster.height);
        for row in row_lo..row_hi {
            for col in col_lo..col_hi {
                let (x, y) = raster.pixel_center(col, row);
                let dist = (x - m.re).hypot(y - m.im);
                if (dist - r).abs() <= half {
                    raster.set_pixel(col, row, ink);
                }
            }
        }
        if let Some((col, row)) = raster.pixel_of(m.re, m.im) {
            for dr in -1isize..=1 {
                for dc in -1isize..=1 {
                    let (c, r) = (col as isize + dc, row as isize + dr);
                    if (0..raster.width as isize).contains(&c)
                        && (0..raster.height as isize).contains(&r)
                    {
                        raster.set_pixel(c as usize, r as usize, ink);
                    }
                }
            }
        }
    }
    raster
}

/// Writes `raster` to `path` as binary PPM.
pub fn write_pnm(raster: &Raster, path: impl AsRef<Path>) -> Result<(), RasterError> {
    let file = File::create(path)?;
    raster.write_ppm(BufWriter::new(file))?;
    Ok(())
}
