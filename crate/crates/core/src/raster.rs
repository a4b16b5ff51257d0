//! Raster images of the bounded-orbit set and of forward images of a disc.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound_report, DEFAULT_DEPTH};
use crate::error::{Error, Result};
use crate::geometry::Window;
use crate::map::PiecewiseRotation;
use crate::Complex;

/// Seeds per output pixel for forward-image renders.
pub const DEFAULT_SEED_DENSITY: usize = 4;
/// Hit-count cap (and grey scale) of forward-image renders.
pub const ATTR_LEVELS: u32 = 16;

/// Row-major grid; row 0 is the top edge `y = y1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RasterGrid {
    pub window: Window,
    pub width: usize,
    pub height: usize,
    /// Value that maps to white.
    pub iters: u32,
    pub data: Vec<u32>,
}

impl RasterGrid {
    pub fn get(&self, col: usize, row: usize) -> u32 {
        self.data[row * self.width + col]
    }
}

fn check_size(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::PreconditionViolated("raster size must be at least 1x1".into()));
    }
    Ok(())
}

/// Centre of pixel `(col, row)`.
pub fn pixel_center(window: &Window, width: usize, height: usize, col: usize, row: usize) -> Complex {
    Complex::new(
        window.x0 + (col as f64 + 0.5) * window.width() / width as f64,
        window.y1 - (row as f64 + 0.5) * window.height() / height as f64,
    )
}

/// First step with `|T^n z| > radius`, or `iters` if none.
pub fn escape_step(t: &PiecewiseRotation, mut z: Complex, iters: u32, radius: f64) -> u32 {
    let r2 = radius * radius;
    for n in 0..iters {
        if z.norm_sqr() > r2 {
            return n;
        }
        z = t.apply(z);
    }
    iters
}

/// Escape-time image of the bounded-orbit set.
pub fn render_born(
    t: &PiecewiseRotation,
    window: Window,
    width: usize,
    height: usize,
    iters: u32,
    escape_radius: f64,
) -> Result<RasterGrid> {
    check_size(width, height)?;
    if iters == 0 || !(escape_radius > 0.0) {
        return Err(Error::PreconditionViolated(
            "iters and escape radius must be positive".into(),
        ));
    }
    let rows: Vec<Vec<u32>> = (0..height)
        .into_par_iter()
        .map(|row| {
            (0..width)
                .map(|col| escape_step(t, pixel_center(&window, width, height, col, row), iters, escape_radius))
                .collect()
        })
        .collect();
    Ok(RasterGrid {
        window,
        width,
        height,
        iters,
        data: rows.concat(),
    })
}

/// Escape radius used when none is given: the certified radius when the map
/// qualifies, else `10·max(|C0|, |C1|)`.
pub fn default_escape_radius(t: &PiecewiseRotation) -> f64 {
    bound_report(t, DEFAULT_DEPTH, true)
        .map(|r| r.best_radius())
        .unwrap_or(10.0 * t.c0().norm().max(t.c1().norm()))
}

/// Seeds on a square lattice over `B(0, m)`, about `count` of them.
fn disc_seeds(m: f64, count: usize) -> (usize, f64) {
    let side = ((count as f64 * 4.0 / std::f64::consts::PI).sqrt().ceil() as usize).max(1);
    (side, 2.0 * m / side as f64)
}

/// Hit counts of `T^{n_steps}` applied to a lattice sample of `B(0, m)`.
pub fn render_attr(
    t: &PiecewiseRotation,
    m: f64,
    window: Window,
    width: usize,
    height: usize,
    n_steps: usize,
) -> Result<RasterGrid> {
    render_attr_with_density(t, m, window, width, height, n_steps, DEFAULT_SEED_DENSITY)
}

/// [`render_attr`] with `density` seeds per output pixel.
pub fn render_attr_with_density(
    t: &PiecewiseRotation,
    m: f64,
    window: Window,
    width: usize,
    height: usize,
    n_steps: usize,
    density: usize,
) -> Result<RasterGrid> {
    check_size(width, height)?;
    let c = t.classification();
    if c.delta < -c.tolerance_used {
        return Err(Error::WrongSign(
            "forward images need delta >= 0; use the escape-time render".into(),
        ));
    }
    if !(m > 0.0) || density == 0 {
        return Err(Error::PreconditionViolated("radius and density must be positive".into()));
    }
    let (side, h) = disc_seeds(m, density * width * height);
    let (sx, sy) = (width as f64 / window.width(), height as f64 / window.height());
    let hits = (0..side)
        .into_par_iter()
        .map(|j| {
            let mut local = vec![0u32; width * height];
            let y = -m + (j as f64 + 0.5) * h;
            for i in 0..side {
                let z0 = Complex::new(-m + (i as f64 + 0.5) * h, y);
                if z0.norm_sqr() > m * m {
                    continue;
                }
                let z = t.apply_n(z0, n_steps);
                let col = ((z.re - window.x0) * sx).floor();
                let row = ((window.y1 - z.im) * sy).floor();
                if col >= 0.0 && row >= 0.0 && (col as usize) < width && (row as usize) < height {
                    local[row as usize * width + col as usize] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u32; width * height],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(RasterGrid {
        window,
        width,
        height,
        iters: ATTR_LEVELS,
        data: hits.into_iter().map(|v| v.min(ATTR_LEVELS)).collect(),
    })
}

/// Binary PGM bytes: `"P5\n<w> <h>\n255\n"` then one byte per pixel.
pub fn to_pgm(grid: &RasterGrid) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", grid.width, grid.height).into_bytes();
    let iters = grid.iters.max(1) as u64;
    out.extend(
        grid.data
            .iter()
            .map(|&v| ((255 * v.min(grid.iters) as u64) / iters) as u8),
    );
    out
}

pub fn write_pgm(grid: &RasterGrid, path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let mut f = std::fs::File::create(path).map_err(io)?;
    f.write_all(&to_pgm(grid)).map_err(io)
}
