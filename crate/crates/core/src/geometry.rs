//! Small planar helpers shared across modules.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;

/// Euclidean inner product of two plane vectors.
#[inline]
pub fn dot(a: Complex, b: Complex) -> f64 {
    a.re * b.re + a.im * b.im
}

/// z-component of the cross product `a × b`.
#[inline]
pub fn cross(a: Complex, b: Complex) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Unit complex number `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex {
    Complex::new(theta.cos(), theta.sin())
}

/// Reduce an angle to `[0, 2π)`.
#[inline]
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed circular difference `x − y` mapped into `(−π, π]`.
#[inline]
pub fn circular_diff(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        let ok = [x0, y0, x1, y1].iter().all(|v| v.is_finite()) && x1 > x0 && y1 > y0;
        if !ok {
            return Err(Error::PreconditionViolated(format!(
                "window ({x0},{y0})-({x1},{y1}) must be finite with x1 > x0 and y1 > y0"
            )));
        }
        Ok(Window { x0, y0, x1, y1 })
    }

    /// Square window `[−h, h]²`.
    pub fn centered(h: f64) -> Result<Self> {
        Window::new(-h, -h, h, h)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn contains(&self, z: Complex) -> bool {
        z.re >= self.x0 && z.re <= self.x1 && z.im >= self.y0 && z.im <= self.y1
    }
}

impl std::str::FromStr for Window {
    type Err = Error;

    /// Parses `x0,y0,x1,y1`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::PreconditionViolated(format!("window {s:?}: {e}")))?;
        match v.as_slice() {
            [x0, y0, x1, y1] => Window::new(*x0, *y0, *x1, *y1),
            _ => Err(Error::PreconditionViolated(format!(
                "window {s:?}: expected x0,y0,x1,y1"
            ))),
        }
    }
}
