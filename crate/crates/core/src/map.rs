//! The piecewise rotation `T` and its elementary invariants.
//!
//! `T(z) = e^{iα}(z − C_j) + C_j` on the half-plane `P_j`, where the
//! discontinuity line `D = e^{iγ}ℝ` passes through the origin. `P0` is the
//! open half-plane `Im(e^{−iγ}z) > 0` and `P1` its closed complement.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::angle::AngleSpec;
use crate::error::{Error, Result};
use crate::geometry::{cis, reduce_angle};
use crate::Complex;

/// Distance to `D` below which an iterate is flagged as boundary-fragile.
pub const FRAGILE_DISTANCE: f64 = 1e-13;

/// One of the two half-planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Piece {
    P0,
    P1,
}

impl Piece {
    pub fn code(self) -> u8 {
        match self {
            Piece::P0 => 0,
            Piece::P1 => 1,
        }
    }

    pub fn from_code(c: u8) -> Self {
        if c == 0 {
            Piece::P0
        } else {
            Piece::P1
        }
    }

    fn index(self) -> usize {
        self.code() as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    Injective,
    Surjective,
    Bijective,
}

/// Sign class of the discriminant `Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub delta: f64,
    pub kind: MapKind,
    pub tolerance_used: f64,
    /// Width `|Δ|` of the overlap (Δ > 0) or gap (Δ < 0) strip: the
    /// distance between the parallel lines `r0(D)` and `r1(D)`.
    pub strip_width: f64,
}

/// Unnormalized parameters: `D` is the line through `z0` with direction `e^{iγ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawParams {
    pub alpha: AngleSpec,
    pub c0: Complex,
    pub c1: Complex,
    pub gamma: f64,
    pub z0: Complex,
}

/// A normalized piecewise rotation (`0 ∈ D`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiecewiseRotation {
    angle: AngleSpec,
    alpha: f64,
    c0: Complex,
    c1: Complex,
    gamma: f64,
    rot: Complex,
    shift: [Complex; 2],
    // e^{−iγ}
    line_conj: Complex,
}

impl PiecewiseRotation {
    /// Map with `D = e^{iγ}ℝ`.
    pub fn new(angle: AngleSpec, c0: Complex, c1: Complex, gamma: f64) -> Result<Self> {
        let finite = |z: Complex| z.re.is_finite() && z.im.is_finite();
        if !finite(c0) || !finite(c1) || !gamma.is_finite() {
            return Err(Error::DegenerateMap("non-finite parameter"));
        }
        if c0 == c1 {
            return Err(Error::DegenerateMap("C0 = C1"));
        }
        let alpha = angle.radians();
        if alpha == 0.0 {
            return Err(Error::DegenerateMap("alpha = 0 mod 2pi"));
        }
        let gamma = reduce_angle(gamma);
        let rot = cis(alpha);
        let one_minus = Complex::new(1.0, 0.0) - rot;
        Ok(PiecewiseRotation {
            angle,
            alpha,
            c0,
            c1,
            gamma,
            rot,
            shift: [one_minus * c0, one_minus * c1],
            line_conj: cis(-gamma),
        })
    }

    /// Conjugate by the translation `z ↦ z − z0` so that the line passes through 0.
    pub fn normalize(raw: RawParams) -> Result<Self> {
        Self::new(raw.alpha, raw.c0 - raw.z0, raw.c1 - raw.z0, raw.gamma)
    }

    pub fn angle(&self) -> AngleSpec {
        self.angle
    }

    /// `α ∈ [0, 2π)`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn c0(&self) -> Complex {
        self.c0
    }

    pub fn c1(&self) -> Complex {
        self.c1
    }

    pub fn center(&self, piece: Piece) -> Complex {
        match piece {
            Piece::P0 => self.c0,
            Piece::P1 => self.c1,
        }
    }

    /// `γ ∈ [0, 2π)`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `β = arg(C1 − C0)`.
    pub fn beta(&self) -> f64 {
        (self.c1 - self.c0).arg()
    }

    /// `e^{iα}`.
    pub fn rotation(&self) -> Complex {
        self.rot
    }

    /// Signed distance `Im(e^{−iγ}z)` from `D`; positive on `P0`.
    #[inline]
    pub fn line_offset(&self, z: Complex) -> f64 {
        self.line_conj.re * z.im + self.line_conj.im * z.re
    }

    #[inline]
    pub fn half_plane(&self, z: Complex) -> Piece {
        if self.line_offset(z) > 0.0 {
            Piece::P0
        } else {
            Piece::P1
        }
    }

    /// The rotation `r_j` acting on piece `j`, applied regardless of membership.
    #[inline]
    pub fn rotate(&self, piece: Piece, z: Complex) -> Complex {
        self.rot * z + self.shift[piece.index()]
    }

    #[inline]
    pub fn apply(&self, z: Complex) -> Complex {
        self.rotate(self.half_plane(z), z)
    }

    pub fn apply_n(&self, mut z: Complex, n: usize) -> Complex {
        for _ in 0..n {
            z = self.apply(z);
        }
        z
    }

    /// `Δ = −2|C1 − C0| sin(α/2) cos(γ + α/2 − β)`.
    pub fn delta(&self) -> f64 {
        let a2 = self.alpha / 2.0;
        -2.0 * (self.c1 - self.c0).norm() * a2.sin() * (self.gamma + a2 - self.beta()).cos()
    }

    /// `‖T‖ = 2|sin(α/2)| max(|C0|, |C1|)`.
    pub fn triple_norm(&self) -> f64 {
        2.0 * (self.alpha / 2.0).sin().abs() * self.c0.norm().max(self.c1.norm())
    }

    /// Default bijectivity band `1e−12·(1 + |C1 − C0|)`.
    pub fn default_tolerance(&self) -> f64 {
        1e-12 * (1.0 + (self.c1 - self.c0).norm())
    }

    pub fn classify(&self, tolerance: f64) -> Classification {
        let delta = self.delta();
        let kind = if delta.abs() <= tolerance {
            MapKind::Bijective
        } else if delta < 0.0 {
            MapKind::Injective
        } else {
            MapKind::Surjective
        };
        Classification {
            delta,
            kind,
            tolerance_used: tolerance,
            strip_width: delta.abs(),
        }
    }

    pub fn classification(&self) -> Classification {
        self.classify(self.default_tolerance())
    }

    /// Asymptotic radial drift `g(x)` of a point of argument `x`.
    pub fn g_aux(&self, x: f64) -> f64 {
        let s = (self.alpha / 2.0).sin();
        let rel = reduce_angle(x - self.gamma);
        let c = if rel > 0.0 && rel < PI { self.c0 } else { self.c1 };
        -2.0 * c.norm() * s * (x + self.alpha / 2.0 - c.arg()).sin()
    }

    /// Conjugate by the translation `z ↦ z − p` for a point `p ∈ D`.
    pub fn shifted(&self, p: Complex) -> Result<Self> {
        if self.line_offset(p).abs() > 1e-12 * (1.0 + p.norm()) {
            return Err(Error::PreconditionViolated(
                "origin shift must stay on the discontinuity line".into(),
            ));
        }
        Self::new(self.angle, self.c0 - p, self.c1 - p, self.gamma)
    }

    /// Conjugate by the rotation `z ↦ e^{iθ}z`: centers rotate and `γ → γ + θ`.
    pub fn rotated(&self, theta: f64) -> Result<Self> {
        let r = cis(theta);
        Self::new(self.angle, r * self.c0, r * self.c1, self.gamma + theta)
    }

    /// Parameter transform attached to the similarity `f(z) = ρe^{iθ}z̄`:
    /// `α → −α`, `C_j → f(C_j)`, `γ → θ − γ`, which sends `Δ` to `−ρΔ`.
    ///
    /// `f` maps the open half-plane `P0` onto the interior of the new `P1`
    /// while the new `P1` rotates about `f(C1)`, so this is `f∘T∘f⁻¹` only
    /// after swapping the two centres (and the boundary convention).
    pub fn mirror_transform(&self, rho: f64, theta: f64) -> Result<Self> {
        let f = |z: Complex| cis(theta) * z.conj() * rho;
        Self::new(self.angle.negated(), f(self.c0), f(self.c1), theta - self.gamma)
    }
}
