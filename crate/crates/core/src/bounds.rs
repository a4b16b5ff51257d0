//! Certified radii `M(T)` for the limit sets.
//!
//! Outside `B(0, M)` every orbit escapes (`Δ < 0`) or is drawn in (`Δ > 0`).
//! Irrational rotation numbers use the first convergent denominator whose
//! block drift beats `|Δ|/π`; rational angles `2πp/q` with `q > 2` even use
//! the translation structure of `T^q`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::diophantine::{cf_expand_trusted, select_l0, Convergents, L0Selection};
use crate::error::{Error, Result};
use crate::geometry::dot;
use crate::map::{Classification, MapKind, PiecewiseRotation};
use crate::Complex;

/// Default continued-fraction depth for bound computations.
pub const DEFAULT_DEPTH: usize = 40;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum BoundCase {
    Irrational { l0: usize, q_l0: u64 },
    Rational { p: i64, q: i64, xbar: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OriginShift {
    pub p_point: Complex,
    pub norm_shifted: f64,
    pub l0_shifted: usize,
    pub q_l0_shifted: u64,
    pub m_shifted: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub classification: Classification,
    pub norm: f64,
    pub case: BoundCase,
    pub m: f64,
    pub origin_shift: Option<OriginShift>,
    /// Drift scan behind the irrational choice of `ℓ₀`.
    pub selection: Option<L0Selection>,
}

impl BoundReport {
    /// Smallest certified radius in the report.
    pub fn best_radius(&self) -> f64 {
        match &self.origin_shift {
            Some(s) => self.m.min(s.m_shifted),
            None => self.m,
        }
    }
}

/// `q‖T‖(2q/π + 1)`.
pub fn irrational_radius(q_l0: u64, norm_t: f64) -> f64 {
    let q = q_l0 as f64;
    q * norm_t * (2.0 * q / PI + 1.0)
}

fn require_non_bijective(t: &PiecewiseRotation) -> Result<Classification> {
    let c = t.classification();
    if c.kind == MapKind::Bijective {
        return Err(Error::BijectiveMap {
            abs_delta: c.delta.abs(),
        });
    }
    Ok(c)
}

/// Radius from the drift inequality at the first qualifying convergent.
pub fn irrational_bound(t: &PiecewiseRotation, conv: &Convergents) -> Result<BoundReport> {
    if conv.is_rational() {
        return Err(Error::RationalAngle);
    }
    let classification = require_non_bijective(t)?;
    let norm = t.triple_norm();
    let sel = select_l0(norm, classification.delta.abs(), conv)?;
    Ok(BoundReport {
        classification,
        norm,
        case: BoundCase::Irrational {
            l0: sel.l0,
            q_l0: sel.q_l0,
        },
        m: irrational_radius(sel.q_l0, norm),
        origin_shift: None,
        selection: Some(sel),
    })
}

/// [`irrational_bound`] plus the same bound for the map conjugated to the
/// best origin on `D`.
pub fn irrational_bound_with_shift(
    t: &PiecewiseRotation,
    conv: &Convergents,
) -> Result<BoundReport> {
    let mut report = irrational_bound(t, conv)?;
    let opt = optimize_origin(t)?;
    let shifted = irrational_bound(&opt.t_shifted, conv)?;
    let BoundCase::Irrational { l0, q_l0 } = shifted.case else {
        unreachable!()
    };
    report.origin_shift = Some(OriginShift {
        p_point: opt.p_point,
        norm_shifted: shifted.norm,
        l0_shifted: l0,
        q_l0_shifted: q_l0,
        m_shifted: shifted.m,
    });
    Ok(report)
}

/// `φ = β − α/2 − γ + π/2` reduced modulo π into `(−π/2, π/2]`.
pub fn reduced_phi(t: &PiecewiseRotation) -> f64 {
    let phi = t.beta() - t.alpha() / 2.0 - t.gamma() + FRAC_PI_2;
    let mut r = phi.rem_euclid(PI);
    if r > FRAC_PI_2 {
        r -= PI;
    }
    r
}

/// `q‖T‖(1/(2 tan φ) + 1/(2 tan(π/q)))` for `φ > 0`.
pub fn rational_xbar(q: i64, norm_t: f64, phi: f64) -> f64 {
    let q = q as f64;
    q * norm_t * (1.0 / (2.0 * phi.tan()) + 1.0 / (2.0 * (PI / q).tan()))
}

/// `q‖T‖(1/(2 tan|φ|) + 1/(2 tan(π/q)) + 1)`.
pub fn rational_radius(q: i64, norm_t: f64, phi: f64) -> f64 {
    rational_xbar(q, norm_t, phi.abs()) + q as f64 * norm_t
}

/// `(p, q)` when the angle is `2πp/q` with `q > 2` even.
pub fn even_rational_angle(t: &PiecewiseRotation) -> Result<(i64, i64)> {
    match t.angle().as_rational() {
        Some((p, q)) if q > 2 && q % 2 == 0 => Ok((p, q)),
        Some((_, q)) => Err(Error::UnsupportedAngle(format!(
            "denominator {q} must be even and larger than 2"
        ))),
        None => Err(Error::UnsupportedAngle(
            "angle is not an exact rational multiple of 2pi".into(),
        )),
    }
}

/// Radius from the translation structure of `T^q`.
pub fn rational_bound(t: &PiecewiseRotation) -> Result<BoundReport> {
    let (p, q) = even_rational_angle(t)?;
    let classification = require_non_bijective(t)?;
    let phi = reduced_phi(t);
    if phi.abs() < 1e-15 {
        return Err(Error::BijectiveMap {
            abs_delta: classification.delta.abs(),
        });
    }
    let norm = t.triple_norm();
    Ok(BoundReport {
        classification,
        norm,
        case: BoundCase::Rational {
            p,
            q,
            xbar: rational_xbar(q, norm, phi.abs()),
        },
        m: rational_radius(q, norm, phi),
        origin_shift: None,
        selection: None,
    })
}

/// Dispatch on the kind of angle. With `shift` the irrational case also
/// evaluates the optimized origin.
pub fn bound_report(t: &PiecewiseRotation, depth: usize, shift: bool) -> Result<BoundReport> {
    if t.angle().as_rational().is_some() {
        return rational_bound(t);
    }
    let conv = cf_expand_trusted(t.angle(), depth)?;
    if shift {
        irrational_bound_with_shift(t, &conv)
    } else {
        irrational_bound(t, &conv)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OriginOptimum {
    pub p_point: Complex,
    pub t_shifted: PiecewiseRotation,
}

/// The point `p ∈ D` minimizing `max(|C0 − p|, |C1 − p|)`, and the map
/// conjugated by `z ↦ z − p`.
pub fn optimize_origin(t: &PiecewiseRotation) -> Result<OriginOptimum> {
    let u = crate::geometry::cis(t.gamma());
    let proj = |c: Complex| (dot(c, u), t.line_offset(c).powi(2));
    let (c0, h0) = proj(t.c0());
    let (c1, h1) = proj(t.c1());
    let cost = |s: f64| ((s - c0).powi(2) + h0).max((s - c1).powi(2) + h1);
    let mut candidates = vec![c0, c1];
    if c1 != c0 {
        candidates.push((c1 * c1 + h1 - c0 * c0 - h0) / (2.0 * (c1 - c0)));
    }
    let s = candidates
        .into_iter()
        .min_by(|a, b| cost(*a).total_cmp(&cost(*b)))
        .expect("non-empty");
    let p_point = u * s;
    let p_point = p_point - Complex::i() * u * t.line_offset(p_point);
    Ok(OriginOptimum {
        p_point,
        t_shifted: t.shifted(p_point)?,
    })
}
