//! Continued fractions of the rotation number, the choice of `ℓ₀`, the
//! three-gaps computation and a Denjoy–Koksma checker.

use std::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{float::FloatCore, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::angle::{surd_floor, AngleSpec};
use crate::error::{Error, Result};

/// Convergent table `a_ℓ`, `p_ℓ`, `q_ℓ` for `ℓ = 0..len`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Convergents {
    pub partial_quotients: Vec<u64>,
    pub p: Vec<u64>,
    pub q: Vec<u64>,
    /// True when the expansion comes from exact integer data.
    pub exact: bool,
    /// Number of entries certified by the input (equals the length for exact specs).
    pub trusted_depth: usize,
    #[serde(skip)]
    pub spec: AngleSpec,
    /// The rotation number as a float.
    pub value: f64,
    /// Rounding error of `value` for exact specs.
    #[serde(skip)]
    pub value_lo: f64,
}

impl Convergents {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// `k·a − n` for an integer `n`, accurate to about `1e−16` for exact specs.
    pub fn shifted_multiple(&self, k: u64, n: u64) -> f64 {
        let kf = k as f64;
        let prod = kf * self.value;
        let err = kf.mul_add(self.value, -prod);
        (prod - n as f64) + (err + kf * self.value_lo)
    }

    /// `{k·a}` computed through [`Self::shifted_multiple`].
    pub fn frac_multiple(&self, k: u64) -> f64 {
        let kf = k as f64;
        let prod = kf * self.value;
        let x = self.shifted_multiple(k, prod.floor() as u64);
        x.rem_euclid(1.0)
    }

    /// True when the input is a rational number (the expansion terminates).
    pub fn is_rational(&self) -> bool {
        matches!(self.spec, AngleSpec::Rational { .. })
    }

    fn from_quotients(quotients: &[u64], spec: AngleSpec, trusted_depth: usize) -> Self {
        let (mut p2, mut q2, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
        let mut out = Convergents {
            partial_quotients: Vec::with_capacity(quotients.len()),
            p: Vec::with_capacity(quotients.len()),
            q: Vec::with_capacity(quotients.len()),
            exact: spec.is_exact(),
            trusted_depth,
            spec,
            value: spec.turns_split().0,
            value_lo: spec.turns_split().1,
        };
        for &a in quotients {
            let next = a
                .checked_mul(p1)
                .and_then(|v| v.checked_add(p2))
                .zip(a.checked_mul(q1).and_then(|v| v.checked_add(q2)));
            let Some((p, q)) = next else { break };
            out.partial_quotients.push(a);
            out.p.push(p);
            out.q.push(q);
            (p2, q2, p1, q1) = (p1, q1, p, q);
        }
        out.trusted_depth = out.trusted_depth.min(out.len());
        out
    }
}

fn rational_quotients(mut n: BigInt, mut d: BigInt, depth: usize) -> Vec<u64> {
    let mut out = Vec::new();
    while out.len() < depth && !d.is_zero() {
        let (a, rem) = n.div_mod_floor(&d);
        match a.to_u64() {
            Some(a) => out.push(a),
            None => break,
        }
        n = d;
        d = rem;
    }
    out
}

fn surd_quotients(p: i64, q: i64, d: i64, r: i64, depth: usize) -> Vec<u64> {
    // Write a = (P + √D)/Q with Q | (D − P²).
    let (mut pp, mut qq) = if q > 0 { (p as i128, r as i128) } else { (-(p as i128), -(r as i128)) };
    let mut dd = (q as i128) * (q as i128) * (d as i128);
    if (dd - pp * pp) % qq != 0 {
        let m = qq.abs();
        pp *= m;
        dd *= m * m;
        qq *= m;
    }
    let s = dd.isqrt();
    let mut out = Vec::with_capacity(depth);
    while out.len() < depth {
        let a = if qq > 0 {
            Integer::div_floor(&(pp + s), &qq)
        } else {
            Integer::div_floor(&(pp + s + 1), &qq)
        };
        match u64::try_from(a) {
            Ok(a) => out.push(a),
            Err(_) => break,
        }
        pp = a * qq - pp;
        qq = (dd - pp * pp) / qq;
    }
    debug_assert_eq!(out.first().copied(), Some(surd_floor(p as i128, q as i128, d as i128, r as i128) as u64));
    out
}

fn f64_ratio(x: f64) -> (BigInt, BigInt) {
    let (mantissa, exponent, sign) = x.integer_decode();
    let m = BigInt::from(mantissa) * BigInt::from(sign);
    if exponent >= 0 {
        (m << exponent as usize, BigInt::from(1))
    } else {
        (m, BigInt::from(1) << (-exponent) as usize)
    }
}

/// Continued-fraction expansion with up to `depth` partial quotients.
///
/// Rational and surd inputs are expanded exactly. Decimal inputs are expanded
/// on both ends of the rounding interval of `a` and stop where the two
/// expansions disagree; requesting more than that returns
/// [`Error::PrecisionExhausted`] with the trusted prefix.
pub fn cf_expand(spec: AngleSpec, depth: usize) -> Result<Convergents> {
    if depth == 0 {
        return Err(Error::PreconditionViolated("depth must be at least 1".into()));
    }
    match spec {
        AngleSpec::Rational { p, q } => {
            let qs = rational_quotients(BigInt::from(p), BigInt::from(q), depth);
            let n = qs.len();
            Ok(Convergents::from_quotients(&qs, spec, n))
        }
        AngleSpec::Surd { p, q, d, r } => {
            let qs = surd_quotients(p, q, d, r, depth);
            let n = qs.len();
            Ok(Convergents::from_quotients(&qs, spec, n))
        }
        AngleSpec::Decimal(x) => {
            let a = spec.turns();
            let scale = (x.abs() / TAU).max(a).max(f64::MIN_POSITIVE);
            let u = 4.0 * f64::EPSILON * scale;
            let lo = (a - u).max(0.0);
            let hi = a + u;
            let (ln, ld) = f64_ratio(lo);
            let (hn, hd) = f64_ratio(hi);
            let ql = rational_quotients(ln, ld, depth + 1);
            let qh = rational_quotients(hn, hd, depth + 1);
            let trusted = ql.iter().zip(&qh).take_while(|(x, y)| x == y).count();
            let keep = trusted.min(depth);
            let conv = Convergents::from_quotients(&ql[..keep], spec, keep);
            if keep < depth {
                return Err(Error::PrecisionExhausted {
                    trusted: conv.len(),
                    partial: Box::new(conv),
                });
            }
            Ok(conv)
        }
    }
}

/// Expansion to `depth`, keeping the trusted prefix of a decimal input.
pub fn cf_expand_trusted(spec: AngleSpec, depth: usize) -> Result<Convergents> {
    match cf_expand(spec, depth) {
        Err(Error::PrecisionExhausted { partial, .. }) if !partial.is_empty() => Ok(*partial),
        other => other,
    }
}

/// Left side `(1/q)((8 + π/(2q))‖T‖ + 4|Δ|)` of the drift inequality.
pub fn drift_lhs(norm_t: f64, abs_delta: f64, q: u64) -> f64 {
    let q = q as f64;
    ((8.0 + PI / (2.0 * q)) * norm_t + 4.0 * abs_delta) / q
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct L0Selection {
    pub l0: usize,
    pub q_l0: u64,
    pub lhs_at_l0: f64,
    /// `|Δ|/π`.
    pub threshold: f64,
    /// Left sides for `ℓ = 0..=l0`.
    pub scanned: Vec<f64>,
}

/// Smallest `ℓ` with `drift_lhs(q_ℓ) < |Δ|/π`.
pub fn select_l0(norm_t: f64, abs_delta: f64, conv: &Convergents) -> Result<L0Selection> {
    if !(abs_delta > 0.0) {
        return Err(Error::BijectiveMap { abs_delta });
    }
    if conv.is_empty() {
        return Err(Error::PreconditionViolated("empty convergent table".into()));
    }
    let threshold = abs_delta / PI;
    let mut scanned = Vec::new();
    for (l, &q) in conv.q.iter().enumerate() {
        let lhs = drift_lhs(norm_t, abs_delta, q);
        scanned.push(lhs);
        if lhs < threshold {
            return Ok(L0Selection {
                l0: l,
                q_l0: q,
                lhs_at_l0: lhs,
                threshold,
                scanned,
            });
        }
    }
    Err(Error::NotFoundWithinDepth { depth: conv.len() })
}

/// Gap lengths of `{ka mod 1 : 0 ≤ k < q_ℓ}` on the unit circle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThreeGaps {
    /// All gaps, ascending.
    pub gaps: Vec<f64>,
    /// Distinct gap lengths (clustered at 1e−12), ascending.
    pub distinct: Vec<f64>,
    pub min_gap: f64,
    /// `|q_{ℓ−1}a − p_{ℓ−1}|`.
    pub predicted_min_gap: f64,
    /// `1/(2q_ℓ)`.
    pub lower_bound: f64,
    /// `2π·min_gap`, the scale used by the drift estimates.
    pub min_gap_radians: f64,
}

pub const GAP_TOLERANCE: f64 = 1e-12;

pub fn three_gaps(conv: &Convergents, l: usize) -> Result<ThreeGaps> {
    if conv.is_rational() {
        return Err(Error::RationalAngle);
    }
    if l < 1 || l >= conv.len() {
        return Err(Error::PreconditionViolated(format!(
            "index {l} outside 1..{}",
            conv.len()
        )));
    }
    let n = conv.q[l] as usize;
    if n < 2 {
        return Err(Error::PreconditionViolated("q_l = 1 leaves a single point".into()));
    }
    let mut pts: Vec<f64> = (0..n as u64).map(|k| conv.frac_multiple(k)).collect();
    pts.sort_by(f64::total_cmp);
    let mut gaps: Vec<f64> = pts.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.push(1.0 - pts[n - 1] + pts[0]);
    gaps.sort_by(f64::total_cmp);
    let mut distinct: Vec<f64> = Vec::new();
    for &g in &gaps {
        if distinct.last().is_none_or(|&d| g - d > GAP_TOLERANCE) {
            distinct.push(g);
        }
    }
    let min_gap = gaps[0];
    let predicted = conv.shifted_multiple(conv.q[l - 1], conv.p[l - 1]).abs();
    let out = ThreeGaps {
        gaps,
        min_gap,
        predicted_min_gap: predicted,
        lower_bound: 1.0 / (2.0 * n as f64),
        min_gap_radians: TAU * min_gap,
        distinct,
    };
    if out.distinct.len() > 3 {
        return Err(Error::CheckFailed(format!(
            "{} distinct gap lengths for q = {n}",
            out.distinct.len()
        )));
    }
    if (out.min_gap - out.predicted_min_gap).abs() > GAP_TOLERANCE {
        return Err(Error::CheckFailed(format!(
            "min gap {} differs from |q a - p| = {}",
            out.min_gap, out.predicted_min_gap
        )));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DkCheck {
    pub birkhoff_avg: f64,
    pub mean: f64,
    pub deviation: f64,
    /// `V / q_ℓ`.
    pub bound: f64,
    pub bound_satisfied: bool,
}

/// Birkhoff average of `f` over `x + 2πka`, `k < q_ℓ`, against `m ± V/q_ℓ`.
pub fn denjoy_koksma_check<F: Fn(f64) -> f64>(
    f: F,
    variation: f64,
    mean: f64,
    a: f64,
    x: f64,
    q_l: u64,
) -> DkCheck {
    let sum: f64 = (0..q_l).map(|k| f(x + TAU * (k as f64 * a).rem_euclid(1.0))).sum();
    let avg = sum / q_l as f64;
    let deviation = (avg - mean).abs();
    let bound = variation / q_l as f64;
    DkCheck {
        birkhoff_avg: avg,
        mean,
        deviation,
        bound,
        bound_satisfied: deviation <= bound * (1.0 + 1e-12) + 1e-15,
    }
}

/// `|a − p/q|` evaluated exactly enough for the diophantine invariants.
pub fn approximation_error(conv: &Convergents, l: usize) -> f64 {
    let (p, q) = (conv.p[l] as f64, conv.q[l] as f64);
    match conv.spec {
        AngleSpec::Rational { p: ap, q: aq } => {
            let num = BigInt::from(ap) * BigInt::from(conv.q[l]) - BigInt::from(conv.p[l]) * BigInt::from(aq);
            num.abs().to_f64().unwrap_or(f64::INFINITY) / (aq as f64 * q)
        }
        _ => (conv.value - p / q).abs(),
    }
}
