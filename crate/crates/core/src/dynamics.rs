//! Orbits, radial drift, almost-periodic points and periodic islands.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::angle::AngleSpec;
use crate::error::{Error, Result};
use crate::geometry::{cis, Window};
use crate::map::{Piece, PiecewiseRotation, FRAGILE_DISTANCE};
use crate::Complex;

/// Return-distance tolerance for periodic points.
pub const PERIODIC_TOLERANCE: f64 = 1e-9;
/// Tolerance on `|1 − e^{inα}|` below which a word length is resonant.
pub const RESONANCE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitTrace {
    pub points: Vec<Complex>,
    pub args: Vec<f64>,
    pub coding: Vec<u8>,
    pub boundary_fragile: Vec<bool>,
}

impl OrbitTrace {
    pub fn any_fragile(&self) -> bool {
        self.boundary_fragile.iter().any(|&f| f)
    }
}

/// `z_k = T^k(z)` for `k = 0..=n` with codes and fragility flags.
pub fn orbit(t: &PiecewiseRotation, z: Complex, n: usize) -> OrbitTrace {
    let mut tr = OrbitTrace {
        points: Vec::with_capacity(n + 1),
        args: Vec::with_capacity(n + 1),
        coding: Vec::with_capacity(n + 1),
        boundary_fragile: Vec::with_capacity(n + 1),
    };
    let mut z = z;
    for k in 0..=n {
        tr.points.push(z);
        tr.args.push(z.arg());
        tr.coding.push(t.half_plane(z).code());
        tr.boundary_fragile.push(t.line_offset(z).abs() < FRAGILE_DISTANCE);
        if k < n {
            z = t.apply(z);
        }
    }
    tr
}

/// `e^{inα}`, exact up to one rounding for rational angles.
pub fn rotation_power(t: &PiecewiseRotation, n: i64) -> Complex {
    match t.angle() {
        AngleSpec::Rational { p, q } => {
            let k = ((p as i128 * n as i128).rem_euclid(q as i128)) as f64;
            cis(TAU * k / q as f64)
        }
        _ => cis((n as f64 * t.alpha()).rem_euclid(TAU)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlockDrift {
    /// `|(|T^q z| − |z|)/q + Δ/π|`.
    pub lhs: f64,
    /// `(1/q)((8 + π/(2q))‖T‖ + 4|Δ|)`.
    pub rhs: f64,
    pub holds: bool,
    /// `(|T^q z| − |z|)/q`.
    pub mean_drift: f64,
}

/// Smallest modulus for which the block drift estimate applies.
pub fn block_drift_radius(t: &PiecewiseRotation, q_l: u64) -> f64 {
    let q = q_l as f64;
    q * t.triple_norm() * (2.0 * q / PI + 1.0)
}

/// Average radial drift over `q_l` steps against its Denjoy–Koksma estimate.
pub fn block_drift(t: &PiecewiseRotation, z: Complex, q_l: u64) -> Result<BlockDrift> {
    let r0 = block_drift_radius(t, q_l);
    if q_l == 0 || !(z.norm() > r0) {
        return Err(Error::PreconditionViolated(format!(
            "|z| = {} must exceed q‖T‖(2q/π+1) = {r0}",
            z.norm()
        )));
    }
    let delta = t.delta();
    let q = q_l as f64;
    let mean_drift = (t.apply_n(z, q_l as usize).norm() - z.norm()) / q;
    let lhs = (mean_drift + delta / PI).abs();
    let rhs = crate::diophantine::drift_lhs(t.triple_norm(), delta.abs(), q_l);
    Ok(BlockDrift {
        lhs,
        rhs,
        holds: lhs <= rhs,
        mean_drift,
    })
}

fn validate_word(word: &[u8]) -> Result<()> {
    if word.is_empty() || word.iter().any(|&c| c > 1) {
        return Err(Error::PreconditionViolated("word must be a non-empty 0/1 sequence".into()));
    }
    Ok(())
}

/// `(1 − e^{iα}) Σ_k e^{i(n−k−1)α} C_{u_k}`, the translation part of
/// `r_{u_{n−1}} ∘ … ∘ r_{u_0}`.
pub fn composition_translation(t: &PiecewiseRotation, word: &[u8]) -> Complex {
    let n = word.len() as i64;
    let sum: Complex = word
        .iter()
        .enumerate()
        .map(|(k, &c)| rotation_power(t, n - k as i64 - 1) * t.center(Piece::from_code(c)))
        .sum();
    (Complex::new(1.0, 0.0) - t.rotation()) * sum
}

/// Fixed point of `r_{u_{n−1}} ∘ … ∘ r_{u_0}`.
pub fn almost_periodic_point(t: &PiecewiseRotation, word: &[u8]) -> Result<Complex> {
    validate_word(word)?;
    let n = word.len();
    let denom = Complex::new(1.0, 0.0) - rotation_power(t, n as i64);
    if t.angle().is_resonant(n) == Some(true) || denom.norm() < RESONANCE_TOLERANCE {
        return Err(Error::ResonantLength { n });
    }
    Ok(composition_translation(t, word) / denom)
}

fn word_string<S: Serializer>(w: &[u8], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_word(w))
}

pub fn format_word(w: &[u8]) -> String {
    w.iter().map(|&c| if c == 0 { '0' } else { '1' }).collect()
}

pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    let w = s
        .chars()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::PreconditionViolated(format!("bad word {s:?}"))),
        })
        .collect::<Result<Vec<u8>>>()?;
    validate_word(&w)?;
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicOrbit {
    #[serde(serialize_with = "word_string")]
    pub word: Vec<u8>,
    pub z_u: Complex,
    pub verified: bool,
    pub weight: f64,
}

impl PeriodicOrbit {
    pub fn period(&self) -> usize {
        self.word.len()
    }

    /// `n‖T‖ + |z_u| + w(z_u)`, the orbit bound for points of the island ball.
    pub fn orbit_bound(&self, t: &PiecewiseRotation) -> f64 {
        self.period() as f64 * t.triple_norm() + self.z_u.norm() + self.weight
    }

    /// `|T^n(z) − (e^{inα}(z − z_u) + z_u)|`.
    pub fn rotation_defect(&self, t: &PiecewiseRotation, z: Complex) -> f64 {
        let n = self.period();
        let expect = rotation_power(t, n as i64) * (z - self.z_u) + self.z_u;
        (t.apply_n(z, n) - expect).norm()
    }
}

/// The almost-periodic point of `word`, if its itinerary follows `word`.
pub fn verify_periodic(t: &PiecewiseRotation, word: &[u8]) -> Result<Option<PeriodicOrbit>> {
    let z_u = almost_periodic_point(t, word)?;
    let mut z = z_u;
    let mut weight = f64::INFINITY;
    for &c in word {
        if t.half_plane(z).code() != c {
            return Ok(None);
        }
        weight = weight.min(t.line_offset(z).abs());
        z = t.apply(z);
    }
    if (z - z_u).norm() > PERIODIC_TOLERANCE {
        return Ok(None);
    }
    Ok(Some(PeriodicOrbit {
        word: word.to_vec(),
        z_u,
        verified: true,
        weight,
    }))
}

/// Smallest period `n ≤ max_period` of `codes`, checked over the whole slice.
fn smallest_period(codes: &[u8], max_period: usize) -> Option<usize> {
    (1..=max_period.min(codes.len() / 2)).find(|&n| (n..codes.len()).all(|i| codes[i] == codes[i - n]))
}

/// Lexicographically least rotation of a word.
pub fn canonical_rotation(w: &[u8]) -> Vec<u8> {
    (0..w.len())
        .map(|s| w[s..].iter().chain(&w[..s]).copied().collect::<Vec<u8>>())
        .min()
        .unwrap_or_default()
}

/// Steps per unit of period spent on each grid orbit.
pub const SEARCH_STEPS_PER_PERIOD: usize = 8;

fn cmp_orbits(a: &PeriodicOrbit, b: &PeriodicOrbit) -> std::cmp::Ordering {
    b.weight
        .total_cmp(&a.weight)
        .then_with(|| a.word.cmp(&b.word))
        .then_with(|| a.z_u.re.total_cmp(&b.z_u.re))
        .then_with(|| a.z_u.im.total_cmp(&b.z_u.im))
}

fn verify_candidates(t: &PiecewiseRotation, words: BTreeSet<Vec<u8>>) -> Vec<PeriodicOrbit> {
    let mut found: Vec<PeriodicOrbit> = words
        .into_iter()
        .filter_map(|w| verify_periodic(t, &w).ok().flatten())
        .filter(|o| o.weight > FRAGILE_DISTANCE)
        .collect();
    found.sort_by(cmp_orbits);
    found
}

/// Periodic islands harvested from the codings of grid orbits in `region`.
pub fn island_search(
    t: &PiecewiseRotation,
    max_period: usize,
    region: Window,
    grid_step: f64,
) -> Result<Vec<PeriodicOrbit>> {
    if max_period == 0 || !(grid_step > 0.0) {
        return Err(Error::PreconditionViolated(
            "max_period and grid_step must be positive".into(),
        ));
    }
    let nx = (region.width() / grid_step).floor() as usize + 1;
    let ny = (region.height() / grid_step).floor() as usize + 1;
    let steps = SEARCH_STEPS_PER_PERIOD * max_period;
    let tail = (4 * max_period).min(steps);
    let words: BTreeSet<Vec<u8>> = (0..ny)
        .into_par_iter()
        .map(|j| {
            let mut local = BTreeSet::new();
            let mut codes = Vec::with_capacity(steps);
            for i in 0..nx {
                let z0 = Complex::new(
                    region.x0 + i as f64 * grid_step,
                    region.y0 + j as f64 * grid_step,
                );
                codes.clear();
                let mut z = z0;
                let mut fragile = false;
                for _ in 0..steps {
                    fragile |= t.line_offset(z).abs() < FRAGILE_DISTANCE;
                    codes.push(t.half_plane(z).code());
                    z = t.apply(z);
                }
                if fragile {
                    continue;
                }
                if let Some(n) = smallest_period(&codes[steps - tail..], max_period) {
                    local.insert(canonical_rotation(&codes[steps - n..]));
                }
            }
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(verify_candidates(t, words))
}

/// Every primitive word up to `max_period ≤ 16`, verified.
pub fn island_search_exhaustive(t: &PiecewiseRotation, max_period: usize) -> Result<Vec<PeriodicOrbit>> {
    if max_period == 0 || max_period > 16 {
        return Err(Error::PreconditionViolated(
            "exhaustive enumeration supports periods 1..=16".into(),
        ));
    }
    let mut words = BTreeSet::new();
    for n in 1..=max_period {
        for bits in 0u32..(1 << n) {
            let w: Vec<u8> = (0..n).map(|k| ((bits >> k) & 1) as u8).collect();
            if smallest_period(&[w.clone(), w.clone()].concat(), n) == Some(n) {
                words.insert(canonical_rotation(&w));
            }
        }
    }
    Ok(verify_candidates(t, words))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum PerturbMode {
    /// Rotate the discontinuity line: `D_ε = e^{iε}D`.
    RotateLine,
    /// Rotate both centres: `C_k → e^{iε}C_k`.
    RotateCenters,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerturbationSpec {
    pub epsilon: f64,
    pub mode: PerturbMode,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationOutcome {
    /// `w − 2(|z_u| + n‖T‖)|sin(ε/2)|`.
    pub w_eps: f64,
    pub survives: bool,
    pub new_point: Complex,
    /// Weight of the orbit under the perturbed map (0 when not periodic).
    pub measured_weight: f64,
}

/// The perturbed map of `spec`.
pub fn perturbed_map(t: &PiecewiseRotation, spec: PerturbationSpec) -> Result<PiecewiseRotation> {
    match spec.mode {
        PerturbMode::RotateLine => PiecewiseRotation::new(t.angle(), t.c0(), t.c1(), t.gamma() + spec.epsilon),
        PerturbMode::RotateCenters => {
            let r = cis(spec.epsilon);
            PiecewiseRotation::new(t.angle(), r * t.c0(), r * t.c1(), t.gamma())
        }
    }
}

/// Check that a verified orbit persists under a small rotation of the line
/// or of the centres, with weight at least `w_ε`.
pub fn perturb_and_check(
    t: &PiecewiseRotation,
    spec: PerturbationSpec,
    orbit: &PeriodicOrbit,
) -> Result<PerturbationOutcome> {
    if !spec.epsilon.is_finite() || !orbit.verified {
        return Err(Error::PreconditionViolated(
            "finite epsilon and a verified orbit are required".into(),
        ));
    }
    let n = orbit.period() as f64;
    let w_eps = orbit.weight - 2.0 * (orbit.z_u.norm() + n * t.triple_norm()) * (spec.epsilon / 2.0).sin().abs();
    if w_eps <= 0.0 {
        return Err(Error::WeightExhausted { w_eps });
    }
    let te = perturbed_map(t, spec)?;
    let expected = match spec.mode {
        PerturbMode::RotateLine => orbit.z_u,
        PerturbMode::RotateCenters => cis(spec.epsilon) * orbit.z_u,
    };
    let found = verify_periodic(&te, &orbit.word)?;
    let (survives, new_point, measured_weight) = match found {
        Some(o) => (
            (o.z_u - expected).norm() <= PERIODIC_TOLERANCE && o.weight >= w_eps * (1.0 - 1e-12),
            o.z_u,
            o.weight,
        ),
        None => (false, expected, 0.0),
    };
    Ok(PerturbationOutcome {
        w_eps,
        survives,
        new_point,
        measured_weight,
    })
}
