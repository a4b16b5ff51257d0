//! Rational angles `α = 2πp/q` with `q > 2` even.
//!
//! Far from the origin `T^q` is a piecewise translation. Work happens in the
//! frame where `D = iℝ` (`γ = π/2`); the plane is cut into `q` cones `C_k`
//! between the rays `e_k = i·e^{2πik/q}` and `e_{k+1}`. Deep inside `C_k`
//! the translation is `v_k`; in a strip `G'_k` along ray `k` it is `w_k`,
//! and between the ray and that strip it is `v_{k−1}`.
//!
//! The strip `G'_k` is located by probing. In the offset coordinate
//! `s = ⟨z, n_k⟩`, `n_k = i·e_k` (positive towards `C_k`), it occupies
//! `[lo_k, hi_k]`. The escape polygon `P_x` has vertices
//! `A_k = x e_k + hi_k n_k` and `B_k = x e_{k+1} + lo_{k+1} n_{k+1}`, and every
//! point far enough out lies on the boundary of exactly one `P_x`, which
//! defines its polygon index `x`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{even_rational_angle, rational_xbar, reduced_phi};
use crate::error::{Error, Result};
use crate::geometry::{cis, cross, dot};
use crate::map::PiecewiseRotation;
use crate::Complex;

/// Relative tolerance for matching a probed translation to `v_k` / `w_k`.
pub const LABEL_TOLERANCE: f64 = 1e-9;
/// Sweep resolution of the strip search, in samples across `[−q‖T‖, q‖T‖]`.
pub const STRIP_SWEEP_SAMPLES: usize = 1024;
/// Bisection stops at this fraction of `q‖T‖`.
pub const STRIP_TOLERANCE: f64 = 1e-6;

/// Cone geometry and translation vectors of a rational map.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalZoneMap {
    pub p: i64,
    pub q: i64,
    /// Map conjugated by `z ↦ e^{iθ}z` so that `γ = π/2`.
    pub map: PiecewiseRotation,
    /// The rotation `θ` taking the original frame to this one.
    pub frame_rotation: f64,
    pub norm: f64,
    pub apices: Vec<Complex>,
    pub v: f64,
    pub w: f64,
    pub v_vecs: Vec<Complex>,
    pub w_vecs: Vec<Complex>,
}

/// Translation classes of `T^q` relative to a cone or ray.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TranslationLabel {
    /// `v_k`.
    V(usize),
    /// `w_k`.
    W(usize),
    /// `v_{k−1}`.
    VPrev(usize),
    Unmatched,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    pub t: Complex,
    pub cone: usize,
    pub label: TranslationLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZoneClass {
    pub cone: usize,
    pub in_e: bool,
    /// Within `q‖T‖` of ray `cone` (strip `G_cone`).
    pub in_g_lower: bool,
    /// Within `q‖T‖` of ray `cone + 1` (strip `G_{cone+1}`).
    pub in_g_upper: bool,
}

impl ZoneClass {
    pub fn in_g(&self) -> bool {
        self.in_g_lower || self.in_g_upper
    }
}

/// Measured position of the strip `G'_k` along ray `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StripWidths {
    pub ray: usize,
    /// Signed offset of the strip's inner edge.
    pub lo: f64,
    /// Signed offset of the strip's outer edge.
    pub hi: f64,
    /// Width of `G'_k ∩ C_k`, in `[0, q‖T‖]`.
    pub a_k: f64,
    /// Width of `G'_k ∩ C_{k−1}`, in `[0, q‖T‖]`.
    pub b_k: f64,
    pub probe_radius: f64,
    pub converged: bool,
}

/// Strip measurements for all rays.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StripTable {
    pub strips: Vec<StripWidths>,
    pub probe_radius: f64,
}

impl StripTable {
    pub fn nonconvergent(&self) -> Vec<usize> {
        self.strips.iter().filter(|s| !s.converged).map(|s| s.ray).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EscapePolygon {
    pub x: f64,
    /// `A_0, B_0, A_1, B_1, …`.
    pub vertices: Vec<Complex>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub delta_angles: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepReport {
    pub xbar: f64,
    pub x: f64,
    /// `min_k min(v sin(φ − δ_k(x)), w sin φ)`.
    pub k_x: f64,
    pub deltas: Vec<f64>,
}

/// Outcome of a divergence or attraction certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub passed: bool,
    pub min_gain: f64,
    pub worst_sample: usize,
    pub blocks_used: usize,
    /// Threshold the gains were compared with (`K_x̄`, or the entry radius).
    pub threshold: f64,
    pub failures: Vec<usize>,
}

impl CertificateReport {
    pub fn into_result(self) -> Result<Self> {
        if self.passed {
            Ok(self)
        } else {
            Err(Error::CertificateFailed {
                samples: self.failures,
            })
        }
    }
}

fn ray_dir(q: i64, k: i64) -> Complex {
    Complex::i() * cis(TAU * k.rem_euclid(q) as f64 / q as f64)
}

fn tan_delta(r: f64, s: f64, x: f64, q: i64) -> f64 {
    let (sq, cq) = (PI / q as f64).sin_cos();
    r * sq / (2.0 * (x * sq - s * cq) - r * cq)
}

/// Angle `δ` between an edge with signed offsets `a` (at ray `k`) and `b`
/// (at ray `k+1`, counted towards `C_k`) and the regular chord, at index `x`.
pub fn delta_closed_form(a: f64, b: f64, x: f64, q: i64) -> f64 {
    let r = (a - b).abs();
    if r == 0.0 {
        return 0.0;
    }
    let t = tan_delta(r, a.min(b), x, q);
    if t > 0.0 {
        t.atan()
    } else {
        FRAC_PI_2
    }
}

impl RationalZoneMap {
    pub fn q_usize(&self) -> usize {
        self.q as usize
    }

    /// `q‖T‖`, the radius of the core disc.
    pub fn core_radius(&self) -> f64 {
        self.q as f64 * self.norm
    }

    /// Radius beyond which the three-label structure is guaranteed.
    pub fn probe_radius(&self) -> f64 {
        2.0 * self.core_radius() / (PI / self.q as f64).sin()
    }

    /// `e_k`, the direction of the ray between `C_{k−1}` and `C_k`.
    pub fn ray(&self, k: i64) -> Complex {
        ray_dir(self.q, k)
    }

    /// `n_k = i·e_k`, the unit normal of ray `k` pointing into `C_k`.
    pub fn normal(&self, k: i64) -> Complex {
        Complex::i() * self.ray(k)
    }

    pub fn v_vec(&self, k: i64) -> Complex {
        self.v_vecs[k.rem_euclid(self.q) as usize]
    }

    pub fn w_vec(&self, k: i64) -> Complex {
        self.w_vecs[k.rem_euclid(self.q) as usize]
    }

    /// `φ = β − α/2` in this frame.
    pub fn phi(&self) -> f64 {
        reduced_phi(&self.map)
    }

    /// Coding helper of the translation lemma: 0 below `q/2`, 1 from `q/2` on.
    pub fn eta(&self, i: i64) -> u8 {
        if 2 * i.rem_euclid(self.q) < self.q {
            0
        } else {
            1
        }
    }

    /// Cone index of a point by argument.
    pub fn cone_of(&self, z: Complex) -> usize {
        let th = (z.arg() - FRAC_PI_2).rem_euclid(TAU);
        let k = (th / (TAU / self.q as f64)) as usize;
        k.min(self.q_usize() - 1)
    }

    fn check_outside(&self, z: Complex) -> Result<()> {
        let core = self.core_radius();
        if z.norm() <= core {
            return Err(Error::InsideCore {
                modulus: z.norm(),
                core,
            });
        }
        Ok(())
    }

    fn ray_distance(&self, z: Complex, k: i64) -> f64 {
        let e = self.ray(k);
        if dot(z, e) >= 0.0 {
            cross(e, z).abs()
        } else {
            z.norm()
        }
    }

    pub fn classify_zone(&self, z: Complex) -> Result<ZoneClass> {
        self.check_outside(z)?;
        let k = self.cone_of(z);
        let o = self.apices[k];
        let rel = ((z - o).arg() - FRAC_PI_2 - TAU * k as f64 / self.q as f64).rem_euclid(TAU);
        let in_e = z != o && rel > 0.0 && rel < TAU / self.q as f64;
        let core = self.core_radius();
        Ok(ZoneClass {
            cone: k,
            in_e,
            in_g_lower: self.ray_distance(z, k as i64) <= core,
            in_g_upper: self.ray_distance(z, k as i64 + 1) <= core,
        })
    }

    fn match_label(&self, t: Complex, k: i64) -> TranslationLabel {
        let tol = LABEL_TOLERANCE * self.v;
        let ku = k.rem_euclid(self.q) as usize;
        if (t - self.v_vec(k)).norm() <= tol {
            TranslationLabel::V(ku)
        } else if (t - self.w_vec(k)).norm() <= tol {
            TranslationLabel::W(ku)
        } else if (t - self.v_vec(k - 1)).norm() <= tol {
            TranslationLabel::VPrev(ku)
        } else {
            TranslationLabel::Unmatched
        }
    }

    /// `T^q(z) − z` and its class among `v_k`, `w_k`, `v_{k−1}` for the cone `k` of `z`.
    pub fn probe_translation(&self, z: Complex) -> Result<ProbeResult> {
        self.check_outside(z)?;
        let k = self.cone_of(z);
        let t = self.map.apply_n(z, self.q_usize()) - z;
        Ok(ProbeResult {
            t,
            cone: k,
            label: self.match_label(t, k as i64),
        })
    }

    /// Label of `R e_k + s n_k` relative to ray `k`: 0 for `v_{k−1}`, 1 for `w_k`, 2 for `v_k`.
    fn ray_label(&self, k: i64, radius: f64, s: f64) -> Option<u8> {
        let z = self.ray(k) * radius + self.normal(k) * s;
        let t = self.map.apply_n(z, self.q_usize()) - z;
        match self.match_label(t, k) {
            TranslationLabel::VPrev(_) => Some(0),
            TranslationLabel::W(_) => Some(1),
            TranslationLabel::V(_) => Some(2),
            TranslationLabel::Unmatched => None,
        }
    }

    fn bisect(&self, k: i64, radius: f64, mut a: f64, mut b: f64, label_a: u8) -> f64 {
        let tol = STRIP_TOLERANCE * self.core_radius();
        while b - a > tol {
            let m = 0.5 * (a + b);
            if self.ray_label(k, radius, m) == Some(label_a) {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    /// Locate `G'_k` on the segment orthogonal to ray `k` at `probe_radius`.
    pub fn measure_strip_widths(&self, k: usize, probe_radius: f64) -> Result<StripWidths> {
        let core = self.core_radius();
        if probe_radius <= core {
            return Err(Error::InsideCore {
                modulus: probe_radius,
                core,
            });
        }
        let k = k as i64;
        let n = STRIP_SWEEP_SAMPLES;
        let h = 2.0 * core / n as f64;
        let s_at = |i: usize| -core + h * i as f64;
        let labels: Vec<Option<u8>> = (0..=n).map(|i| self.ray_label(k, probe_radius, s_at(i))).collect();
        let fail = |reason: String| Error::NonConvergent {
            ray: k as usize,
            reason,
        };
        if labels.iter().any(|l| l.is_none()) {
            return Err(fail("unmatched translation on the probe segment".into()));
        }
        let labels: Vec<u8> = labels.into_iter().map(Option::unwrap).collect();
        if labels.windows(2).any(|w| w[1] < w[0]) {
            return Err(fail("labels are not ordered v_(k-1), w_k, v_k".into()));
        }
        if labels[0] != 0 || labels[n] != 2 {
            return Err(fail("probe segment does not span the strip".into()));
        }
        let first_ge = |lab: u8| labels.iter().position(|&l| l >= lab).expect("ends at 2");
        let i1 = first_ge(1);
        let i2 = first_ge(2);
        let lo = self.bisect(k, probe_radius, s_at(i1 - 1), s_at(i1), 0);
        let hi = if i1 == i2 {
            lo
        } else {
            self.bisect(k, probe_radius, s_at(i2 - 1), s_at(i2), 1)
        };
        let a_k = (hi - lo.max(0.0)).max(0.0).min(core);
        let b_k = (hi.min(0.0) - lo).max(0.0).min(core);
        Ok(StripWidths {
            ray: k as usize,
            lo,
            hi,
            a_k,
            b_k,
            probe_radius,
            converged: true,
        })
    }

    /// Strip measurements for every ray; non-convergent rays fall back to
    /// the worst case `[0, q‖T‖]`.
    pub fn measure_all(&self, probe_radius: f64) -> StripTable {
        let core = self.core_radius();
        let strips = (0..self.q_usize())
            .into_par_iter()
            .map(|k| {
                self.measure_strip_widths(k, probe_radius).unwrap_or(StripWidths {
                    ray: k,
                    lo: 0.0,
                    hi: core,
                    a_k: core,
                    b_k: 0.0,
                    probe_radius,
                    converged: false,
                })
            })
            .collect();
        StripTable {
            strips,
            probe_radius,
        }
    }

    fn strip(&self, table: &StripTable, k: i64) -> StripWidths {
        table.strips[k.rem_euclid(self.q) as usize]
    }

    /// `δ_k(x)` for the edge `A_k B_k`.
    pub fn delta_k(&self, table: &StripTable, k: i64, x: f64) -> f64 {
        let s0 = self.strip(table, k);
        let s1 = self.strip(table, k + 1);
        if !s0.converged || !s1.converged {
            return delta_closed_form(self.core_radius(), 0.0, x, self.q);
        }
        delta_closed_form(s0.hi, -s1.lo, x, self.q)
    }

    pub fn polygon(&self, table: &StripTable, x: f64) -> Result<EscapePolygon> {
        let core = self.core_radius();
        if x <= core {
            return Err(Error::InsideCore {
                modulus: x,
                core,
            });
        }
        let q = self.q;
        let mut vertices = Vec::with_capacity(2 * q as usize);
        for k in 0..q {
            let s0 = self.strip(table, k);
            let s1 = self.strip(table, k + 1);
            vertices.push(self.ray(k) * x + self.normal(k) * s0.hi);
            vertices.push(self.ray(k + 1) * x + self.normal(k + 1) * s1.lo);
        }
        Ok(EscapePolygon {
            x,
            vertices,
            a: table.strips.iter().map(|s| s.a_k).collect(),
            b: table.strips.iter().map(|s| s.b_k).collect(),
            delta_angles: (0..q).map(|k| self.delta_k(table, k, x)).collect(),
        })
    }

    /// Polygon index `x` and sector of a point, or `None` if no sector of the
    /// strip table contains it.
    pub fn polygon_index(&self, table: &StripTable, z: Complex) -> Option<(f64, usize)> {
        let k0 = self.cone_of(z) as i64;
        for kk in [k0, k0 - 1, k0 + 1] {
            let k = kk.rem_euclid(self.q);
            let (e, e1) = (self.ray(k), self.ray(k + 1));
            let (n, n1) = (self.normal(k), self.normal(k + 1));
            let (st, st1) = (self.strip(table, k), self.strip(table, k + 1));
            let s = dot(z, n);
            if !(s >= st.lo && dot(z, n1) < st1.lo && dot(z, e) > 0.0) {
                continue;
            }
            if s <= st.hi {
                return Some((dot(z, e), k as usize));
            }
            let f = e1 - e;
            let d = n1 * st1.lo - n * st.hi;
            let zn = z - n * st.hi;
            let c0 = cross(zn, e);
            let c1 = cross(zn, f) - cross(d, e);
            let c2 = -cross(d, f);
            let lam = if c2.abs() <= 1e-14 * c1.abs() {
                -c0 / c1
            } else {
                let disc = (c1 * c1 - 4.0 * c2 * c0).max(0.0).sqrt();
                // Numerically stable pair of roots.
                let qv = -0.5 * (c1 + c1.signum() * disc);
                let r1 = qv / c2;
                let r2 = if qv != 0.0 { c0 / qv } else { r1 };
                let inside = |l: f64| (-1e-9..=1.0 + 1e-9).contains(&l);
                if inside(r1) {
                    r1
                } else {
                    r2
                }
            };
            let dir = e + f * lam;
            return Some((dot(zn - d * lam, dir) / dir.norm_sqr(), k as usize));
        }
        None
    }

    /// `x̄` (worst case `r = q‖T‖`, `s = 0`) and `K_x` from the measured strips.
    pub fn xbar_and_step(&self, table: &StripTable, x: f64) -> Result<StepReport> {
        let phi = self.require_escape_geometry()?;
        let xbar = rational_xbar(self.q, self.norm, phi);
        let deltas: Vec<f64> = (0..self.q).map(|k| self.delta_k(table, k, x)).collect();
        let dmax = deltas.iter().cloned().fold(0.0, f64::max);
        let k_x = (self.v * (phi - dmax).sin()).min(self.w * phi.sin());
        Ok(StepReport {
            xbar,
            x,
            k_x,
            deltas,
        })
    }

    fn require_escape_geometry(&self) -> Result<f64> {
        if self.map.delta() >= 0.0 {
            return Err(Error::WrongSign("escape polygons need delta < 0".into()));
        }
        let phi = self.phi();
        if !(phi > 0.0 && phi < FRAC_PI_2) {
            return Err(Error::UnsupportedGeometry(format!(
                "beta - alpha/2 = {phi} outside (0, pi/2)"
            )));
        }
        Ok(phi)
    }

    /// `x̄` from the closed form with the reduced `|φ|` (any sign of `Δ`).
    pub fn xbar(&self) -> f64 {
        rational_xbar(self.q, self.norm, self.phi().abs())
    }

    /// Divergence certificate: samples on the circle of radius `1.01·M`
    /// gain at least `K_x̄` of polygon index per `q`-block and pass `2M`.
    pub fn escape_certificate(
        &self,
        table: &StripTable,
        m: f64,
        n_samples: usize,
        horizon: usize,
    ) -> Result<CertificateReport> {
        let phi = self.require_escape_geometry()?;
        let m_min = crate::bounds::rational_radius(self.q, self.norm, phi);
        if m < m_min * (1.0 - 1e-12) {
            return Err(Error::PreconditionViolated(format!(
                "radius {m} is below the certified radius {m_min}"
            )));
        }
        let xbar = rational_xbar(self.q, self.norm, phi);
        let k_bar = self.xbar_and_step(table, xbar)?.k_x;
        let cq = (PI / self.q as f64).cos();
        let q = self.q_usize();
        let results: Vec<(bool, f64, usize)> = (0..n_samples)
            .into_par_iter()
            .map(|j| {
                let mut z = cis(TAU * j as f64 / n_samples as f64) * (1.01 * m);
                let Some((x0, _)) = self.polygon_index(table, z) else {
                    return (false, f64::NEG_INFINITY, 0);
                };
                let mut x = x0;
                let mut min_gain = f64::INFINITY;
                for n in 1..=horizon {
                    z = self.map.apply_n(z, q);
                    let Some((xn, _)) = self.polygon_index(table, z) else {
                        return (false, min_gain, n);
                    };
                    let gain = xn - x;
                    min_gain = min_gain.min(gain);
                    let radial_ok = z.norm() >= (x0 + n as f64 * k_bar) * cq * (1.0 - 1e-12);
                    if gain < k_bar - 1e-9 * xn || !radial_ok {
                        return (false, min_gain, n);
                    }
                    x = xn;
                    if z.norm() > 2.0 * m {
                        return (true, min_gain, n);
                    }
                }
                (false, min_gain, horizon)
            })
            .collect();
        let failures: Vec<usize> = results
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.0)
            .map(|(j, _)| j)
            .collect();
        let (worst_sample, min_gain) = results
            .iter()
            .enumerate()
            .map(|(j, r)| (j, r.1))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((0, f64::NAN));
        Ok(CertificateReport {
            passed: failures.is_empty(),
            min_gain,
            worst_sample,
            blocks_used: results.iter().map(|r| r.2).max().unwrap_or(0),
            threshold: k_bar,
            failures,
        })
    }

    /// Attraction certificate: the enclosing radius `sup_j |T^{qn} z_j|` of
    /// samples drawn in `B(0, 2M)` enters `√(x̄² + q²‖T‖²)·1.01` within the
    /// horizon and does not increase afterwards.
    pub fn attract_certificate(&self, m: f64, n_samples: usize, horizon: usize) -> Result<CertificateReport> {
        if self.map.delta() <= 0.0 {
            return Err(Error::WrongSign("attraction needs delta > 0".into()));
        }
        let q = self.q_usize();
        let xbar = self.xbar();
        let target = (xbar * xbar + self.core_radius().powi(2)).sqrt() * 1.01;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let starts: Vec<Complex> = (0..n_samples)
            .map(|_| {
                let r = 2.0 * m * rng.gen::<f64>().sqrt();
                cis(TAU * rng.gen::<f64>()) * r
            })
            .collect();
        let radii: Vec<Vec<f64>> = starts
            .par_iter()
            .map(|&z0| {
                let mut z = z0;
                let mut out = Vec::with_capacity(horizon + 1);
                out.push(z.norm());
                for _ in 0..horizon {
                    z = self.map.apply_n(z, q);
                    out.push(z.norm());
                }
                out
            })
            .collect();
        let sup: Vec<f64> = (0..=horizon)
            .map(|n| radii.iter().map(|r| r[n]).fold(0.0, f64::max))
            .collect();
        let entry = sup.iter().position(|&s| s <= target);
        let mut failures = Vec::new();
        let mut min_gain = f64::INFINITY;
        if let Some(e) = entry {
            for n in e..horizon {
                let dec = sup[n] - sup[n + 1];
                min_gain = min_gain.min(dec);
                if sup[n + 1] > target || dec < -1e-9 * target {
                    failures.push(n + 1);
                }
            }
        } else {
            failures.push(horizon);
        }
        failures.truncate(32);
        let worst_sample = radii
            .iter()
            .enumerate()
            .max_by(|a, b| a.1[horizon].total_cmp(&b.1[horizon]).then(b.0.cmp(&a.0)))
            .map(|(j, _)| j)
            .unwrap_or(0);
        Ok(CertificateReport {
            passed: failures.is_empty(),
            min_gain: if min_gain.is_finite() { min_gain } else { 0.0 },
            worst_sample,
            blocks_used: entry.unwrap_or(horizon),
            threshold: target,
            failures,
        })
    }
}

/// Cone/strip structure of a rational map, in the frame where `γ = π/2`.
pub fn zone_map(t: &PiecewiseRotation) -> Result<RationalZoneMap> {
    let (p, q) = even_rational_angle(t)?;
    let theta = FRAC_PI_2 - t.gamma();
    let map = t.rotated(theta)?;
    let norm = map.triple_norm();
    let qf = q as f64;
    let (sq, _) = (PI / qf).sin_cos();
    let core = qf * norm;
    let apices = (0..q)
        .map(|k| cis(PI / qf + TAU * k as f64 / qf + FRAC_PI_2) * (core / sq))
        .collect();
    let chord = (map.c1() - map.c0()).norm();
    let half = (map.alpha() / 2.0).sin();
    let v = 2.0 * half / sq * chord;
    let w = 2.0 * half / (PI / qf).tan() * chord;
    let base = map.beta() - map.alpha() / 2.0;
    let v_vecs = (0..q)
        .map(|k| cis(base + TAU * k as f64 / qf + PI / qf) * v)
        .collect();
    let w_vecs = (0..q).map(|k| cis(base + TAU * k as f64 / qf) * w).collect();
    Ok(RationalZoneMap {
        p,
        q,
        map,
        frame_rotation: theta,
        norm,
        apices,
        v,
        w,
        v_vecs,
        w_vecs,
    })
}

/// Crossing-number point-in-polygon test.
pub fn polygon_contains(vertices: &[Complex], z: Complex) -> bool {
    let mut inside = false;
    let n = vertices.len();
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        if (a.im > z.im) != (b.im > z.im) {
            let xc = a.re + (z.im - a.im) / (b.im - a.im) * (b.re - a.re);
            if z.re < xc {
                inside = !inside;
            }
        }
    }
    inside
}

/// Boundary sample of `P_x`: `u ∈ [0, 1)` runs once around the polygon.
pub fn polygon_boundary_point(poly: &EscapePolygon, u: f64) -> Complex {
    let n = poly.vertices.len();
    let pos = u.rem_euclid(1.0) * n as f64;
    let i = (pos as usize).min(n - 1);
    let f = pos - i as f64;
    let (a, b) = (poly.vertices[i], poly.vertices[(i + 1) % n]);
    a + (b - a) * f
}

/// Random boundary samples for tests and reports.
pub fn sample_boundary(poly: &EscapePolygon, count: usize, seed: u64) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| polygon_boundary_point(poly, rng.gen())).collect()
}
