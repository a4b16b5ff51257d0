mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use common::hp::Hp;
use proptest::prelude::*;
use pwrot_core::bounds::{
    bound_report, irrational_radius, optimize_origin, rational_bound, rational_radius, BoundCase,
    DEFAULT_DEPTH,
};
use pwrot_core::rational::zone_map;
use pwrot_core::{presets, AngleSpec, Complex, Error, PiecewiseRotation};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// `2|sin(α/2)|·max|C_j|` in fixed point, `α = 2π·turns`.
fn hp_norm(turns: Hp, cmax: Hp) -> Hp {
    Hp::int(2) * (Hp::pi() * turns).sin().abs() * cmax
}

#[test]
fn fixed_point_reals_agree_with_libm() {
    assert_eq!(Hp::pi().to_f64(), PI);
    for x in [0.1, 1.0, 2.5, -3.0, 10.0] {
        assert!((Hp::from_f64(x).sin().to_f64() - x.sin()).abs() < 1e-15);
        assert!((Hp::from_f64(x).cos().to_f64() - x.cos()).abs() < 1e-15);
    }
    assert!((Hp::int(2).sqrt().to_f64() - 2f64.sqrt()).abs() < 1e-16);
}

#[test]
fn irrational_radius_matches_extended_precision() {
    let t = presets::irrational_example();
    let r = bound_report(&t, DEFAULT_DEPTH, false).unwrap();
    let BoundCase::Irrational { q_l0, .. } = r.case else { panic!() };
    assert_eq!(q_l0, 577);
    let turns = Hp::int(2).sqrt() / Hp::int(4);
    let norm = hp_norm(turns, Hp::ratio(3, 2));
    let q = Hp::int(577);
    let m = q.clone() * norm.clone() * (Hp::int(2) * q / Hp::pi() + Hp::int(1));
    assert!(rel(r.norm, norm.to_f64()) < 1e-12, "{} vs {}", r.norm, norm.to_f64());
    assert!(rel(r.m, m.to_f64()) < 1e-12, "{} vs {}", r.m, m.to_f64());
}

/// `q‖T‖(1/(2tan|φ|) + 1/(2tan(π/q)) + 1)` with `φ` reduced into `(−π/2, π/2]`.
fn hp_rational_radius(q: i64, norm: Hp, phi: Hp) -> Hp {
    let pi = Hp::pi();
    let mut phi = phi;
    while phi > pi.clone() / Hp::int(2) {
        phi = phi - pi.clone();
    }
    while phi <= -(pi.clone() / Hp::int(2)) {
        phi = phi + pi.clone();
    }
    let half = Hp::ratio(1, 2);
    Hp::int(q)
        * norm
        * (half.clone() / phi.abs().tan() + half / (pi / Hp::int(q)).tan() + Hp::int(1))
}

#[test]
fn rational_example_radius_matches_extended_precision() {
    let t = presets::rational_example();
    let r = rational_bound(&t).unwrap();
    let turns = Hp::ratio(169, 478);
    let norm = hp_norm(turns.clone(), Hp::ratio(3, 2));
    // φ = β − α/2 − γ + π/2 with β = 1.14 and γ = π/2
    let phi = Hp::from_f64(presets::CENTER_ARG) - Hp::pi() * turns;
    let m = hp_rational_radius(478, norm.clone(), phi);
    assert!(rel(r.norm, norm.to_f64()) < 1e-12);
    assert!(rel(r.m, m.to_f64()) < 1e-10, "{} vs {}", r.m, m.to_f64());
}

#[test]
fn quarter_turn_instance_matches_extended_precision() {
    let t = PiecewiseRotation::new(
        AngleSpec::rational(1, 4).unwrap(),
        Complex::new(-1.0, 0.0),
        Complex::new(1.0, 0.0),
        FRAC_PI_2,
    )
    .unwrap();
    let r = rational_bound(&t).unwrap();
    // ‖T‖ = √2, |φ| = π/4, so M = 4√2·2
    let want = Hp::int(8) * Hp::int(2).sqrt();
    let phi = -(Hp::pi() / Hp::int(4));
    let hp = hp_rational_radius(4, Hp::int(2).sqrt(), phi);
    assert!(rel(hp.to_f64(), want.to_f64()) < 1e-15);
    assert!(rel(r.m, want.to_f64()) < 1e-14, "{}", r.m);
}

#[test]
fn translation_lengths_match_extended_precision() {
    let zm = zone_map(&presets::rational_example()).unwrap();
    let q = Hp::int(478);
    let s = (Hp::pi() * Hp::ratio(169, 478)).sin().abs();
    let v = Hp::int(2) * s / (Hp::pi() / q.clone()).sin() * Hp::ratio(5, 2);
    let w = v.clone() * (Hp::pi() / q).cos();
    assert!(rel(zm.v, v.to_f64()) < 1e-12, "{} vs {}", zm.v, v.to_f64());
    assert!(rel(zm.w, w.to_f64()) < 1e-12);
}

#[test]
fn origin_shift_improves_the_irrational_example() {
    let r = bound_report(&presets::irrational_example(), DEFAULT_DEPTH, true).unwrap();
    let s = r.origin_shift.clone().unwrap();
    assert!((s.p_point - Complex::new(0.0, 0.27514)).norm() < 1e-3);
    assert!((s.norm_shifted - 2.249).abs() < 0.005);
    assert!(s.m_shifted < r.m);
    assert_eq!(s.l0_shifted, 7);
    assert_eq!(r.best_radius(), s.m_shifted);
}

#[test]
fn rational_radius_is_rotation_invariant() {
    let t = presets::rational_example();
    let base = rational_bound(&t).unwrap().m;
    for theta in [0.3, -1.2, PI / 2.0 - t.gamma(), 2.5] {
        let m = rational_bound(&t.rotated(theta).unwrap()).unwrap().m;
        assert!(rel(m, base) < 1e-9, "theta {theta}: {m} vs {base}");
    }
}

#[test]
fn guards() {
    let t = presets::bijective_pentagonal();
    assert!(matches!(bound_report(&t, DEFAULT_DEPTH, true), Err(Error::UnsupportedAngle(_))));
    let bij = PiecewiseRotation::new(
        AngleSpec::rational(1, 6).unwrap(),
        Complex::new(-1.0, 0.0),
        Complex::new(1.0, 0.0),
        FRAC_PI_2 - PI / 6.0,
    )
    .unwrap();
    assert!(matches!(rational_bound(&bij), Err(Error::BijectiveMap { .. })));
    let irr = presets::irrational_example();
    assert!(matches!(rational_bound(&irr), Err(Error::UnsupportedAngle(_))));
}

#[test]
fn symmetric_centres_shift_to_the_bisector() {
    // C0, C1 mirror images across D = ℝ
    let t = PiecewiseRotation::new(
        AngleSpec::surd(0, 1, 2, 4).unwrap(),
        Complex::new(3.0, 1.0),
        Complex::new(3.0, -1.0),
        0.0,
    )
    .unwrap();
    let opt = optimize_origin(&t).unwrap();
    assert!((opt.p_point - Complex::new(3.0, 0.0)).norm() < 1e-12);
    let ratio = 1.0 / 10f64.sqrt();
    assert!(rel(opt.t_shifted.triple_norm(), t.triple_norm() * ratio) < 1e-12);
}

fn arb_map() -> impl Strategy<Value = PiecewiseRotation> {
    (0.05f64..TAU - 0.05, -5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0, 0.0f64..TAU)
        .prop_filter_map("distinct centres", |(a, x0, y0, x1, y1, g)| {
            let (c0, c1) = (Complex::new(x0, y0), Complex::new(x1, y1));
            if (c1 - c0).norm() < 1e-3 {
                return None;
            }
            PiecewiseRotation::new(AngleSpec::decimal(a).unwrap(), c0, c1, g).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn origin_optimum_is_the_minimax_on_the_line(t in arb_map()) {
        let opt = optimize_origin(&t).unwrap();
        prop_assert!(opt.t_shifted.triple_norm() <= t.triple_norm() * (1.0 + 1e-12));
        prop_assert!(t.line_offset(opt.p_point).abs() < 1e-9);
        let cost = |p: Complex| (t.c0() - p).norm().max((t.c1() - p).norm());
        let best = cost(opt.p_point);
        let u = Complex::from_polar(1.0, t.gamma());
        let s0 = opt.p_point.re * u.re + opt.p_point.im * u.im;
        for k in -200..=200 {
            let p = u * (s0 + k as f64 * 0.05);
            prop_assert!(cost(p) >= best - 1e-9);
        }
    }
}

proptest! {
    #[test]
    fn irrational_radius_monotone(q in 1u64..100_000, n in 0.01f64..100.0, dq in 1u64..10, f in 1.001f64..2.0) {
        prop_assert!(irrational_radius(q + dq, n) > irrational_radius(q, n));
        prop_assert!(irrational_radius(q, n * f) > irrational_radius(q, n));
    }

    #[test]
    fn rational_radius_monotone(
        half_q in 2i64..500,
        n in 0.01f64..100.0,
        phi in 0.01f64..FRAC_PI_2 - 0.01,
        dphi in 0.001f64..0.01,
        f in 1.001f64..2.0,
    ) {
        let q = 2 * half_q;
        prop_assert!(rational_radius(q, n * f, phi) > rational_radius(q, n, phi));
        prop_assert!(rational_radius(q, n, phi + dphi) < rational_radius(q, n, phi));
        prop_assert_eq!(rational_radius(q, n, -phi), rational_radius(q, n, phi));
    }
}
