use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use pwrot_core::{presets, AngleSpec, Complex, MapKind, Piece, PiecewiseRotation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_map() -> impl Strategy<Value = PiecewiseRotation> {
    (
        0.01f64..TAU - 0.01,
        -5.0f64..5.0,
        -5.0f64..5.0,
        -5.0f64..5.0,
        -5.0f64..5.0,
        0.0f64..TAU,
    )
        .prop_filter_map("distinct centres", |(a, x0, y0, x1, y1, g)| {
            let (c0, c1) = (Complex::new(x0, y0), Complex::new(x1, y1));
            if (c1 - c0).norm() < 1e-3 {
                return None;
            }
            PiecewiseRotation::new(AngleSpec::decimal(a).unwrap(), c0, c1, g).ok()
        })
}

fn arb_point(r: f64) -> impl Strategy<Value = Complex> {
    (-r..r, -r..r).prop_map(|(x, y)| Complex::new(x, y))
}

/// Rotation about the centre chosen from the polar angle of `z`.
fn oracle(t: &PiecewiseRotation, z: Complex) -> Complex {
    let rel = (z.arg() - t.gamma()).rem_euclid(TAU);
    let c = if rel > 0.0 && rel < PI { t.c0() } else { t.c1() };
    let w = z - c;
    Complex::from_polar(w.norm(), w.arg() + t.alpha()) + c
}

proptest! {
    #[test]
    fn apply_matches_polar_oracle(t in arb_map(), z in arb_point(50.0)) {
        prop_assume!(t.line_offset(z).abs() > 1e-9);
        let got = t.apply(z);
        let want = oracle(&t, z);
        prop_assert!((got - want).norm() < 1e-11 * (1.0 + z.norm()), "{got} vs {want}");
    }

    #[test]
    fn image_lines_are_delta_apart(t in arb_map()) {
        let s0 = t.rotate(Piece::P0, Complex::new(0.0, 0.0));
        let s1 = t.rotate(Piece::P1, Complex::new(0.0, 0.0));
        let dir = Complex::from_polar(1.0, t.gamma() + t.alpha());
        let dist = ((s1 - s0) * dir.conj()).im.abs();
        prop_assert!((dist - t.delta().abs()).abs() < 1e-10);
        prop_assert!((t.classification().strip_width - dist).abs() < 1e-10);
    }

    /// The midpoint of the strip between the image lines has no preimage
    /// for injective maps and two for surjective ones.
    #[test]
    fn strip_midpoint_preimages(t in arb_map()) {
        prop_assume!(t.delta().abs() > 1e-6);
        let s0 = t.rotate(Piece::P0, Complex::new(0.0, 0.0));
        let s1 = t.rotate(Piece::P1, Complex::new(0.0, 0.0));
        let w = (s0 + s1) / 2.0;
        let inv = t.rotation().conj();
        let count = [(Piece::P0, s0), (Piece::P1, s1)]
            .iter()
            .filter(|(p, s)| t.half_plane(inv * (w - s)) == *p)
            .count();
        match t.classification().kind {
            MapKind::Injective => prop_assert_eq!(count, 0),
            MapKind::Surjective => prop_assert_eq!(count, 2),
            MapKind::Bijective => {}
        }
    }

    #[test]
    fn mirror_scales_delta(t in arb_map(), rho in 0.1f64..10.0, theta in 0.0f64..TAU) {
        let m = t.mirror_transform(rho, theta).unwrap();
        prop_assert!((m.delta() + rho * t.delta()).abs() < 1e-10 * (1.0 + rho));
    }

    #[test]
    fn rotation_conjugacy(t in arb_map(), theta in 0.0f64..TAU, z in arb_point(20.0)) {
        prop_assume!(t.line_offset(z).abs() > 1e-9);
        let r = Complex::from_polar(1.0, theta);
        let u = t.rotated(theta).unwrap();
        prop_assert!((u.apply(r * z) - r * t.apply(z)).norm() < 1e-10 * (1.0 + z.norm()));
        prop_assert!((u.delta() - t.delta()).abs() < 1e-10);
    }

    #[test]
    fn shift_conjugacy(t in arb_map(), s in -10.0f64..10.0, z in arb_point(20.0)) {
        prop_assume!(t.line_offset(z).abs() > 1e-9);
        let p = Complex::from_polar(s, t.gamma());
        let u = t.shifted(p).unwrap();
        prop_assert!((u.apply(z - p) - (t.apply(z) - p)).norm() < 1e-10 * (1.0 + z.norm()));
        prop_assert!((u.delta() - t.delta()).abs() < 1e-10);
    }

    #[test]
    fn one_step_moves_modulus_at_most_norm(t in arb_map(), z in arb_point(100.0)) {
        prop_assert!((t.apply(z).norm() - z.norm()).abs() <= t.triple_norm() * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn k_steps_stay_near_pure_rotation(t in arb_map(), z in arb_point(100.0), k in 1usize..200) {
        let zk = t.apply_n(z, k);
        let pure = Complex::from_polar(1.0, k as f64 * t.alpha()) * z;
        prop_assert!((zk - pure).norm() <= k as f64 * t.triple_norm() * (1.0 + 1e-9) + 1e-9);
    }

    #[test]
    fn modulus_drift_follows_g(t in arb_map(), r in 2.0f64..100.0, th in 0.0f64..TAU) {
        let n = t.triple_norm();
        let z = Complex::from_polar(r * n.max(1e-3), th);
        prop_assume!(z.norm() > 2.0 * n);
        let err = (t.apply(z).norm() - z.norm() - t.g_aux(z.arg())).abs();
        prop_assert!(err <= n * n / (z.norm() - n) + 1e-12);
    }
}

/// Empirical `sup ||T z| − |z||` over a random sample of `B(0, 100)`.
fn empirical_norm(t: &PiecewiseRotation, n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let z = Complex::from_polar(100.0 * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
            (t.apply(z).norm() - z.norm()).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn norm_formula_matches_monte_carlo_sup() {
    for (i, t) in [
        presets::irrational_example(),
        presets::rational_example(),
        presets::injective_two_center(),
        presets::surjective_two_center(),
    ]
    .iter()
    .enumerate()
    {
        let sup = empirical_norm(t, 100_000, i as u64);
        let n = t.triple_norm();
        assert!(sup <= n + 1e-12, "map {i}: {sup} > {n}");
        assert!(sup >= n - 0.01, "map {i}: {sup} < {n} - 0.01");
    }
}

#[test]
fn two_center_maps_have_opposite_kinds() {
    assert_eq!(presets::injective_two_center().classification().kind, MapKind::Injective);
    assert_eq!(presets::surjective_two_center().classification().kind, MapKind::Surjective);
    assert_eq!(presets::bijective_pentagonal().classification().kind, MapKind::Bijective);
}

#[test]
fn tolerance_band_overrides() {
    let t = presets::irrational_example();
    assert_eq!(t.classify(0.2).kind, MapKind::Bijective);
    assert_eq!(t.classify(0.1).kind, MapKind::Injective);
}
