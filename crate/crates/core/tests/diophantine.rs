use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use pwrot_core::diophantine::{
    approximation_error, cf_expand, denjoy_koksma_check, drift_lhs, select_l0, three_gaps,
};
use pwrot_core::{presets, AngleSpec, Error};

/// `(p, q, d, r)` with `d` not a perfect square.
fn arb_surd() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-20i64..20, 1i64..6, 2i64..60, 1i64..40).prop_filter("square radicand", |&(_, _, d, _)| {
        let s = d.isqrt();
        s * s != d
    })
}

/// Partial quotients of a rational `n/m`, `m > 0`.
fn rational_quotients(mut n: BigInt, mut m: BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    while !m.is_zero() {
        let (a, r) = n.div_mod_floor(&m);
        out.push(a);
        n = m;
        m = r;
    }
    out
}

/// Partial quotients of `frac((p + q√d)/r)` certified by bracketing the surd
/// between two rationals with 60 decimal digits.
fn certified_quotients(p: i64, q: i64, d: i64, r: i64) -> Vec<u64> {
    let scale = BigInt::from(10).pow(60);
    let s = (BigInt::from(q * q * d) * &scale * &scale).sqrt();
    let den = BigInt::from(r) * &scale;
    let lo = BigInt::from(p) * &scale + &s;
    let hi = &lo + 1;
    let fl = lo.div_floor(&den);
    let a = rational_quotients(lo - &fl * &den, den.clone());
    let b = rational_quotients(hi - &fl * &den, den);
    // the last quotient of each expansion is not certified
    a.iter()
        .zip(&b)
        .take(a.len().min(b.len()) - 1)
        .take_while(|(x, y)| x == y)
        .map(|(x, _)| u64::try_from(x.clone()).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn surd_expansion_matches_bracketed_oracle((p, q, d, r) in arb_surd()) {
        let spec = AngleSpec::surd(p, q, d, r).unwrap();
        let c = cf_expand(spec, 25).unwrap();
        let want = certified_quotients(p, q, d, r);
        let n = c.len().min(want.len());
        prop_assert!(n >= 10, "only {n} certified terms");
        prop_assert_eq!(&c.partial_quotients[..n], &want[..n]);
    }

    #[test]
    fn recurrence_and_determinant((p, q, d, r) in arb_surd()) {
        let c = cf_expand(AngleSpec::surd(p, q, d, r).unwrap(), 20).unwrap();
        let (mut p2, mut q2, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
        for l in 0..c.len() {
            let a = c.partial_quotients[l] as i128;
            let (pl, ql) = (a * p1 + p2, a * q1 + q2);
            prop_assert_eq!(pl, c.p[l] as i128);
            prop_assert_eq!(ql, c.q[l] as i128);
            let sign = if l % 2 == 0 { -1 } else { 1 };
            prop_assert_eq!(pl * q1 - p1 * ql, sign);
            (p2, q2, p1, q1) = (p1, q1, pl, ql);
        }
    }

    #[test]
    fn convergents_approximate_within_one_over_q_next((p, q, d, r) in arb_surd()) {
        let c = cf_expand(AngleSpec::surd(p, q, d, r).unwrap(), 20).unwrap();
        for l in 0..c.len() - 1 {
            let ql = c.q[l] as f64;
            if ql * ql > 1e10 {
                break;
            }
            let err = approximation_error(&c, l);
            prop_assert!(err < 1.0 / (ql * c.q[l + 1] as f64) * (1.0 + 1e-6));
            prop_assert!(err >= 1.0 / (ql * (c.q[l + 1] + c.q[l]) as f64) * (1.0 - 1e-6));
        }
    }

    #[test]
    fn rational_expansion_is_euclid(p in 0i64..1000, q in 1i64..1000) {
        prop_assume!(p < q);
        let c = cf_expand(AngleSpec::rational(p, q).unwrap(), 64).unwrap();
        let g = p.gcd(&q);
        prop_assert_eq!(*c.q.last().unwrap() as i64, q / g);
        prop_assert_eq!(*c.p.last().unwrap() as i64, p / g);
        let want = rational_quotients(BigInt::from(p), BigInt::from(q));
        let got: Vec<BigInt> = c.partial_quotients.iter().map(|&a| BigInt::from(a)).collect();
        prop_assert_eq!(got, want);
    }

    /// For `N = q_ℓ` points the gaps take the two values `‖q_{ℓ−1}a‖` and
    /// `‖q_{ℓ−1}a‖ + ‖q_ℓ a‖`.
    #[test]
    fn gaps_match_three_distance_values((p, q, d, r) in arb_surd(), l in 1usize..9) {
        let c = cf_expand(AngleSpec::surd(p, q, d, r).unwrap(), 12).unwrap();
        prop_assume!(l < c.len() && c.q[l] >= 2 && c.q[l] < 200_000);
        // three_gaps itself rejects more than 3 distinct lengths or a wrong minimum
        let g = three_gaps(&c, l).unwrap();
        let norm = |k: u64| {
            let x = c.frac_multiple(k);
            x.min(1.0 - x)
        };
        let (small, big) = (norm(c.q[l - 1]), norm(c.q[l - 1]) + norm(c.q[l]));
        for &gap in &g.gaps {
            prop_assert!((gap - small).abs() < 1e-9 || (gap - big).abs() < 1e-9, "{gap} not in {{{small}, {big}}}");
        }
        prop_assert!(g.min_gap >= g.lower_bound);
        prop_assert!((g.min_gap_radians - TAU * g.min_gap).abs() < 1e-15);
    }

    #[test]
    fn denjoy_koksma_for_sine((p, q, d, r) in arb_surd(), x in 0.0f64..TAU, l in 1usize..9) {
        let c = cf_expand(AngleSpec::surd(p, q, d, r).unwrap(), 12).unwrap();
        prop_assume!(l < c.len() && c.q[l] < 1_000_000);
        let chk = denjoy_koksma_check(f64::sin, 4.0, 0.0, c.value, x, c.q[l]);
        prop_assert!(chk.bound_satisfied, "{chk:?}");
    }
}

#[test]
fn three_gaps_refuses_rationals() {
    let c = cf_expand(AngleSpec::rational(169, 478).unwrap(), 20).unwrap();
    assert!(matches!(three_gaps(&c, 3), Err(Error::RationalAngle)));
}

#[test]
fn decimal_golden_ratio_trusts_many_terms() {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let res = cf_expand(AngleSpec::decimal(TAU * golden).unwrap(), 60);
    let c = match res {
        Ok(c) => c,
        Err(Error::PrecisionExhausted { partial, .. }) => *partial,
        Err(e) => panic!("{e}"),
    };
    assert!(c.trusted_depth >= 15, "{}", c.trusted_depth);
    assert!(c.partial_quotients[1..c.trusted_depth].iter().all(|&a| a == 1));
}

#[test]
fn l0_selection_is_the_first_crossing() {
    let t = presets::irrational_example();
    let c = cf_expand(t.angle(), 12).unwrap();
    let (n, d) = (t.triple_norm(), t.delta().abs());
    let sel = select_l0(n, d, &c).unwrap();
    assert_eq!(sel.l0, 8);
    for l in 0..sel.l0 {
        assert!(drift_lhs(n, d, c.q[l]) >= d / std::f64::consts::PI);
    }
    let short = cf_expand(t.angle(), 8).unwrap();
    assert!(matches!(select_l0(n, d, &short), Err(Error::NotFoundWithinDepth { .. })));
}

#[test]
fn sine_deviation_is_not_trivially_zero() {
    let c = cf_expand(AngleSpec::surd(0, 1, 2, 4).unwrap(), 8).unwrap();
    let chk = denjoy_koksma_check(|x| x.sin().abs(), 4.0, 2.0 / std::f64::consts::PI, c.value, 0.3, c.q[5]);
    assert!(chk.deviation > 0.0 && chk.bound_satisfied);
    assert!(chk.birkhoff_avg.signum() > 0.0 && !chk.birkhoff_avg.is_negative());
}
