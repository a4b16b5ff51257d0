//! Reference maps used by the verification suites and tests.

use std::f64::consts::PI;

use crate::angle::AngleSpec;
use crate::geometry::cis;
use crate::map::PiecewiseRotation;
use crate::Complex;

/// Argument shared by both centres of the two worked examples.
pub const CENTER_ARG: f64 = 1.14;

fn collinear(angle: AngleSpec) -> PiecewiseRotation {
    PiecewiseRotation::new(angle, -cis(CENTER_ARG), 1.5 * cis(CENTER_ARG), PI / 2.0)
        .expect("valid parameters")
}

/// `α = π√2/2` (rotation number `√2/4`), `C0 = −e^{1.14i}`, `C1 = 1.5e^{1.14i}`, `D = iℝ`.
pub fn irrational_example() -> PiecewiseRotation {
    collinear(AngleSpec::surd(0, 1, 2, 4).expect("valid surd"))
}

/// Same centres and line with `α = 2π·169/478`.
pub fn rational_example() -> PiecewiseRotation {
    collinear(AngleSpec::rational(169, 478).expect("valid rational"))
}

/// Centres `1 + 1.5i`, `4.5 + 0.25i`, line of slope −2/3 through 0, angle `alpha`.
pub fn two_center_map(alpha: f64) -> PiecewiseRotation {
    PiecewiseRotation::new(
        AngleSpec::decimal(alpha).expect("finite"),
        Complex::new(1.0, 1.5),
        Complex::new(4.5, 0.25),
        PI - (2.0f64 / 3.0).atan(),
    )
    .expect("valid parameters")
}

/// Injective map (`α = −π/10`) on the two-centre parameters.
pub fn injective_two_center() -> PiecewiseRotation {
    two_center_map(-PI / 10.0)
}

/// Surjective map (`α = π/10`) on the two-centre parameters.
pub fn surjective_two_center() -> PiecewiseRotation {
    two_center_map(PI / 10.0)
}

/// Bijective map with `α = 2π/5`, centres `±1`, and `γ = β + π/2 − α/2`.
pub fn bijective_pentagonal() -> PiecewiseRotation {
    let alpha = 2.0 * PI / 5.0;
    PiecewiseRotation::new(
        AngleSpec::rational(1, 5).expect("valid rational"),
        Complex::new(-1.0, 0.0),
        Complex::new(1.0, 0.0),
        PI / 2.0 - alpha / 2.0,
    )
    .expect("valid parameters")
}

/// Surjective counterpart of [`rational_example`]: the anti-holomorphic
/// parameter transform `α → −α`, `C_j → C̄_j`, `γ → −γ`, which flips the sign of `Δ`.
pub fn rational_example_surjective() -> PiecewiseRotation {
    rational_example()
        .mirror_transform(1.0, 0.0)
        .expect("valid parameters")
}
