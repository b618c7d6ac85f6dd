//! Two-index multiphoton series functions for circular polarization.
//!
//! I_{n1 n2}(chi, gamma, alpha) = e^{-i(n1 chi1 + n2 chi2)}
//!     sum_s e^{i s (chi1 +- chi2 - Delta)} J_s(alpha) J_{n1-s}(gamma1) J_{n2 -+ s}(gamma2)
//!
//! The "+-" selects the direction of rotation of the field-strength vectors;
//! for the counter-rotating configuration delta1 = -delta2 = +1 implemented
//! end-to-end the upper sign applies.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::specfun::bessel::{bessel_j, bessel_j_array, j_lookup, BESSEL_MAX_ARG};

/// Direction of rotation selecting the sign of Eq.-level "+-" pairings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationSign {
    /// Counter-rotating delta1 = -delta2 = +1 (the implemented configuration).
    Plus,
    /// The opposite pairing.
    Minus,
}

impl RotationSign {
    pub fn factor(self) -> i64 {
        match self {
            RotationSign::Plus => 1,
            RotationSign::Minus => -1,
        }
    }
}

/// Arguments of the two-index series function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IArgs {
    pub chi1: f64,
    pub chi2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub alpha: f64,
    pub delta_angle: f64,
    pub rotation_sign: RotationSign,
}

/// Truncation control for the series sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesControl {
    pub absolute_tolerance: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            absolute_tolerance: 1e-12,
            max_terms: 1_000_000,
        }
    }
}

/// Minimum |s| range that must be covered before tolerance-based exit.
fn min_window(alpha: f64) -> i64 {
    let a = math::abs(alpha);
    math::ceil(a + 10.0 * math::sqrt(a + 1.0)) as i64
}

/// Full truncation window (Bessel terms beyond it are negligible).
fn full_window(alpha: f64) -> i64 {
    min_window(alpha) + 10
}

/// The series function I_{n1 n2}.
pub fn i_two_wave(n1: i64, n2: i64, args: &IArgs, ctrl: &SeriesControl) -> Result<Complex64> {
    for (v, what) in [
        (args.gamma1, "gamma1 must be finite and within capability"),
        (args.gamma2, "gamma2 must be finite and within capability"),
        (args.alpha, "alpha must be finite and within capability"),
    ] {
        if !v.is_finite() {
            return Err(Error::Domain { what, value: v });
        }
        if math::abs(v) > BESSEL_MAX_ARG {
            return Err(Error::Capability { what });
        }
    }

    let sign = args.rotation_sign.factor();
    let w = full_window(args.alpha);
    let wmin = min_window(args.alpha);

    // Precompute Bessel arrays over every order the window can touch.
    let ja = bessel_j_array(w as usize, args.alpha);
    let j1 = bessel_j_array((n1.unsigned_abs() as usize) + w as usize, args.gamma1);
    let j2 = bessel_j_array((n2.unsigned_abs() as usize) + w as usize, args.gamma2);

    let phase_step = args.chi1 + sign as f64 * args.chi2 - args.delta_angle;
    let term = |s: i64| -> Complex64 {
        let mag = j_lookup(&ja, s, args.alpha)
            * j_lookup(&j1, n1 - s, args.gamma1)
            * j_lookup(&j2, n2 - sign * s, args.gamma2);
        Complex64::from_polar(1.0, s as f64 * phase_step) * mag
    };

    let tol = ctrl.absolute_tolerance;
    let mut sum = term(0);
    let mut terms_used = 1_usize;
    let mut pos_done = false;
    let mut neg_done = false;
    let mut pos_small = 0_u32;
    let mut neg_small = 0_u32;
    let mut s = 1_i64;
    while !(pos_done && neg_done) {
        if terms_used >= ctrl.max_terms || s > 10 * w + 1000 {
            return Err(Error::Convergence {
                achieved: sum.norm(),
                requested: tol,
            });
        }
        if !pos_done {
            let t = term(s);
            sum += t;
            terms_used += 1;
            pos_small = if t.norm() < tol { pos_small + 1 } else { 0 };
            if pos_small >= 5 && s >= wmin {
                pos_done = true;
            }
        }
        if !neg_done {
            let t = term(-s);
            sum += t;
            terms_used += 1;
            neg_small = if t.norm() < tol { neg_small + 1 } else { 0 };
            if neg_small >= 5 && s >= wmin {
                neg_done = true;
            }
        }
        s += 1;
    }

    let global = Complex64::from_polar(
        1.0,
        -(n1 as f64 * args.chi1 + n2 as f64 * args.chi2),
    );
    Ok(global * sum)
}

/// Fast path inside the interference region (gamma1 = gamma2 = 0):
/// I_{n1 n2} = e^{-i n1 Delta} J_{n1}(alpha) delta_{n1, +- n2}.
pub fn i_interference(
    n1: i64,
    n2: i64,
    alpha: f64,
    delta_angle: f64,
    rotation_sign: RotationSign,
) -> Complex64 {
    if n1 != rotation_sign.factor() * n2 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar(1.0, -(n1 as f64) * delta_angle) * bessel_j(n1, alpha)
}
