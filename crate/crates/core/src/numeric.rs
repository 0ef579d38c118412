//! Floating-point oracles for the analytic layer: quadrature of `xi_n` line
//! integrals and Monte-Carlo sphere moments.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::poly::{ParamId, NUM_PARAMS};
use crate::residue::{sphere_moment, MomentIndex};
use crate::scalar::{rat, Rational};
use crate::xi::XiRational;

/// A point assignment for every formal parameter.
#[derive(Clone, Debug)]
pub struct Instantiation {
    pub values: [Rational; NUM_PARAMS],
}

impl Instantiation {
    /// Random rationals `p/q` in `[-2, 2]` with `1 <= q <= 16`.
    pub fn random(rng: &mut impl Rng) -> Self {
        let values = std::array::from_fn(|_| {
            let q: i64 = rng.gen_range(1..=16);
            let p: i64 = rng.gen_range(-2 * q..=2 * q);
            rat(p, q)
        });
        Self { values }
    }

    pub fn as_f64(&self, p: ParamId) -> Complex64 {
        use num_traits::ToPrimitive;
        Complex64::new(self.values[p.index()].to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

/// `int_R f(t) dt` via `t = tan(s)` on `(-pi/2, pi/2)`, real and imaginary
/// parts integrated separately with a double-exponential rule.
pub fn quad_line(f: impl Fn(f64) -> Complex64, abs_tol: f64) -> Complex64 {
    use std::f64::consts::FRAC_PI_2;
    let g = |s: f64| {
        let c = s.cos();
        f(s.tan()) / (c * c)
    };
    let re = quadrature::integrate(|s| g(s).re, -FRAC_PI_2, FRAC_PI_2, abs_tol).integral;
    let im = quadrature::integrate(|s| g(s).im, -FRAC_PI_2, FRAC_PI_2, abs_tol).integral;
    Complex64::new(re, im)
}

/// `int_R |f(t)| dt`, used as the scale when the exact value vanishes.
pub fn quad_line_abs(f: impl Fn(f64) -> Complex64, abs_tol: f64) -> f64 {
    use std::f64::consts::FRAC_PI_2;
    quadrature::integrate(
        |s| {
            let c = s.cos();
            f(s.tan()).norm() / (c * c)
        },
        -FRAC_PI_2,
        FRAC_PI_2,
        abs_tol,
    )
    .integral
}

#[derive(Clone, Debug, Serialize)]
pub struct LineCheck {
    pub label: String,
    pub exact_re: f64,
    pub exact_im: f64,
    pub numeric_re: f64,
    pub numeric_im: f64,
    pub relative_error: f64,
    pub passed: bool,
}

/// Compare the exact line integral of `f` (at one instantiation) with
/// quadrature. The error is relative to `|exact|`, or to `int |f|` when the
/// exact value is zero.
pub fn check_line_integral(label: &str, f: &XiRational, at: &Instantiation, tol: f64) -> Result<LineCheck> {
    let values = |p: ParamId| at.as_f64(p);
    let line = f.integrate_line()?;
    let exact = line.poly.eval_complex(&values) * std::f64::consts::PI.powi(line.pi_power as i32);
    let eval = |t: f64| f.eval_complex(Complex64::new(t, 0.0), &values);
    let numeric = quad_line(eval, 1e-14);
    let scale = if exact.norm() > 0.0 {
        exact.norm()
    } else {
        quad_line_abs(eval, 1e-14).max(f64::MIN_POSITIVE)
    };
    let relative_error = (exact - numeric).norm() / scale;
    Ok(LineCheck {
        label: label.to_string(),
        exact_re: exact.re,
        exact_im: exact.im,
        numeric_re: numeric.re,
        numeric_im: numeric.im,
        relative_error,
        passed: relative_error <= tol,
    })
}

/// Run `instances` line-integral checks, cycling through `integrands`,
/// each at a fresh seeded random instantiation.
pub fn line_integral_suite(
    integrands: &[(String, XiRational)],
    instances: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<LineCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(instances);
    if integrands.is_empty() {
        return Ok(out);
    }
    for k in 0..instances {
        let (label, f) = &integrands[k % integrands.len()];
        let at = Instantiation::random(&mut rng);
        out.push(check_line_integral(label, f, &at, tol)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentCheck {
    pub alpha: MomentIndex,
    pub exact: f64,
    pub estimate: f64,
    pub std_error: f64,
    /// `|estimate - exact| / std_error` (0 when both vanish).
    pub sigmas: f64,
    pub passed: bool,
}

/// Uniform point on the unit sphere (Archimedes: `z` uniform in `[-1, 1]`).
fn sphere_point(rng: &mut impl Rng) -> [f64; 3] {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

/// Monte-Carlo estimates of `int_{S^2} xi^alpha` with a `max_sigma` band.
pub fn monte_carlo_moments(alphas: &[MomentIndex], samples: usize, seed: u64, max_sigma: f64) -> Vec<MomentCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = alphas.len();
    let (mut sum, mut sum_sq) = (vec![0.0; n], vec![0.0; n]);
    for _ in 0..samples {
        let p = sphere_point(&mut rng);
        for (k, a) in alphas.iter().enumerate() {
            let v = p[0].powi(a[0] as i32) * p[1].powi(a[1] as i32) * p[2].powi(a[2] as i32);
            sum[k] += v;
            sum_sq[k] += v * v;
        }
    }
    let area = 4.0 * std::f64::consts::PI;
    let count = samples as f64;
    alphas
        .iter()
        .enumerate()
        .map(|(k, &alpha)| {
            let mean = sum[k] / count;
            let var = (sum_sq[k] / count - mean * mean).max(0.0);
            let estimate = area * mean;
            let std_error = area * (var / count).sqrt();
            let exact = sphere_moment(alpha).to_complex().re;
            let dev = (estimate - exact).abs();
            let sigmas = if dev == 0.0 { 0.0 } else { dev / std_error.max(f64::MIN_POSITIVE) };
            MomentCheck {
                alpha,
                exact,
                estimate,
                std_error,
                sigmas,
                passed: sigmas <= max_sigma,
            }
        })
        .collect()
}

/// Highest total degree of the default moment checks.
pub const MOMENT_DEGREE: u8 = 6;

/// The moments checked by default: every exponent pattern up to [`MOMENT_DEGREE`].
pub fn default_moment_indices() -> Vec<MomentIndex> {
    let mut out = Vec::new();
    for a in 0..=MOMENT_DEGREE {
        for b in 0..=(MOMENT_DEGREE - a) {
            for c in 0..=(MOMENT_DEGREE - a - b) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FormalPoly;

    #[test]
    fn quadrature_of_lorentzian() {
        let v = quad_line(|t| Complex64::new(1.0 / (1.0 + t * t), 0.0), 1e-14);
        assert!((v.re - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn parametric_line_integral_matches() {
        // (v1 t + h) / [(t-i)^2 (t+i)^2]
        let f = XiRational::new(vec![FormalPoly::h(), FormalPoly::v(1)], 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let at = Instantiation::random(&mut rng);
            let c = check_line_integral("f", &f, &at, 1e-9).unwrap();
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn moments_within_band() {
        for m in monte_carlo_moments(&default_moment_indices(), 20_000, 3, 5.0) {
            assert!(m.passed, "{m:?}");
        }
    }
}
