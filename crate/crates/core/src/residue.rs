//! The boundary density: `pi^+`, the `xi_n` line integral, sphere moments
//! over `|xi'| = 1` in R^3, and the summand
//! `(-i)^{|a|+j+k+1} / (a! (j+k+1)!) tr[d^j_{x_n} d^k_{xi_n} pi^+ left
//!  x d^{j+1}_{xi_n} d^k_{x_n} right]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::clifford::CliffordMatrix;
use crate::error::{Error, Result};
use crate::poly::{FormalPoly, Monomial, PiPoly};
use crate::scalar::{GaussianRational, PiScalar, Rational};
use crate::symbols::GradedSymbol;
use crate::xi::XiRational;

/// Exponents of `xi_1, xi_2, xi_3`.
pub type MomentIndex = [u8; 3];

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// `int_{S^2} xi^alpha dsigma`.
pub fn sphere_moment(alpha: MomentIndex) -> PiScalar {
    if alpha.iter().any(|a| a % 2 == 1) {
        return PiScalar::new(GaussianRational::zero(), 1);
    }
    let total: i64 = alpha.iter().map(|&a| a as i64).sum();
    let mut num = BigInt::from(4);
    for &a in &alpha {
        num *= double_factorial(a as i64 - 1);
    }
    let den = double_factorial(total + 1);
    PiScalar::new(GaussianRational::real(Rational::new(num, den)), 1)
}

/// Integrate the `xi'` dependence of `p` over the unit sphere.
pub fn integrate_sphere(p: &PiPoly) -> PiPoly {
    let mut acc = FormalPoly::zero();
    for (alpha, coeff) in p.poly.split_xi() {
        let m = sphere_moment(alpha);
        if !m.coeff.is_zero() {
            acc = &acc + &coeff.scale(&m.coeff);
        }
    }
    PiPoly::new(acc, p.pi_power + 1)
}

/// One summand of the boundary density.
#[derive(Clone, Debug)]
pub struct DensityTerm {
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
    pub left: GradedSymbol,
    pub right: GradedSymbol,
}

/// `(r, l, k, j, |alpha|)`.
pub type TermIndex = (i32, i32, u32, u32, u32);

/// All index tuples with `r <= left_order`, `l <= right_order` and
/// `r + l - k - j - |alpha| = -3`.
pub fn enumerate_terms(left_order: i32, right_order: i32) -> Vec<TermIndex> {
    let mut out = Vec::new();
    let budget = left_order + right_order + 3;
    if budget < 0 {
        return out;
    }
    // Total derivative count plus order deficit equals the budget.
    for dr in 0..=budget {
        for dl in 0..=(budget - dr) {
            let rest = (budget - dr - dl) as u32;
            for k in 0..=rest {
                for j in 0..=(rest - k) {
                    let alpha = rest - k - j;
                    out.push((left_order - dr, right_order - dl, k, j, alpha));
                }
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Evaluation record of a [`DensityTerm`].
#[derive(Clone, Debug)]
pub struct DensityValue {
    pub coefficient: GaussianRational,
    pub left: CliffordMatrix,
    pub right: CliffordMatrix,
    /// Trace of the product, before integration.
    pub integrand: XiRational,
    /// `int dxi_n` of the integrand (pi^1).
    pub line: PiPoly,
    /// Final value including the sphere integral and the coefficient (pi^2).
    pub value: PiPoly,
    pub note: Option<String>,
}

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |a, b| a * b)
}

pub fn term_coefficient(k: u32, j: u32, alpha: u32) -> GaussianRational {
    let phase = GaussianRational::i_pow(-((alpha + j + k + 1) as i64));
    let den = factorial(alpha) * factorial(j + k + 1);
    phase.scale(&Rational::new(BigInt::one(), den))
}

fn d_xi(m: &CliffordMatrix, times: u32) -> CliffordMatrix {
    (0..times).fold(m.clone(), |acc, _| acc.derivative_xi())
}

pub fn density_term_value(t: &DensityTerm) -> Result<DensityValue> {
    let (r, l, k, j, alpha) = (t.r, t.l, t.k, t.j, t.alpha);
    if r + l - k as i32 - j as i32 - alpha as i32 != -3 {
        return Err(Error::SelectionRule { r, l, k, j, alpha });
    }
    if j > 1 || k > 1 {
        return Err(Error::MissingJet {
            order: if j > 1 { t.left.order } else { t.right.order },
        });
    }
    let coefficient = term_coefficient(k, j, alpha);
    if alpha > 0 {
        // Tangential x-derivatives of the right factor vanish at x_0.
        return Ok(DensityValue {
            coefficient,
            left: CliffordMatrix::zero(),
            right: CliffordMatrix::zero(),
            integrand: XiRational::zero(),
            line: PiPoly::zero(1),
            value: PiPoly::zero(2),
            note: Some("tangential derivative of the right factor vanishes at x_0".into()),
        });
    }
    let base_left = if j == 1 { t.left.dxn()?.clone() } else { t.left.value.clone() };
    let left = d_xi(&base_left.pi_plus(), k);
    let base_right = if k == 1 { t.right.dxn()?.clone() } else { t.right.value.clone() };
    let right = d_xi(&base_right, j + 1);
    let integrand = left
        .trace_of_product(&right)
        .map_coeffs(|c| c.reduce_sphere());
    let line = integrand.integrate_line()?;
    let sphere = integrate_sphere(&line);
    let value = PiPoly::new(sphere.poly.scale(&coefficient), sphere.pi_power);
    let note = if value.poly.is_zero() && !integrand.is_zero() {
        Some("integrand is odd in xi' or integrates to zero".into())
    } else {
        None
    };
    Ok(DensityValue {
        coefficient,
        left,
        right,
        integrand,
        line,
        value,
        note,
    })
}

/// Split `f` into `sum_m m * g_m(xi_n)` over monomials `m` of the geometric
/// parameters (including `xi'`), with each `g_m` a pure rational function.
pub fn split_by_monomial(f: &XiRational) -> BTreeMap<Monomial, XiRational> {
    let mut numerators: BTreeMap<Monomial, Vec<FormalPoly>> = BTreeMap::new();
    let len = f.numerator().len();
    for (deg, c) in f.numerator().iter().enumerate() {
        for (m, coeff) in c.terms() {
            let entry = numerators
                .entry(*m)
                .or_insert_with(|| vec![FormalPoly::zero(); len]);
            entry[deg] = FormalPoly::constant(coeff.clone());
        }
    }
    numerators
        .into_iter()
        .map(|(m, n)| {
            (
                m,
                XiRational::new(n, f.pole_order_plus(), f.pole_order_minus()),
            )
        })
        .collect()
}

/// Write a pure rational function as `scale * kernel` with the kernel's
/// leading numerator coefficient equal to 1.
pub fn normalize_kernel(g: &XiRational) -> Option<(GaussianRational, XiRational)> {
    let lead = g.numerator().last()?.constant_term();
    let inv = lead.inv().ok()?;
    Some((lead, g.scale_const(&inv)))
}
