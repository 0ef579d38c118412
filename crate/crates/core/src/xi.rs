//! Rational functions of `xi_n` whose only poles are at `xi_n = ±i`.
//!
//! At `|xi'| = 1` every denominator met in the boundary computation is a
//! product of powers of `xi_n - i` and `xi_n + i`, so the type stores the
//! two pole orders directly. Coefficients of the numerator are
//! [`FormalPoly`]s in the geometric parameters.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{FormalPoly, PiPoly};
use crate::scalar::{GaussianRational, Rational};

/// Polynomial in `xi_n`, coefficients in ascending degree.
pub type XiPoly = Vec<FormalPoly>;

fn trim(p: &mut XiPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &[FormalPoly], b: &[FormalPoly]) -> XiPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => FormalPoly::zero(),
        });
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[FormalPoly], b: &[FormalPoly]) -> XiPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FormalPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let prod = x * y;
            out[i + j] = &out[i + j] + &prod;
        }
    }
    trim(&mut out);
    out
}

fn poly_scale(a: &[FormalPoly], c: &GaussianRational) -> XiPoly {
    let mut out: XiPoly = a.iter().map(|x| x.scale(c)).collect();
    trim(&mut out);
    out
}

/// `p(xi) * (xi - root)`.
fn mul_linear(p: &[FormalPoly], root: &GaussianRational) -> XiPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FormalPoly::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k + 1] = &out[k + 1] + c;
        out[k] = &out[k] - &c.scale(root);
    }
    trim(&mut out);
    out
}

fn eval_at(p: &[FormalPoly], x: &GaussianRational) -> FormalPoly {
    let mut acc = FormalPoly::zero();
    for c in p.iter().rev() {
        acc = &acc.scale(x) + c;
    }
    acc
}

/// Synthetic division by `(xi - root)`; returns the quotient, assuming the
/// remainder is zero.
fn div_linear(p: &[FormalPoly], root: &GaussianRational) -> XiPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    let n = p.len() - 1;
    let mut q = vec![FormalPoly::zero(); n];
    let mut carry = FormalPoly::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + &carry.scale(root);
        q[k] = carry.clone();
    }
    q
}

fn poly_derivative(p: &[FormalPoly]) -> XiPoly {
    let mut out: XiPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&GaussianRational::from_int(k as i64)))
        .collect();
    trim(&mut out);
    out
}

/// Coefficients of `p(root + u)` in powers of `u`.
fn taylor_shift(p: &[FormalPoly], root: &GaussianRational) -> XiPoly {
    let n = p.len();
    let mut out = vec![FormalPoly::zero(); n];
    // Horner in the shifted variable.
    for c in p.iter().rev() {
        // out = out * (u + root) + c
        let mut next = vec![FormalPoly::zero(); n];
        for k in 0..n {
            if out[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = &next[k + 1] + &out[k];
            }
            next[k] = &next[k] + &out[k].scale(root);
        }
        next[0] = &next[0] + c;
        out = next;
    }
    trim(&mut out);
    out
}

/// Series coefficients of `(u + d)^(-p)` up to `u^(len-1)`.
fn inverse_power_series(d: &GaussianRational, p: u32, len: usize) -> Vec<GaussianRational> {
    let d_inv = d.inv().expect("pole offset is nonzero");
    let base = d_inv.pow(p);
    let mut out = Vec::with_capacity(len);
    let mut dpow = base;
    for m in 0..len {
        // binom(-p, m) = (-1)^m binom(p+m-1, m)
        let b = if p == 0 {
            if m == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        } else {
            binomial(BigInt::from(p as u64 + m as u64 - 1), BigInt::from(m as u64))
        };
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let coef = GaussianRational::real(Rational::from_integer(b * sign));
        out.push(&coef * &dpow);
        dpow = &dpow * &d_inv;
    }
    out
}

fn plus_root() -> GaussianRational {
    GaussianRational::i()
}

fn minus_root() -> GaussianRational {
    -GaussianRational::i()
}

/// `numerator / ((xi_n - i)^plus * (xi_n + i)^minus)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XiRational {
    numerator: XiPoly,
    plus: u32,
    minus: u32,
}

/// Principal parts and polynomial part of an [`XiRational`].
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub poly_part: XiPoly,
    /// `(order, c)` meaning `c / (xi_n - i)^order`.
    pub plus_part: Vec<(u32, FormalPoly)>,
    /// `(order, c)` meaning `c / (xi_n + i)^order`.
    pub minus_part: Vec<(u32, FormalPoly)>,
}

impl XiRational {
    pub fn new(numerator: XiPoly, plus: u32, minus: u32) -> Self {
        let mut r = Self {
            numerator,
            plus,
            minus,
        };
        r.canonicalize();
        r
    }

    pub fn constant(c: FormalPoly) -> Self {
        Self::new(vec![c], 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(FormalPoly::from_int(n))
    }

    pub fn polynomial(coeffs: XiPoly) -> Self {
        Self::new(coeffs, 0, 0)
    }

    /// The variable `xi_n`.
    pub fn xi_n() -> Self {
        Self::polynomial(vec![FormalPoly::zero(), FormalPoly::one()])
    }

    /// `1 / (1 + xi_n^2)^p`.
    pub fn inv_norm_pow(p: u32) -> Self {
        Self::new(vec![FormalPoly::one()], p, p)
    }

    pub fn numerator(&self) -> &[FormalPoly] {
        &self.numerator
    }

    pub fn pole_order_plus(&self) -> u32 {
        self.plus
    }

    pub fn pole_order_minus(&self) -> u32 {
        self.minus
    }

    pub fn numerator_degree(&self) -> Option<usize> {
        if self.numerator.is_empty() {
            None
        } else {
            Some(self.numerator.len() - 1)
        }
    }

    fn canonicalize(&mut self) {
        trim(&mut self.numerator);
        if self.numerator.is_empty() {
            self.plus = 0;
            self.minus = 0;
            return;
        }
        while self.plus > 0 && eval_at(&self.numerator, &plus_root()).is_zero() {
            self.numerator = div_linear(&self.numerator, &plus_root());
            self.plus -= 1;
        }
        while self.minus > 0 && eval_at(&self.numerator, &minus_root()).is_zero() {
            self.numerator = div_linear(&self.numerator, &minus_root());
            self.minus -= 1;
        }
    }

    /// Numerator rewritten over the denominator `(xi-i)^plus (xi+i)^minus`.
    fn lift(&self, plus: u32, minus: u32) -> XiPoly {
        let mut n = self.numerator.clone();
        for _ in self.plus..plus {
            n = mul_linear(&n, &plus_root());
        }
        for _ in self.minus..minus {
            n = mul_linear(&n, &minus_root());
        }
        n
    }

    pub fn scale(&self, c: &FormalPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let n: XiPoly = self.numerator.iter().map(|x| x * c).collect();
        Self::new(n, self.plus, self.minus)
    }

    pub fn scale_const(&self, c: &GaussianRational) -> Self {
        Self {
            numerator: poly_scale(&self.numerator, c),
            plus: self.plus,
            minus: self.minus,
        }
        .canonical_if_zero()
    }

    fn canonical_if_zero(mut self) -> Self {
        if self.numerator.is_empty() {
            self.plus = 0;
            self.minus = 0;
        }
        self
    }

    /// Apply a coefficient-wise map (substitution, sphere reduction, ...).
    pub fn map_coeffs(&self, f: impl Fn(&FormalPoly) -> FormalPoly) -> Self {
        Self::new(
            self.numerator.iter().map(f).collect(),
            self.plus,
            self.minus,
        )
    }

    /// Exact derivative in `xi_n`.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // (N'(xi-i)(xi+i) - a N (xi+i) - b N (xi-i)) / ((xi-i)^(a+1) (xi+i)^(b+1))
        let dn = poly_derivative(&self.numerator);
        let t1 = mul_linear(&mul_linear(&dn, &plus_root()), &minus_root());
        let t2 = poly_scale(
            &mul_linear(&self.numerator, &minus_root()),
            &GaussianRational::from_int(-(self.plus as i64)),
        );
        let t3 = poly_scale(
            &mul_linear(&self.numerator, &plus_root()),
            &GaussianRational::from_int(-(self.minus as i64)),
        );
        Self::new(
            poly_add(&poly_add(&t1, &t2), &t3),
            self.plus + 1,
            self.minus + 1,
        )
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// Laurent coefficients at `root` of `numerator / (xi - other)^other_order`,
    /// first `count` Taylor terms.
    fn principal_part_at(
        &self,
        root: &GaussianRational,
        order: u32,
        other: &GaussianRational,
        other_order: u32,
    ) -> Vec<(u32, FormalPoly)> {
        if order == 0 || self.numerator.is_empty() {
            return Vec::new();
        }
        let count = order as usize;
        let shifted = taylor_shift(&self.numerator, root);
        // (xi - other) = u + (root - other)
        let offset = root - other;
        let series = inverse_power_series(&offset, other_order, count);
        let mut out = Vec::new();
        for k in 0..count {
            let mut c = FormalPoly::zero();
            for m in 0..=k {
                if let Some(nk) = shifted.get(k - m) {
                    c = &c + &nk.scale(&series[m]);
                }
            }
            if !c.is_zero() {
                out.push((order - k as u32, c));
            }
        }
        out.sort_by_key(|(o, _)| *o);
        out
    }

    pub fn partial_fractions(&self) -> PartialFractions {
        let plus_part = self.principal_part_at(&plus_root(), self.plus, &minus_root(), self.minus);
        let minus_part =
            self.principal_part_at(&minus_root(), self.minus, &plus_root(), self.plus);
        // Polynomial part: quotient of the numerator by the monic denominator.
        let mut den: XiPoly = vec![FormalPoly::one()];
        for _ in 0..self.plus {
            den = mul_linear(&den, &plus_root());
        }
        for _ in 0..self.minus {
            den = mul_linear(&den, &minus_root());
        }
        let poly_part = poly_quotient(&self.numerator, &den);
        PartialFractions {
            poly_part,
            plus_part,
            minus_part,
        }
    }

    /// Principal part at `xi_n = +i`; polynomial part and `(xi_n + i)` poles
    /// are discarded.
    pub fn pi_plus(&self) -> Self {
        if self.plus == 0 {
            return Self::zero();
        }
        let parts = self.principal_part_at(&plus_root(), self.plus, &minus_root(), self.minus);
        let mut acc = Self::zero();
        for (order, c) in parts {
            acc = &acc + &Self::new(vec![c], order, 0);
        }
        acc
    }

    /// Residue at `xi_n = +i`, the coefficient of `1/(xi_n - i)`.
    pub fn residue_plus(&self) -> FormalPoly {
        self.principal_part_at(&plus_root(), self.plus, &minus_root(), self.minus)
            .into_iter()
            .find(|(o, _)| *o == 1)
            .map(|(_, c)| c)
            .unwrap_or_default()
    }

    /// `integral over R of f(xi_n) d xi_n`, closing the contour in the upper
    /// half-plane: `2 pi i * Res_{xi_n = i}`.
    pub fn integrate_line(&self) -> Result<PiPoly> {
        let Some(deg) = self.numerator_degree() else {
            return Ok(PiPoly::zero(1));
        };
        let den = (self.plus + self.minus) as usize;
        if deg + 2 > den {
            return Err(Error::DecayViolated {
                numerator_degree: deg,
                denominator_degree: den,
            });
        }
        let res = self.residue_plus();
        Ok(PiPoly::new(
            res.scale(&GaussianRational::from_int(2))
                .scale(&GaussianRational::i()),
            1,
        ))
    }

    pub fn eval_complex(
        &self,
        xi_n: num_complex::Complex64,
        values: &dyn Fn(crate::poly::ParamId) -> num_complex::Complex64,
    ) -> num_complex::Complex64 {
        use num_complex::Complex64;
        let mut num = Complex64::new(0.0, 0.0);
        for c in self.numerator.iter().rev() {
            num = num * xi_n + c.eval_complex(values);
        }
        let i = Complex64::new(0.0, 1.0);
        num / ((xi_n - i).powu(self.plus) * (xi_n + i).powu(self.minus))
    }
}

fn poly_quotient(num: &[FormalPoly], den: &[FormalPoly]) -> XiPoly {
    // den is monic with constant coefficients
    if num.len() < den.len() {
        return Vec::new();
    }
    let dn = den.len() - 1;
    let mut rem: XiPoly = num.to_vec();
    let mut q = vec![FormalPoly::zero(); num.len() - dn];
    for k in (0..q.len()).rev() {
        let lead = rem[k + dn].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            let c = d.constant_term();
            rem[k + j] = &rem[k + j] - &lead.scale(&c);
        }
        q[k] = lead;
    }
    trim(&mut q);
    q
}

impl PartialFractions {
    /// Reassemble the rational function from its parts.
    pub fn recompose(&self) -> XiRational {
        let mut acc = XiRational::polynomial(self.poly_part.clone());
        for (o, c) in &self.plus_part {
            acc = &acc + &XiRational::new(vec![c.clone()], *o, 0);
        }
        for (o, c) in &self.minus_part {
            acc = &acc + &XiRational::new(vec![c.clone()], 0, *o);
        }
        acc
    }
}

impl Zero for XiRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }
}

impl One for XiRational {
    fn one() -> Self {
        Self::constant(FormalPoly::one())
    }
}

impl From<FormalPoly> for XiRational {
    fn from(p: FormalPoly) -> Self {
        Self::constant(p)
    }
}

impl<'a> Add<&'a XiRational> for &'a XiRational {
    type Output = XiRational;
    fn add(self, rhs: &XiRational) -> XiRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let plus = self.plus.max(rhs.plus);
        let minus = self.minus.max(rhs.minus);
        let n = poly_add(&self.lift(plus, minus), &rhs.lift(plus, minus));
        XiRational::new(n, plus, minus)
    }
}

impl Add for XiRational {
    type Output = XiRational;
    fn add(self, rhs: XiRational) -> XiRational {
        &self + &rhs
    }
}

impl<'a> Sub<&'a XiRational> for &'a XiRational {
    type Output = XiRational;
    fn sub(self, rhs: &XiRational) -> XiRational {
        self + &(-rhs)
    }
}

impl Sub for XiRational {
    type Output = XiRational;
    fn sub(self, rhs: XiRational) -> XiRational {
        &self - &rhs
    }
}

impl<'a> Mul<&'a XiRational> for &'a XiRational {
    type Output = XiRational;
    fn mul(self, rhs: &XiRational) -> XiRational {
        if self.is_zero() || rhs.is_zero() {
            return XiRational::zero();
        }
        // The product of canonical forms is canonical: Q(i)[params] is a domain.
        XiRational {
            numerator: poly_mul(&self.numerator, &rhs.numerator),
            plus: self.plus + rhs.plus,
            minus: self.minus + rhs.minus,
        }
    }
}

impl Mul for XiRational {
    type Output = XiRational;
    fn mul(self, rhs: XiRational) -> XiRational {
        &self * &rhs
    }
}

impl Neg for &XiRational {
    type Output = XiRational;
    fn neg(self) -> XiRational {
        XiRational {
            numerator: self.numerator.iter().map(|c| -c).collect(),
            plus: self.plus,
            minus: self.minus,
        }
    }
}

impl Neg for XiRational {
    type Output = XiRational;
    fn neg(self) -> XiRational {
        -&self
    }
}

impl fmt::Debug for XiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for XiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        let num = parts.join(" + ");
        let mut den = Vec::new();
        match self.plus {
            0 => {}
            1 => den.push("(t-i)".to_string()),
            p => den.push(format!("(t-i)^{p}")),
        }
        match self.minus {
            0 => {}
            1 => den.push("(t+i)".to_string()),
            p => den.push(format!("(t+i)^{p}")),
        }
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "[{num}] / [{}]", den.join(""))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, d: i64) -> FormalPoly {
        FormalPoly::from_frac(n, d)
    }

    fn ic(n: i64, d: i64) -> FormalPoly {
        FormalPoly::constant(GaussianRational::new(Rational::zero(), crate::scalar::rat(n, d)))
    }

    #[test]
    fn derivative_of_inverse_norm() {
        let f = XiRational::inv_norm_pow(1);
        let expected = XiRational::new(vec![FormalPoly::zero(), c(-2, 1)], 2, 2);
        assert_eq!(f.derivative(), expected);
    }

    #[test]
    fn second_derivative_of_inverse_norm() {
        let f = XiRational::inv_norm_pow(1);
        let expected = XiRational::new(vec![c(-2, 1), FormalPoly::zero(), c(6, 1)], 3, 3);
        assert_eq!(f.nth_derivative(2), expected);
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        assert!(XiRational::constant(FormalPoly::v(1)).derivative().is_zero());
    }

    #[test]
    fn partial_fractions_of_inverse_norm() {
        let pf = XiRational::inv_norm_pow(1).partial_fractions();
        assert!(pf.poly_part.is_empty());
        assert_eq!(pf.plus_part, vec![(1, ic(-1, 2))]);
        assert_eq!(pf.minus_part, vec![(1, ic(1, 2))]);
    }

    #[test]
    fn partial_fractions_of_xi_squared_over_norm() {
        let f = XiRational::new(vec![FormalPoly::zero(), FormalPoly::zero(), c(1, 1)], 1, 1);
        let pf = f.partial_fractions();
        assert_eq!(pf.poly_part, vec![c(1, 1)]);
        assert_eq!(pf.plus_part, vec![(1, ic(1, 2))]);
        assert_eq!(pf.minus_part, vec![(1, ic(-1, 2))]);
        assert_eq!(pf.recompose(), f);
    }

    #[test]
    fn pure_principal_part() {
        let f = XiRational::new(vec![c(1, 1)], 2, 0);
        let pf = f.partial_fractions();
        assert!(pf.poly_part.is_empty());
        assert_eq!(pf.plus_part, vec![(2, c(1, 1))]);
        assert!(pf.minus_part.is_empty());
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        // (xi^2 + 1) / (xi^2 + 1) == 1
        let f = XiRational::new(vec![c(1, 1), FormalPoly::zero(), c(1, 1)], 1, 1);
        assert_eq!(f, XiRational::one());
        assert_eq!(f.pole_order_plus(), 0);
    }

    #[test]
    fn pi_plus_anchors() {
        let f = XiRational::inv_norm_pow(1);
        assert_eq!(f.pi_plus(), XiRational::new(vec![ic(-1, 2)], 1, 0));
        let g = XiRational::new(vec![FormalPoly::zero(), FormalPoly::zero(), c(1, 1)], 1, 1);
        assert_eq!(g.pi_plus(), XiRational::new(vec![ic(1, 2)], 1, 0));
        let p = XiRational::polynomial(vec![c(3, 1), c(0, 1), c(5, 1)]);
        assert!(p.pi_plus().is_zero());
    }

    #[test]
    fn line_integrals() {
        let f = XiRational::inv_norm_pow(1);
        assert_eq!(f.integrate_line().unwrap(), PiPoly::new(c(1, 1), 1));
        // xi / ((xi - i)(1 + xi^2)^2) integrates to pi/8
        let g = XiRational::new(vec![FormalPoly::zero(), c(1, 1)], 3, 2);
        assert_eq!(g.integrate_line().unwrap(), PiPoly::new(c(1, 8), 1));
        let bad = XiRational::new(vec![c(1, 1)], 1, 0);
        assert!(matches!(
            bad.integrate_line(),
            Err(Error::DecayViolated { .. })
        ));
        let lower = XiRational::new(vec![c(1, 1)], 0, 3);
        assert_eq!(lower.integrate_line().unwrap(), PiPoly::zero(1));
    }
}
