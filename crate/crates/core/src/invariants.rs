//! Boundary invariants `S1..S6` and exact projection onto them.
//!
//! - `S1 = sum_{j<4} (Dv_j w_j + v_j Dw_j)`, the normal derivative of `g(v^T, w^T)`
//! - `S2 = sum_{j<4} v_j w_j`, carried with a factor `h` (or `K`)
//! - `S3 = Dv_4 w_4 + v_4 Dw_4`
//! - `S4 = v_4 w_4`, carried with a factor `h` (or `K`)
//! - `S5 = sum_{j<4} G_4j w_j`
//! - `S6 = (sum_j H_jj) w_4 - sum_k w_k H_4k + sum_j w_j H_j4`

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{FormalPoly, Monomial, ParamId, PiPoly};
use crate::scalar::{format_rational, Rational};

pub const NUM_INVARIANTS: usize = 6;

/// Whether the graded invariants `S2`, `S4` carry `h = h'(0)` or `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    Hprime,
    #[serde(rename = "K", alias = "k")]
    K,
}

impl Basis {
    pub fn labels(self) -> [&'static str; NUM_INVARIANTS] {
        match self {
            Basis::Hprime => ["S1", "h*S2", "S3", "h*S4", "S5", "S6"],
            Basis::K => ["S1", "K*S2", "S3", "K*S4", "S5", "S6"],
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hprime" | "h" => Ok(Basis::Hprime),
            "K" | "k" => Ok(Basis::K),
            other => Err(Error::Config(format!("unknown basis `{other}`"))),
        }
    }
}

const GRADED: [bool; NUM_INVARIANTS] = [false, true, false, true, false, false];

/// `S_k` as a polynomial, including the `h` factor for graded entries.
pub fn basis_poly(k: usize) -> FormalPoly {
    let (v, w, dv, dw, hm) = (FormalPoly::v, FormalPoly::w, FormalPoly::dv, FormalPoly::dw, FormalPoly::hm);
    let mut p = FormalPoly::zero();
    match k {
        0 => {
            for j in 1..4 {
                p = &p + &(&(dv(j) * w(j)) + &(v(j) * dw(j)));
            }
        }
        1 => {
            for j in 1..4 {
                p = &p + &(v(j) * w(j));
            }
            p = p * FormalPoly::h();
        }
        2 => p = &(dv(4) * w(4)) + &(v(4) * dw(4)),
        3 => p = v(4) * w(4) * FormalPoly::h(),
        4 => {
            for j in 1..4 {
                p = &p + &(FormalPoly::g(4, j) * w(j));
            }
        }
        5 => {
            for j in 1..=4 {
                p = &p + &(hm(j, j) * w(4));
                p = &p - &(w(j) * hm(4, j));
                p = &p + &(w(j) * hm(j, 4));
            }
        }
        _ => panic!("invariant index {k} out of range"),
    }
    p
}

/// A monomial of `basis_poly(k)` that appears in no other basis element.
fn leading_monomial(k: usize) -> Monomial {
    let m = |ps: &[ParamId]| ps.iter().fold(Monomial::one(), |a, p| a.mul(&Monomial::var(*p)));
    match k {
        0 => m(&[ParamId::Dv(1), ParamId::W(1)]),
        1 => m(&[ParamId::H, ParamId::V(1), ParamId::W(1)]),
        2 => m(&[ParamId::Dv(4), ParamId::W(4)]),
        3 => m(&[ParamId::H, ParamId::V(4), ParamId::W(4)]),
        4 => m(&[ParamId::G(1, 4), ParamId::W(1)]),
        5 => m(&[ParamId::Hm(1, 1), ParamId::W(4)]),
        _ => unreachable!(),
    }
}

/// Exact coefficients over `S1..S6`, times `pi^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantCombo {
    pub coeffs: [Rational; NUM_INVARIANTS],
    pub basis: Basis,
    pub pi_power: u32,
}

impl Default for InvariantCombo {
    fn default() -> Self {
        Self::zero(Basis::Hprime)
    }
}

impl InvariantCombo {
    pub fn zero(basis: Basis) -> Self {
        Self {
            coeffs: Default::default(),
            basis,
            pi_power: 2,
        }
    }

    pub fn from_coeffs(coeffs: [Rational; NUM_INVARIANTS], basis: Basis) -> Self {
        Self {
            coeffs,
            basis,
            pi_power: 2,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Expand back into a polynomial (h basis only).
    pub fn to_poly(&self) -> FormalPoly {
        assert_eq!(self.basis, Basis::Hprime, "expansion needs the h basis");
        let mut p = FormalPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p = &p + &basis_poly(k).scale_rational(c);
            }
        }
        p
    }

    /// Exact projection of a `pi`-graded polynomial onto the basis.
    /// Anything outside the span is reported, never dropped.
    pub fn project(p: &PiPoly) -> Result<Self> {
        let mut coeffs: [Rational; NUM_INVARIANTS] = Default::default();
        let mut residual = p.poly.clone();
        for (k, slot) in coeffs.iter_mut().enumerate() {
            let b = basis_poly(k);
            let lead = leading_monomial(k);
            let num = residual.coeff(&lead);
            if num.is_zero() {
                continue;
            }
            let den = b.coeff(&lead);
            let lambda = num.checked_div(&den)?;
            residual = &residual - &b.scale(&lambda);
            if !lambda.im.is_zero() {
                return Err(Error::UnrecognizedInvariant {
                    monomials: vec![format!("imaginary coefficient {lambda} on {}", Basis::Hprime.labels()[k])],
                });
            }
            *slot = lambda.re;
        }
        if !residual.is_zero() {
            return Err(Error::UnrecognizedInvariant {
                monomials: residual
                    .terms()
                    .map(|(m, c)| format!("{c}*{m}"))
                    .collect(),
            });
        }
        Ok(Self {
            coeffs,
            basis: Basis::Hprime,
            pi_power: p.pi_power,
        })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.basis != rhs.basis {
            return Err(Error::Config("cannot add combos in different bases".into()));
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_power != rhs.pi_power {
            return Err(Error::PiPowerMismatch {
                left: self.pi_power,
                right: rhs.pi_power,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        let mut neg = rhs.clone();
        for c in neg.coeffs.iter_mut() {
            *c = -c.clone();
        }
        self.checked_add(&neg)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = &*c * r;
        }
        out
    }

    /// `h -> -(2/3) K` on the graded entries. Idempotent on the K basis.
    pub fn substitute_k(&self) -> Self {
        if self.basis == Basis::K {
            return self.clone();
        }
        let factor = Rational::new((-2).into(), 3.into());
        let mut out = self.clone();
        for (c, graded) in out.coeffs.iter_mut().zip(GRADED) {
            if graded {
                *c = &*c * &factor;
            }
        }
        out.basis = Basis::K;
        out
    }

    pub fn in_basis(&self, basis: Basis) -> Result<Self> {
        match (self.basis, basis) {
            (a, b) if a == b => Ok(self.clone()),
            (Basis::Hprime, Basis::K) => Ok(self.substitute_k()),
            _ => Err(Error::Config("K basis cannot be converted back".into())),
        }
    }

    pub fn compare(&self, expected: &Self) -> Result<Comparison> {
        let diff = self.sub(expected)?;
        Ok(Comparison {
            matches: diff.is_zero(),
            diff,
        })
    }

    /// Labelled nonzero coefficients as exact strings.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        self.basis
            .labels()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (*l, format_rational(c)))
            .collect()
    }

    pub fn coeff_by_label(&self, label: &str) -> Option<&Rational> {
        self.basis
            .labels()
            .iter()
            .position(|l| *l == label)
            .map(|k| &self.coeffs[k])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub matches: bool,
    pub diff: InvariantCombo,
}

impl fmt::Display for InvariantCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .into_iter()
            .map(|(l, c)| format!("{c}*{l}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "({})*pi^{}", parts.join(" + "), self.pi_power)
        }
    }
}

/// Convenience for building expected values: `&[("S1", -8, 3), ...]`.
pub fn combo(entries: &[(&str, i64, i64)], basis: Basis) -> InvariantCombo {
    let mut out = InvariantCombo::zero(basis);
    for (label, n, d) in entries {
        let k = basis
            .labels()
            .iter()
            .position(|l| l == label)
            .unwrap_or_else(|| panic!("unknown label {label}"));
        out.coeffs[k] = &out.coeffs[k] + &Rational::new((*n).into(), (*d).into());
    }
    out
}

/// Tangential `G_ij` (both indices < 4) in a polynomial: these must never
/// survive the trace against `c(dx_n)`.
pub fn tangential_g_monomials(p: &FormalPoly) -> Vec<String> {
    p.terms()
        .filter(|(m, _)| {
            m.factors()
                .any(|(q, _)| matches!(q, ParamId::G(i, j) if i < 4 && j < 4))
        })
        .map(|(m, c)| format!("{c}*{m}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_round_trip() {
        let c = combo(
            &[("S1", -8, 3), ("h*S2", 6, 1), ("S3", 8, 1), ("h*S4", -44, 3), ("S5", 8, 1), ("S6", -8, 1)],
            Basis::Hprime,
        );
        let back = InvariantCombo::project(&PiPoly::new(c.to_poly(), 2)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn unrecognized_residual_is_reported() {
        let p = FormalPoly::v(1) * FormalPoly::w(2);
        let err = InvariantCombo::project(&PiPoly::new(p, 2)).unwrap_err();
        assert!(matches!(err, Error::UnrecognizedInvariant { .. }));
    }

    #[test]
    fn k_substitution() {
        let c = combo(&[("h*S4", -44, 3), ("h*S2", 6, 1)], Basis::Hprime);
        let k = c.substitute_k();
        assert_eq!(k, combo(&[("K*S4", 88, 9), ("K*S2", -36, 9)], Basis::K));
        assert!(InvariantCombo::zero(Basis::Hprime).substitute_k().is_zero());
    }

    #[test]
    fn comparison_diff() {
        let a = combo(&[("h*S2", 1, 1)], Basis::Hprime);
        let z = InvariantCombo::zero(Basis::Hprime);
        let cmp = a.compare(&z).unwrap();
        assert!(!cmp.matches);
        assert_eq!(cmp.diff.entries().len(), 1);
        assert!(a.compare(&a).unwrap().matches);
    }
}
