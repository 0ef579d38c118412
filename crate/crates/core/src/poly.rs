//! Multivariate polynomials over Q(i) in the formal geometric parameters.
//!
//! The parameters describe the geometry at the boundary point: the frame
//! components of the two vector fields and their normal derivatives, the
//! collar parameter `h`, the covariant-derivative matrix `H`, the
//! antisymmetric connection coefficients `G`, and the tangential covector
//! `xi_1..xi_3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{GaussianRational, Rational};

pub const DIM: usize = 4;
pub const NUM_PARAMS: usize = 42;

/// A formal parameter. Indices are 1-based as in the frame notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamId {
    V(u8),
    W(u8),
    Dv(u8),
    Dw(u8),
    /// `h'(0)` of the collar metric.
    H,
    /// `H_jk = g(nabla_{e_j} v, e_k)`.
    Hm(u8, u8),
    /// `G_ij = <nabla_v e_i, e_j>` with `i < j`; see [`FormalPoly::g`].
    G(u8, u8),
    /// Tangential covector component `xi_t`, `t = 1..3`.
    Xi(u8),
}

impl ParamId {
    pub fn index(self) -> usize {
        match self {
            ParamId::V(j) => j as usize - 1,
            ParamId::W(j) => 3 + j as usize,
            ParamId::Dv(j) => 7 + j as usize,
            ParamId::Dw(j) => 11 + j as usize,
            ParamId::H => 16,
            ParamId::Hm(j, k) => 17 + (j as usize - 1) * 4 + (k as usize - 1),
            ParamId::G(i, j) => 33 + g_pair_index(i, j),
            ParamId::Xi(t) => 38 + t as usize,
        }
    }

    pub fn from_index(idx: usize) -> ParamId {
        match idx {
            0..=3 => ParamId::V(idx as u8 + 1),
            4..=7 => ParamId::W(idx as u8 - 3),
            8..=11 => ParamId::Dv(idx as u8 - 7),
            12..=15 => ParamId::Dw(idx as u8 - 11),
            16 => ParamId::H,
            17..=32 => {
                let r = (idx - 17) as u8;
                ParamId::Hm(r / 4 + 1, r % 4 + 1)
            }
            33..=38 => {
                let (i, j) = G_PAIRS[idx - 33];
                ParamId::G(i, j)
            }
            39..=41 => ParamId::Xi(idx as u8 - 38),
            _ => panic!("parameter index {idx} out of range"),
        }
    }

    pub fn all() -> impl Iterator<Item = ParamId> {
        (0..NUM_PARAMS).map(ParamId::from_index)
    }

    pub fn is_xi(self) -> bool {
        matches!(self, ParamId::Xi(_))
    }

    pub fn name(self) -> String {
        match self {
            ParamId::V(j) => format!("v{j}"),
            ParamId::W(j) => format!("w{j}"),
            ParamId::Dv(j) => format!("Dv{j}"),
            ParamId::Dw(j) => format!("Dw{j}"),
            ParamId::H => "h".to_string(),
            ParamId::Hm(j, k) => format!("H{j}{k}"),
            ParamId::G(i, j) => format!("G{i}{j}"),
            ParamId::Xi(t) => format!("xi{t}"),
        }
    }
}

const G_PAIRS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn g_pair_index(i: u8, j: u8) -> usize {
    G_PAIRS
        .iter()
        .position(|&p| p == (i, j))
        .unwrap_or_else(|| panic!("G({i},{j}) is not in normal form"))
}

/// Exponent vector over all parameters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial([u8; NUM_PARAMS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NUM_PARAMS])
    }

    pub fn var(p: ParamId) -> Self {
        let mut m = Self::one();
        m.0[p.index()] = 1;
        m
    }

    pub fn exponent(&self, p: ParamId) -> u8 {
        self.0[p.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; NUM_PARAMS];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.0[k] + other.0[k];
        }
        Monomial(out)
    }

    pub fn with_exponent(&self, p: ParamId, e: u8) -> Monomial {
        let mut m = *self;
        m.0[p.index()] = e;
        m
    }

    pub fn factors(&self) -> impl Iterator<Item = (ParamId, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| (ParamId::from_index(k), e))
    }

    /// The monomial with every `xi_t` exponent removed.
    pub fn strip_xi(&self) -> (Monomial, [u8; 3]) {
        let mut m = *self;
        let mut xi = [0u8; 3];
        for t in 1..=3u8 {
            let idx = ParamId::Xi(t).index();
            xi[t as usize - 1] = m.0[idx];
            m.0[idx] = 0;
        }
        (m, xi)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors()
            .map(|(p, e)| {
                if e == 1 {
                    p.name()
                } else {
                    format!("{}^{e}", p.name())
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial in canonical form: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FormalPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl FormalPoly {
    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::constant(GaussianRational::from_frac(n, d))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn var(p: ParamId) -> Self {
        if let ParamId::G(i, j) = p {
            return Self::g(i, j);
        }
        let mut out = Self::default();
        out.terms.insert(Monomial::var(p), GaussianRational::one());
        out
    }

    /// `G_ij` with the antisymmetry `G_ji = -G_ij`, `G_ii = 0` applied.
    pub fn g(i: u8, j: u8) -> Self {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => Self::zero(),
            Ordering::Less => {
                let mut out = Self::default();
                out.terms
                    .insert(Monomial::var(ParamId::G(i, j)), GaussianRational::one());
                out
            }
            Ordering::Greater => -Self::g(j, i),
        }
    }

    pub fn v(j: u8) -> Self {
        Self::var(ParamId::V(j))
    }
    pub fn w(j: u8) -> Self {
        Self::var(ParamId::W(j))
    }
    pub fn dv(j: u8) -> Self {
        Self::var(ParamId::Dv(j))
    }
    pub fn dw(j: u8) -> Self {
        Self::var(ParamId::Dw(j))
    }
    pub fn h() -> Self {
        Self::var(ParamId::H)
    }
    pub fn hm(j: u8, k: u8) -> Self {
        Self::var(ParamId::Hm(j, k))
    }
    pub fn xi(t: u8) -> Self {
        Self::var(ParamId::Xi(t))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(it: I) -> Self {
        let mut p = Self::default();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussianRational::real(r.clone()))
    }

    pub fn contains(&self, p: ParamId) -> bool {
        self.terms.keys().any(|m| m.exponent(p) > 0)
    }

    pub fn params(&self) -> Vec<ParamId> {
        ParamId::all().filter(|&p| self.contains(p)).collect()
    }

    /// Partial derivative with respect to one parameter.
    pub fn derivative(&self, p: ParamId) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let e = m.exponent(p);
            if e == 0 {
                continue;
            }
            out.add_term(
                m.with_exponent(p, e - 1),
                c.scale(&Rational::from_integer(e.into())),
            );
        }
        out
    }

    /// Substitute exact values for some parameters.
    pub fn substitute(&self, values: &dyn Fn(ParamId) -> Option<GaussianRational>) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Monomial::one();
            for (p, e) in m.factors() {
                match values(p) {
                    Some(val) => coeff = &coeff * &val.pow(e as u32),
                    None => rest = rest.mul(&Monomial::var(p).pow(e)),
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Canonical representative modulo `xi_1^2 + xi_2^2 + xi_3^2 = 1`:
    /// every `xi_3^2` is rewritten as `1 - xi_1^2 - xi_2^2`.
    pub fn reduce_sphere(&self) -> Self {
        let x3 = ParamId::Xi(3);
        let mut work: Vec<(Monomial, GaussianRational)> =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let mut out = Self::default();
        while let Some((m, c)) = work.pop() {
            let e = m.exponent(x3);
            if e < 2 {
                out.add_term(m, c);
                continue;
            }
            let base = m.with_exponent(x3, e - 2);
            work.push((base, c.clone()));
            for t in 1..=2u8 {
                let xt = ParamId::Xi(t);
                let mm = base.with_exponent(xt, base.exponent(xt) + 2);
                work.push((mm, -c.clone()));
            }
        }
        out
    }

    /// Group terms by their `xi` exponents: `sum_k xi^(k) * coeff_k`.
    pub fn split_xi(&self) -> BTreeMap<[u8; 3], FormalPoly> {
        let mut out: BTreeMap<[u8; 3], FormalPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, xi) = m.strip_xi();
            out.entry(xi).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn eval_complex(&self, values: &dyn Fn(ParamId) -> num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (p, e) in m.factors() {
                t *= values(p).powu(e as u32);
            }
            acc += t;
        }
        acc
    }
}

impl Monomial {
    pub fn pow(&self, e: u8) -> Monomial {
        let mut out = [0u8; NUM_PARAMS];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.0[k] * e;
        }
        Monomial(out)
    }
}

impl Zero for FormalPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for FormalPoly {
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
}

impl From<GaussianRational> for FormalPoly {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a FormalPoly> for &'a FormalPoly {
    type Output = FormalPoly;
    fn add(self, rhs: &FormalPoly) -> FormalPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for FormalPoly {
    type Output = FormalPoly;
    fn add(mut self, rhs: FormalPoly) -> FormalPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Sub<&'a FormalPoly> for &'a FormalPoly {
    type Output = FormalPoly;
    fn sub(self, rhs: &FormalPoly) -> FormalPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for FormalPoly {
    type Output = FormalPoly;
    fn sub(self, rhs: FormalPoly) -> FormalPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a FormalPoly> for &'a FormalPoly {
    type Output = FormalPoly;
    fn mul(self, rhs: &FormalPoly) -> FormalPoly {
        let mut out = FormalPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for FormalPoly {
    type Output = FormalPoly;
    fn mul(self, rhs: FormalPoly) -> FormalPoly {
        &self * &rhs
    }
}

impl Neg for FormalPoly {
    type Output = FormalPoly;
    fn neg(self) -> FormalPoly {
        FormalPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &FormalPoly {
    type Output = FormalPoly;
    fn neg(self) -> FormalPoly {
        -(self.clone())
    }
}

impl fmt::Debug for FormalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FormalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial carrying an overall power of pi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiPoly {
    pub poly: FormalPoly,
    pub pi_power: u32,
}

impl PiPoly {
    pub fn new(poly: FormalPoly, pi_power: u32) -> Self {
        Self { poly, pi_power }
    }

    pub fn zero(pi_power: u32) -> Self {
        Self::new(FormalPoly::zero(), pi_power)
    }

    pub fn checked_add(&self, rhs: &PiPoly) -> crate::error::Result<PiPoly> {
        if rhs.poly.is_zero() {
            return Ok(self.clone());
        }
        if self.poly.is_zero() {
            return Ok(rhs.clone());
        }
        if self.pi_power != rhs.pi_power {
            return Err(crate::error::Error::PiPowerMismatch {
                left: self.pi_power,
                right: rhs.pi_power,
            });
        }
        Ok(PiPoly::new(&self.poly + &rhs.poly, self.pi_power))
    }

    pub fn scale(&self, s: &crate::scalar::PiScalar) -> PiPoly {
        PiPoly::new(self.poly.scale(&s.coeff), self.pi_power + s.pi_power)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_index_round_trip() {
        for k in 0..NUM_PARAMS {
            assert_eq!(ParamId::from_index(k).index(), k);
        }
    }

    #[test]
    fn g_antisymmetry() {
        assert!((FormalPoly::g(1, 2) + FormalPoly::g(2, 1)).is_zero());
        assert!(FormalPoly::g(3, 3).is_zero());
        assert_eq!(FormalPoly::var(ParamId::G(4, 1)), -FormalPoly::g(1, 4));
    }

    #[test]
    fn product_is_commutative_on_monomials() {
        let a = FormalPoly::v(1) * FormalPoly::w(1);
        let b = &a * &FormalPoly::h();
        let c = FormalPoly::h() * FormalPoly::w(1) * FormalPoly::v(1);
        assert_eq!(b, c);
        assert_eq!(b.to_string(), "v1*w1*h");
    }

    #[test]
    fn leibniz_expansion_of_normal_derivative() {
        // D(v1 w1) expands to Dv1 w1 + v1 Dw1 under the jet product rule.
        let d = FormalPoly::dv(1) * FormalPoly::w(1) + FormalPoly::v(1) * FormalPoly::dw(1);
        assert_eq!(d.num_terms(), 2);
        assert_eq!(
            d.coeff(&Monomial::var(ParamId::Dv(1)).mul(&Monomial::var(ParamId::W(1)))),
            GaussianRational::one()
        );
    }

    #[test]
    fn sphere_reduction() {
        let s = FormalPoly::xi(1) * FormalPoly::xi(1)
            + FormalPoly::xi(2) * FormalPoly::xi(2)
            + FormalPoly::xi(3) * FormalPoly::xi(3);
        assert_eq!(s.reduce_sphere(), FormalPoly::one());
        let x3_4 = FormalPoly::xi(3) * FormalPoly::xi(3) * FormalPoly::xi(3) * FormalPoly::xi(3);
        let r = x3_4.reduce_sphere();
        assert!(!r.contains(ParamId::Xi(3)));
    }

    #[test]
    fn derivative_and_substitution() {
        let p = FormalPoly::xi(1) * FormalPoly::xi(1) * FormalPoly::v(2);
        assert_eq!(
            p.derivative(ParamId::Xi(1)),
            FormalPoly::xi(1) * FormalPoly::v(2) * FormalPoly::from_int(2)
        );
        let q = p.substitute(&|id| match id {
            ParamId::Xi(1) => Some(GaussianRational::from_int(3)),
            _ => None,
        });
        assert_eq!(q, FormalPoly::v(2) * FormalPoly::from_int(9));
    }
}
