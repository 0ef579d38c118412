//! Exact scalars: rationals, Gaussian rationals and pi-graded constants.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse an exact fraction such as `-44/3`, `7` or `−8/3` (unicode minus).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-').or_else(|| s.strip_prefix('\u{2212}')) {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let bad = || Error::Parse(format!("not an exact fraction: {s:?}"));
    let digits = |t: &str| -> Result<BigInt> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (digits(n)?, digits(d)?),
        None => (digits(body)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Render as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element `re + im·i` of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    pub fn i() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    /// `i^k` for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        num_complex::Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::real(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -(self.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{}i", format_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}i",
                    format_rational(&self.re),
                    sign,
                    format_rational(&self.im.abs())
                )
            }
        }
    }
}

/// A Gaussian-rational coefficient times a power of pi.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiScalar {
    pub coeff: GaussianRational,
    pub pi_power: u32,
}

impl PiScalar {
    pub fn new(coeff: GaussianRational, pi_power: u32) -> Self {
        Self { coeff, pi_power }
    }

    pub fn rational(n: i64, d: i64, pi_power: u32) -> Self {
        Self::new(GaussianRational::from_frac(n, d), pi_power)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.coeff.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.coeff.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_power != rhs.pi_power {
            return Err(Error::PiPowerMismatch {
                left: self.pi_power,
                right: rhs.pi_power,
            });
        }
        Ok(Self::new(&self.coeff + &rhs.coeff, self.pi_power))
    }

    pub fn scale(&self, t: &PiScalar) -> Self {
        Self::new(&self.coeff * &t.coeff, self.pi_power + t.pi_power)
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        self.coeff.to_complex() * std::f64::consts::PI.powi(self.pi_power as i32)
    }
}

impl Mul for PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: PiScalar) -> PiScalar {
        self.scale(&rhs)
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "({})·π", self.coeff),
            p => write!(f, "({})·π^{}", self.coeff, p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn norm_identity() {
        let a = g((1, 2), (1, 1));
        let b = g((1, 2), (-1, 1));
        assert_eq!(&a * &b, GaussianRational::from_frac(5, 4));
    }

    #[test]
    fn one_over_i() {
        let q = GaussianRational::one()
            .checked_div(&GaussianRational::i())
            .unwrap();
        assert_eq!(q, -GaussianRational::i());
    }

    #[test]
    fn thirds_sum_to_one() {
        let s = GaussianRational::from_frac(2, 3) + GaussianRational::from_frac(1, 3);
        assert!(s.is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let r = GaussianRational::one().checked_div(&GaussianRational::zero());
        assert_eq!(r, Err(Error::DivisionByZero));
    }

    #[test]
    fn pi_scaling() {
        let a = PiScalar::rational(2, 1, 1);
        let b = PiScalar::rational(1, 8, 1);
        assert_eq!(a * b, PiScalar::rational(1, 4, 2));
        let one = PiScalar::rational(1, 1, 0);
        assert_eq!(one * PiScalar::rational(4, 1, 1), PiScalar::rational(4, 1, 1));
        let assembled = PiScalar::rational(-1, 2, 0)
            .scale(&PiScalar::rational(1, 8, 1))
            .scale(&PiScalar::rational(64, 1, 0));
        assert_eq!(assembled, PiScalar::rational(-4, 1, 1));
    }

    #[test]
    fn mixed_pi_powers_do_not_add() {
        let e = PiScalar::rational(1, 1, 1).checked_add(&PiScalar::rational(1, 1, 2));
        assert_eq!(e, Err(Error::PiPowerMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-44/3").unwrap(), rat(-44, 3));
        assert_eq!(parse_rational("\u{2212}8/3").unwrap(), rat(-8, 3));
        assert_eq!(parse_rational("6").unwrap(), int(6));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("--1").is_err());
        assert_eq!(format_rational(&rat(-88, 9)), "-88/9");
        assert_eq!(format_rational(&int(8)), "8");
    }

    #[test]
    fn display() {
        assert_eq!(g((1, 2), (-3, 4)).to_string(), "1/2-3/4i");
        assert_eq!(GaussianRational::i().to_string(), "1i");
    }
}
