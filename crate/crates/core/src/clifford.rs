//! The actions `c(e_j) = eps - iota` and `chat(e_j) = eps + iota` on the
//! exterior algebra of R^4, as explicit 16x16 matrices.
//!
//! Basis vectors are subsets of {1,2,3,4} encoded as bitmasks (bit `j-1`
//! for `e_j`) in binary-counter order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::{FormalPoly, DIM};
use crate::xi::XiRational;

pub const SIZE: usize = 1 << DIM;

#[derive(Clone, PartialEq)]
pub struct CliffordMatrix {
    entries: Vec<XiRational>,
}

/// Sign of moving `e_j` past the elements of `set` smaller than `j`.
fn sort_sign(set: usize, bit: usize) -> i64 {
    if (set & ((1 << bit) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

impl CliffordMatrix {
    pub fn zero() -> Self {
        Self {
            entries: vec![XiRational::zero(); SIZE * SIZE],
        }
    }

    pub fn identity() -> Self {
        Self::scalar(XiRational::one())
    }

    pub fn scalar(x: XiRational) -> Self {
        let mut m = Self::zero();
        if !x.is_zero() {
            for k in 0..SIZE {
                m.set(k, k, x.clone());
            }
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> &XiRational {
        &self.entries[row * SIZE + col]
    }

    pub fn set(&mut self, row: usize, col: usize, x: XiRational) {
        self.entries[row * SIZE + col] = x;
    }

    /// Exterior multiplication by `e_j`, `j` in 1..=4.
    pub fn epsilon(j: u8) -> Self {
        let bit = j as usize - 1;
        let mut m = Self::zero();
        for s in 0..SIZE {
            if s & (1 << bit) == 0 {
                m.set(s | (1 << bit), s, XiRational::from_int(sort_sign(s, bit)));
            }
        }
        m
    }

    /// Interior contraction by `e_j`.
    pub fn iota(j: u8) -> Self {
        let bit = j as usize - 1;
        let mut m = Self::zero();
        for s in 0..SIZE {
            if s & (1 << bit) != 0 {
                m.set(s & !(1 << bit), s, XiRational::from_int(sort_sign(s, bit)));
            }
        }
        m
    }

    pub fn c(j: u8) -> Self {
        &Self::epsilon(j) - &Self::iota(j)
    }

    pub fn chat(j: u8) -> Self {
        &Self::epsilon(j) + &Self::iota(j)
    }

    /// `sum_j coeffs[j] c(e_{j+1})`.
    pub fn of_covector(coeffs: &[XiRational; DIM]) -> Self {
        let mut out = Self::zero();
        for (j, x) in coeffs.iter().enumerate() {
            if !x.is_zero() {
                out = &out + &Self::c(j as u8 + 1).scale(x);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, x: &XiRational) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|e| if e.is_zero() { XiRational::zero() } else { e * x })
                .collect(),
        }
    }

    pub fn scale_poly(&self, p: &FormalPoly) -> Self {
        self.scale(&XiRational::constant(p.clone()))
    }

    pub fn map_entries(&self, f: impl Fn(&XiRational) -> XiRational) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|e| if e.is_zero() { XiRational::zero() } else { f(e) })
                .collect(),
        }
    }

    pub fn derivative_xi(&self) -> Self {
        self.map_entries(|e| e.derivative())
    }

    pub fn pi_plus(&self) -> Self {
        self.map_entries(|e| e.pi_plus())
    }

    /// Apply the `|xi'| = 1` normalization to every coefficient.
    pub fn reduce_sphere(&self) -> Self {
        self.map_entries(|e| e.map_coeffs(|c| c.reduce_sphere()))
    }

    pub fn trace(&self) -> XiRational {
        let mut acc = XiRational::zero();
        for k in 0..SIZE {
            acc = &acc + self.get(k, k);
        }
        acc
    }

    /// `trace(self * rhs)` without forming the product.
    pub fn trace_of_product(&self, rhs: &Self) -> XiRational {
        let mut acc = XiRational::zero();
        for i in 0..SIZE {
            for k in 0..SIZE {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, i);
                if !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
        }
        acc
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &XiRational)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(k, e)| (k / SIZE, k % SIZE, e))
    }
}

impl<'a> Add<&'a CliffordMatrix> for &'a CliffordMatrix {
    type Output = CliffordMatrix;
    fn add(self, rhs: &CliffordMatrix) -> CliffordMatrix {
        CliffordMatrix {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CliffordMatrix> for &'a CliffordMatrix {
    type Output = CliffordMatrix;
    fn sub(self, rhs: &CliffordMatrix) -> CliffordMatrix {
        CliffordMatrix {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CliffordMatrix> for &'a CliffordMatrix {
    type Output = CliffordMatrix;
    fn mul(self, rhs: &CliffordMatrix) -> CliffordMatrix {
        // Row sparsity of the right factor, computed once.
        let rows: Vec<Vec<usize>> = (0..SIZE)
            .map(|k| (0..SIZE).filter(|&j| !rhs.get(k, j).is_zero()).collect())
            .collect();
        let mut out = CliffordMatrix::zero();
        for i in 0..SIZE {
            for k in 0..SIZE {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &rows[k] {
                    let prod = a * rhs.get(k, j);
                    let slot = &mut out.entries[i * SIZE + j];
                    *slot = &*slot + &prod;
                }
            }
        }
        out
    }
}

impl Add for CliffordMatrix {
    type Output = CliffordMatrix;
    fn add(self, rhs: CliffordMatrix) -> CliffordMatrix {
        &self + &rhs
    }
}

impl Sub for CliffordMatrix {
    type Output = CliffordMatrix;
    fn sub(self, rhs: CliffordMatrix) -> CliffordMatrix {
        &self - &rhs
    }
}

impl Mul for CliffordMatrix {
    type Output = CliffordMatrix;
    fn mul(self, rhs: CliffordMatrix) -> CliffordMatrix {
        &self * &rhs
    }
}

impl Neg for &CliffordMatrix {
    type Output = CliffordMatrix;
    fn neg(self) -> CliffordMatrix {
        self.map_entries(|e| -e)
    }
}

impl Neg for CliffordMatrix {
    type Output = CliffordMatrix;
    fn neg(self) -> CliffordMatrix {
        -&self
    }
}

impl fmt::Debug for CliffordMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordMatrix[")?;
        for (r, c, e) in self.entries() {
            write!(f, " ({r},{c}): {e};")?;
        }
        write!(f, " ]")
    }
}
