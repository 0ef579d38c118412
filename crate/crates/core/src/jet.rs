//! First-order `x_n`-jets at the boundary point.

use crate::clifford::CliffordMatrix;
use crate::xi::XiRational;
use num_traits::Zero;

/// Minimal ring interface shared by the jet payload types.
pub trait JetRing: Clone {
    fn zero_like() -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl JetRing for XiRational {
    fn zero_like() -> Self {
        XiRational::zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl JetRing for CliffordMatrix {
    fn zero_like() -> Self {
        CliffordMatrix::zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// A value together with its first normal derivative `d/dx_n` at `x_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T> {
    pub value: T,
    pub dxn: T,
}

impl<T: JetRing> Jet<T> {
    pub fn new(value: T, dxn: T) -> Self {
        Self { value, dxn }
    }

    /// A quantity that does not vary in `x_n`.
    pub fn constant(value: T) -> Self {
        Self {
            value,
            dxn: T::zero_like(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(T::zero_like())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.value.add_ref(&other.value), self.dxn.add_ref(&other.dxn))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.value.sub_ref(&other.value), self.dxn.sub_ref(&other.dxn))
    }

    /// Leibniz rule truncated at first order.
    pub fn mul(&self, other: &Self) -> Self {
        let dxn = self
            .dxn
            .mul_ref(&other.value)
            .add_ref(&self.value.mul_ref(&other.dxn));
        Self::new(self.value.mul_ref(&other.value), dxn)
    }

    /// Apply an `x_n`-independent linear map to both components.
    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Self::new(f(&self.value), f(&self.dxn))
    }
}

impl Jet<CliffordMatrix> {
    pub fn scale_jet(&self, s: &Jet<XiRational>) -> Self {
        let dxn = &self.dxn.scale(&s.value) + &self.value.scale(&s.dxn);
        Self::new(self.value.scale(&s.value), dxn)
    }

    pub fn derivative_xi(&self) -> Self {
        self.map(|m| m.derivative_xi())
    }
}

impl Jet<XiRational> {
    pub fn derivative_xi(&self) -> Self {
        self.map(|f| f.derivative())
    }
}
