//! Symbols at the boundary point `x_0`, restricted to `|xi'| = 1`.
//!
//! Tangential covector components `xi_1..xi_3` stay formal parameters; the
//! normal component `xi_n` is the variable of [`XiRational`]. Every symbol
//! carries at most one normal derivative (a [`Jet`]); tangential
//! derivatives of metric-derived quantities vanish at `x_0`.

use num_traits::{One, Zero};

use crate::clifford::CliffordMatrix;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly::{FormalPoly, DIM};
use crate::scalar::GaussianRational;
use crate::xi::XiRational;

fn xr(p: FormalPoly) -> XiRational {
    XiRational::constant(p)
}

fn frac(n: i64, d: i64) -> FormalPoly {
    FormalPoly::from_frac(n, d)
}

fn c(j: u8) -> CliffordMatrix {
    CliffordMatrix::c(j)
}

fn ch(j: u8) -> CliffordMatrix {
    CliffordMatrix::chat(j)
}

/// A homogeneous symbol component with its optional normal derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSymbol {
    pub name: String,
    pub order: i32,
    pub value: CliffordMatrix,
    pub dxn: Option<CliffordMatrix>,
}

impl GradedSymbol {
    pub fn from_jet(name: impl Into<String>, order: i32, jet: Jet<CliffordMatrix>) -> Self {
        Self {
            name: name.into(),
            order,
            value: jet.value,
            dxn: Some(jet.dxn),
        }
    }

    /// A symbol whose normal derivative is not modelled.
    pub fn value_only(name: impl Into<String>, order: i32, value: CliffordMatrix) -> Self {
        Self {
            name: name.into(),
            order,
            value,
            dxn: None,
        }
    }

    pub fn dxn(&self) -> Result<&CliffordMatrix> {
        self.dxn.as_ref().ok_or(Error::MissingJet { order: self.order })
    }

    pub fn jet(&self) -> Result<Jet<CliffordMatrix>> {
        Ok(Jet::new(self.value.clone(), self.dxn()?.clone()))
    }

    /// Left-multiply by an `x_n`-jet of matrices (order 0 prefactor).
    pub fn premul(&self, name: impl Into<String>, m: &Jet<CliffordMatrix>) -> Self {
        let value = &m.value * &self.value;
        let dxn = self
            .dxn
            .as_ref()
            .map(|d| &(&m.dxn * &self.value) + &(&m.value * d));
        Self {
            name: name.into(),
            order: self.order,
            value,
            dxn,
        }
    }

    pub fn add(&self, name: impl Into<String>, other: &Self) -> Self {
        let dxn = match (&self.dxn, &other.dxn) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self {
            name: name.into(),
            order: self.order,
            value: &self.value + &other.value,
            dxn,
        }
    }
}

/// One summand of a composed symbol, tagged by its origin.
#[derive(Clone, Debug)]
pub struct ComposePiece {
    pub left_order: i32,
    pub right_order: i32,
    /// True for the `d_{xi_n} p * D_{x_n} q` term.
    pub derivative: bool,
    pub value: CliffordMatrix,
}

#[derive(Clone, Debug)]
pub struct Composed {
    pub symbol: GradedSymbol,
    pub pieces: Vec<ComposePiece>,
}

/// Component of order `target` of `sigma(P Q)` at `x_0`:
/// `sum p_r q_l` over `r + l = target` plus `d_{xi_n} p_r (-i d_{x_n}) q_l`
/// over `r + l - 1 = target`. The normal derivative of the result is kept
/// only when no derivative term contributes.
pub fn compose(left: &[GradedSymbol], right: &[GradedSymbol], target: i32) -> Result<Composed> {
    let order_range = |s: &[GradedSymbol]| -> Result<(i32, i32)> {
        let max = s.iter().map(|g| g.order).max();
        let min = s.iter().map(|g| g.order).min();
        match (min, max) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::InsufficientDepth {
                target,
                reason: "empty symbol expansion".into(),
            }),
        }
    };
    let (lmin, lmax) = order_range(left)?;
    let (rmin, rmax) = order_range(right)?;
    if target < lmax + rmin {
        return Err(Error::InsufficientDepth {
            target,
            reason: format!("right factor expanded only down to order {rmin}"),
        });
    }
    if target < lmin + rmax {
        return Err(Error::InsufficientDepth {
            target,
            reason: format!("left factor expanded only down to order {lmin}"),
        });
    }
    let mut pieces = Vec::new();
    let mut value = CliffordMatrix::zero();
    let mut dxn = Some(CliffordMatrix::zero());
    for p in left {
        for q in right {
            if p.order + q.order == target {
                let v = &p.value * &q.value;
                value = &value + &v;
                dxn = match (dxn, p.dxn.as_ref(), q.dxn.as_ref()) {
                    (Some(acc), Some(pd), Some(qd)) => {
                        Some(&(&acc + &(pd * &q.value)) + &(&p.value * qd))
                    }
                    _ => None,
                };
                pieces.push(ComposePiece {
                    left_order: p.order,
                    right_order: q.order,
                    derivative: false,
                    value: v,
                });
            }
        }
    }
    for p in left {
        for q in right {
            if p.order + q.order - 1 != target {
                continue;
            }
            let dp = p.value.derivative_xi();
            if dp.is_zero() {
                continue;
            }
            let dq = q.dxn()?;
            let v = (&dp * dq).scale(&xr(FormalPoly::i().scale(&GaussianRational::from_int(-1))));
            value = &value + &v;
            dxn = None;
            pieces.push(ComposePiece {
                left_order: p.order,
                right_order: q.order,
                derivative: true,
                value: v,
            });
        }
    }
    let name = format!(
        "({})o({})",
        left.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join("+"),
        right.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join("+")
    );
    Ok(Composed {
        symbol: GradedSymbol {
            name,
            order: target,
            value,
            dxn,
        },
        pieces,
    })
}

/// Christoffel and connection data of the collar metric at `x_0`.
#[derive(Clone, Debug)]
pub struct ConnectionConstants {
    /// `Gamma^k = g^{ij} Gamma_ij^k`, `k = 1..4`.
    pub gamma: [FormalPoly; DIM],
    /// Nonzero `omega_{s,t}(e_i)` as `((s, t, i), value)`.
    pub omega: Vec<((u8, u8, u8), FormalPoly)>,
}

impl ConnectionConstants {
    /// The constants used throughout the boundary computation:
    /// `Gamma^n = 5/2 h`, `omega_{k,n}(e_k) = -h/2`.
    pub fn standard() -> Self {
        let h = FormalPoly::h();
        let mut omega = Vec::new();
        for k in 1..DIM as u8 {
            omega.push(((k, 4, k), h.scale(&GaussianRational::from_frac(-1, 2))));
            omega.push(((4, k, k), h.scale(&GaussianRational::from_frac(1, 2))));
        }
        Self {
            gamma: [
                FormalPoly::zero(),
                FormalPoly::zero(),
                FormalPoly::zero(),
                h.scale(&GaussianRational::from_frac(5, 2)),
            ],
            omega,
        }
    }

    pub fn omega(&self, s: u8, t: u8, i: u8) -> FormalPoly {
        self.omega
            .iter()
            .find(|(key, _)| *key == (s, t, i))
            .map(|(_, v)| v.clone())
            .unwrap_or_default()
    }

    /// `sigma_i = -1/4 sum omega_{s,t}(e_i) c_s c_t`.
    pub fn sigma(&self, i: u8) -> CliffordMatrix {
        let mut out = CliffordMatrix::zero();
        for ((s, t, k), w) in &self.omega {
            if *k == i {
                out = &out + &(&c(*s) * &c(*t)).scale_poly(&w.scale(&GaussianRational::from_frac(-1, 4)));
            }
        }
        out
    }

    /// `a_i = 1/4 sum omega_{s,t}(e_i) chat_s chat_t`.
    pub fn a(&self, i: u8) -> CliffordMatrix {
        let mut out = CliffordMatrix::zero();
        for ((s, t, k), w) in &self.omega {
            if *k == i {
                out = &out + &(&ch(*s) * &ch(*t)).scale_poly(&w.scale(&GaussianRational::from_frac(1, 4)));
            }
        }
        out
    }

    /// `Q_0^1 = 1/4 sum omega_{s,t}(e_i) c_i chat_s chat_t`.
    pub fn q0_1(&self) -> CliffordMatrix {
        let mut out = CliffordMatrix::zero();
        for ((s, t, i), w) in &self.omega {
            let m = &(&c(*i) * &ch(*s)) * &ch(*t);
            out = &out + &m.scale_poly(&w.scale(&GaussianRational::from_frac(1, 4)));
        }
        out
    }

    /// `Q_0^2 = -1/4 sum omega_{s,t}(e_i) c_i c_s c_t`.
    pub fn q0_2(&self) -> CliffordMatrix {
        let mut out = CliffordMatrix::zero();
        for ((s, t, i), w) in &self.omega {
            let m = &(&c(*i) * &c(*s)) * &c(*t);
            out = &out + &m.scale_poly(&w.scale(&GaussianRational::from_frac(-1, 4)));
        }
        out
    }

    /// `sigma_0(D) = Q_0^1 + Q_0^2` at `x_0`.
    pub fn sigma0_d(&self) -> CliffordMatrix {
        &self.q0_1() + &self.q0_2()
    }
}

/// Christoffel symbols `Gamma_ij^k` at `x_0` of the collar metric
/// `g = g_boundary / h(x_n) + dx_n^2` with flat boundary metric at `x_0`,
/// `h(0) = 1` and `h'(0) = h`. Indices are 0-based here.
pub fn collar_christoffel() -> [[[FormalPoly; DIM]; DIM]; DIM] {
    // Only d_n g_aa = -h (a tangential) is nonzero; g = Id at x_0.
    let dg = |l: usize, i: usize, j: usize| -> FormalPoly {
        if l == DIM - 1 && i == j && i < DIM - 1 {
            -FormalPoly::h()
        } else {
            FormalPoly::zero()
        }
    };
    let mut out: [[[FormalPoly; DIM]; DIM]; DIM] = Default::default();
    for (k, plane) in out.iter_mut().enumerate() {
        for (i, row) in plane.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let s = &(&dg(i, j, k) + &dg(j, i, k)) - &dg(k, i, j);
                *slot = s.scale(&GaussianRational::from_frac(1, 2));
            }
        }
    }
    out
}

/// Independent derivation of the connection data from [`collar_christoffel`]
/// with the orthonormal frame `e_t = sqrt(h) d_t` (tangential), `e_n = d_n`.
pub fn christoffel_oracle() -> ConnectionConstants {
    let gam = collar_christoffel();
    let half_h = FormalPoly::h().scale(&GaussianRational::from_frac(1, 2));
    let mut gamma: [FormalPoly; DIM] = Default::default();
    for (k, g) in gamma.iter_mut().enumerate() {
        for i in 0..DIM {
            *g = &*g + &gam[k][i][i];
        }
    }
    let mut omega = Vec::new();
    for i in 0..DIM {
        for t in 0..DIM {
            for s in 0..DIM {
                let mut val = gam[s][i][t].clone();
                // e_i(sqrt h) d_t contributes only along the normal.
                if i == DIM - 1 && s == t && t < DIM - 1 {
                    val = &val + &half_h;
                }
                if !val.is_zero() {
                    omega.push(((s as u8 + 1, t as u8 + 1, i as u8 + 1), val));
                }
            }
        }
    }
    ConnectionConstants { gamma, omega }
}

/// Normal-derivative rules at `x_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DxnTarget {
    NormSq,
    CXiPrime,
}

/// `d_{x_j}` of `|xi|^2` (as a scalar) for `j = 1..4`, at `|xi'| = 1`.
pub fn dx_norm_sq(j: u8) -> FormalPoly {
    if j as usize == DIM {
        FormalPoly::h()
    } else {
        FormalPoly::zero()
    }
}

/// Multiplier `m` with `d_{x_j} c(xi') = m c(xi')`.
pub fn dx_c_xi_prime_factor(j: u8) -> FormalPoly {
    if j as usize == DIM {
        FormalPoly::h().scale(&GaussianRational::from_frac(1, 2))
    } else {
        FormalPoly::zero()
    }
}

/// All symbols needed by the boundary cases, built once.
#[derive(Clone, Debug)]
pub struct SymbolLibrary {
    pub constants: ConnectionConstants,
    pub c4: CliffordMatrix,
    pub c_xi_prime: Jet<CliffordMatrix>,
    pub c_xi: Jet<CliffordMatrix>,
    pub inv_norm: Jet<XiRational>,
    pub p1: GradedSymbol,
    pub p0: GradedSymbol,
    pub q_m1: GradedSymbol,
    pub q_m2: GradedSymbol,
    pub s_m2: GradedSymbol,
    pub s_m3: GradedSymbol,
    pub nabla1: GradedSymbol,
    pub nabla0: GradedSymbol,
    pub k0: CliffordMatrix,
    pub c_w: Jet<CliffordMatrix>,
}

impl Default for SymbolLibrary {
    fn default() -> Self {
        Self::new(ConnectionConstants::standard())
    }
}

impl SymbolLibrary {
    pub fn new(constants: ConnectionConstants) -> Self {
        let c4 = c(4);
        let mut cxp = CliffordMatrix::zero();
        for t in 1..DIM as u8 {
            cxp = &cxp + &c(t).scale_poly(&FormalPoly::xi(t));
        }
        let c_xi_prime = Jet::new(cxp.clone(), cxp.scale_poly(&dx_c_xi_prime_factor(4)));
        let c_xi = c_xi_prime.add(&Jet::constant(c4.scale(&XiRational::xi_n())));
        let inv_norm = Jet::new(
            XiRational::inv_norm_pow(1),
            XiRational::inv_norm_pow(2).scale(&-dx_norm_sq(4)),
        );
        let i = xr(FormalPoly::i());
        let p1 = GradedSymbol::from_jet("sigma_1(D)", 1, c_xi.map(|m| m.scale(&i)));
        let p0 = GradedSymbol::value_only("sigma_0(D)", 0, constants.sigma0_d());
        let q_m1_jet = c_xi.map(|m| m.scale(&i)).scale_jet(&inv_norm);
        let q_m1 = GradedSymbol::from_jet("sigma_-1(D^-1)", -1, q_m1_jet);
        let q_m2 = GradedSymbol::value_only(
            "sigma_-2(D^-1)",
            -2,
            inverse_recursion(&q_m1, &p0, &p1).expect("first-order jets are present"),
        );
        let s_m2 = GradedSymbol::from_jet(
            "sigma_-2(D^-2)",
            -2,
            Jet::new(
                CliffordMatrix::scalar(inv_norm.value.clone()),
                CliffordMatrix::scalar(inv_norm.dxn.clone()),
            ),
        );
        let s_m3 = GradedSymbol::value_only("sigma_-3(D^-2)", -3, sigma_m3_dsq(&constants));

        let mut sig1 = XiRational::xi_n().scale(&FormalPoly::v(4));
        let mut dsig1 = XiRational::xi_n().scale(&FormalPoly::dv(4));
        for j in 1..DIM as u8 {
            sig1 = &sig1 + &xr(FormalPoly::v(j) * FormalPoly::xi(j));
            dsig1 = &dsig1 + &xr(FormalPoly::dv(j) * FormalPoly::xi(j));
        }
        let nabla1 = GradedSymbol::from_jet(
            "sigma_1(nabla_v)",
            1,
            Jet::new(
                CliffordMatrix::scalar(&sig1 * &i),
                CliffordMatrix::scalar(&dsig1 * &i),
            ),
        );
        let nabla0 = GradedSymbol::value_only("sigma_0(nabla_v)", 0, a_of_v());

        let mut cw = CliffordMatrix::zero();
        let mut dcw = CliffordMatrix::zero();
        for j in 1..=DIM as u8 {
            cw = &cw + &c(j).scale_poly(&FormalPoly::w(j));
            dcw = &dcw + &c(j).scale_poly(&FormalPoly::dw(j));
        }
        let c_w = Jet::new(cw, dcw);
        let k0 = k0_prefactor(&c_w.value);
        Self {
            constants,
            c4,
            c_xi_prime,
            c_xi,
            inv_norm,
            p1,
            p0,
            q_m1,
            q_m2,
            s_m2,
            s_m3,
            nabla1,
            nabla0,
            k0,
            c_w,
        }
    }

    /// `sigma_{-1}` or `sigma_{-2}` of `D^{-1}`.
    pub fn sigma_d_inv(&self, order: i32) -> Result<&GradedSymbol> {
        match order {
            -1 => Ok(&self.q_m1),
            -2 => Ok(&self.q_m2),
            _ => Err(Error::InsufficientDepth {
                target: order,
                reason: "only orders -1 and -2 of D^-1 are modelled".into(),
            }),
        }
    }

    /// `sigma_{-2}` or `sigma_{-3}` of `D^{-2}`.
    pub fn sigma_dsq_inv(&self, order: i32) -> Result<&GradedSymbol> {
        match order {
            -2 => Ok(&self.s_m2),
            -3 => Ok(&self.s_m3),
            _ => Err(Error::InsufficientDepth {
                target: order,
                reason: "only orders -2 and -3 of D^-2 are modelled".into(),
            }),
        }
    }

    /// `(sigma_1(nabla_v), sigma_0(nabla_v))`.
    pub fn sigma_nabla_v(&self) -> (&GradedSymbol, &GradedSymbol) {
        (&self.nabla1, &self.nabla0)
    }

    /// `-2 c(w)` as an `x_n`-jet.
    pub fn minus2cw(&self) -> Jet<CliffordMatrix> {
        self.c_w.map(|m| m.scale(&XiRational::from_int(-2)))
    }

    /// The three pieces of `sigma_{-2}(D^{-1})`:
    /// `c Q_0^1 c / |xi|^4`, `c Q_0^2 c / |xi|^4` and the metric term
    /// `c c_4 (d_{x_n}c(xi') |xi|^2 - c h) / |xi|^6`.
    pub fn q_m2_pieces(&self) -> [CliffordMatrix; 3] {
        let cx = &self.c_xi.value;
        let inv2 = XiRational::inv_norm_pow(2);
        let q1 = (&(cx * &self.constants.q0_1()) * cx).scale(&inv2);
        let q2 = (&(cx * &self.constants.q0_2()) * cx).scale(&inv2);
        let norm = XiRational::polynomial(vec![FormalPoly::one(), FormalPoly::zero(), FormalPoly::one()]);
        let inner = &self.c_xi_prime.dxn.scale(&norm) - &cx.scale(&xr(dx_norm_sq(4)));
        let metric = (&(cx * &self.c4) * &inner).scale(&XiRational::inv_norm_pow(3));
        [q1, q2, metric]
    }

    /// The closed form of `sigma_{-2}(D^{-1})`, summed.
    pub fn q_m2_closed_form(&self) -> CliffordMatrix {
        let [a, b, m] = self.q_m2_pieces();
        &(&a + &b) + &m
    }
}

/// `q_{-2} = -q_{-1} (p_0 q_{-1} + d_{xi_n} p_1 D_{x_n} q_{-1})`.
pub fn inverse_recursion(
    q_m1: &GradedSymbol,
    p0: &GradedSymbol,
    p1: &GradedSymbol,
) -> Result<CliffordMatrix> {
    let minus_i = xr(-FormalPoly::i());
    let dq = q_m1.dxn()?;
    let inner = &(&p0.value * &q_m1.value) + &(&p1.value.derivative_xi() * dq).scale(&minus_i);
    Ok(-(&q_m1.value * &inner))
}

/// `sigma_{-3}(D^{-2}) = -i |xi|^-4 xi_k (Gamma^k - 2 sigma^k + 2 a^k)
///  - 2 i |xi|^-6 xi^j xi_a xi_b d_j g^{ab}` at `x_0`, `|xi'| = 1`.
pub fn sigma_m3_dsq(k: &ConnectionConstants) -> CliffordMatrix {
    let minus_i = -FormalPoly::i();
    let mut out = CliffordMatrix::zero();
    for j in 1..=DIM as u8 {
        let xi_j = if j as usize == DIM {
            XiRational::xi_n()
        } else {
            xr(FormalPoly::xi(j))
        };
        let two = XiRational::from_int(2);
        let bracket = &(&CliffordMatrix::scalar(xr(k.gamma[j as usize - 1].clone()))
            - &k.sigma(j).scale(&two))
            + &k.a(j).scale(&two);
        let coeff = (&xi_j * &XiRational::inv_norm_pow(2)).scale(&minus_i);
        out = &out + &bracket.scale(&coeff);
    }
    // Only d_n g^{ab} = h delta_ab (a, b tangential) survives: xi_n |xi'|^2 h.
    let metric = XiRational::new(
        vec![FormalPoly::zero(), FormalPoly::h() * minus_i.scale(&GaussianRational::from_int(2))],
        3,
        3,
    );
    &out + &CliffordMatrix::scalar(metric)
}

/// `A(v) = 1/4 sum G_ij (c_i c_j - chat_i chat_j)`.
pub fn a_of_v() -> CliffordMatrix {
    let mut out = CliffordMatrix::zero();
    for i in 1..=DIM as u8 {
        for j in 1..=DIM as u8 {
            let g = FormalPoly::g(i, j);
            if g.is_zero() {
                continue;
            }
            let m = &(&c(i) * &c(j)) - &(&ch(i) * &ch(j));
            out = &out + &m.scale_poly(&g.scale(&GaussianRational::from_frac(1, 4)));
        }
    }
    out
}

/// `K_0 = sum_j c(w) c_j c(nabla_{e_j} v)` with `c(nabla_{e_j} v) = sum_k H_jk c_k`.
pub fn k0_prefactor(cw: &CliffordMatrix) -> CliffordMatrix {
    let mut out = CliffordMatrix::zero();
    for j in 1..=DIM as u8 {
        let mut cv = CliffordMatrix::zero();
        for k in 1..=DIM as u8 {
            cv = &cv + &c(k).scale_poly(&FormalPoly::hm(j, k));
        }
        out = &out + &(&(cw * &c(j)) * &cv);
    }
    out
}

/// `-h/(1+xi_n^2)^2`, the normal derivative of `sigma_{-2}(D^{-2})`.
pub fn dxn_inv_norm() -> XiRational {
    XiRational::inv_norm_pow(2).scale(&-FormalPoly::h())
}

/// Frequently used constant: `1/2 h`.
pub fn half_h() -> FormalPoly {
    frac(1, 2) * FormalPoly::h()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lib() -> SymbolLibrary {
        SymbolLibrary::default()
    }

    #[test]
    fn connection_constants_match_anchors() {
        let k = ConnectionConstants::standard();
        let h = FormalPoly::h();
        assert_eq!(k.q0_2(), c(4).scale_poly(&(frac(-3, 4) * h.clone())));
        for j in 1..4u8 {
            assert_eq!(k.sigma(j), (&c(j) * &c(4)).scale_poly(&(frac(1, 4) * h.clone())));
            assert_eq!(k.a(j), (&ch(j) * &ch(4)).scale_poly(&(frac(-1, 4) * h.clone())));
        }
        assert!(k.sigma(4).is_zero());
        let mut q01 = CliffordMatrix::zero();
        for j in 1..4u8 {
            q01 = &q01 + &(&(&c(j) * &ch(j)) * &ch(4));
        }
        assert_eq!(k.q0_1(), q01.scale_poly(&(frac(-1, 4) * h)));
    }

    #[test]
    fn christoffel_oracle_agrees_on_omega() {
        let oracle = christoffel_oracle();
        let standard = ConnectionConstants::standard();
        let mut a = oracle.omega.clone();
        let mut b = standard.omega.clone();
        a.sort_by(|x, y| x.0.cmp(&y.0));
        b.sort_by(|x, y| x.0.cmp(&y.0));
        assert_eq!(a, b);
    }

    #[test]
    fn christoffel_oracle_normal_trace() {
        // The collar metric gives 3/2 h for the contracted symbol; the
        // computation carries 5/2 h. Both values are pinned here.
        assert_eq!(christoffel_oracle().gamma[3], frac(3, 2) * FormalPoly::h());
        assert_eq!(ConnectionConstants::standard().gamma[3], frac(5, 2) * FormalPoly::h());
    }

    #[test]
    fn recursion_matches_closed_form() {
        let l = lib();
        assert_eq!(l.q_m2.value, l.q_m2_closed_form());
    }

    #[test]
    fn inverse_symbol_identities() {
        let l = lib();
        let lead = compose(&[l.p1.clone()], &[l.q_m1.clone()], 0).unwrap();
        assert_eq!(lead.symbol.value.reduce_sphere(), CliffordMatrix::identity());
        let next = compose(
            &[l.p1.clone(), l.p0.clone()],
            &[l.q_m1.clone(), l.q_m2.clone()],
            -1,
        )
        .unwrap();
        assert!(next.symbol.value.reduce_sphere().is_zero());
    }

    #[test]
    fn scalar_part_of_sigma_m3() {
        let l = lib();
        // Diagonal of the identity-proportional part: trace / 16.
        let tr = l.s_m3.value.trace().scale_const(&GaussianRational::from_frac(1, 16));
        let expected = XiRational::new(
            vec![
                FormalPoly::zero(),
                FormalPoly::h() * FormalPoly::i().scale(&GaussianRational::from_frac(-9, 2)),
                FormalPoly::zero(),
                FormalPoly::h() * FormalPoly::i().scale(&GaussianRational::from_frac(-5, 2)),
            ],
            3,
            3,
        );
        assert_eq!(tr, expected);
    }

    #[test]
    fn depth_is_checked() {
        let l = lib();
        let err = compose(&[l.p1.clone()], &[l.q_m1.clone()], -1).unwrap_err();
        assert!(matches!(err, Error::InsufficientDepth { .. }));
    }

    #[test]
    fn k0_with_identity_pattern() {
        let cw = c(4);
        let mut out = CliffordMatrix::zero();
        for j in 1..=4u8 {
            out = &out + &(&(&cw * &c(j)) * &c(j));
        }
        assert_eq!(out, cw.scale(&XiRational::from_int(-4)));
        let sym = k0_prefactor(&cw);
        assert!(!sym.is_zero());
    }
}
