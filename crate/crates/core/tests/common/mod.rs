//! Hand-written reference expressions shared by the integration tests.
//! Each builds its value from the Clifford generators and formal
//! parameters directly, without going through the symbol library.

#![allow(dead_code)]

use num_traits::{One, Zero};

use hodge_residue::clifford::CliffordMatrix;
use hodge_residue::poly::FormalPoly;
use hodge_residue::scalar::int;
use hodge_residue::symbols::{a_of_v, compose, sigma_m3_dsq, ConnectionConstants, SymbolLibrary};
use hodge_residue::xi::XiRational;

pub fn c(j: u8) -> CliffordMatrix {
    CliffordMatrix::c(j)
}

pub fn ch(j: u8) -> CliffordMatrix {
    CliffordMatrix::chat(j)
}

pub fn xr(p: FormalPoly) -> XiRational {
    XiRational::constant(p)
}

pub fn scalar(n: i64) -> CliffordMatrix {
    CliffordMatrix::scalar(XiRational::from_int(n))
}

pub fn i() -> XiRational {
    xr(FormalPoly::i())
}

pub fn cw() -> CliffordMatrix {
    (1..=4).fold(CliffordMatrix::zero(), |acc, j| &acc + &c(j).scale_poly(&FormalPoly::w(j)))
}

pub fn cv() -> CliffordMatrix {
    (1..=4).fold(CliffordMatrix::zero(), |acc, j| &acc + &c(j).scale_poly(&FormalPoly::v(j)))
}

pub fn c_xi_prime() -> CliffordMatrix {
    (1..=3).fold(CliffordMatrix::zero(), |acc, j| &acc + &c(j).scale_poly(&FormalPoly::xi(j)))
}

pub fn c_xi() -> CliffordMatrix {
    &c_xi_prime() + &c(4).scale(&XiRational::xi_n())
}

/// `sum_j v_j xi_j` with `xi_4 = xi_n`.
pub fn v_dot_xi() -> XiRational {
    (1..=3).fold(XiRational::xi_n().scale(&FormalPoly::v(4)), |acc, j| {
        &acc + &xr(FormalPoly::v(j) * FormalPoly::xi(j))
    })
}

/// Failures among the 64 anticommutation relations of `c` and `chat`.
pub fn generator_relation_failures() -> Vec<String> {
    let mut bad = Vec::new();
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            let delta = if a == b { 2 } else { 0 };
            let checks = [
                ("c c", &(&c(a) * &c(b)) + &(&c(b) * &c(a)), scalar(-delta)),
                ("chat chat", &(&ch(a) * &ch(b)) + &(&ch(b) * &ch(a)), scalar(delta)),
                ("c chat", &(&c(a) * &ch(b)) + &(&ch(b) * &c(a)), CliffordMatrix::zero()),
                ("chat c", &(&ch(a) * &c(b)) + &(&c(b) * &ch(a)), CliffordMatrix::zero()),
            ];
            for (name, lhs, rhs) in checks {
                if lhs != rhs {
                    bad.push(format!("{name} ({a},{b})"));
                }
            }
        }
    }
    bad
}

/// `(tr[K_0 c(dx_n)], 16 [(sum H_jj) w_4 - sum w_k H_4k + sum w_j H_j4])`.
pub fn divergence_identity() -> (XiRational, XiRational) {
    let lib = SymbolLibrary::default();
    let mut rhs = FormalPoly::zero();
    for j in 1..=4u8 {
        rhs = &rhs + &(FormalPoly::hm(j, j) * FormalPoly::w(4));
        rhs = &rhs - &(FormalPoly::w(j) * FormalPoly::hm(4, j));
        rhs = &rhs + &(FormalPoly::w(j) * FormalPoly::hm(j, 4));
    }
    ((&lib.k0 * &c(4)).trace(), xr(rhs.scale_rational(&int(16))))
}

/// `(tr[c(w) A(v) c(dx_n)], -8 sum_{j<4} G_4j w_j)`.
pub fn connection_identity() -> (XiRational, XiRational) {
    let rhs = (1..=3).fold(FormalPoly::zero(), |acc, j| &acc + &(FormalPoly::g(4, j) * FormalPoly::w(j)));
    ((&(&cw() * &a_of_v()) * &c(4)).trace(), xr(rhs.scale_rational(&int(-8))))
}

/// `tr[c(w) chat_k chat_4 c(dx_n)]` and `tr[c(w) chat_k chat_4 c(xi')]`, `k < 4`.
pub fn vanishing_traces() -> Vec<XiRational> {
    let mut out = Vec::new();
    for k in 1..4u8 {
        let m = &(&cw() * &ch(k)) * &ch(4);
        out.push((&m * &c(4)).trace());
        out.push((&m * &c_xi_prime()).trace());
    }
    out
}

/// `(tr[c(w) c(dx_n)], -16 w_4)` and `(tr[c(w) c(xi')], -16 sum xi_j w_j)`.
pub fn basic_traces() -> Vec<(XiRational, XiRational)> {
    let wx = (1..=3).fold(FormalPoly::zero(), |acc, j| &acc + &(FormalPoly::w(j) * FormalPoly::xi(j)));
    vec![
        ((&cw() * &c(4)).trace(), xr(FormalPoly::w(4).scale_rational(&int(-16)))),
        ((&cw() * &c_xi_prime()).trace(), xr(wx.scale_rational(&int(-16)))),
    ]
}

/// `(Q_0^2, -3/4 h c(dx_n))` and `(sigma^k, 1/4 h c_k c_4)` for `k < 4`.
pub fn connection_constant_pairs() -> Vec<(CliffordMatrix, CliffordMatrix)> {
    let k = ConnectionConstants::standard();
    let h = FormalPoly::h();
    let mut out = vec![(k.q0_2(), c(4).scale_poly(&(FormalPoly::from_frac(-3, 4) * h.clone())))];
    for j in 1..4u8 {
        out.push((k.sigma(j), (&c(j) * &c(4)).scale_poly(&(FormalPoly::from_frac(1, 4) * h.clone()))));
    }
    out
}

/// `sigma_{-1}(nabla_v D^{-1})`: composed versus written out term by term.
pub fn first_order_composition() -> (CliffordMatrix, CliffordMatrix) {
    let lib = SymbolLibrary::default();
    let composed = compose(&[lib.nabla1.clone(), lib.nabla0.clone()], &[lib.q_m1.clone(), lib.q_m2.clone()], -1)
        .expect("depth suffices")
        .symbol
        .value;

    let h = FormalPoly::h();
    let cx = c_xi();
    let inv = XiRational::inv_norm_pow;
    let norm = XiRational::polynomial(vec![FormalPoly::one(), FormalPoly::zero(), FormalPoly::one()]);
    // d_{x_n} c(xi') = 1/2 h c(xi')
    let d_cxp = c_xi_prime().scale_poly(&FormalPoly::from_frac(1, 2)).scale_poly(&h);
    let sigma0 = &lib.constants.q0_1() + &lib.constants.q0_2();

    let bracket = &(&(&cx * &sigma0) * &cx).scale(&inv(2))
        + &(&(&cx * &c(4)) * &(&d_cxp.scale(&norm) - &cx.scale_poly(&h))).scale(&inv(3));
    let a_term = (&a_of_v() * &cx).scale(&(&i() * &inv(1)));
    let vn_term = (&d_cxp.scale(&inv(1)) - &cx.scale(&inv(2).scale(&h))).scale(&i().scale(&FormalPoly::v(4)));
    let hand = &(&bracket.scale(&(&i() * &v_dot_xi())) + &a_term) + &vn_term;
    (composed.reduce_sphere(), hand.reduce_sphere())
}

/// `sigma_{-2}(nabla_v D^{-2})`: composed versus written out term by term.
pub fn second_order_composition() -> (CliffordMatrix, CliffordMatrix) {
    let lib = SymbolLibrary::default();
    let composed = compose(&[lib.nabla1.clone(), lib.nabla0.clone()], &[lib.s_m2.clone(), lib.s_m3.clone()], -2)
        .expect("depth suffices")
        .symbol
        .value;
    let h = FormalPoly::h();
    let a_term = a_of_v().scale(&XiRational::inv_norm_pow(1));
    let s_term = sigma_m3_dsq(&lib.constants).scale(&(&i() * &v_dot_xi()));
    let vn_term = CliffordMatrix::scalar(XiRational::inv_norm_pow(2).scale(&-(FormalPoly::v(4) * h)));
    let hand = &(&a_term + &s_term) + &vn_term;
    (composed.reduce_sphere(), hand.reduce_sphere())
}

/// `p_1 q_{-1}` and the order -1 part of `sigma(D D^{-1})`.
pub fn inverse_symbol_components() -> (CliffordMatrix, CliffordMatrix) {
    let l = SymbolLibrary::default();
    let lead = compose(&[l.p1.clone()], &[l.q_m1.clone()], 0).expect("depth suffices");
    let next = compose(&[l.p1.clone(), l.p0.clone()], &[l.q_m1.clone(), l.q_m2.clone()], -1).expect("depth suffices");
    (lead.symbol.value.reduce_sphere(), next.symbol.value.reduce_sphere())
}

/// Both sides of `c(w)(sigma_1(D) c(v) + c(v) sigma_1(D)) = -2 c(w) sigma_1(nabla_v)`.
pub fn leading_symbol_pair() -> (CliffordMatrix, CliffordMatrix) {
    let lib = SymbolLibrary::default();
    let p1 = c_xi().scale(&i());
    let lhs = &cw() * &(&(&p1 * &cv()) + &(&cv() * &p1));
    (lhs, &lib.minus2cw().value * &lib.nabla1.value)
}
