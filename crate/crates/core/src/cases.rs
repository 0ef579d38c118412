//! The boundary cases of the two residue functionals and their totals.
//!
//! `Phi` pairs a left factor built on `D^{-1}` with `sigma(D^{-2})` on the
//! right; `Psi` swaps the roles. The `a` cases carry the prefactor
//! `K_0 = sum_j c(w) c(e_j) c(nabla_{e_j} v)`, the `b` cases the operator
//! `-2 c(w) nabla_v`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::CliffordMatrix;
use crate::error::{Error, Result};
use crate::invariants::{tangential_g_monomials, Basis, InvariantCombo};
use crate::jet::Jet;
use crate::poly::PiPoly;
use crate::residue::{density_term_value, DensityTerm, DensityValue, TermIndex};
use crate::symbols::{compose, ComposePiece, GradedSymbol, SymbolLibrary};

macro_rules! case_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum CaseId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl CaseId {
            pub const ALL: &'static [CaseId] = &[$(CaseId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(CaseId::$variant => $name,)*
                }
            }
        }

        impl FromStr for CaseId {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(CaseId::$variant),)*
                    other => Err(Error::UnknownCase(other.to_string())),
                }
            }
        }
    };
}

case_ids! {
    PhiA => "PhiA",
    PhiB1 => "PhiB1",
    PhiB2 => "PhiB2",
    PhiB3 => "PhiB3",
    PhiB4 => "PhiB4",
    PhiB5A1 => "PhiB5_A1",
    PhiB5A2 => "PhiB5_A2",
    PhiB5A3 => "PhiB5_A3",
    PsiA => "PsiA",
    PsiB1 => "PsiB1",
    PsiB2 => "PsiB2",
    PsiB3 => "PsiB3",
    PsiB4B1 => "PsiB4_B1",
    PsiB4B2 => "PsiB4_B2",
    PsiB4B3 => "PsiB4_B3",
    PsiB5C1 => "PsiB5_C1",
    PsiB5C2 => "PsiB5_C2",
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl CaseId {
    pub fn is_phi(self) -> bool {
        self.as_str().starts_with("Phi")
    }

    /// Part of the `b` total (everything except the `a` cases).
    pub fn is_b(self) -> bool {
        !matches!(self, CaseId::PhiA | CaseId::PsiA)
    }

    /// The printed sub-case this piece belongs to, e.g. `PhiB5` for `PhiB5_A2`.
    pub fn group(self) -> &'static str {
        let s = self.as_str();
        match s.find('_') {
            Some(k) => &s[..k],
            None => s,
        }
    }
}

/// Named groups and totals, in report order.
pub const GROUPS: &[(&str, &[CaseId])] = &[
    ("PhiB5", &[CaseId::PhiB5A1, CaseId::PhiB5A2, CaseId::PhiB5A3]),
    ("PsiB4", &[CaseId::PsiB4B1, CaseId::PsiB4B2, CaseId::PsiB4B3]),
    ("PsiB5", &[CaseId::PsiB5C1, CaseId::PsiB5C2]),
];

pub const PHI_B: &[CaseId] = &[
    CaseId::PhiB1,
    CaseId::PhiB2,
    CaseId::PhiB3,
    CaseId::PhiB4,
    CaseId::PhiB5A1,
    CaseId::PhiB5A2,
    CaseId::PhiB5A3,
];

pub const PSI_B: &[CaseId] = &[
    CaseId::PsiB1,
    CaseId::PsiB2,
    CaseId::PsiB3,
    CaseId::PsiB4B1,
    CaseId::PsiB4B2,
    CaseId::PsiB4B3,
    CaseId::PsiB5C1,
    CaseId::PsiB5C2,
];

/// One evaluated density term of a case.
#[derive(Clone, Debug)]
pub struct TermRecord {
    pub index: TermIndex,
    pub left_name: String,
    pub right_name: String,
    pub value: DensityValue,
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub id: CaseId,
    pub computed: InvariantCombo,
    pub expected: Option<InvariantCombo>,
    pub raw: PiPoly,
    pub terms: Vec<TermRecord>,
    /// Supporting trace reductions `(label, value)` shown in derivations.
    pub identities: Vec<(String, String)>,
}

/// Symbols shared by all cases, built once.
pub struct CaseContext {
    pub lib: SymbolLibrary,
    /// `sigma_0(-2 c(w) nabla_v D^{-1})` with its normal derivative.
    pub l0: GradedSymbol,
    /// Pieces of `sigma_{-1}(nabla_v D^{-1})`.
    pub phi_m1: Vec<ComposePiece>,
    /// `sigma_{-1}(-2 c(w) nabla_v D^{-2})` with its normal derivative.
    pub m1: GradedSymbol,
    /// Pieces of `sigma_{-2}(nabla_v D^{-2})`.
    pub psi_m2: Vec<ComposePiece>,
    pub minus2cw: Jet<CliffordMatrix>,
}

impl Default for CaseContext {
    fn default() -> Self {
        Self::new(SymbolLibrary::default()).expect("standard symbols compose")
    }
}

fn find_piece(pieces: &[ComposePiece], r: i32, l: i32, derivative: bool) -> Result<CliffordMatrix> {
    pieces
        .iter()
        .find(|p| p.left_order == r && p.right_order == l && p.derivative == derivative)
        .map(|p| p.value.clone())
        .ok_or(Error::InsufficientDepth {
            target: r + l,
            reason: format!("no composition piece ({r}, {l}, derivative={derivative})"),
        })
}

impl CaseContext {
    pub fn new(lib: SymbolLibrary) -> Result<Self> {
        let nabla = [lib.nabla1.clone(), lib.nabla0.clone()];
        let d_inv = [lib.q_m1.clone(), lib.q_m2.clone()];
        let dsq_inv = [lib.s_m2.clone(), lib.s_m3.clone()];
        let minus2cw = lib.minus2cw();
        let l0 = compose(&nabla, &d_inv, 0)?
            .symbol
            .premul("sigma_0(-2c(w)nabla_v D^-1)", &minus2cw);
        let phi_m1 = compose(&nabla, &d_inv, -1)?.pieces;
        let m1 = compose(&nabla, &dsq_inv, -1)?
            .symbol
            .premul("sigma_-1(-2c(w)nabla_v D^-2)", &minus2cw);
        let psi_m2 = compose(&nabla, &dsq_inv, -2)?.pieces;
        Ok(Self {
            lib,
            l0,
            phi_m1,
            m1,
            psi_m2,
            minus2cw,
        })
    }

    fn cw_times(&self, name: &str, order: i32, m: &CliffordMatrix) -> GradedSymbol {
        GradedSymbol::value_only(name, order, &self.minus2cw.value * m)
    }

    /// Density terms `(left, right, index)` making up a case.
    pub fn terms(&self, id: CaseId) -> Result<Vec<DensityTerm>> {
        let lib = &self.lib;
        let term = |index: TermIndex, left: GradedSymbol, right: GradedSymbol| DensityTerm {
            r: index.0,
            l: index.1,
            k: index.2,
            j: index.3,
            alpha: index.4,
            left,
            right,
        };
        let k0 = GradedSymbol::value_only("K_0", 0, lib.k0.clone());
        Ok(match id {
            CaseId::PhiA => {
                let left = compose(&[k0], &[lib.q_m1.clone(), lib.q_m2.clone()], -1)?.symbol;
                vec![term((-1, -2, 0, 0, 0), left, lib.s_m2.clone())]
            }
            CaseId::PhiB1 => vec![term((0, -2, 0, 0, 1), self.l0.clone(), lib.s_m2.clone())],
            CaseId::PhiB2 => vec![term((0, -2, 0, 1, 0), self.l0.clone(), lib.s_m2.clone())],
            CaseId::PhiB3 => vec![term((0, -2, 1, 0, 0), self.l0.clone(), lib.s_m2.clone())],
            CaseId::PhiB4 => vec![term((0, -3, 0, 0, 0), self.l0.clone(), lib.s_m3.clone())],
            CaseId::PhiB5A1 | CaseId::PhiB5A2 | CaseId::PhiB5A3 => {
                let (name, piece) = match id {
                    CaseId::PhiB5A1 => ("A_1", find_piece(&self.phi_m1, 1, -2, false)?),
                    CaseId::PhiB5A2 => ("A_2", find_piece(&self.phi_m1, 0, -1, false)?),
                    _ => ("A_3", find_piece(&self.phi_m1, 1, -1, true)?),
                };
                let left = self.cw_times(name, -1, &piece);
                vec![term((-1, -2, 0, 0, 0), left, lib.s_m2.clone())]
            }
            CaseId::PsiA => {
                let left = compose(&[k0], &[lib.s_m2.clone(), lib.s_m3.clone()], -2)?.symbol;
                vec![term((-2, -1, 0, 0, 0), left, lib.q_m1.clone())]
            }
            CaseId::PsiB1 => vec![term((-1, -1, 0, 0, 1), self.m1.clone(), lib.q_m1.clone())],
            CaseId::PsiB2 => vec![term((-1, -1, 0, 1, 0), self.m1.clone(), lib.q_m1.clone())],
            CaseId::PsiB3 => vec![term((-1, -1, 1, 0, 0), self.m1.clone(), lib.q_m1.clone())],
            CaseId::PsiB4B1 | CaseId::PsiB4B2 | CaseId::PsiB4B3 => {
                let (name, piece) = match id {
                    CaseId::PsiB4B1 => ("B_1", find_piece(&self.psi_m2, 0, -2, false)?),
                    CaseId::PsiB4B2 => ("B_2", find_piece(&self.psi_m2, 1, -3, false)?),
                    _ => ("B_3", find_piece(&self.psi_m2, 1, -2, true)?),
                };
                let left = self.cw_times(name, -2, &piece);
                vec![term((-2, -1, 0, 0, 0), left, lib.q_m1.clone())]
            }
            CaseId::PsiB5C1 | CaseId::PsiB5C2 => {
                let [q01, q02, metric] = lib.q_m2_pieces();
                let right = if id == CaseId::PsiB5C2 {
                    GradedSymbol::value_only("C_2: c(xi)Q_0^1c(xi)/|xi|^4", -2, q01)
                } else {
                    GradedSymbol::value_only(
                        "C_1: sigma_-2(D^-1) without the Q_0^1 part",
                        -2,
                        &q02 + &metric,
                    )
                };
                vec![term((-1, -2, 0, 0, 0), self.m1.clone(), right)]
            }
        })
    }

    fn identities(&self, id: CaseId) -> Vec<(String, String)> {
        let lib = &self.lib;
        let trace_of = |m: &CliffordMatrix| m.trace().to_string();
        match id {
            CaseId::PhiA | CaseId::PsiA => vec![(
                "tr[K_0 c(dx_n)]".into(),
                trace_of(&(&lib.k0 * &lib.c4)),
            )],
            CaseId::PhiB5A2 | CaseId::PsiB4B1 => vec![(
                "tr[c(w) A(v) c(dx_n)]".into(),
                trace_of(&(&(&lib.c_w.value * &lib.nabla0.value) * &lib.c4)),
            )],
            _ => Vec::new(),
        }
    }

    pub fn compute_case(&self, id: CaseId) -> Result<CaseResult> {
        let mut raw = PiPoly::zero(2);
        let mut records = Vec::new();
        for t in self.terms(id)? {
            let value = density_term_value(&t)?;
            raw = raw.checked_add(&value.value)?;
            records.push(TermRecord {
                index: (t.r, t.l, t.k, t.j, t.alpha),
                left_name: t.left.name.clone(),
                right_name: t.right.name.clone(),
                value,
            });
        }
        let stray = tangential_g_monomials(&raw.poly);
        if !stray.is_empty() {
            return Err(Error::UnrecognizedInvariant { monomials: stray });
        }
        let computed = InvariantCombo::project(&raw)?;
        Ok(CaseResult {
            id,
            computed,
            expected: None,
            raw,
            terms: records,
            identities: self.identities(id),
        })
    }

    /// Evaluate cases in parallel; results come back in input order.
    pub fn compute_all(&self, ids: &[CaseId]) -> Result<Vec<CaseResult>> {
        ids.par_iter().map(|&id| self.compute_case(id)).collect()
    }
}

/// Coefficient-wise sum in the given order.
pub fn assemble_total<'a>(parts: impl IntoIterator<Item = &'a InvariantCombo>) -> Result<InvariantCombo> {
    parts
        .into_iter()
        .try_fold(InvariantCombo::zero(Basis::Hprime), |acc, c| acc.checked_add(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_ids_round_trip() {
        for &id in CaseId::ALL {
            assert_eq!(id.as_str().parse::<CaseId>().unwrap(), id);
        }
        assert_eq!(CaseId::ALL.len(), 17);
        assert!(matches!("PhiZ".parse::<CaseId>(), Err(Error::UnknownCase(_))));
        assert_eq!(CaseId::PhiB5A2.group(), "PhiB5");
    }

    #[test]
    fn empty_total_is_zero() {
        assert!(assemble_total([]).unwrap().is_zero());
    }
}
