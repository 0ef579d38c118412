//! The shipped expected-values table and the reviewed-discrepancy allowlist.
//!
//! Both are data files under `expected/`; they are embedded at build time and
//! can also be loaded from any JSON string. Loading validates every case id,
//! invariant label and fraction, so malformed input is an error, never a panic.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cases::CaseId;
use crate::error::{Error, Result};
use crate::invariants::{Basis, InvariantCombo};
use crate::scalar::{format_rational, parse_rational};

pub const EMBEDDED_TABLE: &str = include_str!("../../../expected/paper.json");
pub const EMBEDDED_ALLOWLIST: &str = include_str!("../../../expected/allowlist.json");

/// Invariant label to exact fraction string, e.g. `{"h*S4": "-44/3"}`.
pub type CoeffMap = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedCase {
    pub case_id: CaseId,
    pub coeffs: CoeffMap,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedTotal {
    pub name: String,
    pub parts: Vec<String>,
    pub coeffs: CoeffMap,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedTheorem {
    pub name: String,
    /// Case ids or total names whose sum forms the boundary integrand.
    pub parts: Vec<String>,
    pub basis: Basis,
    pub coeffs: CoeffMap,
    /// Interior term, printed verbatim and never recomputed.
    pub interior: String,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedTable {
    pub unit: String,
    pub basis: Basis,
    pub cases: Vec<ExpectedCase>,
    pub totals: Vec<ExpectedTotal>,
    pub theorems: Vec<ExpectedTheorem>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Build a combo from a label map, rejecting unknown labels.
pub fn combo_from_map(map: &CoeffMap, basis: Basis) -> Result<InvariantCombo> {
    let labels = basis.labels();
    let mut out = InvariantCombo::zero(basis);
    for (label, value) in map {
        let k = labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Parse(format!("unknown invariant label `{label}` for basis {basis:?}")))?;
        out.coeffs[k] = parse_rational(value)?;
    }
    Ok(out)
}

/// Nonzero coefficients as a label map.
pub fn map_from_combo(c: &InvariantCombo) -> CoeffMap {
    c.basis
        .labels()
        .iter()
        .zip(&c.coeffs)
        .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
        .map(|(l, v)| (l.to_string(), format_rational(v)))
        .collect()
}

impl ExpectedTable {
    pub fn from_json(s: &str) -> Result<Self> {
        let table: Self = serde_json::from_str(s).map_err(parse_err)?;
        table.validate()?;
        Ok(table)
    }

    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED_TABLE).expect("the shipped expected table is valid")
    }

    fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for c in &self.cases {
            if !seen.insert(c.case_id) {
                return Err(Error::Parse(format!("duplicate expected entry for {}", c.case_id)));
            }
            combo_from_map(&c.coeffs, self.basis)?;
        }
        let mut names: BTreeSet<String> = seen.iter().map(|id| id.to_string()).collect();
        for t in &self.totals {
            for p in &t.parts {
                if !names.contains(p) {
                    return Err(Error::Parse(format!("total `{}` refers to unknown part `{p}`", t.name)));
                }
            }
            combo_from_map(&t.coeffs, self.basis)?;
            if !names.insert(t.name.clone()) {
                return Err(Error::Parse(format!("duplicate name `{}`", t.name)));
            }
        }
        for th in &self.theorems {
            for p in &th.parts {
                if !names.contains(p) {
                    return Err(Error::Parse(format!("theorem `{}` refers to unknown part `{p}`", th.name)));
                }
            }
            combo_from_map(&th.coeffs, th.basis)?;
        }
        Ok(())
    }

    pub fn case(&self, id: CaseId) -> Option<&ExpectedCase> {
        self.cases.iter().find(|c| c.case_id == id)
    }

    pub fn case_combo(&self, id: CaseId) -> Result<Option<InvariantCombo>> {
        self.case(id)
            .map(|c| combo_from_map(&c.coeffs, self.basis))
            .transpose()
    }

    pub fn total(&self, name: &str) -> Option<&ExpectedTotal> {
        self.totals.iter().find(|t| t.name == name)
    }

    /// Expected value of a case id or a total name.
    pub fn named_combo(&self, name: &str) -> Result<InvariantCombo> {
        if let Ok(id) = name.parse::<CaseId>() {
            if let Some(c) = self.case_combo(id)? {
                return Ok(c);
            }
        }
        match self.total(name) {
            Some(t) => combo_from_map(&t.coeffs, self.basis),
            None => Err(Error::Parse(format!("no expected value named `{name}`"))),
        }
    }

    /// Sum of the expected values of the parts of a total.
    pub fn sum_of_parts(&self, parts: &[String]) -> Result<InvariantCombo> {
        parts
            .iter()
            .try_fold(InvariantCombo::zero(self.basis), |acc, p| acc.checked_add(&self.named_combo(p)?))
    }
}

/// A discrepancy accepted after manual review. It applies only while both
/// the recomputed and the expected value are exactly the recorded ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllowlistEntry {
    pub case_id: CaseId,
    pub computed: CoeffMap,
    pub expected: CoeffMap,
    /// Derivation trace backing the review, relative to the workspace root.
    pub trace: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Allowlist {
    pub entries: Vec<AllowlistEntry>,
}

impl Allowlist {
    pub fn from_json(s: &str) -> Result<Self> {
        let list: Self = serde_json::from_str(s).map_err(parse_err)?;
        let mut seen = BTreeSet::new();
        for e in &list.entries {
            if !seen.insert(e.case_id) {
                return Err(Error::Parse(format!("duplicate allowlist entry for {}", e.case_id)));
            }
            if e.trace.trim().is_empty() || e.reason.trim().is_empty() {
                return Err(Error::Parse(format!("allowlist entry for {} needs a trace and a reason", e.case_id)));
            }
            combo_from_map(&e.computed, Basis::Hprime)?;
            combo_from_map(&e.expected, Basis::Hprime)?;
        }
        Ok(list)
    }

    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED_ALLOWLIST).expect("the shipped allowlist is valid")
    }

    /// The entry accepting `computed` versus `expected` for `id`, if any.
    pub fn accepts(
        &self,
        id: CaseId,
        computed: &InvariantCombo,
        expected: &InvariantCombo,
    ) -> Option<&AllowlistEntry> {
        self.entries.iter().find(|e| {
            e.case_id == id
                && combo_from_map(&e.computed, Basis::Hprime).ok().as_ref() == Some(computed)
                && combo_from_map(&e.expected, Basis::Hprime).ok().as_ref() == Some(expected)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::combo;

    #[test]
    fn embedded_table_covers_every_case_once() {
        let t = ExpectedTable::embedded();
        for &id in CaseId::ALL {
            assert!(t.case(id).is_some(), "{id}");
        }
        assert_eq!(t.cases.len(), CaseId::ALL.len());
    }

    #[test]
    fn expected_b4_value() {
        let t = ExpectedTable::embedded();
        assert_eq!(
            t.case_combo(CaseId::PhiB4).unwrap().unwrap(),
            combo(&[("h*S2", 38, 3), ("h*S4", -98, 3)], Basis::Hprime)
        );
    }

    #[test]
    fn rejects_unknown_labels_and_cases() {
        let bad_label = r#"{"unit":"pi^2","basis":"hprime","cases":[{"case_id":"PhiA","coeffs":{"S9":"1"},"anchor":"x"}],"totals":[],"theorems":[]}"#;
        assert!(ExpectedTable::from_json(bad_label).is_err());
        let bad_case = r#"{"unit":"pi^2","basis":"hprime","cases":[{"case_id":"PhiZ","coeffs":{},"anchor":"x"}],"totals":[],"theorems":[]}"#;
        assert!(ExpectedTable::from_json(bad_case).is_err());
        let bad_frac = r#"{"unit":"pi^2","basis":"hprime","cases":[{"case_id":"PhiA","coeffs":{"S6":"1/0"}, "anchor":"x"}],"totals":[],"theorems":[]}"#;
        assert!(ExpectedTable::from_json(bad_frac).is_err());
    }

    #[test]
    fn map_round_trip() {
        let c = combo(&[("S1", -8, 3), ("h*S4", 10, 1)], Basis::Hprime);
        assert_eq!(combo_from_map(&map_from_combo(&c), Basis::Hprime).unwrap(), c);
    }

    #[test]
    fn allowlist_requires_exact_values() {
        let list = Allowlist::embedded();
        let e = &list.entries[0];
        let computed = combo_from_map(&e.computed, Basis::Hprime).unwrap();
        let expected = combo_from_map(&e.expected, Basis::Hprime).unwrap();
        assert!(list.accepts(e.case_id, &computed, &expected).is_some());
        let shifted = computed.checked_add(&combo(&[("S1", 1, 1)], Basis::Hprime)).unwrap();
        assert!(list.accepts(e.case_id, &shifted, &expected).is_none());
    }
}
