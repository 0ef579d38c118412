//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria that cannot pass are listed in `KNOWN_RED` together with the
//! reason; the test fails if the observed red set differs from it in either
//! direction.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_traits::Zero;

use hodge_residue::cases::{assemble_total, CaseContext, CaseId, PHI_B, PSI_B};
use hodge_residue::clifford::CliffordMatrix;
use hodge_residue::expected::{Allowlist, CoeffMap, ExpectedTable};
use hodge_residue::numeric::{default_moment_indices, monte_carlo_moments};
use hodge_residue::poly::{FormalPoly, PiPoly};
use hodge_residue::report::{run, to_json, RunConfig, Status};
use hodge_residue::residue::sphere_moment;
use hodge_residue::scalar::{rat, GaussianRational, PiScalar};
use hodge_residue::xi::XiRational;

use common::*;

/// Criterion 8: the recomputed totals do not map onto the stated K
/// coefficients because five sub-case values in the expected table differ
/// from the recomputation (all allowlisted with traces); the expected-table
/// totals themselves do map exactly.
const KNOWN_RED: &[u32] = &[8];

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn clifford_relations() -> (bool, String) {
    let start = Instant::now();
    let failures = generator_relation_failures();
    let trace_ok = CliffordMatrix::identity().trace() == XiRational::from_int(16);
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && trace_ok && elapsed < Duration::from_secs(1);
    (pass, format!("64 relations, {} failing, tr(id)=16: {trace_ok}, {elapsed:.2?}", failures.len()))
}

fn pi_plus_anchors() -> (bool, String) {
    let half_i = |s: i64| FormalPoly::constant(GaussianRational::new(rat(0, 1), rat(s, 2)));
    let a = XiRational::inv_norm_pow(1).pi_plus() == XiRational::new(vec![half_i(-1)], 1, 0);
    let xi_sq = XiRational::new(vec![FormalPoly::zero(), FormalPoly::zero(), FormalPoly::from_int(1)], 1, 1);
    let b = xi_sq.pi_plus() == XiRational::new(vec![half_i(1)], 1, 0);
    (a && b, format!("1/(1+xi^2): {a}, xi^2/(1+xi^2): {b}"))
}

fn sphere_moments() -> (bool, String) {
    let four_pi = |n: i64, d: i64| PiScalar::rational(4 * n, d, 1);
    let mut exact = sphere_moment([0, 0, 0]) == four_pi(1, 1);
    for j in 0..3 {
        for k in 0..3 {
            let mut a = [0u8; 3];
            a[j] += 1;
            a[k] += 1;
            let want = if j == k { four_pi(1, 3) } else { four_pi(0, 1) };
            exact &= sphere_moment(a).coeff == want.coeff;
        }
    }
    let indices = default_moment_indices();
    for &a in &indices {
        if a.iter().any(|e| e % 2 == 1) {
            exact &= sphere_moment(a).coeff.is_zero();
        }
    }
    let mc = monte_carlo_moments(&indices, 1_000_000, 0, 3.0);
    let worst = mc.iter().map(|m| m.sigmas).fold(0.0, f64::max);
    let mc_ok = mc.iter().all(|m| m.passed);
    (
        exact && mc_ok,
        format!("exact: {exact}; Monte Carlo {} moments, worst {worst:.2} sigma at 1e6 samples", mc.len()),
    )
}

fn trace_identities() -> (bool, String) {
    let (l, r) = divergence_identity();
    let div = l == r;
    let (l, r) = connection_identity();
    let conn = l == r;
    let basic = basic_traces().iter().all(|(l, r)| l == r);
    let vanish = vanishing_traces().iter().all(|t| t.is_zero());
    let q0 = connection_constant_pairs().iter().all(|(l, r)| l == r);
    (
        div && conn && basic && vanish && q0,
        format!("divergence {div}, connection {conn}, basic {basic}, vanishing {vanish}, Q_0^2 {q0}"),
    )
}

fn compositions() -> (bool, String) {
    let (c1, h1) = first_order_composition();
    let (c2, h2) = second_order_composition();
    let (lead, next) = inverse_symbol_components();
    let first = c1 == h1;
    let second = c2 == h2;
    let inverse = lead == CliffordMatrix::identity() && next.is_zero();
    (
        first && second && inverse,
        format!("sigma_-1(nabla D^-1) {first}, sigma_-2(nabla D^-2) {second}, p1 q_-1 = Id and order -1 vanishes {inverse}"),
    )
}

fn case_table(table: &ExpectedTable, allow: &Allowlist) -> (bool, String) {
    let start = Instant::now();
    let ctx = CaseContext::default();
    let out = run(&RunConfig::default(), &ctx, table, allow).expect("engine runs");
    let elapsed = start.elapsed();
    let count = |s: Status| out.report.cases.iter().filter(|c| c.status == s).count();
    let traces_exist = out
        .report
        .cases
        .iter()
        .filter(|c| c.status == Status::Allowlisted)
        .all(|c| root().join(&c.trace_path).is_file());
    let pass = count(Status::Mismatch) == 0
        && out.report.cases.len() == CaseId::ALL.len()
        && traces_exist
        && elapsed < Duration::from_secs(60);
    (
        pass,
        format!(
            "{} exact, {} allowlisted with traces, {} mismatched, {elapsed:.2?}",
            count(Status::Match),
            count(Status::Allowlisted),
            count(Status::Mismatch)
        ),
    )
}

fn double_entry(table: &ExpectedTable) -> (bool, String) {
    let ctx = CaseContext::default();
    let res = ctx.compute_all(CaseId::ALL).expect("engine runs");
    let get = |id: CaseId| &res.iter().find(|r| r.id == id).unwrap().raw;
    let mut ok = true;
    for (name, parts) in [("PhiB", PHI_B), ("PsiB", PSI_B)] {
        let combos: Vec<_> = parts
            .iter()
            .map(|&id| res.iter().find(|r| r.id == id).unwrap().computed.clone())
            .collect();
        let summed = assemble_total(&combos).unwrap();
        let raw = parts
            .iter()
            .try_fold(PiPoly::zero(2), |acc, &id| acc.checked_add(get(id)))
            .unwrap();
        ok &= hodge_residue::invariants::InvariantCombo::project(&raw).unwrap() == summed;
        let names: Vec<String> = parts.iter().map(|id| id.to_string()).collect();
        ok &= table.sum_of_parts(&names).unwrap() == table.named_combo(name).unwrap();
    }
    let map = |pairs: &[(&str, &str)]| -> CoeffMap { pairs.iter().map(|(l, v)| (l.to_string(), v.to_string())).collect() };
    ok &= table.total("PhiB").unwrap().coeffs
        == map(&[("S1", "-8/3"), ("h*S2", "6"), ("S3", "8"), ("h*S4", "-44/3"), ("S5", "8")]);
    ok &= table.total("PsiB").unwrap().coeffs
        == map(&[("S1", "-8/3"), ("h*S2", "8"), ("S3", "-8"), ("h*S4", "-16/3"), ("S5", "-8")]);
    (ok, "recomputed and expected sub-cases each sum to their totals".into())
}

fn k_substitution(table: &ExpectedTable, allow: &Allowlist) -> (bool, String) {
    let ctx = CaseContext::default();
    let out = run(&RunConfig::default(), &ctx, table, allow).expect("engine runs");
    let th = |name: &str| out.report.theorems.iter().find(|t| t.name == name).unwrap();
    let (phi, psi) = (th("Phi"), th("Psi"));
    let get = |m: &CoeffMap, l: &str| m.get(l).cloned().unwrap_or_else(|| "0".into());
    let phi_ok = get(&phi.recomputed.k, "K*S4") == "88/9" && get(&phi.recomputed.k, "K*S2") == "-4";
    let psi_ok = get(&psi.recomputed.k, "K*S4") == "32/9";
    let table_ok = get(&phi.table.k, "K*S4") == "88/9"
        && get(&phi.table.k, "K*S2") == "-4"
        && get(&psi.table.k, "K*S4") == "32/9";
    let flagged = psi
        .flags
        .iter()
        .any(|f| f.id == "k_substitution_tension" && f.label == "K*S2");
    (
        phi_ok && psi_ok && flagged,
        format!(
            "recomputed Phi K*S4={} K*S2={}, Psi K*S4={}; expected-table totals map exactly: {table_ok}; S2 tension flagged: {flagged}",
            get(&phi.recomputed.k, "K*S4"),
            get(&phi.recomputed.k, "K*S2"),
            get(&psi.recomputed.k, "K*S4"),
        ),
    )
}

fn numeric_oracle(table: &ExpectedTable, allow: &Allowlist) -> (bool, String) {
    let config = RunConfig {
        numeric_check: true,
        samples: 10_000,
        ..RunConfig::default()
    };
    let out = run(&config, &CaseContext::default(), table, allow).expect("engine runs");
    let n = out.report.numeric_check.expect("numeric check requested");
    let worst = n.line_integrals.iter().map(|c| c.relative_error).fold(0.0, f64::max);
    let pass = n.line_integrals.len() == 100 && n.line_integrals.iter().all(|c| c.passed) && n.tol <= 1e-9;
    (pass, format!("{} instances, worst relative error {worst:.1e}", n.line_integrals.len()))
}

fn determinism(table: &ExpectedTable, allow: &Allowlist) -> (bool, String) {
    let render = || {
        let out = run(&RunConfig::default(), &CaseContext::default(), table, allow).expect("engine runs");
        to_json(&out.report).expect("serializes")
    };
    let (a, b) = (render(), render());
    (a == b, format!("{} bytes, identical: {}", a.len(), a == b))
}

#[test]
fn acceptance() {
    let table = ExpectedTable::embedded();
    let allow = Allowlist::embedded();
    let checks: Vec<(u32, &'static str, (bool, String))> = vec![
        (1, "Clifford relation suite", clifford_relations()),
        (2, "pi+ anchors", pi_plus_anchors()),
        (3, "sphere moments", sphere_moments()),
        (4, "trace identities", trace_identities()),
        (5, "composition cross-checks", compositions()),
        (6, "single-case coefficients", case_table(&table, &allow)),
        (7, "double-entry totals", double_entry(&table)),
        (8, "K substitution", k_substitution(&table, &allow)),
        (9, "numeric oracle", numeric_oracle(&table, &allow)),
        (10, "determinism", determinism(&table, &allow)),
    ];
    let outcomes: Vec<Outcome> = checks
        .into_iter()
        .map(|(id, title, (pass, detail))| Outcome { id, title, pass, detail })
        .collect();
    for o in &outcomes {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let note = if KNOWN_RED.contains(&o.id) { " [known red]" } else { "" };
        println!("criterion {:>2}: {verdict} {}{note}: {}", o.id, o.title, o.detail);
    }
    let red: BTreeSet<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert_eq!(red, KNOWN_RED.iter().copied().collect::<BTreeSet<_>>());
}
