//! Runs the engine against the expected table and renders reports and
//! derivation traces. All output is deterministic for a fixed config.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cases::{assemble_total, CaseContext, CaseId, CaseResult};
use crate::error::{Error, Result};
use crate::expected::{combo_from_map, map_from_combo, Allowlist, CoeffMap, ExpectedTable};
use crate::invariants::{Basis, InvariantCombo};
use crate::numeric::{default_moment_indices, line_integral_suite, monte_carlo_moments, LineCheck, MomentCheck};
use crate::poly::{FormalPoly, PiPoly};
use crate::residue::{normalize_kernel, sphere_moment, split_by_monomial};
use crate::scalar::{format_rational, GaussianRational};
use crate::xi::XiRational;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Modelling decisions echoed in every report header.
pub const DECISIONS: &[&str] = &[
    "S1 is the component derivative sum_{j<4} (Dv_j w_j + v_j Dw_j); g(v^T, w^T) at x_0 is read as sum_{j<4} v_j w_j, with no metric-derivative correction.",
    "H_jk and G_ij are independent formal parameters; no relation between them is imposed.",
    "K = -(3/2) h'(0) at x_0, so the K basis is obtained by h -> -(2/3) K on the h-graded invariants.",
    "The interior term is printed verbatim and not recomputed.",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Md,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    /// Requested cases; empty means all.
    pub cases: Vec<CaseId>,
    pub basis: Basis,
    pub format: Format,
    pub out_path: Option<String>,
    pub numeric_check: bool,
    /// Monte-Carlo sample count for the sphere-moment check.
    pub samples: usize,
    /// Random parameter instantiations for the line-integral check.
    pub instances: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            cases: Vec::new(),
            basis: Basis::Hprime,
            format: Format::Json,
            out_path: None,
            numeric_check: false,
            samples: 1_000_000,
            instances: 100,
            tol: 1e-9,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if self.numeric_check && (self.samples == 0 || self.instances == 0) {
            return Err(Error::Config("samples must be positive when the numeric check is on".into()));
        }
        Ok(())
    }

    /// Requested cases in canonical order, without duplicates.
    pub fn case_ids(&self) -> Vec<CaseId> {
        if self.cases.is_empty() {
            return CaseId::ALL.to_vec();
        }
        CaseId::ALL.iter().copied().filter(|id| self.cases.contains(id)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Recomputation equals the expected value exactly.
    Match,
    /// Differs, but the difference is accepted by a reviewed allowlist entry.
    Allowlisted,
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseEntry {
    pub case_id: CaseId,
    pub computed: CoeffMap,
    pub expected: CoeffMap,
    /// `computed - expected`.
    pub diff: CoeffMap,
    #[serde(rename = "match")]
    pub matches: bool,
    pub status: Status,
    pub paper_anchor: String,
    pub trace_path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allowlist_reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TotalEntry {
    pub name: String,
    pub parts: Vec<String>,
    pub computed: CoeffMap,
    pub expected: CoeffMap,
    /// Sum of the expected values of the parts.
    pub expected_parts_sum: CoeffMap,
    /// The expected parts add up to the expected total.
    pub expected_consistent: bool,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Part of `computed - expected` not accounted for by allowlisted parts.
    pub unexplained_diff: CoeffMap,
    pub paper_anchor: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Flag {
    pub id: String,
    pub label: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BothBases {
    pub hprime: CoeffMap,
    #[serde(rename = "K")]
    pub k: CoeffMap,
}

impl BothBases {
    fn of(c: &InvariantCombo) -> Self {
        Self {
            hprime: map_from_combo(c),
            k: map_from_combo(&c.substitute_k()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremEntry {
    pub name: String,
    pub paper_anchor: String,
    pub interior: String,
    /// Boundary coefficients as stated (K basis).
    pub statement: CoeffMap,
    /// Sum of the recomputed parts.
    pub recomputed: BothBases,
    /// Sum of the expected-table parts.
    pub table: BothBases,
    pub recomputed_matches_statement: bool,
    pub table_matches_statement: bool,
    pub flags: Vec<Flag>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericReport {
    pub instances: usize,
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub line_integrals: Vec<LineCheck>,
    pub sphere_moments: Vec<MomentCheck>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub engine_version: String,
    pub config: RunConfig,
    pub decisions: Vec<String>,
    pub cases: Vec<CaseEntry>,
    pub totals: Vec<TotalEntry>,
    pub theorems: Vec<TheoremEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_check: Option<NumericReport>,
}

impl Report {
    /// 0 when every case matches or is allowlisted and any numeric check
    /// passed; 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        let cases_ok = self.cases.iter().all(|c| c.status != Status::Mismatch);
        let numeric_ok = self.numeric_check.as_ref().is_none_or(|n| n.passed);
        if cases_ok && numeric_ok {
            0
        } else {
            2
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Md => Ok(to_markdown(self)),
            Format::Csv => to_csv(self),
        }
    }
}

pub fn trace_path(id: CaseId) -> String {
    format!("traces/{id}.txt")
}

/// Everything a run produces: the report plus the raw case results.
pub struct RunOutput {
    pub report: Report,
    pub results: Vec<CaseResult>,
}

fn in_basis(c: &InvariantCombo, basis: Basis) -> Result<CoeffMap> {
    Ok(map_from_combo(&c.in_basis(basis)?))
}

pub fn run(config: &RunConfig, ctx: &CaseContext, table: &ExpectedTable, allow: &Allowlist) -> Result<RunOutput> {
    config.validate()?;
    let ids = config.case_ids();
    let mut results = ctx.compute_all(&ids)?;
    let basis = config.basis;

    let mut cases = Vec::with_capacity(results.len());
    for r in results.iter_mut() {
        let expected = table
            .case_combo(r.id)?
            .ok_or_else(|| Error::Parse(format!("expected table has no entry for {}", r.id)))?;
        r.expected = Some(expected.clone());
        let cmp = r.computed.compare(&expected)?;
        let allowed = if cmp.matches { None } else { allow.accepts(r.id, &r.computed, &expected) };
        let status = match (cmp.matches, allowed) {
            (true, _) => Status::Match,
            (false, Some(_)) => Status::Allowlisted,
            (false, None) => Status::Mismatch,
        };
        cases.push(CaseEntry {
            case_id: r.id,
            computed: in_basis(&r.computed, basis)?,
            expected: in_basis(&expected, basis)?,
            diff: in_basis(&cmp.diff, basis)?,
            matches: cmp.matches,
            status,
            paper_anchor: table.case(r.id).map(|c| c.anchor.clone()).unwrap_or_default(),
            trace_path: trace_path(r.id),
            allowlist_reason: allowed.map(|e| e.reason.clone()),
        });
    }

    let computed_of = |name: &str| -> Option<InvariantCombo> {
        let id = name.parse::<CaseId>().ok()?;
        results.iter().find(|r| r.id == id).map(|r| r.computed.clone())
    };
    let allowlisted_diff = |name: &str| -> Option<InvariantCombo> {
        let id = name.parse::<CaseId>().ok()?;
        let entry = cases.iter().find(|c| c.case_id == id)?;
        (entry.status == Status::Allowlisted)
            .then(|| combo_from_map(&entry.diff, basis).ok())
            .flatten()
    };

    let mut totals = Vec::new();
    let mut computed_totals: Vec<(String, InvariantCombo)> = Vec::new();
    for t in &table.totals {
        // Parts may be cases or earlier totals; a total is reported only
        // when every case underneath it was requested.
        let parts: Option<Vec<InvariantCombo>> = t
            .parts
            .iter()
            .map(|p| {
                computed_of(p).or_else(|| computed_totals.iter().find(|(n, _)| n == p).map(|(_, c)| c.clone()))
            })
            .collect();
        let Some(parts) = parts else { continue };
        let computed = assemble_total(&parts)?;
        let expected = combo_from_map(&t.coeffs, table.basis)?;
        let parts_sum = table.sum_of_parts(&t.parts)?;
        let diff = computed.compare(&expected)?.diff.in_basis(basis)?;
        let explained = t
            .parts
            .iter()
            .filter_map(|p| allowlisted_diff(p))
            .try_fold(InvariantCombo::zero(basis), |acc, d| acc.checked_add(&d))?;
        totals.push(TotalEntry {
            name: t.name.clone(),
            parts: t.parts.clone(),
            computed: in_basis(&computed, basis)?,
            expected: in_basis(&expected, basis)?,
            expected_parts_sum: in_basis(&parts_sum, basis)?,
            expected_consistent: parts_sum == expected,
            matches: computed == expected,
            unexplained_diff: map_from_combo(&diff.sub(&explained)?),
            paper_anchor: t.anchor.clone(),
        });
        computed_totals.push((t.name.clone(), computed));
    }

    let mut theorems = Vec::new();
    for th in &table.theorems {
        let parts: Option<Vec<InvariantCombo>> = th
            .parts
            .iter()
            .map(|p| {
                computed_of(p).or_else(|| computed_totals.iter().find(|(n, _)| n == p).map(|(_, c)| c.clone()))
            })
            .collect();
        let Some(parts) = parts else { continue };
        let recomputed = assemble_total(&parts)?;
        let table_sum = th
            .parts
            .iter()
            .try_fold(InvariantCombo::zero(table.basis), |acc, p| acc.checked_add(&table.named_combo(p)?))?;
        let statement = combo_from_map(&th.coeffs, th.basis)?;
        theorems.push(theorem_entry(th.name.clone(), th.anchor.clone(), th.interior.clone(), &statement, &recomputed, &table_sum)?);
    }

    let numeric_check = if config.numeric_check {
        Some(numeric_report(config, &results)?)
    } else {
        None
    };

    Ok(RunOutput {
        report: Report {
            engine_version: ENGINE_VERSION.to_string(),
            config: config.clone(),
            decisions: DECISIONS.iter().map(|s| s.to_string()).collect(),
            cases,
            totals,
            theorems,
            numeric_check,
        },
        results,
    })
}

fn theorem_entry(
    name: String,
    anchor: String,
    interior: String,
    statement: &InvariantCombo,
    recomputed: &InvariantCombo,
    table_sum: &InvariantCombo,
) -> Result<TheoremEntry> {
    let rec_k = recomputed.in_basis(statement.basis)?;
    let tab_k = table_sum.in_basis(statement.basis)?;
    let labels = statement.basis.labels();
    let h_labels = Basis::Hprime.labels();
    let mut flags = Vec::new();
    for k in 0..labels.len() {
        let stated = &statement.coeffs[k];
        if tab_k.coeffs[k] != *stated {
            flags.push(Flag {
                id: "k_substitution_tension".into(),
                label: labels[k].into(),
                message: format!(
                    "{}: the statement prints {} but the expected h-basis total {} {} maps to {} under h = -(2/3) K",
                    labels[k],
                    format_rational(stated),
                    format_rational(&table_sum.coeffs[k]),
                    h_labels[k],
                    format_rational(&tab_k.coeffs[k]),
                ),
            });
        }
        if rec_k.coeffs[k] != *stated {
            flags.push(Flag {
                id: "recomputation_differs".into(),
                label: labels[k].into(),
                message: format!(
                    "{}: recomputed {} (from {} {}), statement {}",
                    labels[k],
                    format_rational(&rec_k.coeffs[k]),
                    format_rational(&recomputed.coeffs[k]),
                    h_labels[k],
                    format_rational(stated),
                ),
            });
        }
    }
    Ok(TheoremEntry {
        name,
        paper_anchor: anchor,
        interior,
        statement: map_from_combo(statement),
        recomputed: BothBases::of(recomputed),
        table: BothBases::of(table_sum),
        recomputed_matches_statement: rec_k == *statement,
        table_matches_statement: tab_k == *statement,
        flags,
    })
}

/// Nonzero traced integrands of all evaluated terms, labelled by case.
pub fn collect_integrands(results: &[CaseResult]) -> Vec<(String, XiRational)> {
    let mut out = Vec::new();
    for r in results {
        for t in &r.terms {
            if !t.value.integrand.is_zero() {
                out.push((format!("{} {:?}", r.id, t.index), t.value.integrand.clone()));
            }
        }
    }
    out
}

fn numeric_report(config: &RunConfig, results: &[CaseResult]) -> Result<NumericReport> {
    let line_integrals = line_integral_suite(&collect_integrands(results), config.instances, config.seed, config.tol)?;
    let sphere_moments = monte_carlo_moments(&default_moment_indices(), config.samples, config.seed, 3.0);
    let passed = line_integrals.iter().all(|c| c.passed) && sphere_moments.iter().all(|m| m.passed);
    Ok(NumericReport {
        instances: config.instances,
        samples: config.samples,
        tol: config.tol,
        seed: config.seed,
        line_integrals,
        sphere_moments,
        passed,
    })
}

pub fn to_json(report: &Report) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Nonzero coefficients in basis order, e.g. `-8/3 S1 + 6 h*S2`.
fn show(map: &CoeffMap) -> String {
    if map.is_empty() {
        return "0".into();
    }
    let mut items: Vec<(&String, &String)> = map.iter().collect();
    items.sort_by_key(|(l, _)| l.chars().last());
    items
        .iter()
        .map(|(l, c)| format!("{c} {l}"))
        .collect::<Vec<_>>()
        .join(" + ")
        .replace("+ -", "- ")
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Match => "match",
        Status::Allowlisted => "allowlisted",
        Status::Mismatch => "MISMATCH",
    }
}

pub fn to_markdown(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Boundary residue report (engine {})\n", report.engine_version);
    let _ = writeln!(s, "Basis: {:?}. Coefficients are exact, in units of pi^2.\n", report.config.basis);
    for d in &report.decisions {
        let _ = writeln!(s, "- {d}");
    }
    let _ = writeln!(s, "\n## Cases\n");
    let _ = writeln!(s, "| case | computed | expected | status | anchor |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for c in &report.cases {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            c.case_id,
            show(&c.computed),
            show(&c.expected),
            status_str(c.status),
            c.paper_anchor
        );
    }
    if !report.totals.is_empty() {
        let _ = writeln!(s, "\n## Totals\n");
        let _ = writeln!(s, "| total | computed | expected | expected parts consistent | unexplained difference |");
        let _ = writeln!(s, "|---|---|---|---|---|");
        for t in &report.totals {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} |",
                t.name,
                show(&t.computed),
                show(&t.expected),
                t.expected_consistent,
                show(&t.unexplained_diff)
            );
        }
    }
    for th in &report.theorems {
        let _ = writeln!(s, "\n## Theorem {} ({})\n", th.name, th.paper_anchor);
        let _ = writeln!(s, "Interior: {}\n", th.interior);
        let _ = writeln!(s, "| source | h basis | K basis |");
        let _ = writeln!(s, "|---|---|---|");
        let _ = writeln!(s, "| statement | | {} |", show(&th.statement));
        let _ = writeln!(s, "| expected table | {} | {} |", show(&th.table.hprime), show(&th.table.k));
        let _ = writeln!(s, "| recomputed | {} | {} |", show(&th.recomputed.hprime), show(&th.recomputed.k));
        for f in &th.flags {
            let _ = writeln!(s, "\n- FLAG {}: {}", f.id, f.message);
        }
    }
    if let Some(n) = &report.numeric_check {
        let worst = n.line_integrals.iter().map(|c| c.relative_error).fold(0.0, f64::max);
        let max_sigma = n.sphere_moments.iter().map(|m| m.sigmas).fold(0.0, f64::max);
        let _ = writeln!(s, "\n## Numeric check\n");
        let _ = writeln!(
            s,
            "{} line integrals, worst relative error {worst:.3e} (tol {:e}); {} sphere moments, worst deviation {max_sigma:.2} sigma at {} samples; passed: {}",
            n.line_integrals.len(),
            n.tol,
            n.sphere_moments.len(),
            n.samples,
            n.passed
        );
    }
    s
}

pub fn to_csv(report: &Report) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(["section", "name", "computed", "expected", "status", "anchor"]).map_err(err)?;
    for c in &report.cases {
        w.write_record(["case", c.case_id.as_str(), &show(&c.computed), &show(&c.expected), status_str(c.status), &c.paper_anchor])
            .map_err(err)?;
    }
    for t in &report.totals {
        let status = if t.matches { "match" } else if t.unexplained_diff.is_empty() { "explained" } else { "MISMATCH" };
        w.write_record(["total", &t.name, &show(&t.computed), &show(&t.expected), status, &t.paper_anchor])
            .map_err(err)?;
    }
    for th in &report.theorems {
        let status = if th.recomputed_matches_statement { "match" } else { "differs" };
        w.write_record(["theorem_K", &th.name, &show(&th.recomputed.k), &show(&th.statement), status, &th.paper_anchor])
            .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn imag_str(im: &crate::scalar::Rational) -> String {
    use num_traits::One;
    if im.is_one() {
        "i".into()
    } else if (-im).is_one() {
        "-i".into()
    } else if im.denom().is_one() {
        format!("{}i", format_rational(im))
    } else {
        format!("({})i", format_rational(im))
    }
}

/// Unambiguous rendering: `(-4/15)i`, `(1/2 - 3i)`.
fn complex_str(c: &GaussianRational) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => format_rational(&c.re),
        (true, false) => imag_str(&c.im),
        (false, false) => {
            let im = imag_str(&c.im);
            match im.strip_prefix('-') {
                Some(rest) => format!("({} - {rest})", format_rational(&c.re)),
                None => format!("({} + {im})", format_rational(&c.re)),
            }
        }
    }
}

/// A pure rational function of `t` as `[p(t)] / [(t-i)^a (t+i)^b]`.
pub fn kernel_string(f: &XiRational) -> String {
    let mut terms = Vec::new();
    for (k, c) in f.numerator().iter().enumerate().rev() {
        let c = c.constant_term();
        if c.is_zero() {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        let coeff = if var.is_empty() {
            complex_str(&c)
        } else if c == GaussianRational::from_int(1) {
            String::new()
        } else if c == GaussianRational::from_int(-1) {
            "-".into()
        } else {
            format!("{} ", complex_str(&c))
        };
        terms.push(format!("{coeff}{var}"));
    }
    let num = match terms.len() {
        0 => "0".to_string(),
        1 => terms.remove(0),
        _ => format!("({})", terms.join(" + ").replace("+ -", "- ")),
    };
    let mut den = String::new();
    for (root, order) in [("(t-i)", f.pole_order_plus()), ("(t+i)", f.pole_order_minus())] {
        match order {
            0 => {}
            1 => den.push_str(root),
            p => {
                let _ = write!(den, "{root}^{p}");
            }
        }
    }
    if den.is_empty() {
        num
    } else {
        format!("{num}/[{den}]")
    }
}

fn pi_str(p: &PiPoly) -> String {
    let pi = match p.pi_power {
        0 => String::new(),
        1 => " pi".into(),
        k => format!(" pi^{k}"),
    };
    if p.poly.is_constant() {
        format!("{}{pi}", complex_str(&p.poly.constant_term()))
    } else {
        format!("[{}]{pi}", p.poly)
    }
}

/// Step-by-step derivation of one case.
pub fn render_trace(r: &CaseResult, anchor: &str) -> Result<String> {
    let mut s = String::new();
    let _ = writeln!(s, "derivation trace for {} (engine {ENGINE_VERSION})", r.id);
    let _ = writeln!(s, "anchor: {anchor}");
    for d in DECISIONS {
        let _ = writeln!(s, "convention: {d}");
    }
    for t in &r.terms {
        let (rr, l, k, j, a) = t.index;
        let v = &t.value;
        let _ = writeln!(s, "\n[term] r={rr} l={l} k={k} j={j} |alpha|={a}");
        let _ = writeln!(s, "  left symbol: {}", t.left_name);
        let _ = writeln!(s, "  right symbol: {}", t.right_name);
        let _ = writeln!(s, "  coefficient (-i)^(|alpha|+j+k+1)/(alpha!(j+k+1)!) = {}", v.coefficient);
        if let Some(note) = &v.note {
            let _ = writeln!(s, "  note: {note}");
        }
        let _ = writeln!(
            s,
            "  [pi+] left factor after d_xn^{j}, pi^+ and d_xi^{k}: {} nonzero matrix entries",
            v.left.nonzero_count()
        );
        for (row, col, e) in v.left.entries() {
            let _ = writeln!(s, "    ({row},{col}) {e}");
        }
        let _ = writeln!(
            s,
            "  [right] right factor after d_xn^{k} and d_xi^{}: {} nonzero matrix entries",
            j + 1,
            v.right.nonzero_count()
        );
        let _ = writeln!(s, "  [trace] tr[left x right] at |xi'| = 1, split by monomial:");
        let parts = split_by_monomial(&v.integrand);
        if parts.is_empty() {
            let _ = writeln!(s, "    identically zero");
        }
        for (m, g) in &parts {
            let Some((scale, kernel)) = normalize_kernel(g) else { continue };
            let line = kernel.integrate_line()?;
            let _ = writeln!(
                s,
                "    {} * {m}:  int {} dt = {}",
                complex_str(&scale),
                kernel_string(&kernel),
                pi_str(&line)
            );
        }
        let _ = writeln!(s, "  [residue] line integral = {}", pi_str(&v.line));
        let _ = writeln!(s, "  [sphere] moments used:");
        for (alpha, _) in v.line.poly.split_xi() {
            let m = sphere_moment(alpha);
            let _ = writeln!(
                s,
                "    int_{{|xi'|=1}} xi1^{} xi2^{} xi3^{} = {}",
                alpha[0],
                alpha[1],
                alpha[2],
                pi_str(&PiPoly::new(FormalPoly::constant(m.coeff), m.pi_power))
            );
        }
        let _ = writeln!(s, "  [value] {}", pi_str(&v.value));
    }
    for (label, value) in &r.identities {
        let _ = writeln!(s, "\n[identity] {label} = {value}");
    }
    let _ = writeln!(s, "\n[projection] {}", r.computed);
    if let Some(e) = &r.expected {
        let cmp = r.computed.compare(e)?;
        let _ = writeln!(s, "[expected] {e}");
        let _ = writeln!(s, "[compare] match = {}, computed - expected = {}", cmp.matches, cmp.diff);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn kernel_rendering() {
        let f = XiRational::new(vec![FormalPoly::zero(), FormalPoly::one()], 3, 2);
        assert_eq!(kernel_string(&f), "t/[(t-i)^3(t+i)^2]");
        assert_eq!(pi_str(&f.integrate_line().unwrap()), "1/8 pi");
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig { tol: 0.0, ..Default::default() }.validate().is_err());
        assert!(RunConfig { numeric_check: true, samples: 0, ..Default::default() }.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn format_parsing() {
        assert_eq!("md".parse::<Format>().unwrap(), Format::Md);
        assert!("xml".parse::<Format>().is_err());
    }
}
