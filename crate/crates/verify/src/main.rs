use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use hodge_residue::cases::{CaseContext, CaseId};
use hodge_residue::expected::{Allowlist, ExpectedTable};
use hodge_residue::invariants::Basis;
use hodge_residue::report::{render_trace, run, Format, RunConfig};

#[derive(Parser)]
#[command(name = "verify", version, about = "Recompute boundary residue terms and compare them with the expected table")]
struct Cli {
    /// Expected-values table (defaults to the embedded copy).
    #[arg(long, global = true)]
    expected: Option<PathBuf>,
    /// Reviewed-discrepancy allowlist (defaults to the embedded copy).
    #[arg(long, global = true)]
    allowlist: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run cases and compare against the expected table.
    Check(CheckArgs),
    /// Print the expected table.
    Table {
        #[arg(long, default_value = "md")]
        format: Format,
    },
    /// Write the derivation trace of one case.
    Trace {
        case: CaseId,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Case to run; repeatable.
    #[arg(long = "case", conflicts_with = "all")]
    cases: Vec<CaseId>,
    /// Run every case (the default when no --case is given).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value = "hprime")]
    basis: Basis,
    #[arg(long, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check line integrals by quadrature and sphere moments by Monte Carlo.
    #[arg(long)]
    numeric_check: bool,
    /// Monte-Carlo samples for the sphere moments.
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    /// Random parameter instantiations for the line integrals.
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn load_table(path: Option<&Path>) -> Result<ExpectedTable> {
    match path {
        None => Ok(ExpectedTable::embedded()),
        Some(p) => {
            let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(ExpectedTable::from_json(&s)?)
        }
    }
}

fn load_allowlist(path: Option<&Path>) -> Result<Allowlist> {
    match path {
        None => Ok(Allowlist::embedded()),
        Some(p) => {
            let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(Allowlist::from_json(&s)?)
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn table_markdown(t: &ExpectedTable) -> String {
    let show = |m: &hodge_residue::expected::CoeffMap| {
        if m.is_empty() {
            "0".to_string()
        } else {
            m.iter().map(|(l, c)| format!("{c} {l}")).collect::<Vec<_>>().join(", ")
        }
    };
    let mut s = format!("| entry | coefficients ({}) | anchor |\n|---|---|---|\n", t.unit);
    for c in &t.cases {
        s += &format!("| {} | {} | {} |\n", c.case_id, show(&c.coeffs), c.anchor);
    }
    for c in &t.totals {
        s += &format!("| {} = {} | {} | {} |\n", c.name, c.parts.join(" + "), show(&c.coeffs), c.anchor);
    }
    for c in &t.theorems {
        s += &format!("| theorem {} ({:?} basis) | {} | {} |\n", c.name, c.basis, show(&c.coeffs), c.anchor);
    }
    s
}

fn execute(cli: Cli) -> Result<u8> {
    let table = load_table(cli.expected.as_deref())?;
    let allow = load_allowlist(cli.allowlist.as_deref())?;
    match cli.command {
        Command::Check(a) => {
            let config = RunConfig {
                cases: if a.all { Vec::new() } else { a.cases },
                basis: a.basis,
                format: a.format,
                out_path: a.out.as_ref().map(|p| p.display().to_string()),
                numeric_check: a.numeric_check,
                samples: a.samples,
                instances: a.instances,
                tol: a.tol,
                seed: a.seed,
            };
            let ctx = CaseContext::default();
            let output = run(&config, &ctx, &table, &allow)?;
            emit(&output.report.render(a.format)?, a.out.as_deref())?;
            Ok(output.report.exit_code() as u8)
        }
        Command::Table { format } => {
            let text = match format {
                Format::Md => table_markdown(&table),
                _ => serde_json::to_string_pretty(&table)? + "\n",
            };
            emit(&text, None)?;
            Ok(0)
        }
        Command::Trace { case, out } => {
            let config = RunConfig {
                cases: vec![case],
                ..RunConfig::default()
            };
            let ctx = CaseContext::default();
            let output = run(&config, &ctx, &table, &allow)?;
            let anchor = table.case(case).map(|c| c.anchor.as_str()).unwrap_or("");
            let text = render_trace(&output.results[0], anchor)?;
            emit(&text, Some(&out))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
