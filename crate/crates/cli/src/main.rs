use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use samelson_core::cohomology::{make_group, p1_table_with, steenrod_p1, Family, GroupSpec, P1Row};
use samelson_core::oracle::{brute_force_p1, OracleLimits};
use samelson_core::report::{NormalityJson, P1Report, TableReport};
use samelson_core::samelson::{
    normality, samelson_table_with, ClosedFormVerdict, NormalityReason, P1Verdict, SamelsonTable,
};
use samelson_core::sweep::{sweep, SweepConfig};
use samelson_core::{Error, Execution};

#[derive(Parser)]
#[command(name = "samelson", version, about = "Steenrod P^1 on H*(BG; Z/p) and Samelson product tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Markdown,
    Json,
}

#[derive(Args)]
struct GroupArgs {
    /// SU, Sp, SO (= SO(2n)), SOOdd (= SO(2n+1)), G2, F4, E6, E7, E8
    #[arg(long)]
    group: Family,
    /// Rank parameter; not needed for exceptional groups.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: u32,
}

impl GroupArgs {
    fn build(&self) -> Result<GroupSpec, Error> {
        let n = match (self.n, self.group.is_exceptional()) {
            (Some(n), _) => n,
            (None, true) => 0,
            (None, false) => return Err(Error::Usage(format!("--n is required for {}", self.group))),
        };
        make_group(self.group, n, self.p)
    }
}

#[derive(Subcommand)]
enum Command {
    /// P^1 of one or all generators of H*(BG; Z/p).
    P1 {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        generator: Option<String>,
        /// Recompute with the brute-force torus oracle and compare.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long, default_value_t = OracleLimits::default().max_rank)]
        max_rank: u32,
        #[arg(long, default_value_t = OracleLimits::default().max_prime)]
        max_prime: u32,
    },
    /// Samelson product verdicts for every pair of generators of a p-regular group.
    Table {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Homotopy normality of SO(2n-1) in SO(2n) localized at p.
    Normality {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Tables, normality verdicts and valuation checks over a range of groups and primes.
    Sweep {
        /// Comma-separated families.
        #[arg(long, value_delimiter = ',', required = true)]
        families: Vec<Family>,
        /// Inclusive rank range `a..b`.
        #[arg(long, value_parser = parse_range)]
        n_range: (u32, u32),
        #[arg(long)]
        p_max: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Write the corpus here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Disable data parallelism.
        #[arg(long)]
        sequential: bool,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Pretty JSON with a trailing newline; re-parsing and re-emitting gives the same bytes.
fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn mark_p1(v: P1Verdict) -> &'static str {
    match v {
        P1Verdict::Nontrivial => "✓",
        P1Verdict::Trivial => "—",
        P1Verdict::Unsupported => "?",
    }
}

fn mark_closed(v: ClosedFormVerdict) -> &'static str {
    match v {
        ClosedFormVerdict::Nontrivial => "✓",
        ClosedFormVerdict::Trivial => "—",
        ClosedFormVerdict::NotApplicable => "?",
    }
}

struct Failure {
    code: u8,
    stdout: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.exit_code() as u8, stdout: String::new(), message: e.to_string() }
    }
}

fn cmd_p1(
    ga: &GroupArgs,
    generator: Option<&str>,
    verify: bool,
    format: OutputFormat,
    limits: OracleLimits,
) -> Result<String, Failure> {
    let g = ga.build()?;
    let rows: Vec<P1Row> = match generator {
        Some(x) => vec![P1Row { generator: x.to_string(), value: steenrod_p1(&g, x)? }],
        None => p1_table_with(&g, Execution::Parallel)?,
    };
    let mut report = P1Report::new(&g, &rows);
    let mut mismatches = Vec::new();
    if verify {
        for (row, out) in rows.iter().zip(report.rows.iter_mut()) {
            let oracle = brute_force_p1(&g, &row.generator, limits)?;
            let agree = oracle == row.value;
            out.oracle = Some(if agree { "agree" } else { "disagree" }.to_string());
            if !agree {
                mismatches.push(format!(
                    "P1({}): engine {} but oracle {}",
                    row.generator,
                    row.value.render(),
                    oracle.render()
                ));
            }
        }
    }

    let mut s = String::new();
    match format {
        OutputFormat::Json => s = json(&report),
        OutputFormat::Text => {
            writeln!(s, "{}, p = {}", report.group, report.p).unwrap();
            for r in &report.rows {
                writeln!(s, "P1({}) = {}", r.generator, r.p1).unwrap();
                if let Some(o) = &r.oracle {
                    writeln!(s, "  oracle: {o}").unwrap();
                }
            }
        }
        OutputFormat::Markdown => {
            writeln!(s, "### {}, p = {}\n", report.group, report.p).unwrap();
            if verify {
                s.push_str("| x | P¹x | oracle |\n|---|---|---|\n");
            } else {
                s.push_str("| x | P¹x |\n|---|---|\n");
            }
            for r in &report.rows {
                match &r.oracle {
                    Some(o) => writeln!(s, "| {} | `{}` | {o} |", r.generator, r.p1),
                    None => writeln!(s, "| {} | `{}` |", r.generator, r.p1),
                }
                .unwrap();
            }
        }
    }
    if mismatches.is_empty() {
        Ok(s)
    } else {
        Err(Failure { code: 3, stdout: s, message: format!("verification failed:\n{}", mismatches.join("\n")) })
    }
}

fn render_table(t: &SamelsonTable, format: OutputFormat) -> String {
    let report = TableReport::from(t);
    let mut s = String::new();
    match format {
        OutputFormat::Json => return json(&report),
        OutputFormat::Text => {
            writeln!(s, "{}, p = {}", t.group, t.p).unwrap();
            for (c, r) in t.cells.iter().zip(&report.pairs) {
                let w: Vec<String> = r.witnesses.iter().map(|w| format!("{}:{}", w.k, w.c)).collect();
                write!(
                    s,
                    "{:<15} P1: {:<11}  closed form: {:<14}  {}",
                    format!("<{}, {}>", r.a, r.b),
                    r.p1,
                    r.closed_form,
                    c.agreement.as_str()
                )
                .unwrap();
                if !w.is_empty() {
                    write!(s, "  witnesses: {}", w.join(" ")).unwrap();
                }
                if let Some(f) = &r.flag {
                    write!(s, "  [{f}]").unwrap();
                }
                s.push('\n');
            }
        }
        OutputFormat::Markdown => {
            writeln!(s, "### {}, p = {}\n", t.group, t.p).unwrap();
            s.push_str("| a | b | P¹ | closed form | agree | witnesses |\n|---|---|---|---|---|---|\n");
            for (c, r) in t.cells.iter().zip(&report.pairs) {
                let w: Vec<String> = r.witnesses.iter().map(|w| format!("{} ({})", w.k, w.c)).collect();
                writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.a,
                    r.b,
                    mark_p1(c.p1),
                    mark_closed(c.closed_form),
                    c.agreement.as_str(),
                    w.join(", ")
                )
                .unwrap();
            }
        }
    }
    s
}

fn cmd_table(ga: &GroupArgs, format: OutputFormat) -> Result<String, Failure> {
    let g = ga.build()?;
    Ok(render_table(&samelson_table_with(&g, Execution::Parallel)?, format))
}

fn cmd_normality(n: u32, p: u32, format: OutputFormat) -> Result<String, Failure> {
    let r = normality(n, p)?;
    let j = NormalityJson::from(&r);
    let verdict = if j.verdict == "normal" { "normal" } else { "not normal" };
    let mut s = String::new();
    match format {
        OutputFormat::Json => s = json(&j),
        OutputFormat::Text | OutputFormat::Markdown => {
            if format == OutputFormat::Markdown {
                s.push_str("| n | p | SO(2n-1) in SO(2n) | reason |\n|---|---|---|---|\n");
                writeln!(s, "| {n} | {p} | {verdict} | {} |", j.reason).unwrap();
            } else {
                writeln!(s, "SO({}) in {}, p = {p}: {verdict}", 2 * n - 1, j.group).unwrap();
                writeln!(s, "reason: {}", j.reason).unwrap();
            }
            if let NormalityReason::EulerWitness { coefficient, .. } = r.reason {
                let c = coefficient.value();
                if format == OutputFormat::Markdown {
                    s.push('\n');
                }
                let signed = coefficient.symmetric();
                if signed < 0 {
                    writeln!(s, "coefficient: {c} = {signed} (mod {p})").unwrap();
                } else {
                    writeln!(s, "coefficient: {c} (mod {p})").unwrap();
                }
            }
        }
    }
    Ok(s)
}

fn cmd_sweep(
    families: &[Family],
    (n_min, n_max): (u32, u32),
    p_max: u32,
    format: OutputFormat,
    sequential: bool,
) -> Result<String, Failure> {
    let report = sweep(&SweepConfig {
        families: families.to_vec(),
        n_min,
        n_max,
        p_max,
        exec: if sequential { Execution::Sequential } else { Execution::Parallel },
    });
    let s = match format {
        OutputFormat::Json => json(&report),
        OutputFormat::Text | OutputFormat::Markdown => {
            let st = &report.stats;
            let mut s = String::new();
            writeln!(s, "tables: {}, cells: {}", st.tables, st.cells).unwrap();
            writeln!(
                s,
                "agree: {}, disagree: {}, edge cases: {}, unsupported: {}",
                st.agree, st.disagree, st.edge_cases, st.unsupported
            )
            .unwrap();
            writeln!(
                s,
                "normality rows: {}, valuation checks: {} ({} inconsistent)",
                report.normality.len(),
                report.mahowald.len(),
                st.mahowald_inconsistent
            )
            .unwrap();
            for e in &report.errors {
                writeln!(s, "error: {} p = {}: {}", e.group, e.p, e.error).unwrap();
            }
            s
        }
    };
    if report.errors.is_empty() {
        Ok(s)
    } else {
        Err(Failure {
            code: 1,
            stdout: s,
            message: format!("{} cell(s) failed", report.errors.len()),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut output_path = None;
    let result = match &cli.command {
        Command::P1 { group, generator, verify, format, max_rank, max_prime } => cmd_p1(
            group,
            generator.as_deref(),
            *verify,
            *format,
            OracleLimits { max_rank: *max_rank, max_prime: *max_prime },
        ),
        Command::Table { group, format } => cmd_table(group, *format),
        Command::Normality { n, p, format } => cmd_normality(*n, *p, *format),
        Command::Sweep { families, n_range, p_max, format, output, sequential } => {
            output_path = output.clone();
            cmd_sweep(families, *n_range, *p_max, *format, *sequential)
        }
    };
    let (code, out, err) = match result {
        Ok(s) => (0, s, None),
        Err(f) => (f.code, f.stdout, Some(f.message)),
    };
    match output_path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &out) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{out}"),
    }
    if let Some(msg) = err {
        eprintln!("error: {msg}");
    }
    ExitCode::from(code)
}
