//! `nestrec`: evaluate, count, verify, prune and explore nested recursions.
//!
//! Exit codes: 0 success or agreement, 1 a divergence, death or failed
//! identity, 2 usage and validation errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use nestrec::explore::{atlas_csv, run_explore, ExploreOptions, Grid};
use nestrec::families::{FamilyParams, SeedOrigin, Validity};
use nestrec::frequency::{from_closed_form, FrequencySequence};
use nestrec::input::Document;
use nestrec::pruning::{build_prefix, correspondence_holds, prune, sample_sizes};
use nestrec::recursion::{evaluate, frequency_of, EvalResult, RecursionSpec, Status};
use nestrec::tree::{cell_count_split, follow_length, initial_conditions, TreeSpec};
use nestrec::verify::run_verify;
use nestrec::{export, oeis};

const STRIPPED_ENV: &str = "NESTREC_OEIS_STRIPPED";

#[derive(Parser)]
#[command(name = "nestrec", version, about = "Slow solutions of nested recursions and their labelled trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a recursion from its initial conditions.
    Eval {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 100)]
        n: u64,
        /// Comma-separated initial conditions overriding the family's seed.
        #[arg(long, value_delimiter = ',')]
        ic: Option<Vec<u64>>,
        #[command(flatten)]
        output: Output,
    },
    /// Cell counts C_T(1..n) of a labelled tree.
    Tree {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 100)]
        n: u64,
        /// Print the count at n split by child position instead.
        #[arg(long)]
        split: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Initial conditions read off the tree.
    Ic {
        #[command(flatten)]
        input: Input,
        /// Length; defaults to the family's IC length.
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Frequency sequence, compared with the closed form when a tree is known.
    Freq {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10_000)]
        n: u64,
        #[arg(long)]
        vmax: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Check the recursion against the tree's cell counts.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10_000)]
        n: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Prune T(n) and check T*(n) = T(n - removed).
    Prune {
        #[command(flatten)]
        input: Input,
        /// Tree size, or the largest sampled size with --samples.
        #[arg(long)]
        n: u64,
        /// Check this many seeded random sizes up to n.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print the full report with the movement log as JSON.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep a parameter grid and write an atlas.
    Explore {
        /// For example `order_one s=0..2 j=1..4 m=-2..j+2`.
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 1000)]
        n: u64,
        /// Also prune T(prune_n) at every point.
        #[arg(long)]
        prune_n: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Write a sequence to a file, b-file format by default.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1000)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Bfile)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look a prefix up in a local OEIS `stripped` snapshot.
    OeisMatch {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 30)]
        n: u64,
        /// Snapshot path; falls back to NESTREC_OEIS_STRIPPED.
        #[arg(long)]
        stripped: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Family name and key=value parameters, e.g. `order_one s=1 j=3 m=1`.
    #[arg(value_name = "FAMILY [KEY=VALUE]...")]
    params: Vec<String>,
    /// Family as JSON, e.g. '{"family":"order_one","s":1,"j":3,"m":1}'.
    #[arg(long = "family", value_name = "JSON")]
    family_json: Option<String>,
    /// JSON file holding a family, a recursion with initial conditions, or a tree.
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
    Bfile,
}

/// Result of a command that ran to completion.
enum Verdict {
    Ok,
    Negative,
}

impl Input {
    fn resolve(&self) -> Result<Document> {
        let sources = [!self.params.is_empty(), self.family_json.is_some(), self.spec.is_some()];
        match sources.iter().filter(|&&s| s).count() {
            0 => bail!("no input: give a family name, --family JSON or --spec PATH"),
            1 => {}
            _ => bail!("give exactly one of a family name, --family or --spec"),
        }
        if let Some((name, pairs)) = self.params.split_first() {
            return Ok(Document::Family(FamilyParams::parse(name, pairs)?));
        }
        if let Some(json) = &self.family_json {
            let family: FamilyParams = serde_json::from_str(json).context("--family is not a family document")?;
            return Ok(Document::Family(family));
        }
        Ok(Document::load(self.spec.as_ref().unwrap())?)
    }
}

fn checked(family: FamilyParams) -> Result<FamilyParams> {
    if let Validity::Invalid(msg) = family.validate() {
        bail!("{family}: {msg}");
    }
    Ok(family)
}

fn tree_of(doc: &Document) -> Result<TreeSpec> {
    match doc {
        Document::Family(f) => Ok(checked(*f)?.tree_of()?),
        Document::Tree(t) => Ok(*t),
        Document::Recursion(_) => bail!("a raw recursion has no tree; use a family or a tree document"),
    }
}

/// Offsets and initial conditions for evaluation.
fn recursion_of(doc: &Document, ic: Option<Vec<u64>>) -> Result<(RecursionSpec, Vec<u64>)> {
    match doc {
        Document::Family(f) => {
            let f = checked(*f)?;
            let ic = match ic {
                Some(ic) => ic,
                None => f.initial_seed()?.ic,
            };
            Ok((f.offsets()?, ic))
        }
        Document::Recursion(r) => Ok((r.spec.clone(), ic.unwrap_or_else(|| r.ic.clone()))),
        Document::Tree(_) => bail!("a tree document has no recursion; use `tree` or a family"),
    }
}

/// The sequence a command acts on: recursion values, or cell counts for a
/// tree document.
fn sequence(doc: &Document, n: u64, ic: Option<Vec<u64>>) -> Result<EvalResult> {
    if let Document::Tree(t) = doc {
        return Ok(EvalResult {
            values: initial_conditions(t, n),
            status: Status::Alive,
        });
    }
    let (spec, ic) = recursion_of(doc, ic)?;
    let mut result = evaluate(&spec, &ic, n.max(ic.len() as u64))?;
    result.values.truncate(n as usize);
    Ok(result)
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format_values(values: &[u64], format: Format) -> Result<String> {
    Ok(match format {
        Format::Table => export::to_table(values)?,
        Format::Csv => export::to_csv(values)?,
        Format::Bfile => export::to_bfile(values)?,
        Format::Json => serde_json::to_string(values)? + "\n",
    })
}

fn report_death(status: &Status) -> Verdict {
    match status {
        Status::Alive => Verdict::Ok,
        Status::DeadAt { index, reason } => {
            eprintln!("undefined at n={index}: {}", serde_json::to_value(reason).unwrap().as_str().unwrap());
            Verdict::Negative
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run_eval(input: &Input, n: u64, ic: Option<Vec<u64>>, output: &Output) -> Result<Verdict> {
    let doc = input.resolve()?;
    if matches!(doc, Document::Tree(_)) {
        bail!("a tree document has no recursion; use `tree` or a family");
    }
    let result = sequence(&doc, n, ic)?;
    let text = match output.format {
        Format::Json => json_line(&result)?,
        _ if result.values.is_empty() => String::new(),
        f => format_values(&result.values, f)?,
    };
    emit(output, &text)?;
    Ok(report_death(&result.status))
}

fn run_tree(input: &Input, n: u64, split: bool, output: &Output) -> Result<Verdict> {
    let tree = tree_of(&input.resolve()?)?;
    if !split {
        emit(output, &format_values(&initial_conditions(&tree, n), output.format)?)?;
        return Ok(Verdict::Ok);
    }
    let counts = cell_count_split(&tree, n);
    let text = match output.format {
        Format::Json => json_line(&counts)?,
        Format::Csv => {
            let mut s = String::from("position,cells\n");
            for (i, c) in counts.iter().enumerate() {
                writeln!(s, "{},{c}", i + 1)?;
            }
            s
        }
        f => format_values(&counts, f)?,
    };
    emit(output, &text)?;
    Ok(Verdict::Ok)
}

fn run_ic(input: &Input, n: Option<u64>, output: &Output) -> Result<Verdict> {
    let values = match input.resolve()? {
        Document::Family(f) => {
            let seed = checked(f)?.initial_seed()?;
            match n {
                Some(n) => match seed.origin {
                    SeedOrigin::Tree { tree } | SeedOrigin::AdjacentTree { tree, .. } => initial_conditions(&tree, n),
                    SeedOrigin::Fixed => bail!("{f} has fixed initial conditions of length {}", seed.ic.len()),
                },
                None => seed.ic,
            }
        }
        Document::Tree(t) => initial_conditions(&t, n.unwrap_or_else(|| follow_length(&t))),
        Document::Recursion(r) => r.ic,
    };
    emit(output, &format_values(&values, output.format)?)?;
    Ok(Verdict::Ok)
}

fn run_freq(input: &Input, n: u64, vmax: Option<u64>, output: &Output) -> Result<Verdict> {
    let doc = input.resolve()?;
    let result = sequence(&doc, n, None)?;
    let mut verdict = report_death(&result.status);
    let mut empirical = frequency_of(&result.values)?;
    if let Some(v) = vmax {
        empirical = empirical.truncated(v);
    }
    let tree = match &doc {
        Document::Family(f) => f.tree_of().ok().or_else(|| f.conjectured_tree()),
        Document::Tree(t) => Some(*t),
        Document::Recursion(_) => None,
    };
    let closed = tree.map(|t| from_closed_form(&t, empirical.end().saturating_sub(1)));
    if let Some(c) = &closed {
        if let Some(v) = (empirical.start..empirical.end()).find(|&v| empirical.get(v) != c.get(v)) {
            eprintln!("empirical and closed-form frequencies differ at v={v}");
            verdict = Verdict::Negative;
        }
    }
    emit(output, &format_frequencies(&empirical, closed.as_ref(), output.format)?)?;
    Ok(verdict)
}

fn format_frequencies(emp: &FrequencySequence, closed: Option<&FrequencySequence>, format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            return json_line(&serde_json::json!({
                "start": emp.start,
                "empirical": emp.counts,
                "closed_form": closed.map(|c| &c.counts),
            }))
        }
        Format::Csv => out.push_str(if closed.is_some() { "v,phi,closed\n" } else { "v,phi\n" }),
        _ => {}
    }
    for v in emp.start..emp.end() {
        let phi = emp.get(v).unwrap();
        let extra = closed.and_then(|c| c.get(v));
        match (format, extra) {
            (Format::Csv, Some(c)) => writeln!(out, "{v},{phi},{c}")?,
            (Format::Csv, None) => writeln!(out, "{v},{phi}")?,
            (Format::Bfile, _) => writeln!(out, "{v} {phi}")?,
            (_, Some(c)) => writeln!(out, "{v:>6}  {phi:>4}  {c:>4}")?,
            (_, None) => writeln!(out, "{v:>6}  {phi:>4}")?,
        }
    }
    Ok(out)
}

fn run_verify_cmd(input: &Input, n: u64, output: &Output) -> Result<Verdict> {
    let family = match input.resolve()? {
        Document::Family(f) => checked(f)?,
        _ => bail!("verify needs a family"),
    };
    let report = run_verify(&family, n)?;
    let text = match (output.format, &report.divergence) {
        (Format::Json, _) => json_line(&report)?,
        (_, None) => format!("agree: {family} for n <= {n} (initial conditions: {})\n", report.ic_length),
        (_, Some(d)) => format!(
            "diverge: {family} first differs at n={} (recursion {}, tree {})\n",
            d.index,
            d.recursion.map_or("undefined".to_string(), |v| v.to_string()),
            d.tree
        ),
    };
    emit(output, &text)?;
    Ok(if report.agrees() { Verdict::Ok } else { Verdict::Negative })
}

fn run_prune(input: &Input, n: u64, samples: Option<usize>, seed: u64, trace: bool, output: &Output) -> Result<Verdict> {
    let family = match input.resolve()? {
        Document::Family(f) => checked(f)?,
        _ => bail!("prune needs a family"),
    };
    let rule = family.prune_rule()?;
    let tree = rule.tree()?;
    let Some(count) = samples else {
        let before = build_prefix(&tree, n);
        let report = prune(&before, rule)?;
        let text = if trace || output.format == Format::Json {
            json_line(&report)?
        } else {
            format!(
                "{family}: T*({n}) {} T({}) (removed {}, expected {}, infeasible deletions {}, precondition {})\n",
                if report.identity { "=" } else { "!=" },
                n - report.removed,
                report.removed,
                report.expected_removed,
                report.infeasible,
                if report.precondition_met { "met" } else { "not met" }
            )
        };
        emit(output, &text)?;
        return Ok(if report.identity { Verdict::Ok } else { Verdict::Negative });
    };
    let sizes = sample_sizes(&rule, n, count, seed)?;
    let mut failed = Vec::new();
    for &size in &sizes {
        let before = build_prefix(&tree, size);
        let report = prune(&before, rule)?;
        if !(report.identity && report.removed == report.expected_removed && correspondence_holds(&before, &report)) {
            failed.push(size);
        }
    }
    let mut text = format!("{family}: seed {seed}, {} sizes in {}..={n}, {} failed\n", sizes.len(), rule.min_n(), failed.len());
    if !failed.is_empty() {
        writeln!(text, "failed at n = {failed:?}")?;
    }
    emit(output, &text)?;
    Ok(if failed.is_empty() { Verdict::Ok } else { Verdict::Negative })
}

fn run_explore_cmd(grid: &str, n: u64, prune_n: Option<u64>, output: &Output) -> Result<Verdict> {
    let rows = run_explore(&Grid::parse(grid)?, &ExploreOptions { n_max: n, prune_n })?;
    let text = match output.format {
        Format::Json => json_line(&rows)?,
        Format::Csv | Format::Table => atlas_csv(&rows),
        Format::Bfile => bail!("the atlas has no b-file form; use csv or json"),
    };
    emit(output, &text)?;
    Ok(Verdict::Ok)
}

fn run_export(input: &Input, n: u64, format: Format, out: Option<PathBuf>) -> Result<Verdict> {
    let doc = input.resolve()?;
    let result = sequence(&doc, n, None)?;
    let verdict = report_death(&result.status);
    emit(&Output { format, out }, &format_values(&result.values, format)?)?;
    Ok(verdict)
}

fn run_oeis_match(input: &Input, n: u64, stripped: Option<PathBuf>) -> Result<Verdict> {
    let path = stripped
        .or_else(|| std::env::var_os(STRIPPED_ENV).map(PathBuf::from))
        .ok_or_else(|| anyhow!("no OEIS snapshot: pass --stripped or set {STRIPPED_ENV}"))?;
    let entries = oeis::load_stripped(&path)?;
    let result = sequence(&input.resolve()?, n, None)?;
    let ids = oeis::matches(&result.values, &entries)?;
    if ids.is_empty() {
        eprintln!("no entry contains the first {} terms", result.values.len());
    }
    for id in &ids {
        println!("{id}");
    }
    Ok(Verdict::Ok)
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Eval { input, n, ic, output } => run_eval(&input, n, ic, &output),
        Command::Tree { input, n, split, output } => run_tree(&input, n, split, &output),
        Command::Ic { input, n, output } => run_ic(&input, n, &output),
        Command::Freq { input, n, vmax, output } => run_freq(&input, n, vmax, &output),
        Command::Verify { input, n, output } => run_verify_cmd(&input, n, &output),
        Command::Prune {
            input,
            n,
            samples,
            seed,
            trace,
            output,
        } => run_prune(&input, n, samples, seed, trace, &output),
        Command::Explore {
            grid,
            n,
            prune_n,
            output,
        } => run_explore_cmd(&grid, n, prune_n, &output),
        Command::Export { input, n, format, out } => run_export(&input, n, format, out),
        Command::OeisMatch { input, n, stripped } => run_oeis_match(&input, n, stripped),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
