//! The `dnacode` command line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{
    self, BoundMode, BoundParams, BoundReport, BoundValue, RandomCodingMode,
};
use crate::code::{self, ValidationOptions};
use crate::construct::{self, ConstructionReport};
use crate::error::{Error, Result};
use crate::limits::EnumerationCap;
use crate::report::{fixed, versioned};
use crate::search::{self, SearchMode};
use crate::sequence::QarySequence;
use crate::similarity::SimilarityKind;
use crate::text::{parse_sequences, render, render_all};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Additive,
    Deletion,
    Block,
}

impl From<KindArg> for SimilarityKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Additive => SimilarityKind::Additive,
            KindArg::Deletion => SimilarityKind::Deletion,
            KindArg::Block => SimilarityKind::Block,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Dna,
    DistanceOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    #[value(name = "31")]
    Orbits,
    #[value(name = "32")]
    Symmetrized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SizeMode {
    Exact,
    Analytic,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UpperKind {
    Theorem21,
    Hamming,
    DeletionAsymptotic,
}

#[derive(Debug, Parser)]
#[command(name = "dnacode", version, about = "Construct, validate, search and bound DNA codes")]
pub struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Print sequences as digits even for q = 4.
    #[arg(long, global = true)]
    digits: bool,

    /// Reserved; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SeqFile {
    /// Alphabet size.
    #[arg(long, default_value_t = 4)]
    q: u8,

    /// Sequence file, one word per line; `-` reads standard input.
    file: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pairwise similarity matrix of the sequences in a file.
    Similarity {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        input: SeqFile,
    },
    /// Reverse complement of every sequence in a file.
    Revcomp {
        #[command(flatten)]
        input: SeqFile,
    },
    /// Check a code against the DNA-code conditions.
    Validate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        distance: usize,
        /// Check pairing and distance (the default).
        #[arg(long, conflicts_with = "distance_only")]
        dna: bool,
        /// Check only the similarity limit.
        #[arg(long)]
        distance_only: bool,
        #[arg(long)]
        fail_fast: bool,
        #[command(flatten)]
        input: SeqFile,
    },
    /// Build a code from one of the constructions.
    Construct {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        /// Also write the codewords to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// A Tenengolts single-deletion class.
    Tenengolts {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "gamma", conflicts_with = "best")]
        beta: Option<u8>,
        #[arg(long, requires = "beta", conflicts_with = "best")]
        gamma: Option<usize>,
        /// The largest class with beta = 0.
        #[arg(long)]
        best: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive maximum-code search.
    Search {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        distance: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "dna")]
        mode: ModeArg,
        /// Time budget in seconds.
        #[arg(long, default_value_t = 600.0)]
        budget: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact similarity distribution table.
    Enumerate {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Size and rate bounds.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
}

#[derive(Debug, Subcommand)]
enum BoundsCommand {
    /// Distance fraction where the rate bound vanishes.
    Critical {
        #[arg(long)]
        q: u8,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Rate lower bound at one distance fraction.
    Rate {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        d: f64,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Size lower bound at finite length.
    Size {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        distance: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "exact")]
        mode: SizeMode,
    },
    /// Size upper bounds.
    Upper {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        distance: usize,
        #[arg(long, value_enum, default_value = "theorem21")]
        bound: UpperKind,
    },
    /// Rate bound sampled on an even grid.
    Curve {
        #[arg(long)]
        q: u8,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0.01)]
        from: f64,
        /// Right end of the grid; defaults to just inside the domain.
        #[arg(long)]
        to: Option<f64>,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
}

/// Result of a subcommand before it is printed.
struct Outcome {
    body: String,
    code: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, code: EXIT_OK }
    }
}

struct Ctx {
    format: Option<Format>,
    digits: bool,
    cap: EnumerationCap,
}

impl Ctx {
    fn acgt(&self, q: u8) -> bool {
        q == 4 && !self.digits
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&versioned(v)).expect("json values serialize");
    s.push('\n');
    s
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_REFUSED,
        Error::NumericalFailure(_) | Error::ConstructionInvalid(_) => EXIT_INVALID,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let cap = match EnumerationCap::from_env() {
        Ok(cap) => cap,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let ctx = Ctx {
        format: cli.format,
        digits: cli.digits,
        cap,
    };
    match dispatch(&ctx, cli.command) {
        Ok(outcome) => {
            if out.write_all(outcome.body.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(ctx: &Ctx, command: Command) -> Result<Outcome> {
    match command {
        Command::Similarity { kind, input } => similarity(ctx, kind.into(), &input),
        Command::Revcomp { input } => revcomp(ctx, &input),
        Command::Validate {
            kind,
            distance,
            dna: _,
            distance_only,
            fail_fast,
            input,
        } => validate(ctx, kind.into(), distance, !distance_only, fail_fast, &input),
        Command::Construct {
            theorem,
            q,
            n,
            output,
        } => construct(ctx, theorem, q, n, output.as_deref()),
        Command::Tenengolts {
            q,
            n,
            beta,
            gamma,
            best,
            output,
        } => tenengolts(ctx, q, n, beta.zip(gamma), best, output.as_deref()),
        Command::Search {
            q,
            n,
            distance,
            kind,
            mode,
            budget,
            output,
        } => search(ctx, q, n, distance, kind.into(), mode, budget, output.as_deref()),
        Command::Enumerate { q, n, kind } => enumerate(ctx, q, n, kind.into()),
        Command::Bounds { which } => bounds_command(ctx, which),
    }
}

fn read_input(input: &SeqFile) -> Result<Vec<QarySequence>> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::invalid(format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(&input.file)
            .map_err(|e| Error::invalid(format!("reading {}: {e}", input.file.display())))?
    };
    parse_sequences(&text, input.q)
}

fn write_code(path: &Path, words: &[QarySequence], acgt: bool) -> Result<()> {
    fs::write(path, render_all(words, acgt))
        .map_err(|e| Error::invalid(format!("writing {}: {e}", path.display())))
}

fn similarity(ctx: &Ctx, kind: SimilarityKind, input: &SeqFile) -> Result<Outcome> {
    let words = read_input(input)?;
    let acgt = ctx.acgt(input.q);
    let names: Vec<String> = words.iter().map(|x| render(x, acgt)).collect();
    let matrix: Vec<Vec<usize>> = words
        .iter()
        .map(|x| words.iter().map(|y| kind.eval(x.symbols(), y.symbols())).collect())
        .collect();
    let body = match ctx.format_or(Format::Text) {
        Format::Json => json_text(json!({
            "kind": kind.as_str(),
            "sequences": names,
            "matrix": matrix,
        })),
        Format::Csv => {
            let mut s = format!(",{}\n", names.join(","));
            for (name, row) in names.iter().zip(&matrix) {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                s.push_str(&format!("{name},{}\n", cells.join(",")));
            }
            s
        }
        Format::Text => {
            let width = names.first().map_or(1, String::len);
            let mut s = format!("{:width$} {}\n", "", names.join(" "));
            for (name, row) in names.iter().zip(&matrix) {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
                s.push_str(&format!("{name} {}\n", cells.join(" ")));
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

fn revcomp(ctx: &Ctx, input: &SeqFile) -> Result<Outcome> {
    let words: Vec<QarySequence> = read_input(input)?
        .iter()
        .map(QarySequence::reverse_complement)
        .collect();
    let acgt = ctx.acgt(input.q);
    let body = match ctx.format_or(Format::Text) {
        Format::Json => json_text(json!({
            "sequences": words.iter().map(|x| render(x, acgt)).collect::<Vec<_>>(),
        })),
        _ => render_all(&words, acgt),
    };
    Ok(Outcome::ok(body))
}

fn validate(
    ctx: &Ctx,
    kind: SimilarityKind,
    distance: usize,
    dna: bool,
    fail_fast: bool,
    input: &SeqFile,
) -> Result<Outcome> {
    let words = read_input(input)?;
    let report = code::validate(&words, kind, distance, dna, ValidationOptions { fail_fast })?;
    let acgt = ctx.acgt(input.q);
    let body = match ctx.format_or(Format::Text) {
        Format::Json => {
            let mut v = report.to_json(acgt);
            v["mode"] = json!(if dna { "dna" } else { "distance-only" });
            json_text(v)
        }
        _ => report.to_text(acgt),
    };
    Ok(Outcome {
        body,
        code: if report.valid { EXIT_OK } else { EXIT_INVALID },
    })
}

fn construction_text(r: &ConstructionReport, acgt: bool) -> String {
    let mut s = format!(
        "case: {}\nclaimed size: {}\nachieved size: {}\nvalidated: {}\n",
        r.case_used, r.claimed_size, r.achieved_size, r.validated
    );
    for a in &r.anomalies {
        s.push_str(&format!("anomaly: {a}\n"));
    }
    s.push_str(&render_all(r.code.codewords(), acgt));
    s
}

fn construct(
    ctx: &Ctx,
    theorem: TheoremArg,
    q: u8,
    n: usize,
    output: Option<&Path>,
) -> Result<Outcome> {
    let report = match theorem {
        TheoremArg::Orbits => construct::construct_theorem31(q, n, ctx.cap)?,
        TheoremArg::Symmetrized => {
            let (_, class) = construct::best_tenengolts_class(q, n, ctx.cap)?;
            construct::symmetrize_theorem32(&class, ctx.cap)?
        }
    };
    let acgt = ctx.acgt(q);
    if let Some(path) = output {
        write_code(path, report.code.codewords(), acgt)?;
    }
    let body = match ctx.format_or(Format::Json) {
        Format::Text | Format::Csv => construction_text(&report, acgt),
        Format::Json => json_text(report.to_json(acgt)),
    };
    Ok(Outcome::ok(body))
}

fn tenengolts(
    ctx: &Ctx,
    q: u8,
    n: usize,
    class: Option<(u8, usize)>,
    best: bool,
    output: Option<&Path>,
) -> Result<Outcome> {
    let (beta, gamma, words) = match (class, best) {
        (Some((b, g)), false) => (b, g, construct::tenengolts_code(q, n, b, g, ctx.cap)?),
        (None, true) => {
            let (g, words) = construct::best_tenengolts_class(q, n, ctx.cap)?;
            (0, g, words)
        }
        _ => return Err(Error::invalid("give either --beta and --gamma, or --best")),
    };
    let acgt = ctx.acgt(q);
    if let Some(path) = output {
        write_code(path, &words, acgt)?;
    }
    let body = match ctx.format_or(Format::Text) {
        Format::Json => json_text(json!({
            "q": q,
            "n": n,
            "beta": beta,
            "gamma": gamma,
            "size": words.len(),
            "code": words.iter().map(|x| render(x, acgt)).collect::<Vec<_>>(),
        })),
        _ => format!(
            "# T({beta},{gamma}) q={q} n={n} size={}\n{}",
            words.len(),
            render_all(&words, acgt)
        ),
    };
    Ok(Outcome::ok(body))
}

#[allow(clippy::too_many_arguments)]
fn search(
    ctx: &Ctx,
    q: u8,
    n: usize,
    distance: usize,
    kind: SimilarityKind,
    mode: ModeArg,
    budget: f64,
    output: Option<&Path>,
) -> Result<Outcome> {
    if !(budget.is_finite() && budget > 0.0) {
        return Err(Error::invalid("--budget must be a positive number of seconds"));
    }
    let mode = match mode {
        ModeArg::Dna => SearchMode::Dna,
        ModeArg::DistanceOnly => SearchMode::DistanceOnly,
    };
    let result = search::max_code(
        q,
        n,
        distance,
        kind,
        mode,
        Duration::from_secs_f64(budget),
        ctx.cap,
    )?;
    let acgt = ctx.acgt(q);
    if let Some(path) = output {
        write_code(path, &result.code, acgt)?;
    }
    let body = match ctx.format_or(Format::Json) {
        Format::Json => json_text(result.to_json(acgt)),
        _ => format!(
            "size: {}\noptimal: {}\n{}",
            result.size,
            result.optimal,
            render_all(&result.code, acgt)
        ),
    };
    Ok(Outcome {
        body,
        code: if result.optimal { EXIT_OK } else { EXIT_REFUSED },
    })
}

fn enumerate(ctx: &Ctx, q: u8, n: usize, kind: SimilarityKind) -> Result<Outcome> {
    let table = search::enumerate_distribution(q, n, kind, ctx.cap)?;
    let body = match ctx.format_or(Format::Csv) {
        Format::Json => json_text(table.to_json()),
        _ => table.to_csv(),
    };
    Ok(Outcome::ok(body))
}

fn bound_text(r: &BoundReport) -> String {
    let value = match &r.value {
        BoundValue::Integer(v) => v.to_string(),
        BoundValue::Rational(v) => format!("{}/{}", v.numer(), v.denom()),
        BoundValue::Float(v) => format!("{v:.10}"),
    };
    let mut s = format!("{}: {value} ({})", r.name, r.mode.as_str());
    if r.vacuous {
        s.push_str(" vacuous");
    }
    if let Some(note) = &r.note {
        s.push_str(&format!(" [{note}]"));
    }
    s.push('\n');
    s
}

fn report_out(ctx: &Ctx, r: &BoundReport) -> Outcome {
    Outcome::ok(match ctx.format_or(Format::Json) {
        Format::Json => json_text(r.to_json()),
        _ => bound_text(r),
    })
}

fn bounds_command(ctx: &Ctx, which: BoundsCommand) -> Result<Outcome> {
    match which {
        BoundsCommand::Critical { q, kind } => {
            let p = bounds::critical_fraction(q, kind.into())?;
            Ok(Outcome::ok(match ctx.format_or(Format::Json) {
                Format::Json => json_text(p.to_json()),
                _ => format!("{:.10}\n", p.d_star),
            }))
        }
        BoundsCommand::Rate { q, d, kind } => {
            Ok(report_out(ctx, &bounds::rate_lower(q, d, kind.into())?))
        }
        BoundsCommand::Size {
            q,
            n,
            distance,
            kind,
            mode,
        } => {
            let kind = kind.into();
            let r = match mode {
                SizeMode::Exact => bounds::random_coding_size_bound(
                    q,
                    n,
                    distance,
                    kind,
                    RandomCodingMode::Exact,
                    ctx.cap,
                )?,
                SizeMode::Analytic => bounds::random_coding_size_bound(
                    q,
                    n,
                    distance,
                    kind,
                    RandomCodingMode::Analytic,
                    ctx.cap,
                )?,
                SizeMode::Asymptotic => bounds::asymptotic_size_lower(q, n, distance, kind)?,
            };
            Ok(report_out(ctx, &r))
        }
        BoundsCommand::Upper {
            q,
            n,
            distance,
            bound,
        } => {
            let r = match bound {
                UpperKind::Theorem21 => {
                    if distance != 1 {
                        return Err(Error::invalid("this bound is for distance 1"));
                    }
                    exact_report("theorem21_upper_bound", q, n, distance, code::theorem21_upper_bound(q, n)?)
                }
                UpperKind::Hamming => exact_report(
                    "hamming_upper_bound",
                    q,
                    n,
                    distance,
                    code::hamming_upper_bound(q, n, distance)?,
                ),
                UpperKind::DeletionAsymptotic => code::asymptotic_deletion_upper(q, n, distance)?,
            };
            Ok(report_out(ctx, &r))
        }
        BoundsCommand::Curve {
            q,
            kind,
            from,
            to,
            steps,
        } => {
            let kind: SimilarityKind = kind.into();
            let limit = bounds::rate_domain_limit(q, kind);
            let to = to.unwrap_or(if kind == SimilarityKind::Block {
                limit
            } else {
                limit - 1e-6
            });
            let points = bounds::rate_curve(q, kind, from, to, steps)?;
            Ok(Outcome::ok(match ctx.format_or(Format::Csv) {
                Format::Json => json_text(json!({
                    "q": q,
                    "kind": kind.as_str(),
                    "points": points
                        .iter()
                        .map(|&(d, r)| json!({ "d": fixed(d), "rate": fixed(r) }))
                        .collect::<Vec<_>>(),
                })),
                _ => {
                    let mut s = String::from("d,rate\n");
                    for (d, r) in points {
                        s.push_str(&format!("{d:.10},{r:.10}\n"));
                    }
                    s
                }
            }))
        }
    }
}

fn exact_report(
    name: &str,
    q: u8,
    n: usize,
    distance: usize,
    value: num_bigint::BigUint,
) -> BoundReport {
    BoundReport {
        name: name.into(),
        params: BoundParams::length(q, n, distance, Some(SimilarityKind::Block)),
        value: BoundValue::Integer(value),
        mode: BoundMode::Exact,
        vacuous: false,
        note: None,
    }
}
