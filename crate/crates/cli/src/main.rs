use clap::{ArgGroup, Args, Parser, Subcommand};
use levi_slope::input::{resolve_degree, resolve_group};
use levi_slope::verify::{run as run_verify, VerifyConfig};
use levi_slope::{report, table, CliError, CliResult};
use levi_slope_core::weyl::ExecMode;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "levi-slope",
    version,
    about = "Slopes, minimal parabolic reductions, relative Weyl groups, and \
             stability of degree classes of reductive groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one (group, degree) pair and print the full report
    Analyze(AnalyzeArgs),
    /// Print the Levi / relative-Weyl table over adjoint simple groups
    Table(TableArgs),
    /// Re-derive every answer by an independent route; nonzero exit on any
    /// disagreement
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// The group GL_N
    #[arg(long, value_name = "N")]
    gl: Option<usize>,

    /// A simple group by type and rank, e.g. B4 or E7
    #[arg(long, value_name = "TYPERANK")]
    simple: Option<String>,

    /// Isogeny form used with --simple
    #[arg(long, default_value = "adjoint", value_name = "FORM")]
    isogeny: String,

    /// Product of factors, e.g. "GL3,A2:sc" (factor isogeny defaults to
    /// adjoint)
    #[arg(long, value_name = "SPEC,SPEC")]
    product: Option<String>,

    /// JSON file describing a root datum (builders: simple, gl, product,
    /// explicit)
    #[arg(long, value_name = "FILE")]
    datum_json: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("group")
        .required(true)
        .args(["gl", "simple", "product", "datum_json"])
))]
#[command(group(
    ArgGroup::new("deg")
        .required(true)
        .args(["degree_lift", "degree"])
))]
struct AnalyzeArgs {
    #[command(flatten)]
    group: GroupArgs,

    /// Degree as an explicit lift vector c1,...,cn in the cocharacter
    /// lattice
    #[arg(long, value_name = "C1,...,CN", allow_hyphen_values = true)]
    degree_lift: Option<String>,

    /// Degree as one integer: k*e_n for GL_n, k times the canonical
    /// component-group generator otherwise
    #[arg(long, value_name = "K", allow_negative_numbers = true)]
    degree: Option<i64>,

    /// Output format: json, md, or latex
    #[arg(long, default_value = "json", value_name = "FMT")]
    format: String,

    /// Ceiling on Weyl-orbit enumeration
    #[arg(long, default_value_t = 4_000_000, value_name = "N")]
    orbit_cap: usize,

    /// Ceiling on Weyl-group enumeration
    #[arg(long, default_value_t = 10_000_000, value_name = "N")]
    weyl_cap: u128,

    /// Include wall time in the report (omitted by default so output is
    /// byte-stable)
    #[arg(long)]
    timings: bool,

    /// Disable the parallel frontier expansion
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Families to include, e.g. "A,B,C,D,E"
    #[arg(long, default_value = "A,B,C,D,E", value_name = "LETTERS")]
    families: String,

    /// Largest rank per family
    #[arg(long, default_value_t = 6, value_name = "K")]
    max_rank: usize,

    /// Output format: json, md, or latex
    #[arg(long, default_value = "md", value_name = "FMT")]
    format: String,

    /// Ceiling on Weyl-orbit enumeration
    #[arg(long, default_value_t = 4_000_000, value_name = "N")]
    orbit_cap: usize,

    /// Ceiling on Weyl-group enumeration
    #[arg(long, default_value_t = 10_000_000, value_name = "N")]
    weyl_cap: u128,

    /// Compare the rows against the expected closed forms and fail on any
    /// mismatch
    #[arg(long)]
    check: bool,

    /// Disable the parallel frontier expansion
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest rank swept
    #[arg(long, default_value_t = 5, value_name = "K")]
    max_rank: usize,

    /// Ceiling on Weyl-orbit enumeration
    #[arg(long, default_value_t = 4_000_000, value_name = "N")]
    orbit_cap: usize,

    /// Ceiling on Weyl-group enumeration
    #[arg(long, default_value_t = 10_000_000, value_name = "N")]
    weyl_cap: u128,

    /// Seed for the randomized sweeps
    #[arg(long, default_value_t = 12345, value_name = "SEED")]
    seed: u64,

    /// Randomized slope-law instances per datum and property
    #[arg(long, default_value_t = 8, value_name = "N")]
    slope_iters: usize,

    /// Corrupt one computed answer to prove the sweeps detect and report it
    #[arg(long)]
    inject_fault: bool,

    /// Disable the parallel frontier expansion
    #[arg(long)]
    sequential: bool,
}

fn exec_mode(sequential: bool) -> ExecMode {
    if sequential {
        ExecMode::Sequential
    } else {
        ExecMode::default()
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> CliResult<u8> {
    let spec = resolve_group(
        args.group.gl,
        args.group.simple.as_deref(),
        &args.group.isogeny,
        args.group.product.as_deref(),
        args.group.datum_json.as_deref(),
    )?;
    let lift = resolve_degree(&spec, args.degree_lift.as_deref(), args.degree)?;
    let report = report::analyze(
        &spec.datum,
        &lift,
        spec.gl_rank,
        args.orbit_cap,
        args.weyl_cap,
        exec_mode(args.sequential),
        args.timings,
    )?;
    let rendered = match args.format.as_str() {
        "json" => report.to_json(),
        "md" => report.to_markdown(),
        "latex" => report.to_latex(),
        other => {
            return Err(CliError::bad_input(format!(
                "unknown format {other:?} (expected json, md, or latex)"
            )))
        }
    };
    print!("{rendered}");
    Ok(0)
}

fn cmd_table(args: &TableArgs) -> CliResult<u8> {
    let families = table::parse_families(&args.families)?;
    let rows = table::computed_rows(
        &families,
        args.max_rank,
        args.orbit_cap,
        args.weyl_cap,
        exec_mode(args.sequential),
    )?;
    let rendered = match args.format.as_str() {
        "json" => table::to_json(&rows),
        "md" => table::to_markdown(&rows),
        "latex" => table::to_latex(&rows),
        other => {
            return Err(CliError::bad_input(format!(
                "unknown format {other:?} (expected json, md, or latex)"
            )))
        }
    };
    print!("{rendered}");
    if args.check {
        let mismatches = table::check_rows(&rows);
        if !mismatches.is_empty() {
            for m in &mismatches {
                eprintln!("mismatch: {m}");
            }
            return Ok(1);
        }
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<u8> {
    let cfg = VerifyConfig {
        max_rank: args.max_rank,
        orbit_cap: args.orbit_cap,
        weyl_cap: args.weyl_cap,
        seed: args.seed,
        slope_iters: args.slope_iters,
        inject_fault: args.inject_fault,
        mode: exec_mode(args.sequential),
    };
    let report = run_verify(&cfg)?;
    print!("{}", report.to_json());
    Ok(if report.ok() { 0 } else { 1 })
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            err.code
        }
    };
    std::process::exit(code.into());
}
