mod commands;
mod error;
mod job;
mod render;

use clap::{Parser, Subcommand, ValueEnum};
use commands::Outcome;
use error::CliError;
use fusionlim::fusion::RadicalVariant;
use job::{parse_functor_flag, JobSpec};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

pub const SCHEMA: &str = "fusionlim-report/1";

/// Fixtures shipped inside the binary, addressable by name via `--input`.
const FIXTURES: &[(&str, &str)] = &[
    (
        "psl32_amalgam",
        include_str!("../fixtures/psl32_amalgam.json"),
    ),
    ("psl32_group", include_str!("../fixtures/psl32_group.json")),
    ("s4_group", include_str!("../fixtures/s4_group.json")),
    ("s3_c3", include_str!("../fixtures/s3_c3.json")),
    ("s4_d8", include_str!("../fixtures/s4_d8.json")),
    (
        "s3_c3_degenerate",
        include_str!("../fixtures/s3_c3_degenerate.json"),
    ),
    ("a4_v4", include_str!("../fixtures/a4_v4.json")),
    ("psl32_s4", include_str!("../fixtures/psl32_s4.json")),
    (
        "bad_name_ref",
        include_str!("../fixtures/bad_name_ref.json"),
    ),
];

#[derive(Parser)]
#[command(
    name = "fusionlim",
    version,
    about = "Higher limits over orbit categories of fusion systems"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct JobArgs {
    /// A fixture name or a path to a job file.
    #[arg(long)]
    input: String,
    #[arg(long)]
    budget_chains: Option<usize>,
    #[arg(long, value_enum)]
    radical: Option<Radical>,
    /// `constant` or `cohomology:J`.
    #[arg(long)]
    functor: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Radical {
    Standard,
    Paper,
}

#[derive(Subcommand)]
enum Command {
    /// Centric subgroups and morphism counts of the fusion system.
    Fusion(JobArgs),
    /// Higher limits of the job's functor.
    Limits(JobArgs),
    /// Rep graphs over every centric subgroup.
    RepGraph(JobArgs),
    TheoremA(JobArgs),
    TheoremB(JobArgs),
    /// `lim^i H^j` over the centric orbit category.
    Sharpness {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, default_value_t = 1)]
        j_max: usize,
    },
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Seeded cross-checks between independent computations.
    Oracle {
        #[arg(long, value_enum)]
        family: OracleFamily,
        #[arg(long, default_value_t = 24)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Job for the `h1` family.
        #[arg(long)]
        input: Option<String>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    ClellandParker {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        verify: bool,
    },
    ParkerStroth {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum OracleFamily {
    HolimExt,
    Graphs,
    H1,
}

#[derive(Serialize)]
struct Report<'a, J: Serialize, R: Serialize> {
    schema: &'static str,
    command: &'a str,
    status: &'static str,
    job: J,
    result: R,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum CatalogJob {
    ClellandParker { n: usize, q: u32, verify: bool },
    ParkerStroth { p: u32, verify: bool },
}

#[derive(Serialize)]
struct OracleJob {
    family: OracleFamily,
    count: usize,
    seed: u64,
    p: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<JobSpec>,
}

fn load(input: &str) -> Result<JobSpec, CliError> {
    if let Some((_, text)) = FIXTURES.iter().find(|(n, _)| *n == input) {
        return JobSpec::parse(text, input);
    }
    let text = std::fs::read_to_string(input).map_err(|e| {
        CliError::Input(format!(
            "`{input}` is neither a fixture name nor a readable file: {e}"
        ))
    })?;
    JobSpec::parse(&text, input)
}

/// The job with command-line overrides applied; this is what reports embed.
fn resolve(args: &JobArgs) -> Result<JobSpec, CliError> {
    let mut job = load(&args.input)?;
    if let Some(b) = args.budget_chains {
        job.budgets.chains = b;
    }
    if let Some(r) = args.radical {
        job.radical = match r {
            Radical::Standard => RadicalVariant::Standard,
            Radical::Paper => RadicalVariant::Paper,
        };
    }
    if let Some(f) = &args.functor {
        job.functor = parse_functor_flag(f)?;
    }
    if let Some(d) = args.max_degree {
        job.max_degree = d;
    }
    Ok(job)
}

fn emit<J: Serialize, R: Serialize>(
    out: &Option<PathBuf>,
    command: &str,
    job: J,
    o: Outcome<R>,
) -> Result<bool, CliError> {
    let report = Report {
        schema: SCHEMA,
        command,
        status: if o.ok { "ok" } else { "verdict-false" },
        job,
        result: o.result,
    };
    let text = render::to_text(&serde_json::to_value(&report).expect("reports serialize"));
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(o.ok)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let out = &cli.out;
    match &cli.command {
        Command::Fusion(a) => {
            let job = resolve(a)?;
            emit(out, "fusion", &job, commands::fusion(&job)?)
        }
        Command::Limits(a) => {
            let job = resolve(a)?;
            emit(out, "limits", &job, commands::limits(&job)?)
        }
        Command::RepGraph(a) => {
            let job = resolve(a)?;
            emit(out, "rep-graph", &job, commands::rep_graphs(&job)?)
        }
        Command::TheoremA(a) => {
            let job = resolve(a)?;
            emit(out, "theorem-a", &job, commands::theorem(&job, false)?)
        }
        Command::TheoremB(a) => {
            let job = resolve(a)?;
            emit(out, "theorem-b", &job, commands::theorem(&job, true)?)
        }
        Command::Sharpness { job, j_max } => {
            let job = resolve(job)?;
            emit(out, "sharpness", &job, commands::sharpness(&job, *j_max)?)
        }
        Command::Catalog(CatalogCommand::ClellandParker { n, q, verify }) => emit(
            out,
            "catalog",
            CatalogJob::ClellandParker {
                n: *n,
                q: *q,
                verify: *verify,
            },
            commands::clelland_parker(*n, *q, *verify)?,
        ),
        Command::Catalog(CatalogCommand::ParkerStroth { p, verify }) => emit(
            out,
            "catalog",
            CatalogJob::ParkerStroth {
                p: *p,
                verify: *verify,
            },
            commands::parker_stroth(*p, *verify)?,
        ),
        Command::Oracle {
            family,
            count,
            seed,
            p,
            input,
        } => {
            let input = input.as_deref().map(load).transpose()?;
            let o = match (family, &input) {
                (OracleFamily::HolimExt, _) => commands::oracle_holim_ext(*count, *seed, *p)?,
                (OracleFamily::Graphs, _) => commands::oracle_graphs(*count, *seed, *p)?,
                (OracleFamily::H1, Some(job)) => commands::oracle_h1(job)?,
                (OracleFamily::H1, None) => {
                    return Err(CliError::Input("the h1 family needs --input".into()))
                }
            };
            let job = OracleJob {
                family: *family,
                count: *count,
                seed: *seed,
                p: *p,
                input,
            };
            emit(out, "oracle", job, o)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
    {
        eprintln!("fusionlim: could not start the thread pool: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fusionlim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
