use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use uso_cli::commands::{
    cmd_build, cmd_census, cmd_check, cmd_iso, cmd_transform, cmd_verify_report, BuildArgs,
    BuildKind, CensusArgs, CheckKind, TransformOp,
};
use uso_cli::formats::{parse_dimset, parse_perm};
use uso_cli::report::Report;
use uso_cli::{EXIT_FAILS, EXIT_HOLDS, EXIT_INPUT_ERROR};

#[derive(Parser)]
#[command(name = "uso", version, about = "Unique sink orientation toolkit")]
struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also save the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of an orientation file.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
        path: PathBuf,
    },
    /// Build an orientation and write it as a USO file.
    Build(BuildCli),
    /// Apply a cube transform.
    Transform(TransformCli),
    /// Enumerate isomorphism classes of n-cube USOs.
    Census {
        n: usize,
        /// Required for n = 4.
        #[arg(long)]
        heavy: bool,
        /// Continue from the checkpoint in the output directory.
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stop after this many shards, leaving a checkpoint.
        #[arg(long)]
        max_shards: Option<usize>,
    },
    /// Search for an automorphism mapping one file onto another.
    Iso { first: PathBuf, second: PathBuf },
    /// Replay the witnesses of a saved JSON report.
    VerifyReport { path: PathBuf },
}

#[derive(Args)]
struct BuildCli {
    #[arg(value_enum)]
    kind: BuildKind,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    /// Combed spec as a 0/1 string.
    #[arg(long)]
    spec: Option<String>,
    /// Edges as `vertex:dim` pairs, vertex by index.
    #[arg(long)]
    matching: Option<String>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    lcp_out: Option<PathBuf>,
}

#[derive(Args)]
struct TransformCli {
    path: PathBuf,
    /// reverse | mirror | permute | automorph | sweep
    op: String,
    /// Dimension set for reverse, mirror and automorph, e.g. `{1,3}`.
    #[arg(long, default_value = "")]
    set: String,
    /// 1-based images for permute and automorph, e.g. `2,3,1`.
    #[arg(long)]
    perm: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn transform_op(t: &TransformCli) -> anyhow::Result<TransformOp> {
    let set = || parse_dimset(&t.set).map_err(anyhow::Error::msg);
    let perm = || {
        t.perm
            .as_deref()
            .ok_or_else(|| anyhow::anyhow!("--perm is required"))
            .and_then(|p| parse_perm(p).map_err(anyhow::Error::msg))
    };
    Ok(match t.op.as_str() {
        "reverse" => TransformOp::Reverse(set()?),
        "mirror" => TransformOp::Mirror(set()?),
        "permute" => TransformOp::Permute(perm()?),
        "automorph" => TransformOp::Automorph(set()?, perm()?),
        "sweep" => TransformOp::Sweep,
        other => anyhow::bail!("unknown transform {other:?}"),
    })
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Check { which, path } => cmd_check(*which, path),
        Command::Build(b) => cmd_build(
            b.kind,
            &BuildArgs {
                input: b.input.clone(),
                dim: b.dim,
                spec: b.spec.clone(),
                matching: b.matching.clone(),
                out: b.out.clone(),
                lcp_out: b.lcp_out.clone(),
            },
        ),
        Command::Transform(t) => cmd_transform(&t.path, &transform_op(t)?, t.out.as_deref()),
        Command::Census {
            n,
            heavy,
            resume,
            jobs,
            out,
            max_shards,
        } => cmd_census(&CensusArgs {
            n: *n,
            heavy: *heavy,
            resume: *resume,
            jobs: *jobs,
            out: out
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("census-{n}"))),
            max_shards: *max_shards,
        }),
        Command::Iso { first, second } => cmd_iso(first, second),
        Command::VerifyReport { path } => cmd_verify_report(path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if let Some(p) = &cli.report {
                if let Err(e) = std::fs::write(p, report.to_json()) {
                    eprintln!("error: writing report {}: {e}", p.display());
                    return ExitCode::from(EXIT_INPUT_ERROR as u8);
                }
            }
            ExitCode::from(if report.holds { EXIT_HOLDS } else { EXIT_FAILS } as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
