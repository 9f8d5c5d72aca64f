mod decomp_cmd;
mod failure;
mod random_cmd;
mod report;
mod ribbon_cmd;
mod stranded_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use failure::Failure;

#[derive(Parser)]
#[command(name = "herg", version, about = "Polynomial invariants of half-edged ribbon graphs and colored stranded graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    /// Ribbon graph polynomial in x, y, z, w.
    #[value(name = "R")]
    R,
    /// Multivariate ribbon polynomial in a, b, c.
    #[value(name = "Z")]
    Z,
    /// Half-edged ribbon polynomial in x, y, z, w, t.
    #[value(name = "Rherg")]
    Rherg,
    /// Multivariate half-edged polynomial in a, b, c, d, l.
    #[value(name = "Zherg")]
    Zherg,
    #[value(name = "tutte")]
    Tutte,
    /// Colored graph invariant; reads a `.ctg` file.
    #[value(name = "T")]
    T,
}

#[derive(Subcommand)]
enum Command {
    /// Prints a polynomial invariant as canonical JSON.
    Poly {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Bubble weights for `--kind T`, e.g. `3=1,4=1/2`.
        #[arg(long, default_value = "")]
        alpha: String,
        /// One variable per edge in the multivariate kinds.
        #[arg(long)]
        per_edge: bool,
        file: PathBuf,
    },
    /// Vertices, edges, components, faces and boundary counts.
    Stats { file: PathBuf },
    /// Boundary walks of the graph.
    Faces { file: PathBuf },
    /// The boundary graph on half-ribbons.
    Boundary { file: PathBuf },
    /// Decompositions of ribbon graphs.
    Decomp {
        #[command(subcommand)]
        command: DecompCommand,
    },
    /// Colored stranded graphs.
    Stranded {
        #[command(subcommand)]
        command: StrandedCommand,
    },
    /// Seeded random instances.
    Random {
        #[command(subcommand)]
        command: RandomCommand,
    },
    /// All verification reports of the built-in corpora, as JSON.
    Report {
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    /// Product expansion and per-state counting identities.
    S12,
    /// Class map over the auxiliary template.
    General,
    /// Factored form and per-piece identities.
    Theorem,
}

#[derive(Subcommand)]
enum DecompCommand {
    Verify {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum, default_value = "s12")]
        mode: Mode,
        #[arg(long)]
        dump_matrices: bool,
        /// Adds wall-clock timings, which makes the report run-dependent.
        #[arg(long)]
        timings: bool,
    },
    /// Incidence matrices of every template state.
    Matrices {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Subcommand)]
enum StrandedCommand {
    /// The invariant at w = 1, or the multivariate version.
    Poly {
        #[arg(long, default_value = "")]
        alpha: String,
        #[arg(long)]
        multivariate: bool,
        file: PathBuf,
    },
    /// Bubbles, faces and boundary graph of the full state.
    Bubbles { file: PathBuf },
    /// Expansion and counting identities for a colored decomposition.
    Verify {
        #[arg(long, conflicts_with = "melon_sweep", required_unless_present = "melon_sweep")]
        manifest: Option<PathBuf>,
        /// Runs the exhaustive melon-derived sweep instead.
        #[arg(long)]
        melon_sweep: bool,
        /// Validated and echoed in the report; the identities themselves carry no bubble weights.
        #[arg(long, default_value = "")]
        alpha: String,
    },
}

#[derive(Subcommand)]
enum RandomCommand {
    /// Half-edged ribbon graphs.
    Herg {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        vertices: usize,
        #[arg(long, default_value_t = 6)]
        edges: usize,
        #[arg(long, default_value_t = 2)]
        half_ribbons: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bipartite colored tensor graphs with half-edges.
    Colored {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decomposition manifests whose pieces pass the screening conditions.
    Manifests {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        colored: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Poly { kind, alpha, per_edge, file } => ribbon_cmd::poly(&file, kind, &alpha, per_edge),
        Command::Stats { file } => ribbon_cmd::stats(&file),
        Command::Faces { file } => ribbon_cmd::faces(&file),
        Command::Boundary { file } => ribbon_cmd::boundary(&file),
        Command::Decomp { command } => match command {
            DecompCommand::Verify {
                manifest,
                mode,
                dump_matrices,
                timings,
            } => decomp_cmd::verify(&manifest, mode, dump_matrices, timings),
            DecompCommand::Matrices { manifest } => decomp_cmd::matrices(&manifest),
        },
        Command::Stranded { command } => match command {
            StrandedCommand::Poly { alpha, multivariate, file } => stranded_cmd::poly(&file, &alpha, multivariate),
            StrandedCommand::Bubbles { file } => stranded_cmd::bubbles(&file),
            StrandedCommand::Verify { manifest, melon_sweep, alpha } => {
                stranded_cmd::verify(manifest.as_deref(), melon_sweep, &alpha)
            },
        },
        Command::Random { command } => match command {
            RandomCommand::Herg {
                seed,
                count,
                vertices,
                edges,
                half_ribbons,
                out,
            } => random_cmd::herg(seed, count, vertices, edges, half_ribbons, out.as_deref()),
            RandomCommand::Colored { seed, count, rank, out } => random_cmd::colored(seed, count, rank, out.as_deref()),
            RandomCommand::Manifests { seed, count, colored, out } => random_cmd::manifests(seed, count, colored, &out),
        },
        Command::Report { threads } => report::all(threads),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("herg: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
