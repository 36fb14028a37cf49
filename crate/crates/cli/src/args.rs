use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use geomforge::verify::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "geomforge", version, about = "Exact checks on finite geometries, classical groups and buildings")]
pub struct Cli {
    /// Budget overrides such as `max_group_order=5000,time_secs=10`.
    /// Takes precedence over GEOMFORGE_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<String>,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Also print a human-readable summary on standard error.
    #[arg(long, global = true)]
    pub summary: bool,

    /// Include wall-clock timing in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Projective geometries PG(n, q) and point-line incidence files.
    #[command(subcommand)]
    Geometry(GeometryCmd),
    /// Polar spaces of pseudo-quadratic forms and A_{3,2}.
    #[command(subcommand)]
    Polar(PolarCmd),
    /// Form parameters, Witt decomposition and radical reduction.
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Named permutation groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Linear groups, Steinberg relations, determinants and Moufang sets.
    #[command(subcommand)]
    Classical(ClassicalCmd),
    /// Flag complexes, apartments, Tits systems and root systems.
    #[command(subcommand)]
    Building(BuildingCmd),
    /// Runs the full verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct PgArgs {
    /// Projective dimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// Field order.
    #[arg(long)]
    pub q: Option<u32>,
    /// Incidence file with `p <id>`, `l <id>` and `i <point> <line>` lines.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryCmd {
    /// Builds PG(n, q) and reports its counts.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// Write the incidence structure to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks the projective space axioms PG1-PG4.
    Check(PgArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct FormSource {
    /// JSON form descriptor.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Standard form family: sp, o or u.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Use A_{3,2}(GF(q)) instead of a form.
    #[arg(long)]
    pub a32: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarCmd {
    /// Builds the polar space and reports its counts.
    Build(FormSource),
    /// Checks PS1-PS5 and classifies the space as thick or weak.
    Check(FormSource),
    /// Certifies that the oriflamme complex of A_{3,2}(GF(q)) is the flag complex of PG(3, q).
    Oriflamme {
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct FormFile {
    /// JSON form descriptor.
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormsCmd {
    /// Classifies the form parameter into one of the five cases.
    Classify(FormFile),
    /// Witt index and decomposition.
    Witt(FormFile),
    /// Quotient of a slightly degenerate form by its radical.
    Reduce(FormFile),
    /// Checks the form parameter axioms.
    Paramcheck(FormFile),
}

#[derive(Debug, Args, Serialize)]
pub struct GroupArg {
    /// Group name such as `psl(2,7)`, `alt(5)` or `sp(4,2)`.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupCmd {
    Order(GroupArg),
    Transitivity(GroupArg),
    Perfect(GroupArg),
    Simple(GroupArg),
    /// Decides isomorphism of two small groups.
    Iso {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct LinearArgs {
    /// el, sl, gl, pel, psl or pgl.
    #[arg(long, default_value = "pel")]
    pub kind: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u32,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalCmd {
    /// Builds a linear group and reports its order and action.
    Build(LinearArgs),
    /// Checks the Steinberg relations SR1-SR3.
    Steinberg {
        #[arg(long)]
        n: usize,
        /// Field order; omit together with --quaternions.
        #[arg(long)]
        q: Option<u32>,
        /// Sample pairs of rational quaternions instead.
        #[arg(long)]
        quaternions: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Dieudonne determinant of a square matrix.
    Det {
        /// Scalars: a field order, or `H` for rational quaternions.
        #[arg(long)]
        scalars: String,
        /// Matrix text, rows separated by `;`, entries by spaces.
        #[arg(long)]
        matrix: Option<String>,
        /// Matrix file, one row per line.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Checks MS1-MS3 for the projective line over GF(q).
    Moufang {
        #[arg(long)]
        q: u32,
        /// gl (default) or el for the subgroup generated by root groups.
        #[arg(long, default_value = "gl")]
        level: String,
    },
    /// Rebuilds the lines of PG(n-1, q) from the action of a linear group on points.
    Reconstruct(LinearArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildingCmd {
    /// Flag complex of PG(n, q).
    Flags {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// Write the chamber graph as an edge list to this file.
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Standard apartment of PG(n, q) and its Coxeter complex check.
    Apartment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
    },
    /// Tits system of EL_{n+1}(q) with axioms TS1-TS5.
    Tits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
    },
    /// Root system A_n and the commutator correspondence over GF(q).
    Roots {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Suite name. `paper` is the full ten-criterion suite.
    #[arg(long, default_value = "paper")]
    pub suite: String,
    /// Run only these criteria (1-10).
    #[arg(long, value_delimiter = ',')]
    pub criterion: Vec<u8>,
}
