mod commands;
mod svg;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use unilift_core::Limits;

/// Exact lattice-free polytopes, cut-generating functions and unique-lifting certificates.
#[derive(Parser, Debug)]
#[command(name = "unilift", version)]
pub struct Cli {
    /// Largest ambient dimension accepted by the lifting machinery.
    #[arg(long, global = true)]
    pub dim_cap: Option<usize>,
    /// Largest integer box scanned when enumerating lattice points.
    #[arg(long, global = true)]
    pub point_guard: Option<u64>,
    /// Largest number of shifted pieces fed to inclusion-exclusion.
    #[arg(long, global = true)]
    pub piece_guard: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            dim_cap: self.dim_cap.unwrap_or(d.dim_cap),
            point_guard: self.point_guard.unwrap_or(d.point_guard),
            piece_guard: self.piece_guard.unwrap_or(d.piece_guard),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Polytope JSON, or a {"body", "lattice"} bundle; `-` reads stdin.
    #[arg(long)]
    pub body: String,
    /// Lattice JSON; defaults to the bundle lattice, then to Z^n.
    #[arg(long)]
    pub lattice: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Free,
    Maximal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lattice-freeness or maximality of the body.
    Check {
        property: Property,
        #[command(flatten)]
        input: Input,
    },
    /// Gauge of `B - f` at each `--r`.
    Gauge {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true, required = true)]
        r: Vec<String>,
    },
    /// Trivial lifting at each `--r`, with a minimizing integer shift.
    Lift {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true, required = true)]
        r: Vec<String>,
    },
    /// Cut coefficients for continuous columns `--r` and integer columns `--p`.
    Cut {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        r: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Vec<String>,
    },
    /// Spindles of the lifting region.
    Region {
        #[command(flatten)]
        input: Input,
        /// Anchor; the vertex centroid when omitted.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Write a plot of a planar region to this file.
        #[arg(long)]
        svg: Option<String>,
        /// Plot window `xmin,ymin,xmax,ymax`.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Volume of the lifting region modulo the lattice.
    Uvol {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Estimate by Monte Carlo with this many samples instead of exactly.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide the unique-lifting property.
    Unique {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Refuse bodies that are not maximal lattice-free.
        #[arg(long)]
        strict: bool,
    },
    /// Build instances.
    #[command(subcommand)]
    Construct(Construct),
    /// Exact volumes for several anchors, and whether they fit an affine function.
    ProbeAffinity {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, required = true)]
        f: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Coproduct of the given bodies, optionally scaled with `--c` and `--mu`.
    Coproduct {
        #[arg(long, required = true)]
        body: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Vec<String>,
        #[arg(long)]
        mu: Vec<String>,
    },
    /// Pyramid (gamma = 0) or double pyramid over a body.
    Pyramid {
        #[arg(long)]
        body: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value = "0")]
        gamma: String,
        #[arg(long)]
        mu: String,
    },
    /// conv{0, a_1 e_1, ..., a_n e_n} with sum 1/a_i = 1.
    Simplex {
        #[arg(long)]
        a: String,
    },
    /// Shifted cross-polytope with sum 1/a_i = 1.
    Cross {
        #[arg(long)]
        a: String,
    },
    /// [0,2]^n with the even-sum lattice, n odd.
    Cube {
        #[arg(long)]
        n: usize,
    },
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).format_timestamp(None).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", out.json);
            ExitCode::from(if out.holds { EXIT_OK } else { EXIT_PROPERTY })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
