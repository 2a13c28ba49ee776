//! `gwconics`: exact enumerative data for lines and conics on projective hypersurfaces.

mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gwconics_core::vsc::Hypersurface;

use crate::cache::TableCache;
use crate::output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gwconics_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("contract violated: {0}")]
    Contract(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Contract(_) => 3,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gwconics", version, about = "Exact Gromov-Witten bookkeeping for lines and conics on hypersurfaces")]
pub struct Cli {
    /// Output format; TSV suits grid sweeps.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Directory for cached mirror tables.
    #[arg(long, global = true, env = "GWCONICS_CACHE", default_value = ".cache")]
    pub cache_dir: PathBuf,
    /// Never read or write the table cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Recompute every cache hit and require byte-identical output.
    #[arg(long, global = true)]
    pub verify_cache: bool,
    /// Accept (N, k) outside 2N-5 >= k >= N-2 >= 2.
    #[arg(long, global = true)]
    pub allow_out_of_range: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A hypersurface of degree `k` in `P^(N-1)`.
#[derive(Args, Debug, Clone, Copy)]
pub struct Nk {
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
}

/// Either one `(N, k)` or a sweep up to `--n-max`.
#[derive(Args, Debug, Clone, Copy)]
pub struct NkOrGrid {
    #[arg(long = "N", requires = "k")]
    pub n: Option<u32>,
    #[arg(long, requires = "n")]
    pub k: Option<u32>,
    /// Sweep every valid (N, k) with N up to this bound.
    #[arg(long, conflicts_with = "n")]
    pub n_max: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct PencilArgs {
    /// First member as `s^2,st,t^2` coefficients.
    #[arg(long, allow_hyphen_values = true)]
    pub phi1: String,
    /// Second member as `s^2,st,t^2` coefficients.
    #[arg(long, allow_hyphen_values = true)]
    pub phi2: String,
}

/// Where a line comes from.
#[derive(Args, Debug, Clone)]
pub struct LineSource {
    /// JSON line file (`-` for stdin).
    #[arg(long, conflicts_with_all = ["random", "octic"])]
    pub line: Option<PathBuf>,
    /// Random line with coefficients drawn from `--seed`.
    #[arg(long, requires_all = ["n", "k"])]
    pub random: bool,
    #[arg(long = "N")]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// The coordinate line on the example octic in `P^6`.
    #[arg(long)]
    pub octic: bool,
    /// With `--octic`: the line over `Q[t]/(t^8+1)` through `(1, t, 0, ...)` and `(0, 0, -t, 1, 0, ...)`.
    #[arg(long, requires = "octic")]
    pub twisted: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of lines: the integral of c_top(S^k Q) over G(2,N).
    Lines(NkOrGrid),
    /// Mirror-side structure constants up to degree d.
    Vsc {
        #[command(flatten)]
        nk: Nk,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Degree-2 three-point invariants from the mirror constants.
    Gw2 {
        #[command(flatten)]
        nk: Nk,
        /// One index; all admissible indices when omitted.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
    },
    /// Splits a degree-2 invariant into conics and the double-cover term.
    Decompose2 {
        #[command(flatten)]
        grid: NkOrGrid,
        /// Insertion codimensions `a,b,c`; every triple with a hyperplane insertion when omitted.
        #[arg(long)]
        abc: Option<String>,
        /// Externally supplied invariant `p/q`, replacing the mirror value.
        #[arg(long, allow_hyphen_values = true, requires = "abc")]
        gw: Option<String>,
    },
    /// Double-cover contribution class on G(2,N).
    DcoverClass(Nk),
    /// Compares the contribution class with its expanded derivation.
    ProofFormCheck(NkOrGrid),
    /// Normal-bundle splitting type of a line.
    Splitting(LineSource),
    /// Restricts a hypersurface to a line and emits the line data.
    AdaptLine {
        /// JSON file with `nvars`, `poly`, `p`, `q` and optional `field` (`-` for stdin).
        #[arg(long, conflicts_with = "octic")]
        input: Option<PathBuf>,
        #[arg(long)]
        octic: bool,
        #[arg(long, requires = "octic")]
        twisted: bool,
    },
    /// Kernel and cokernel dimensions for a double cover of a line.
    CoverCohomology {
        #[command(flatten)]
        line: LineSource,
        #[command(flatten)]
        pencil: PencilArgs,
    },
    /// Stability class and discriminants of a pencil of binary quadratics.
    Stability(PencilArgs),
    /// Whether a discriminant triple lies on the boundary conic.
    Boundary {
        /// `D0,D1,D2`.
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
    },
    /// Checks the half-twist coordinate identity for `(2st, lambda s^2 + 2 nu st + t^2)`.
    HalfTwist {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Triple-cover contribution class.
    CubicClass {
        #[arg(long)]
        k: u32,
    },
    /// Splits a supplied degree-3 invariant for k = N + 1.
    CubicDecompose {
        #[command(flatten)]
        nk: Nk,
        #[arg(long)]
        abc: String,
        #[arg(long, allow_hyphen_values = true)]
        gw3: String,
    },
    /// Placement weights behind the nodal-conic coefficients.
    AmCheck,
    /// Quick end-to-end checks of the main anchors.
    Selftest,
}

/// Shared settings passed to every command.
pub struct Ctx {
    pub cache: TableCache,
    pub allow_out_of_range: bool,
}

impl Ctx {
    pub fn surface(&self, n: u32, k: u32) -> Result<Hypersurface, CliError> {
        Ok(if self.allow_out_of_range { Hypersurface::unchecked(n, k)? } else { Hypersurface::new(n, k)? })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        cache: TableCache::new((!cli.no_cache).then(|| cli.cache_dir.clone()), cli.verify_cache),
        allow_out_of_range: cli.allow_out_of_range,
    };
    match commands::run(&ctx, &cli.command) {
        Ok((report, violations)) => {
            print!("{}", report.render(cli.format));
            if violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                for v in &violations {
                    eprintln!("gwconics: contract violated: {v}");
                }
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("gwconics: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
