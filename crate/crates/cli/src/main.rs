mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Twisted conjugacy classes of finite groups, Z^k and wreath products G wr Z^k.
#[derive(Debug, Parser)]
#[command(name = "reidemeister", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Override the scenario window (l-infinity radius).
    #[arg(long, global = true)]
    pub window: Option<i64>,
    /// Override the scenario budget.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Sampling seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of witnesses to produce.
    #[arg(long, global = true, default_value_t = 10)]
    pub count: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Twisted conjugacy classes of an automorphism.
    Classes(GroupAut),
    /// Reidemeister number and class representatives.
    Reidemeister(GroupAut),
    /// Fixed subgroup of an automorphism.
    Fixed(GroupAut),
    /// Exact character table.
    CharTable {
        /// Corpus group name or group file.
        group: String,
    },
    /// Compare R(phi) with the number of phi-fixed irreducible characters.
    TbftCheck {
        group: String,
        /// Automorphism file or inline JSON; every automorphism when omitted.
        automorphism: Option<String>,
    },
    /// Reidemeister number of an integer matrix acting on Z^k.
    ZkReidemeister {
        /// Inline rows such as "[[0,-1],[1,-1]]", a single integer, or a matrix file.
        matrix: String,
    },
    /// Validate a wreath scenario and report condition (4).
    WreathCheck {
        /// Bundled scenario name or scenario file.
        scenario: String,
    },
    /// Fixed elements grown from a fixed seed.
    Witness {
        scenario: String,
        /// Fixed base element, wire form or a file.
        #[arg(long)]
        sigma0: String,
        /// Point with a full d-orbit, e.g. "1" or "1,0"; chosen automatically when omitted.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
    },
    /// Decomposition test over the classes of d.
    Separate {
        scenario: String,
        /// Probe seeds g_m with m in [-radius, radius]^k.
        #[arg(long, default_value_t = 2)]
        radius: i64,
        /// Skip products of two seeds.
        #[arg(long)]
        singles_only: bool,
    },
    /// Closure of G_0 under phi' and its derived series.
    Solvability { scenario: String },
    /// Run the corpus-wide checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GroupAut {
    /// Corpus group name or group file.
    pub group: String,
    /// Automorphism file or inline JSON such as '{"image":[0,2,1]}' or '[0,2,1]'.
    pub automorphism: String,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("selection").required(true).args(["all", "check"])))]
pub struct VerifyArgs {
    /// Every check.
    #[arg(long)]
    pub all: bool,
    /// A single check, repeatable.
    #[arg(long)]
    pub check: Vec<String>,
    /// Restrict group checks to one corpus group.
    #[arg(long)]
    pub group: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(commands::Outcome::Success) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
