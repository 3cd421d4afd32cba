use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use infchow_cli::{run, Base, Command, Opts};

#[derive(Parser)]
#[command(name = "infchow", version, about = "Exact additive dilogarithms and infinitesimal regulators")]
struct Cli {
    #[arg(long, global = true)]
    m: Option<usize>,
    #[arg(long, global = true)]
    r: Option<usize>,
    /// t-precision of evaluated expressions
    #[arg(long, global = true)]
    prec: Option<usize>,
    #[arg(long, global = true, value_enum)]
    base: Option<BaseArg>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Qx")]
    Qx,
}

#[derive(Subcommand)]
enum Cmd {
    /// li_{m,r} of a B2 combination, e.g. "[2*exp(t)]"
    Li {
        #[arg(allow_hyphen_values = true)]
        b2: String,
    },
    /// l_{m,r} of a 2-wedge, e.g. "exp(t) /\ 1 + t^2"
    Lmr {
        #[arg(allow_hyphen_values = true)]
        wedge: String,
    },
    /// L_{m,r} of a combination of [x](x)y
    #[command(name = "Lmr")]
    LmrForm {
        #[arg(allow_hyphen_values = true)]
        tensor: String,
    },
    /// Omega_{m,r} of a 3-wedge, or omega_{m,r} of a pair given as two 3-wedges
    Omega {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: Option<String>,
    },
    /// Residue of omega_{m,r} of a pair at a closed point
    ResOmega {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
        /// "inf", a rational a (the point s = a), or a polynomial in s
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// rho_{m,r} of the triples in a document
    RhoCurve { document: String },
    /// rho_{m,r} of Cech cocycle data in a document
    RhoCocycle { document: String },
    /// rho_{m,r} of a parametrized cycle in a document
    RhoCycle { document: String },
    /// Compare rho_{m,r} of two cycles congruent mod t^m
    Congruence { first: String, second: String },
    /// Run a seeded check suite
    Verify { suite: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Opts {
        m: cli.m,
        r: cli.r,
        prec: cli.prec,
        base: cli.base.map(|b| match b {
            BaseArg::Q => Base::Q,
            BaseArg::Qx => Base::Qx,
        }),
        seed: cli.seed,
        trials: cli.trials,
    };
    let cmd = match cli.cmd {
        Cmd::Li { b2 } => Command::Li(b2),
        Cmd::Lmr { wedge } => Command::Lmr(wedge),
        Cmd::LmrForm { tensor } => Command::LmrForm(tensor),
        Cmd::Omega { first, second } => Command::Omega(first, second),
        Cmd::ResOmega { first, second, at } => Command::ResOmega(first, second, at),
        Cmd::RhoCurve { document } => Command::RhoCurve(document),
        Cmd::RhoCocycle { document } => Command::RhoCocycle(document),
        Cmd::RhoCycle { document } => Command::RhoCycle(document),
        Cmd::Congruence { first, second } => Command::Congruence(first, second),
        Cmd::Verify { suite } => Command::Verify(suite),
    };
    match run(&cmd, &opts) {
        Ok(rep) => {
            if cli.json {
                println!("{}", rep.json());
            } else {
                print!("{}", rep);
            }
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
