use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qmpl_core::arith::Rational;

use qmpl_cli::{
    parse_q_values, parse_t_values, run_suite, RunMode, Suite, SuiteConfig, UsageError,
};

#[derive(Parser)]
#[command(name = "qmpl", version, about = "Verify q-binomial and multi-polylogarithm identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity suite and report one verdict per case.
    Verify(VerifyArgs),
    /// List suite ids and what each one checks.
    ListSuites,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: Suite,
    #[arg(long, default_value_t = 6)]
    n_max: u32,
    #[arg(long, default_value_t = 4)]
    weight_max: u32,
    #[arg(long, default_value_t = 3)]
    depth_max: u32,
    #[arg(long, default_value = "exact")]
    mode: RunMode,
    /// Evaluation points per case in eval mode.
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Pool of q values for eval mode, e.g. `2,1/2,-3/2`.
    #[arg(long, value_parser = parse_q)]
    q_values: Option<Pool>,
    /// Pool of t and a values for eval mode.
    #[arg(long, value_parser = parse_t)]
    t_values: Option<Pool>,
    /// Largest number of terms any intermediate may hold.
    #[arg(long, default_value_t = qmpl_core::arith::DEFAULT_TERM_BUDGET)]
    term_budget: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Perturb every right-hand side with this seed; every case should fail.
    #[arg(long)]
    mutate: Option<u64>,
    /// Include elapsed times in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone)]
struct Pool(Vec<Rational>);

fn parse_q(s: &str) -> Result<Pool, UsageError> {
    parse_q_values(s).map(Pool)
}

fn parse_t(s: &str) -> Result<Pool, UsageError> {
    parse_t_values(s).map(Pool)
}

impl VerifyArgs {
    fn config(self) -> SuiteConfig {
        let mut c = SuiteConfig::for_suite(self.suite);
        c.n_max = self.n_max;
        c.weight_max = self.weight_max;
        c.depth_max = self.depth_max;
        c.mode = self.mode;
        c.points = self.points;
        c.seed = self.seed;
        c.term_budget = self.term_budget;
        if let Some(j) = self.jobs {
            c.jobs = j;
        }
        if let Some(q) = self.q_values {
            c.q_values = q.0;
        }
        if let Some(t) = self.t_values {
            c.t_values = t.0;
        }
        c.mutate = self.mutate;
        c.timings = self.timings;
        c
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::ListSuites => {
            for s in Suite::EACH.iter().chain([Suite::All].iter()) {
                println!("{:<16} {}", s.id(), s.anchor());
            }
            ExitCode::SUCCESS
        }
        Command::Verify(args) => {
            let out = args.out.clone();
            let report = match run_suite(&args.config()) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            print!("{}", report.table());
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
