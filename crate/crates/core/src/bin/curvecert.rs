use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use curvecert::harness::{
    cmd_analyze, cmd_check_ledger, cmd_double_points, cmd_jet_file, cmd_lemma_test, cmd_pipeline, cmd_verify, Outcome,
    RunConfig, EXIT_INVALID,
};
use curvecert::pipeline::Budgets;

/// Exact certificates for polynomial space curves.
///
/// Curves are fixture names (three-lines, twisted-cubic, standard-line),
/// `seeded-quintic:SEED`, or paths to JSON curve documents.
#[derive(Parser)]
#[command(name = "curvecert", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = Budgets::default().direction)]
    budget_direction: usize,
    #[arg(long, global = true, default_value_t = Budgets::default().flag)]
    budget_flag: usize,
    #[arg(long, global = true, default_value_t = Budgets::default().repair)]
    budget_repair: usize,
    #[arg(long, global = true, default_value_t = Budgets::default().repair_degree)]
    budget_repair_degree: u32,
    /// Width of isolating boxes, e.g. `1e-12` or `1/1000`.
    #[arg(long, global = true, default_value = "1e-12")]
    precision: String,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify that a curve is an embedding.
    Verify { curve: String },
    /// Certify a projection along a direction as proper, immersive and 2-transversal.
    Analyze { curve: String, direction: String },
    /// Double points and transversality of the projection with the given kernel.
    DoublePoints { curve: String, kernel: String },
    /// Run the interpolation pipeline from `f` to `g` and write the ledger.
    Pipeline { f: String, g: String },
    /// Re-check a ledger by recomputing every step.
    CheckLedger { ledger: String },
    /// Build an automorphism with prescribed 1-jets at two points.
    Jet { input: String },
    /// Sample directions and classify failures of a genericity statement.
    LemmaTest {
        lemma: String,
        curve: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Keep directions inside the span of the first m − l coordinates.
        #[arg(long, default_value_t = 0)]
        fixed_last: usize,
    },
}

fn config(c: &Common, command: &str) -> RunConfig {
    RunConfig {
        command: command.into(),
        seed: c.seed,
        budgets: Budgets {
            direction: c.budget_direction,
            flag: c.budget_flag,
            repair: c.budget_repair,
            repair_degree: c.budget_repair_degree,
        },
        precision: c.precision.clone(),
        output: c.out.clone(),
        options: Default::default(),
    }
}

fn run(cli: Cli) -> Outcome {
    let c = &cli.common;
    match cli.command {
        Command::Verify { curve } => cmd_verify(&config(c, "verify").with_option("curve", &curve), &curve),
        Command::Analyze { curve, direction } => {
            let cfg = config(c, "analyze").with_option("curve", &curve).with_option("direction", &direction);
            cmd_analyze(&cfg, &curve, &direction)
        }
        Command::DoublePoints { curve, kernel } => {
            let cfg = config(c, "double-points").with_option("curve", &curve).with_option("kernel", &kernel);
            cmd_double_points(&cfg, &curve, &kernel)
        }
        Command::Pipeline { f, g } => {
            cmd_pipeline(&config(c, "pipeline").with_option("f", &f).with_option("g", &g), &f, &g)
        }
        Command::CheckLedger { ledger } => {
            cmd_check_ledger(&config(c, "check-ledger").with_option("ledger", &ledger), &ledger)
        }
        Command::Jet { input } => cmd_jet_file(&config(c, "jet").with_option("input", &input), &input),
        Command::LemmaTest { lemma, curve, samples, fixed_last } => {
            let cfg = config(c, "lemma-test")
                .with_option("lemma", &lemma)
                .with_option("curve", &curve)
                .with_option("samples", samples.to_string())
                .with_option("fixed_last", fixed_last.to_string());
            cmd_lemma_test(&cfg, &lemma, &curve, samples, fixed_last)
        }
    }
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    if let Err(e) = outcome.emit() {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
