mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use capeq::equilibrium::DEFAULT_SEARCH_BUDGET;
use capeq::{Rational, Scalar, SearchMode, TNorm, TensorForm};
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{IntegrandSource, Report};
use io::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "capeq", version, about = "t-normed integrals, capacity tensors and equilibria under uncertainty")]
struct Cli {
    /// Arithmetic: exact fractions or f64 with tolerance 1e-9.
    #[arg(long, global = true, value_enum, default_value_t = Numeric::Rational)]
    numeric: Numeric,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Numeric {
    Rational,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Density,
    General,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a function (or one player's payoff at a strategy) against a capacity.
    Integrate(IntegrateArgs),
    /// Tensor product of capacities, written in the capacity file format.
    Tensor(TensorArgs),
    /// Expected payoffs and best-response sets under given beliefs.
    BestResponse(BeliefArgs),
    /// Check whether a belief system is an equilibrium under uncertainty.
    Verify(BeliefArgs),
    /// Enumerate candidate strategy profiles and report the equilibria among them.
    Search(SearchArgs),
    /// Check a possibility profile for Nash equilibrium of the capacity-mixed game.
    NashVerify(NashArgs),
    /// Recompute the two worked 2x2 examples and compare with the published values.
    #[command(name = "reproduce-paper", visible_alias = "reproduce")]
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct IntegrateArgs {
    /// Function file.
    #[arg(long, conflicts_with = "game", required_unless_present = "game")]
    function: Option<PathBuf>,
    /// Game file; integrates the payoff of --player at --strategy.
    #[arg(long, requires_all = ["player", "strategy"])]
    game: Option<PathBuf>,
    /// 1-based player number.
    #[arg(long)]
    player: Option<usize>,
    /// Strategy label of that player.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    capacity: PathBuf,
    #[arg(long, value_parser = parse_tnorm)]
    tnorm: TNorm,
}

#[derive(Args)]
struct TensorArgs {
    #[arg(long, num_args = 1.., required = true)]
    capacities: Vec<PathBuf>,
    #[arg(long, value_parser = parse_tnorm)]
    tnorm: TNorm,
    /// Defaults to density when every factor is a possibility capacity.
    #[arg(long, value_enum)]
    form: Option<Form>,
    /// Output file; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BeliefArgs {
    #[arg(long)]
    game: PathBuf,
    /// One capacity file per player, over that player's opponents.
    #[arg(long, num_args = 1.., required = true)]
    beliefs: Vec<PathBuf>,
    #[arg(long, alias = "tnorm", value_parser = parse_tnorm)]
    payoff_tnorm: TNorm,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    game: PathBuf,
    #[arg(long, value_parser = parse_tnorm)]
    payoff_tnorm: TNorm,
    #[arg(long, value_parser = parse_tnorm)]
    tensor_tnorm: TNorm,
    /// indicator, grid, grid:<g> or necessity.
    #[arg(long, default_value = "indicator", value_parser = parse_mode)]
    mode: SearchMode,
    /// Largest number of candidate profiles to examine.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(Args)]
struct NashArgs {
    #[arg(long)]
    game: PathBuf,
    /// One possibility capacity file per player, over that player's strategies.
    #[arg(long, num_args = 1.., required = true)]
    profile: Vec<PathBuf>,
    #[arg(long, value_parser = parse_tnorm)]
    payoff_tnorm: TNorm,
    #[arg(long, value_parser = parse_tnorm)]
    tensor_tnorm: TNorm,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Replace the first example's game (for testing the checker).
    #[arg(long, hide = true)]
    example_one_game: Option<PathBuf>,
    #[arg(long, hide = true)]
    example_two_game: Option<PathBuf>,
    /// Also write both example games and their beliefs into this directory.
    #[arg(long)]
    export_fixtures: Option<PathBuf>,
}

fn parse_tnorm(text: &str) -> Result<TNorm, String> {
    TNorm::from_name(text).map_err(|e| e.to_string())
}

fn parse_mode(text: &str) -> Result<SearchMode, String> {
    SearchMode::parse(text).map_err(|e| e.to_string())
}

fn run<V: Scalar>(command: &Command) -> CliResult<Report> {
    match command {
        Command::Integrate(a) => {
            let source = match (&a.function, &a.game) {
                (Some(f), _) => IntegrandSource::Function(f.clone()),
                (None, Some(g)) => IntegrandSource::Game {
                    path: g.clone(),
                    player: a.player.expect("required by clap"),
                    strategy: a.strategy.clone().expect("required by clap"),
                },
                (None, None) => return Err(CliError::input("one of --function or --game is required")),
            };
            commands::integrate::<V>(&source, &a.capacity, a.tnorm)
        }
        Command::Tensor(a) => {
            let form = a.form.map(|f| match f {
                Form::Density => TensorForm::Density,
                Form::General => TensorForm::General,
            });
            commands::tensor::<V>(&a.capacities, a.tnorm, form, a.out.as_deref())
        }
        Command::BestResponse(a) => commands::best_response::<V>(&a.game, &a.beliefs, a.payoff_tnorm),
        Command::Verify(a) => commands::verify::<V>(&a.game, &a.beliefs, a.payoff_tnorm),
        Command::Search(a) => commands::search::<V>(&a.game, a.payoff_tnorm, a.tensor_tnorm, a.mode, a.budget),
        Command::NashVerify(a) => commands::nash_verify::<V>(&a.game, &a.profile, a.payoff_tnorm, a.tensor_tnorm),
        Command::Reproduce(a) => {
            commands::reproduce_examples::<V>(
                a.example_one_game.as_deref(),
                a.example_two_game.as_deref(),
                a.export_fixtures.as_deref(),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.numeric {
        Numeric::Rational => run::<Rational>(&cli.command),
        Numeric::Float => run::<f64>(&cli.command),
    };
    match result {
        Ok(report) => {
            match cli.format {
                Format::Human => print!("{}", report.human),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            if cli.format == Format::Json {
                println!("{}", serde_json::json!({ "error": e.message, "exit_code": e.exit_code() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
