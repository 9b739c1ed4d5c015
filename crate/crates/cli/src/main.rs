use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spm_core::io::{
    convert_convention, generate, parse_pgsolver, parse_solution, to_game, write_pgsolver, write_solution, Convention,
    Family, SolutionDocument,
};
use spm_core::play::{brute_force_values, record_lhg, zielonka, DEFAULT_VERTEX_BOUND};
use spm_core::solvers::{espm, solve_with_strategies, spm};
use spm_core::verify::{check_partition, StrategyCheck, Verdict, Witness};
use spm_core::{LiftPolicy, ParityGame, Player, SolveResult};

/// Parity game solving with small progress measures.
#[derive(Parser)]
#[command(name = "pgspm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game in PGSolver format.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Spm)]
        algorithm: Algorithm,
        #[arg(long, value_enum, default_value_t = ConventionArg::Min)]
        convention: ConventionArg,
        /// Include strategies in the output.
        #[arg(long)]
        strategies: bool,
        /// Include solver counters in text output.
        #[arg(long)]
        stats: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = PolicyArg::Worklist)]
        policy: PolicyArg,
        /// Seed for the random lifting policy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write every effective lift of a plain run to this file.
        #[arg(long, value_name = "OUT")]
        trace_lhg: Option<PathBuf>,
    },
    /// Check a solution file against a game.
    Verify {
        game: PathBuf,
        solution: PathBuf,
        #[arg(long, value_enum, default_value_t = ConventionArg::Min)]
        convention: ConventionArg,
    },
    /// Generate a game.
    Gen {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        min_out: usize,
        #[arg(long, default_value_t = 3)]
        max_out: usize,
        /// Winner of a paradise game.
        #[arg(long, value_enum, default_value_t = PlayerArg::Even)]
        winner: PlayerArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the lifting solver with the reference solvers.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ConventionArg::Min)]
        convention: ConventionArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Spm,
    Espm,
    SpmWithin,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Spm => "spm",
            Algorithm::Espm => "espm",
            Algorithm::SpmWithin => "spm-within",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Min,
    Max,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Worklist,
    RoundRobin,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Random,
    Clique,
    Chain,
    Paradise,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlayerArg {
    Even,
    Odd,
}

/// A failure that maps to an exit code.
enum Failure {
    Input(String),
    Rejected(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            file,
            algorithm,
            convention,
            strategies,
            stats,
            format,
            policy,
            seed,
            trace_lhg,
        } => solve(&file, algorithm, convention, strategies, stats, format, policy_of(policy, seed), trace_lhg),
        Command::Verify {
            game,
            solution,
            convention,
        } => verify(&game, &solution, convention),
        Command::Gen {
            family,
            n,
            d,
            min_out,
            max_out,
            winner,
            seed,
            out,
        } => gen(family, n, d, min_out, max_out, winner, seed, out),
        Command::Oracle { file, convention } => oracle(&file, convention),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(message)) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn policy_of(policy: PolicyArg, seed: u64) -> LiftPolicy {
    match policy {
        PolicyArg::Worklist => LiftPolicy::Worklist,
        PolicyArg::RoundRobin => LiftPolicy::RoundRobin,
        PolicyArg::Random => LiftPolicy::Random { seed },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path, convention: ConventionArg) -> Result<(ParityGame, Vec<u64>), Failure> {
    let text = read(path)?;
    let mut doc = parse_pgsolver(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    doc.convention = match convention {
        ConventionArg::Min => Convention::Min,
        ConventionArg::Max => Convention::Max,
    };
    let doc = convert_convention(&doc, Convention::Min);
    to_game(&doc).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn solve(
    file: &Path,
    algorithm: Algorithm,
    convention: ConventionArg,
    strategies: bool,
    stats: bool,
    format: Format,
    policy: LiftPolicy,
    trace_lhg: Option<PathBuf>,
) -> Result<(), Failure> {
    let (game, ids) = load_game(file, convention)?;
    let result = match algorithm {
        Algorithm::Spm => spm(&game, policy),
        Algorithm::Espm => espm(&game, policy),
        Algorithm::SpmWithin => solve_with_strategies(&game, policy),
    };

    if let Some(out) = trace_lhg {
        let history = record_lhg(&game, policy, false);
        let mut text = String::new();
        for record in history.trace() {
            write!(text, "{} {} {} {}", record.lift_index, ids[record.vertex], record.old, record.new).unwrap();
            for (w, value) in &record.snapshot {
                write!(text, " {}:{}", ids[*w], value).unwrap();
            }
            text.push('\n');
        }
        fs::write(&out, text).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    }

    let mut doc = SolutionDocument::from_result(&game, &ids, &result, algorithm.name(), strategies);
    match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(&doc).expect("solution documents serialise");
            println!("{json}");
        }
        Format::Text => {
            if !stats {
                doc.stats = None;
            }
            print!("{}", write_solution(&doc));
        }
    }
    Ok(())
}

fn verify(game_path: &Path, solution_path: &Path, convention: ConventionArg) -> Result<(), Failure> {
    let (game, ids) = load_game(game_path, convention)?;
    let text = read(solution_path)?;
    let doc: SolutionDocument = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", solution_path.display())))?
    } else {
        parse_solution(&text).map_err(|e| Failure::Input(format!("{}: {e}", solution_path.display())))?
    };
    let result = doc
        .to_result(&game, &ids)
        .map_err(|e| Failure::Input(format!("{}: {e}", solution_path.display())))?;

    let report = check_partition(&game, &result);
    let mut lines = Vec::new();
    if !report.disjoint_cover {
        lines.push("regions do not partition the game".to_string());
    }
    for (player, check) in [(Player::Even, &report.even_strategy), (Player::Odd, &report.odd_strategy)] {
        match check {
            StrategyCheck::NotProvided => lines.push(format!("{player} strategy: not provided")),
            StrategyCheck::Checked(Verdict::Winning) => lines.push(format!("{player} strategy: winning")),
            StrategyCheck::Checked(Verdict::Losing(witness)) => {
                lines.push(format!("{player} strategy: losing, {}", describe(&game, &ids, witness)))
            }
            StrategyCheck::Rejected(reason) => lines.push(format!("{player} strategy: rejected, {reason}")),
        }
    }
    match report.oracle_agrees {
        Some(true) => lines.push("partition agrees with the recursive solver".to_string()),
        Some(false) => lines.push("partition disagrees with the recursive solver".to_string()),
        None => lines.push("partition not cross-checked (game too large)".to_string()),
    }
    if report.passed() {
        for line in lines {
            println!("{line}");
        }
        println!("verified");
        Ok(())
    } else {
        Err(Failure::Rejected(lines.join("\n")))
    }
}

fn describe(game: &ParityGame, ids: &[u64], witness: &Witness) -> String {
    let label = |v: usize| game.name(v).map_or_else(|| ids[v].to_string(), str::to_string);
    match witness {
        Witness::Escape { from, to } => format!("escape {} -> {}", label(*from), label(*to)),
        Witness::Cycle(play) => {
            let cycle: Vec<String> = play.cycle().iter().map(|&v| label(v)).collect();
            format!("opponent cycle {}", cycle.join(" "))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    family: FamilyArg,
    n: usize,
    d: u32,
    min_out: usize,
    max_out: usize,
    winner: PlayerArg,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let family = match family {
        FamilyArg::Random => Family::Random { n, d, min_out, max_out },
        FamilyArg::Clique => Family::Clique { n },
        FamilyArg::Chain => Family::Chain { n, d },
        FamilyArg::Paradise => Family::Paradise {
            n,
            winner: match winner {
                PlayerArg::Even => Player::Even,
                PlayerArg::Odd => Player::Odd,
            },
        },
    };
    let doc = generate(family, seed).map_err(|e| Failure::Input(e.to_string()))?;
    let text = write_pgsolver(&doc);
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn oracle(file: &Path, convention: ConventionArg) -> Result<(), Failure> {
    let (game, _) = load_game(file, convention)?;
    let lifted = spm(&game, LiftPolicy::Worklist);
    let recursive: SolveResult = zielonka(&game);
    let mut mismatches = Vec::new();

    if recursive.even_region == lifted.even_region {
        println!("zielonka: partition agrees");
    } else {
        mismatches.push("zielonka: partition differs".to_string());
    }
    if game.num_vertices() <= DEFAULT_VERTEX_BOUND {
        match brute_force_values(&game) {
            Ok(values) => {
                let measure = lifted.measure.as_ref().expect("spm keeps its measure");
                let differing: Vec<String> = game
                    .vertices()
                    .filter(|&v| values[v] != measure.get(v))
                    .map(|v| format!("{}: brute force {} vs lifted {}", game.label(v), values[v], measure.get(v)))
                    .collect();
                if differing.is_empty() {
                    println!("brute force: values agree");
                } else {
                    mismatches.extend(differing);
                }
            }
            Err(e) => println!("brute force: skipped ({e})"),
        }
    } else {
        println!("brute force: skipped (more than {DEFAULT_VERTEX_BOUND} vertices)");
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Rejected(mismatches.join("\n")))
    }
}
