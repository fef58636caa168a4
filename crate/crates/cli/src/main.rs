use clap::{Args, Parser, Subcommand};

use reflectwist::commands::{self, Gates, Outcome};
use reflectwist::verify::{self, Level};

/// Verify, derive, and enumerate finite braided sets, reflections, Drinfeld
/// twists, braided groups and skew braces, and graded structure monoids.
#[derive(Parser)]
#[command(name = "reflectwist", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify a property of objects read from JSON files.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Build, compose, and invert twist data.
    Twist {
        #[command(subcommand)]
        what: TwistCmd,
    },
    /// The derived solution, or the twist by a given reflection.
    Derive {
        solution: String,
        /// Reflection map file; omitted means the identity reflection.
        #[arg(long)]
        k: Option<String>,
    },
    /// Graded structure-monoid computations.
    Monoid {
        #[command(subcommand)]
        what: MonoidCmd,
    },
    /// Exhaustive enumerations, one JSON object per line.
    Enumerate {
        #[command(subcommand)]
        what: EnumCmd,
    },
    /// Search for counterexample instances.
    Hunt {
        #[command(subcommand)]
        what: HuntCmd,
    },
    /// Run the verification battery and print the pass/fail matrix.
    VerifySuite {
        #[arg(long, default_value = "quick")]
        level: String,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// The Yang-Baxter equation for a solution file.
    Ybe { solution: String },
    /// The braiding axioms of a solution over a group.
    Braiding { group: String, solution: String },
    /// The reflection equation of a map against a solution.
    Reflection {
        solution: String,
        map: String,
        #[arg(long, default_value = "right")]
        side: String,
    },
    /// The group reflection axioms over a braided group.
    GroupReflection { group: String, solution: String, map: String },
    /// The twist axioms of a twist file against a solution.
    Twist { solution: String, twist: String },
    /// The group twist axioms over a braided group.
    GroupTwist { group: String, solution: String, twist: String },
}

#[derive(Subcommand)]
enum TwistCmd {
    /// The twist datum of a right reflection.
    FromReflection { solution: String, map: String },
    /// Compose a twist for the solution with a twist for its twist.
    Compose { solution: String, first: String, second: String },
    /// Invert a twist into a twist for the twisted solution.
    Invert { solution: String, twist: String },
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// Congruence classes of words at a fixed degree.
    Classes {
        solution: String,
        #[arg(long)]
        degree: usize,
    },
    /// The degree-d commutation identity of the word-level reflection.
    Garside {
        solution: String,
        map: String,
        #[arg(long)]
        degree: usize,
    },
    /// The reflection equation on the structure monoid up to a total degree.
    ReCheck {
        solution: String,
        map: String,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum EnumCmd {
    Solutions {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        nondegenerate: bool,
        #[arg(long)]
        involutive: bool,
        #[arg(long)]
        up_to_iso: bool,
    },
    Reflections {
        solution: String,
        #[arg(long, default_value = "right")]
        side: String,
    },
    Groups {
        #[arg(long)]
        order: usize,
    },
    SkewBraces {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "holomorph")]
        strategy: String,
    },
    GroupReflections { brace: String },
}

#[derive(Subcommand)]
enum HuntCmd {
    /// Composition candidates that fail to be group reflections.
    EllCounterexamples(HuntArgs),
}

#[derive(Args)]
struct HuntArgs {
    #[arg(long)]
    max_order: usize,
    #[arg(long)]
    bijective_k: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn emit(outcome: Outcome) -> i32 {
    println!("{}", outcome.report);
    outcome.exit
}

fn emit_result(res: Result<Outcome, reflectwist::formats::LoadError>) -> i32 {
    match res {
        Ok(outcome) => emit(outcome),
        Err(e) => emit(commands::load_error_outcome(&e)),
    }
}

fn main() {
    let cli = Cli::parse();
    let gates = Gates::from_env();
    let code = match cli.cmd {
        Cmd::Check { what } => match what {
            CheckCmd::Ybe { solution } => emit_result(commands::check_ybe(&solution)),
            CheckCmd::Braiding { group, solution } => {
                emit_result(commands::check_braiding_cmd(&group, &solution))
            }
            CheckCmd::Reflection { solution, map, side } => {
                emit_result(commands::check_reflection_cmd(&solution, &map, &side))
            }
            CheckCmd::GroupReflection { group, solution, map } => {
                emit_result(commands::check_group_reflection_cmd(&group, &solution, &map))
            }
            CheckCmd::Twist { solution, twist } => {
                emit_result(commands::check_twist_cmd(&solution, &twist))
            }
            CheckCmd::GroupTwist { group, solution, twist } => {
                emit_result(commands::check_group_twist_cmd(&group, &solution, &twist))
            }
        },
        Cmd::Twist { what } => match what {
            TwistCmd::FromReflection { solution, map } => {
                emit_result(commands::twist_from_reflection_cmd(&solution, &map))
            }
            TwistCmd::Compose { solution, first, second } => {
                emit_result(commands::twist_compose_cmd(&solution, &first, &second))
            }
            TwistCmd::Invert { solution, twist } => {
                emit_result(commands::twist_invert_cmd(&solution, &twist))
            }
        },
        Cmd::Derive { solution, k } => emit_result(commands::derive_cmd(&solution, k.as_deref())),
        Cmd::Monoid { what } => match what {
            MonoidCmd::Classes { solution, degree } => {
                emit_result(commands::monoid_classes_cmd(&solution, degree, &gates))
            }
            MonoidCmd::Garside { solution, map, degree } => {
                emit_result(commands::monoid_garside_cmd(&solution, &map, degree, &gates))
            }
            MonoidCmd::ReCheck { solution, map, degree } => {
                emit_result(commands::monoid_re_check_cmd(&solution, &map, degree, &gates))
            }
        },
        Cmd::Enumerate { what } => {
            let lines = match what {
                EnumCmd::Solutions { order, nondegenerate, involutive, up_to_iso } => {
                    commands::enumerate_solutions_cmd(order, nondegenerate, involutive, up_to_iso)
                }
                EnumCmd::Reflections { solution, side } => {
                    commands::enumerate_reflections_cmd(&solution, &side, &gates)
                }
                EnumCmd::Groups { order } => commands::enumerate_groups_cmd(order),
                EnumCmd::SkewBraces { order, strategy } => {
                    commands::enumerate_skew_braces_cmd(order, &strategy)
                }
                EnumCmd::GroupReflections { brace } => {
                    commands::enumerate_group_reflections_cmd(&brace)
                }
            };
            for line in &lines.lines {
                println!("{line}");
            }
            lines.exit
        }
        Cmd::Hunt { what } => match what {
            HuntCmd::EllCounterexamples(args) => {
                match commands::hunt_ell_cmd(args.max_order, args.bijective_k, args.jobs) {
                    Ok(outcome) => emit(outcome),
                    Err(e) => {
                        println!(
                            "{}",
                            serde_json::json!({"format_version": 1, "error": e.to_string()})
                        );
                        commands::core_error_exit(&e)
                    }
                }
            }
        },
        Cmd::VerifySuite { level } => {
            let Some(level) = Level::parse(&level) else {
                println!(
                    "{}",
                    serde_json::json!({"format_version": 1, "error": "level must be quick or full"})
                );
                std::process::exit(commands::EXIT_MALFORMED);
            };
            let report = verify::run(level);
            let passed = report.passed;
            println!("{}", serde_json::to_string(&report).expect("serialize"));
            if passed {
                commands::EXIT_OK
            } else {
                commands::EXIT_MATH_FAILURE
            }
        }
    };
    std::process::exit(code);
}
