use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jacal::algebra::MonomialOrder;
use jacal::dsl::{run_source, ExecOptions};
use jacal::verify::{run_example_corpus, DEFAULT_S_MAX};

#[derive(Parser)]
#[command(name = "jacal", version, about = "Exact commutative algebra scripts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest exponent tried by annihilation_exponent.
        #[arg(long, default_value_t = DEFAULT_S_MAX)]
        smax: usize,
        /// Order for rings declared without `order=`.
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
    },
    /// Run the built-in example fixtures.
    Corpus {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run {
            file,
            format,
            smax,
            order,
        } => {
            let src = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("jacal: {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let opts = ExecOptions {
                s_max: smax,
                order: match order {
                    Order::Grevlex => MonomialOrder::GrevLex,
                    Order::Lex => MonomialOrder::Lex,
                },
            };
            let report = run_source(&src, &opts);
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json")),
            }
            report.exit_code()
        }
        Command::Corpus { format } => {
            let report = run_example_corpus(&ExecOptions::default());
            match format {
                Format::Text => print!("{report}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("json")),
            }
            report.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
