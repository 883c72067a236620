use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lambek_core::corpus::CorpusBounds;
use lambek_core::xcheck::{xcheck, XCheckOptions};
use lambek_core::{build_frame, exists_net, parse_sequent, prove, Sequent};

#[derive(Parser)]
#[command(
    name = "lambek",
    about = "Derivability in L*(\\, !) by proof search and by proof nets"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a sequent; exit 0 if derivable, 1 if not, 2 on parse error, 3 on disagreement.
    Check {
        #[arg(allow_hyphen_values = true)]
        sequent: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Print a cut-free derivation.
    Prove {
        #[arg(allow_hyphen_values = true)]
        sequent: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a proof net.
    Net {
        #[arg(allow_hyphen_values = true)]
        sequent: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the frame of a sequent.
    Frame {
        #[arg(allow_hyphen_values = true)]
        sequent: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare both deciders over an enumerated corpus.
    Xcheck {
        #[arg(long, default_value_t = 2)]
        atoms: u32,
        #[arg(long, default_value_t = 3)]
        max_connectives: usize,
        #[arg(long, default_value_t = 2)]
        max_antecedent: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Prover,
    Net,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

fn parse(text: &str) -> Result<Sequent, ExitCode> {
    parse_sequent(text).map_err(|e| {
        eprintln!("parse error: {e}");
        ExitCode::from(2)
    })
}

fn unsupported(what: &str, f: Format) -> ExitCode {
    let name = match f {
        Format::Text => "text",
        Format::Json => "json",
        Format::Dot => "dot",
    };
    eprintln!("{what} cannot be printed as {name}");
    ExitCode::from(2)
}

fn json(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.cmd {
        Cmd::Check { sequent, method } => {
            let s = parse(&sequent)?;
            let verdict = match method {
                Method::Prover => prove(&s).is_some(),
                Method::Net => exists_net(&s).is_some(),
                Method::Both => {
                    let p = prove(&s).is_some();
                    let n = exists_net(&s).is_some();
                    if p != n {
                        println!("{s}: disagreement (prover={p}, net={n})");
                        return Ok(ExitCode::from(3));
                    }
                    p
                }
            };
            println!("{s}: {}", if verdict { "derivable" } else { "not derivable" });
            Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Prove { sequent, format } => {
            let s = parse(&sequent)?;
            if format == Format::Dot {
                return Err(unsupported("a derivation", format));
            }
            let Some(d) = prove(&s) else {
                return Ok(ExitCode::from(1));
            };
            match format {
                Format::Json => println!("{}", d.to_json()),
                _ => print!("{}", d.to_text()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Net { sequent, format } => {
            let s = parse(&sequent)?;
            if format == Format::Text {
                return Err(unsupported("a net", format));
            }
            let Some(n) = exists_net(&s) else {
                return Ok(ExitCode::from(1));
            };
            match format {
                Format::Dot => print!("{}", n.to_dot()),
                _ => println!("{}", json(&n.to_json())),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Frame { sequent, format } => {
            let s = parse(&sequent)?;
            let f = build_frame(&s);
            match format {
                Format::Json => println!("{}", json(&f.to_json())),
                Format::Dot => print!("{}", f.to_dot()),
                Format::Text => return Err(unsupported("a frame", format)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Xcheck {
            atoms,
            max_connectives,
            max_antecedent,
            workers,
            limit,
        } => {
            let opts = XCheckOptions {
                bounds: CorpusBounds {
                    atoms,
                    max_connectives,
                    max_antecedent,
                },
                workers,
                limit,
            };
            let report = xcheck(opts).map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(2)
            })?;
            print!("{}", report.to_text());
            eprintln!("elapsed: {:.2?}", report.elapsed);
            Ok(if report.disagreements.is_empty() {
                if report.is_clean() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            } else {
                ExitCode::from(3)
            })
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
