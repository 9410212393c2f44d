use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lpm_core::driver::{check_files, run_example, translate_files, DriverError};
use lpm_core::embed::Mode;
use lpm_core::kernel::{DEFAULT_CONV_DEPTH, DEFAULT_STEPS};
use lpm_core::Fuel;

#[derive(Parser, Debug)]
#[command(
    name = "lpm",
    version,
    about = "Proof checker for the λΠ-calculus modulo rewriting"
)]
struct Cli {
    /// Whether connectives and rule constants compute.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Shallow)]
    mode: ModeArg,
    /// Reduction steps allowed per checked entry.
    #[arg(long, global = true, env = "LPM_FUEL", default_value_t = DEFAULT_STEPS,
          value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
    /// Nesting depth allowed when comparing terms.
    #[arg(long, global = true, default_value_t = DEFAULT_CONV_DEPTH,
          value_parser = clap::value_parser!(u32).range(1..))]
    conv_depth: u32,
    /// Print more about what was checked.
    #[arg(short, long, global = true)]
    verbose: bool,
    /// One JSON object on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Deep,
    Shallow,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Deep => Mode::Deep,
            ModeArg::Shallow => Mode::Shallow,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExampleName {
    BoolCommute,
    SetDiff,
    PairFstSnd,
    PredDecomp,
}

impl ExampleName {
    fn as_str(self) -> &'static str {
        match self {
            ExampleName::BoolCommute => "bool-commute",
            ExampleName::SetDiff => "set-diff",
            ExampleName::PairFstSnd => "pair-fst-snd",
            ExampleName::PredDecomp => "pred-decomp",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check `.dk` files in order against one signature.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Translate a `.tffx` theory, and optionally a `.llpx` certificate,
    /// to `.dk` files and check them.
    Translate {
        /// The `.tffx` theory.
        theory: PathBuf,
        /// A `.llpx` certificate over the theory.
        proof: Option<PathBuf>,
        /// Directory the `.dk` files are written to.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run a bundled example end to end.
    Examples {
        #[arg(value_enum)]
        name: ExampleName,
        /// Directory under which `NAME/` is written.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

struct Report {
    lines: Vec<String>,
    data: Value,
}

fn run(cli: &Cli) -> Result<Report, DriverError> {
    let mode = Mode::from(cli.mode);
    let fuel = Fuel::new(cli.fuel, cli.conv_depth);
    match &cli.command {
        Command::Check { files } => {
            let c = check_files(files, mode, fuel)?;
            let mut lines = Vec::new();
            if cli.verbose {
                for m in c.session.modules() {
                    lines.push(format!("checked module {m}"));
                }
            }
            lines.push(format!("ok: {} file(s)", files.len()));
            Ok(Report {
                lines,
                data: json!({ "modules": c.session.modules() }),
            })
        }
        Command::Translate { theory, proof, out } => {
            let t = translate_files(theory, proof.as_deref(), mode, fuel, out)?;
            let paths: Vec<String> = t
                .files
                .iter()
                .map(|f| f.path.display().to_string())
                .collect();
            let mut lines = Vec::new();
            if cli.verbose {
                lines.extend(paths.iter().map(|p| format!("wrote {p}")));
            }
            lines.push(match &t.certificate {
                Some(c) => format!("accepted: certificate {} ({mode})", c.name),
                None => format!("ok: theory {} ({mode})", t.theory.name),
            });
            Ok(Report {
                lines,
                data: json!({ "files": paths, "accepted": t.certificate.is_some() }),
            })
        }
        Command::Examples { name, out } => {
            let name = name.as_str();
            let r = run_example(name, mode, fuel, &out.join(name))?;
            let mut lines = Vec::new();
            if cli.verbose {
                lines.extend(
                    r.translation
                        .files
                        .iter()
                        .map(|f| format!("wrote {}", f.path.display())),
                );
            }
            lines.push(format!("goal normalizes to: {}", r.normal_goal));
            lines.push(format!("certificate: {}", r.certificate.display()));
            lines.push(format!("accepted ({mode})"));
            Ok(Report {
                lines,
                data: json!({
                    "example": name,
                    "certificate": r.certificate.display().to_string(),
                    "normal_goal": r.normal_goal,
                    "accepted": true,
                }),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                let mut data = r.data;
                data["status"] = json!("ok");
                println!("{data}");
            } else {
                for l in r.lines {
                    println!("{l}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                let (file, line, col) = match e.location() {
                    Some((p, s)) => (Some(p.display().to_string()), Some(s.line), Some(s.col)),
                    None => (None, None, None),
                };
                let v = json!({
                    "status": "error",
                    "exit_code": code,
                    "file": file,
                    "line": line,
                    "col": col,
                    "message": e.to_string(),
                });
                println!("{v}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code as u8)
        }
    }
}
