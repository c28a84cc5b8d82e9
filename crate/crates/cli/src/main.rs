use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twolevel::circuits::{bit_string, emit_dot, parse_bits, to_netlist, CircuitError, Netlist};
use twolevel::kernel::{catalogue, pretty_term, Phase, Stage};
use twolevel::stager::stage;
use twolevel::surface::{self, Diagnostic, Elaborated, Options, Profile, Span};

/// Staging compiler for two-level programs.
#[derive(Parser)]
#[command(name = "stagec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Source file (`.2lt`).
    file: PathBuf,
    /// Definition to operate on.
    #[arg(long = "def", default_value = "main")]
    def: String,
    #[arg(long, value_enum, default_value_t = ProfileArg::Full)]
    profile: ProfileArg,
    /// Write output here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Elaborate every definition and report "ok".
    Check {
        #[command(flatten)]
        common: Common,
        /// Interpret the file as source or as staged output.
        #[arg(long, value_enum, default_value_t = PhaseArg::Src)]
        phase: PhaseArg,
    },
    /// Print the staged form of a definition.
    Stage {
        #[command(flatten)]
        common: Common,
    },
    /// Simulate a staged circuit on one input vector.
    Run {
        #[command(flatten)]
        common: Common,
        /// Input bits, input 0 first, e.g. `101`.
        #[arg(long)]
        inputs: String,
    },
    /// Print the truth table of a staged circuit.
    Table {
        #[command(flatten)]
        common: Common,
    },
    /// Print a staged circuit as a Graphviz digraph.
    Dot {
        #[command(flatten)]
        common: Common,
    },
    /// List the builtin library.
    Builtins {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Full,
    Circuit,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseArg {
    Src,
    Stg,
}

enum Failure {
    User(String),
    Internal(String),
}

fn located(path: &Path, span: Span, what: impl std::fmt::Display) -> String {
    format!("{}:{}:{}: {what}", path.display(), span.line, span.col)
}

fn from_diagnostic(path: &Path, d: Diagnostic) -> Failure {
    let text = located(path, d.span, format!("{}: {}", d.kind, d.message));
    if d.is_internal() {
        Failure::Internal(text)
    } else {
        Failure::User(text)
    }
}

fn load(common: &Common, phase: Phase) -> Result<Vec<Elaborated>, Failure> {
    let path = &common.file;
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::User(format!("{}: cannot read: {e}", path.display())))?;
    let program = surface::parse(&text).map_err(|d| from_diagnostic(path, d))?;
    let profile = match common.profile {
        ProfileArg::Full => Profile::Full,
        ProfileArg::Circuit => Profile::Circuit,
    };
    surface::elaborate(&program, Options { phase, profile }).map_err(|d| from_diagnostic(path, d))
}

fn def_span(common: &Common) -> Span {
    fs::read_to_string(&common.file)
        .ok()
        .and_then(|t| surface::parse(&t).ok())
        .and_then(|p| p.def(&common.def).map(|d| d.span))
        .unwrap_or_default()
}

fn pick(common: &Common, defs: Vec<Elaborated>) -> Result<Elaborated, Failure> {
    defs.into_iter().find(|d| d.name == common.def).ok_or_else(|| {
        Failure::User(format!("{}: no definition named `{}`", common.file.display(), common.def))
    })
}

fn staged(common: &Common) -> Result<Elaborated, Failure> {
    let def = pick(common, load(common, Phase::Src)?)?;
    if def.ty.stage == Stage::Sta {
        return Err(Failure::User(located(
            &common.file,
            def_span(common),
            format!("`{}` has static type {}; only dynamic definitions can be staged", def.name, def.ty),
        )));
    }
    let term = stage(&def.term, &def.ty).map_err(|e| {
        let text = located(&common.file, def_span(common), &e);
        if e.is_internal() {
            Failure::Internal(text)
        } else {
            Failure::User(text)
        }
    })?;
    let ty = def.ty.as_staged().expect("stage succeeded");
    Ok(Elaborated { name: def.name, ty, term })
}

fn netlist(common: &Common) -> Result<Netlist, Failure> {
    let def = staged(common)?;
    to_netlist(&def.term).map_err(|e| circuit_failure(common, e))
}

fn circuit_failure(common: &Common, e: CircuitError) -> Failure {
    Failure::User(format!("{}: `{}`: {e}", common.file.display(), common.def))
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>), Failure> {
    Ok(match cli.command {
        Command::Check { common, phase } => {
            let phase = match phase {
                PhaseArg::Src => Phase::Src,
                PhaseArg::Stg => Phase::Stg,
            };
            load(&common, phase)?;
            ("ok\n".to_owned(), common.output)
        }
        Command::Stage { common } => {
            let def = staged(&common)?;
            let text = format!("def {} : {} = {};\n", def.name, def.ty, pretty_term(&def.term));
            (text, common.output)
        }
        Command::Run { common, inputs } => {
            let n = netlist(&common)?;
            let bits = parse_bits(&inputs).ok_or_else(|| {
                Failure::User(format!("--inputs must be a string of 0 and 1, got `{inputs}`"))
            })?;
            let out = n.simulate(&bits).map_err(|e| circuit_failure(&common, e))?;
            (format!("{}\n", bit_string(&out)), common.output)
        }
        Command::Table { common } => {
            let n = netlist(&common)?;
            let rows = n.truth_table().map_err(|e| circuit_failure(&common, e))?;
            let text: String = rows
                .iter()
                .map(|(i, o)| format!("{} -> {}\n", bit_string(i), bit_string(o)))
                .collect();
            (text, common.output)
        }
        Command::Dot { common } => {
            let n = netlist(&common)?;
            (emit_dot(&n), common.output)
        }
        Command::Builtins { output } => {
            let text: String =
                catalogue().iter().map(|b| format!("{} : {}\n", b.name, b.ty)).collect();
            (text, output)
        }
    })
}

fn color_enabled() -> bool {
    match std::env::var("STAGEC_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => io::stderr().is_terminal(),
    }
}

fn report(label: &str, message: &str) {
    let label = if color_enabled() { format!("\x1b[1;31m{label}\x1b[0m") } else { label.to_owned() };
    eprintln!("{label}: {message}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok((text, None)) => {
            let mut out = io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Ok((text, Some(path))) => match fs::write(&path, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                report("error", &format!("{}: cannot write: {e}", path.display()));
                ExitCode::from(1)
            }
        },
        Err(Failure::User(m)) => {
            report("error", &m);
            ExitCode::from(1)
        }
        Err(Failure::Internal(m)) => {
            report("internal error", &m);
            ExitCode::from(2)
        }
    }
}
