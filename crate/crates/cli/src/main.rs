//! `cfst`: command-line tools for weighted transducers and contract models.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 parse error,
//! 3 determinization budget exceeded, 4 input-ε precondition violated,
//! 5 unknown symbol.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use contract_fst::algorithms::{
    determinize_with_subsets, shortest_distance, DeterminizeOptions, Direction, DEFAULT_MAX_STATES,
};
use contract_fst::contract::{
    builtin_contract, compile, cost_report, parse_contract_spec, ContractSpec, BUILTIN_CONTRACTS,
};
use contract_fst::io::{
    export_dot, parse_att, parse_symbols, write_att, write_symbols, DotOptions,
};
use contract_fst::{Error, SymbolTable, Wfst};

#[derive(Parser)]
#[command(
    name = "cfst",
    version,
    about = "Weighted finite-state transducer tools for contract analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a summary of a machine.
    Info {
        fst: PathBuf,
        #[command(flatten)]
        symbols: SymbolArgs,
    },
    /// Check machine invariants.
    Validate {
        fst: PathBuf,
        #[command(flatten)]
        symbols: SymbolArgs,
    },
    /// Determinize a machine and write it in AT&T text form.
    Determinize {
        input: PathBuf,
        /// Output path; standard output when omitted or `-`.
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        #[command(flatten)]
        symbols: SymbolArgs,
    },
    /// Shortest distance from the initial state (or to a final state with --reverse).
    Shortestdistance {
        input: PathBuf,
        #[arg(long)]
        reverse: bool,
        #[arg(long)]
        pretty: bool,
        #[command(flatten)]
        symbols: SymbolArgs,
    },
    /// Render a machine as Graphviz DOT.
    Draw {
        input: PathBuf,
        /// Symbol table naming states by id.
        #[arg(long)]
        state_names: Option<PathBuf>,
        /// Print `/0` weights on edges as well.
        #[arg(long)]
        show_unit_weights: bool,
        #[command(flatten)]
        symbols: SymbolArgs,
    },
    /// Weight of an (input, output) string pair.
    Evaluate {
        input_fst: PathBuf,
        /// Space-separated input symbols.
        #[arg(long)]
        input: String,
        /// Space-separated output symbols.
        #[arg(long)]
        output: String,
        #[command(flatten)]
        symbols: SymbolArgs,
    },
    /// Cost report of a contract: cheapest cost to reach and to finish from each state.
    Report {
        #[command(flatten)]
        source: ContractSource,
        #[arg(long)]
        pretty: bool,
    },
    /// Compile a contract to `<stem>.fst.txt`, `.isyms`, `.osyms` and `.states.syms`.
    Compile {
        #[command(flatten)]
        source: ContractSource,
        #[arg(long)]
        out_dir: PathBuf,
        /// File name stem; defaults to the contract file stem or builtin name.
        #[arg(long)]
        stem: Option<String>,
    },
}

#[derive(Args)]
struct SymbolArgs {
    #[arg(long)]
    isymbols: Option<PathBuf>,
    #[arg(long)]
    osymbols: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ContractSource {
    /// Path to a `.contract` file.
    contract: Option<PathBuf>,
    /// Use a built-in contract instead of a file.
    #[arg(long)]
    builtin: Option<String>,
}

enum CliError {
    Fst(Error),
    Io(PathBuf, io::Error),
    Usage(String),
    Invalid(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Fst(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Fst(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(msg) | CliError::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Fst(e) => match e {
                Error::Parse { .. }
                | Error::ContractParse { .. }
                | Error::InvalidWeight { .. }
                | Error::NegativeWeight { .. }
                | Error::DuplicateSymbol { .. }
                | Error::DuplicateId { .. }
                | Error::MissingEpsilon
                | Error::DanglingStateRef { .. }
                | Error::DuplicateStateId { .. }
                | Error::InvalidContract { .. } => 2,
                Error::StateBudgetExceeded { .. } => 3,
                Error::InputEpsilon { .. } => 4,
                Error::UnknownSymbol { .. } | Error::UnknownLabel { .. } => 5,
                _ => 1,
            },
            CliError::Usage(_) => 2,
            CliError::Io(..) | CliError::Invalid(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_symbols(path: Option<&Path>) -> CliResult<Option<SymbolTable>> {
    path.map(|p| Ok(parse_symbols(&read(p)?)?)).transpose()
}

fn load_fst(path: &Path, symbols: &SymbolArgs) -> CliResult<Wfst> {
    let isyms = load_symbols(symbols.isymbols.as_deref())?;
    let osyms = load_symbols(symbols.osymbols.as_deref())?;
    Ok(parse_att(&read(path)?, isyms.as_ref(), osyms.as_ref())?)
}

fn load_contract(source: &ContractSource) -> CliResult<(ContractSpec, String)> {
    match (&source.contract, &source.builtin) {
        (Some(path), None) => {
            let spec = parse_contract_spec(&read(path)?)?;
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("contract")
                .to_string();
            Ok((spec, stem))
        }
        (None, Some(name)) => builtin_contract(name)
            .map(|spec| (spec, name.clone()))
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown builtin contract `{name}` (available: {})",
                    BUILTIN_CONTRACTS.join(", ")
                ))
            }),
        _ => Err(CliError::Usage(
            "give either a contract path or --builtin".to_string(),
        )),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let mut emit = |text: &str| -> CliResult<()> {
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e))
    };

    match cli.command {
        Command::Info { fst, symbols } => {
            let m = load_fst(&fst, &symbols)?;
            let initial: Vec<String> = m.initial_states().map(|(q, _)| q.to_string()).collect();
            let finals: Vec<String> = m.final_states().map(|(q, _)| q.to_string()).collect();
            emit(&format!(
                "{} states, {} arcs, deterministic: {}\ninitial: {}\nfinals: {}\ninput epsilons: {}\noutput epsilons: {}\n",
                m.num_states(),
                m.num_arcs(),
                yes_no(m.is_deterministic()),
                initial.join(" "),
                finals.join(" "),
                yes_no(m.has_input_epsilons()),
                yes_no(m.has_output_epsilons()),
            ))
        }
        Command::Validate { fst, symbols } => {
            let m = load_fst(&fst, &symbols)?;
            let diagnostics = m.validate();
            if diagnostics.is_empty() {
                return emit("ok\n");
            }
            let mut text = String::new();
            for d in &diagnostics {
                text.push_str(&format!("{d:?}\n"));
            }
            emit(&text)?;
            Err(CliError::Invalid(format!(
                "{} problem(s) found",
                diagnostics.len()
            )))
        }
        Command::Determinize {
            input,
            output,
            max_states,
            symbols,
        } => {
            if max_states == 0 {
                return Err(CliError::Usage("--max-states must be positive".to_string()));
            }
            let m = load_fst(&input, &symbols)?;
            let result = determinize_with_subsets(&m, DeterminizeOptions { max_states })?;
            for (q, states) in result.merged_states() {
                let list: Vec<String> = states.iter().map(ToString::to_string).collect();
                eprintln!(
                    "determinize: state {q} merges original states {{{}}}; residuals {:?}",
                    list.join(", "),
                    result.subsets[q].residuals()
                );
            }
            let text = write_att(&result.fst.normalize_initial())?;
            match output {
                Some(path) if path.as_os_str() != "-" => write_file(&path, &text),
                _ => emit(&text),
            }
        }
        Command::Shortestdistance {
            input,
            reverse,
            pretty,
            symbols,
        } => {
            let m = load_fst(&input, &symbols)?;
            let direction = if reverse {
                Direction::Reverse
            } else {
                Direction::Forward
            };
            let d = shortest_distance(&m, direction)?;
            let mut text = String::new();
            if pretty {
                let width = d
                    .iter()
                    .map(|(_, w)| w.to_string().len())
                    .max()
                    .unwrap_or(0);
                text.push_str(if reverse {
                    "state  distance to final\n"
                } else {
                    "state  distance from start\n"
                });
                for (q, w) in d.iter() {
                    text.push_str(&format!("{q:<5}  {:>width$}\n", w.to_string()));
                }
            } else {
                for (q, w) in d.iter() {
                    text.push_str(&format!("{q}\t{w}\n"));
                }
            }
            emit(&text)
        }
        Command::Draw {
            input,
            state_names,
            show_unit_weights,
            symbols,
        } => {
            let m = load_fst(&input, &symbols)?;
            let options = DotOptions {
                state_names: load_symbols(state_names.as_deref())?,
                suppress_unit_weights: !show_unit_weights,
                show_final_weights: true,
            };
            emit(&export_dot(&m, &options))
        }
        Command::Evaluate {
            input_fst,
            input,
            output,
            symbols,
        } => {
            let m = load_fst(&input_fst, &symbols)?;
            let w = m.string_weight_str(&input, &output)?;
            emit(&format!("{w}\n"))
        }
        Command::Report { source, pretty } => {
            let (spec, _) = load_contract(&source)?;
            let report = cost_report(&spec)?;
            emit(&if pretty {
                report.to_pretty()
            } else {
                report.to_plain()
            })
        }
        Command::Compile {
            source,
            out_dir,
            stem,
        } => {
            let (spec, default_stem) = load_contract(&source)?;
            let stem = stem.unwrap_or(default_stem);
            let m = compile(&spec)?;
            fs::create_dir_all(&out_dir).map_err(|e| CliError::Io(out_dir.clone(), e))?;
            let files = [
                ("fst.txt", write_att(&m)?),
                (
                    "isyms",
                    write_symbols(m.isymbols().expect("compiled machines carry symbols")),
                ),
                (
                    "osyms",
                    write_symbols(m.osymbols().expect("compiled machines carry symbols")),
                ),
                ("states.syms", write_symbols(&spec.state_names()?)),
            ];
            let mut listing = String::new();
            for (ext, text) in files {
                let path = out_dir.join(format!("{stem}.{ext}"));
                write_file(&path, &text)?;
                listing.push_str(&format!("{}\n", path.display()));
            }
            emit(&listing)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("cfst: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
