//! The `revsynth` command line.
//!
//! Exit codes: 0 on success (or equivalence), 1 when a verification fails,
//! 2 on usage, parse or I/O errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use revsynth::bench::{run_bench, BenchConfig};
use revsynth::io::{format_circuit, format_spec, parse_circuit, parse_spec, parse_table, parse_template};
use revsynth::optimizer::builtin_templates;
use revsynth::{
    embed, optimize, realized_spec, synthesize, BitString, Circuit, Method, OptimizeConfig, ReversibleSpec, Side,
    SynthesisOptions, TieRule,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "revsynth", version, about = "Reversible logic synthesis with Toffoli gates")]
struct Cli {
    /// Log progress to the error stream (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Bsssn,
    Variant,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Output,
    Input,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Output => Side::Output,
            SideArg::Input => Side::Input,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TieArg {
    #[value(alias = "lowest")]
    LowestValue,
    #[value(alias = "highest")]
    HighestValue,
    #[value(alias = "misplaced")]
    PreferMisplacedThenLowest,
    #[value(alias = "msb")]
    MostSignificantLine,
}

impl From<TieArg> for TieRule {
    fn from(t: TieArg) -> Self {
        match t {
            TieArg::LowestValue => TieRule::LowestValue,
            TieArg::HighestValue => TieRule::HighestValue,
            TieArg::PreferMisplacedThenLowest => TieRule::PreferMisplacedThenLowest,
            TieArg::MostSignificantLine => TieRule::MostSignificantLine,
        }
    }
}

#[derive(Debug, clap::Args)]
struct OptArgs {
    /// Extra template file (pattern, `=>`, replacement); may be repeated.
    #[arg(long = "templates", value_name = "FILE")]
    templates: Vec<PathBuf>,
    /// Skip the built-in template library.
    #[arg(long)]
    no_builtin_templates: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a circuit from a spec file.
    Synth {
        /// Spec file, or `-` for standard input.
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "bsssn")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "output")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "lowest-value")]
        tie: TieArg,
        /// Drop controls that do not change the result of each swap.
        #[arg(long)]
        reduce_controls: bool,
        /// Seed for `--method random` (required there, rejected otherwise).
        #[arg(long)]
        seed: Option<u64>,
        /// Optimize the synthesized circuit.
        #[arg(long)]
        opt: bool,
        /// Print gates last-to-first instead of in application order.
        #[arg(long)]
        reversed: bool,
        /// Gate budget (default 4*n*2^n).
        #[arg(long)]
        max_gates: Option<usize>,
        #[command(flatten)]
        opt_args: OptArgs,
    },
    /// Optimize a circuit file.
    Optimize {
        circuit: PathBuf,
        #[command(flatten)]
        opt_args: OptArgs,
    },
    /// Run a circuit on one input or on all of them.
    Simulate {
        circuit: PathBuf,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        input: Option<u64>,
        #[arg(long)]
        all: bool,
    },
    /// Check that a circuit realizes a spec.
    Verify { circuit: PathBuf, spec: PathBuf },
    /// Embed a truth table into a reversible spec.
    Embed { table: PathBuf },
    /// Gate count, control histogram and complexity of a circuit.
    Stats { circuit: PathBuf },
    /// Synthesize random permutations and write a CSV report.
    Bench {
        /// Smallest width.
        #[arg(long, default_value_t = 3)]
        min_width: usize,
        /// Largest width.
        #[arg(long, default_value_t = 6)]
        max_width: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["bsssn", "variant", "random"])]
        methods: Vec<MethodArg>,
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["lowest-value", "highest-value"])]
        ties: Vec<TieArg>,
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["output", "input"])]
        sides: Vec<SideArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record wall-clock runtime (makes the output non-reproducible).
        #[arg(long)]
        timing: bool,
        /// Output file; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Failure with a diagnostic and an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<revsynth::Error> for Failure {
    fn from(e: revsynth::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

fn with_path<T>(path: &Path, r: revsynth::Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> std::result::Result<ReversibleSpec, Failure> {
    with_path(path, parse_spec(&read_input(path)?))
}

fn load_circuit(path: &Path) -> std::result::Result<Circuit, Failure> {
    with_path(path, parse_circuit(&read_input(path)?))
}

fn optimize_config(args: &OptArgs) -> std::result::Result<OptimizeConfig, Failure> {
    let mut config = OptimizeConfig::default();
    if args.no_builtin_templates {
        config.templates.clear();
    } else {
        config.templates = builtin_templates();
    }
    for path in &args.templates {
        let t = with_path(path, parse_template(&read_input(path)?))?;
        config.templates.push(t);
    }
    Ok(config)
}

fn write_out(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("write failed: {e}")))
}

/// Widens a circuit parsed with an inferred width to `width` lines.
fn widen(circuit: &Circuit, width: usize) -> revsynth::Result<Circuit> {
    let gates = circuit
        .gates()
        .iter()
        .map(|g| g.widened(width))
        .collect::<revsynth::Result<Vec<_>>>()?;
    Circuit::new(width, gates)
}

fn execute(cli: Cli, out: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Synth {
            spec,
            method,
            side,
            tie,
            reduce_controls,
            seed,
            opt,
            reversed,
            max_gates,
            opt_args,
        } => {
            let method = match (method, seed) {
                (MethodArg::Random, Some(seed)) => Method::Random { seed },
                (MethodArg::Random, None) => return Err(Failure::usage("--method random requires --seed")),
                (_, Some(_)) => return Err(Failure::usage("--seed is only used with --method random")),
                (MethodArg::Bsssn, None) => Method::Bsssn,
                (MethodArg::Variant, None) => Method::Variant,
            };
            let spec = load_spec(&spec)?;
            let mut options = SynthesisOptions::default()
                .with_method(method)
                .with_side(side.into())
                .with_tie_rule(tie.into())
                .with_reduce_controls(reduce_controls);
            options.max_gates = max_gates;
            let mut circuit = synthesize(&spec, &options)?;
            log::info!("synthesized {} gates", circuit.len());
            if opt {
                circuit = optimize(&circuit, &optimize_config(&opt_args)?);
                log::info!("optimized to {} gates", circuit.len());
            }
            if reversed {
                circuit = circuit.reversed();
            }
            write_out(out, &format_circuit(&circuit))?;
            Ok(EXIT_OK)
        }
        Command::Optimize { circuit, opt_args } => {
            let circuit = load_circuit(&circuit)?;
            let optimized = optimize(&circuit, &optimize_config(&opt_args)?);
            log::info!("{} -> {} gates", circuit.len(), optimized.len());
            write_out(out, &format_circuit(&optimized))?;
            Ok(EXIT_OK)
        }
        Command::Simulate { circuit, input, all } => {
            let circuit = load_circuit(&circuit)?;
            let w = circuit.width();
            let inputs: Vec<u64> = match input {
                Some(x) if !all => vec![x],
                _ => (0..1u64 << w).collect(),
            };
            let mut text = String::new();
            for x in inputs {
                let bx = BitString::from_int(x, w)?;
                let by = revsynth::simulator::apply_circuit(&circuit, bx)?;
                text.push_str(&format!("{} -> {}  ({bx} -> {by})\n", x, by.int_value()));
            }
            write_out(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify { circuit, spec } => {
            let circuit = load_circuit(&circuit)?;
            let spec = load_spec(&spec)?;
            if circuit.width() > spec.width() {
                write_out(
                    out,
                    &format!(
                        "not equivalent: circuit has {} lines, spec has {}\n",
                        circuit.width(),
                        spec.width()
                    ),
                )?;
                return Ok(EXIT_VERIFY_FAILED);
            }
            let circuit = widen(&circuit, spec.width())?;
            let realized = realized_spec(&circuit)?;
            match (0..spec.len() as u32).find(|&x| realized.apply(x) != spec.apply(x)) {
                None => {
                    write_out(out, "equivalent\n")?;
                    Ok(EXIT_OK)
                }
                Some(x) => {
                    write_out(
                        out,
                        &format!(
                            "not equivalent: input {x} gives {}, expected {}\n",
                            realized.apply(x),
                            spec.apply(x)
                        ),
                    )?;
                    Ok(EXIT_VERIFY_FAILED)
                }
            }
        }
        Command::Embed { table } => {
            let t = with_path(&table, parse_table(&read_input(&table)?))?;
            let (spec, report) = embed(&t)?;
            let names = |ls: &[usize]| {
                ls.iter()
                    .map(|&l| revsynth::bits::line_name(l).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let mut text = format_spec(&spec);
            text.push_str(&format!("# multiplicity {}\n", report.m));
            text.push_str(&format!("# garbage_min {}\n", report.p));
            text.push_str(&format!("# lines {}\n", report.total_lines));
            text.push_str(&format!("# constants {}\n", names(&report.constant_lines)));
            text.push_str(&format!("# outputs {}\n", names(&report.output_bindings)));
            text.push_str(&format!("# garbage {}\n", names(&report.garbage_lines)));
            text.push_str(&format!("# preserved {}\n", names(&report.preserved_inputs)));
            write_out(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Stats { circuit } => {
            let circuit = load_circuit(&circuit)?;
            let hist = circuit
                .control_histogram()
                .iter()
                .enumerate()
                .map(|(k, n)| format!("{k}:{n}"))
                .collect::<Vec<_>>()
                .join(" ");
            let cf = realized_spec(&circuit)?.complexity();
            let text = format!(
                "lines {}\ngates {}\ncontrols {}\nhistogram {hist}\ncf {cf}\n",
                circuit.width(),
                circuit.len(),
                circuit.total_controls()
            );
            write_out(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            min_width,
            max_width,
            trials,
            methods,
            ties,
            sides,
            seed,
            timing,
            output,
        } => {
            let config = BenchConfig {
                widths: min_width..=max_width,
                trials,
                methods: methods
                    .into_iter()
                    .map(|m| match m {
                        MethodArg::Bsssn => Method::Bsssn,
                        MethodArg::Variant => Method::Variant,
                        MethodArg::Random => Method::Random { seed: 0 },
                    })
                    .collect(),
                ties: ties.into_iter().map(Into::into).collect(),
                sides: sides.into_iter().map(Into::into).collect(),
                base_seed: seed,
                timing,
            };
            let summary = match output {
                Some(path) => {
                    let mut buf = Vec::new();
                    let summary = run_bench(&config, &mut buf)?;
                    fs::write(&path, buf).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                    summary
                }
                None => run_bench(&config, out)?,
            };
            log::info!("{} rows, {} verification failures", summary.rows, summary.failures);
            if summary.failures > 0 {
                return Err(Failure {
                    code: EXIT_VERIFY_FAILED,
                    message: format!("{} rows failed verification", summary.failures),
                });
            }
            Ok(EXIT_OK)
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    // Ignore the error when a logger is already installed (repeated calls).
    let _ = env_logger::Builder::new().filter_level(level).try_init();
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    init_logging(cli.verbose);
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
