use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qdisynth::analysis::report;
use qdisynth::analysis::{classify_indication, estimate_cost, orphan_summary, CostSource, SubsetMode};
use qdisynth::logic::{BooleanFunction, Codeword, Rails, MAX_INPUTS};
use qdisynth::netlist::{build_fixture, Circuit, Fixture, Netlist};
use qdisynth::sim::{simulate_transaction, Direction, Phase};
use qdisynth::synth::{synthesize, Method, SynthOptions};

const DEFAULT_SEED: u64 = 0x51d1_2023;

/// Dual-rail QDI synthesis and gate-orphan analysis.
///
/// Truth-table files hold `n=<k>` on the first line and 2^k characters of
/// 0/1 on the second. Character i is f at the assignment whose binary value
/// is Xn..X1, so X1 is the least significant bit. Lines starting with # are
/// ignored.
#[derive(Parser)]
#[command(name = "qdisynth", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Synthesize a truth table into a netlist (JSON). Cost summary goes to stderr.
    Synth {
        /// Truth-table file, `-` for stdin.
        file: PathBuf,
        #[arg(long, value_parser = parse_method)]
        method: Method,
        /// Maximum OR fan-in for output merges (default: one wide OR).
        #[arg(long)]
        or_fanin: Option<usize>,
        /// Largest accepted input count.
        #[arg(long, env = "QDISYNTH_MAX_INPUTS", default_value_t = MAX_INPUTS)]
        max_inputs: usize,
        /// Output file (default stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report gate orphans and/or indication class. Exit code 1 if orphans are found.
    Analyze {
        /// Netlist JSON file, `-` for stdin.
        netlist: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = PhaseSel::Both)]
        phase: PhaseSel,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Try every proper input subset when classifying indication.
        #[arg(long)]
        exhaustive: bool,
        /// Largest input count analysed exhaustively.
        #[arg(long, default_value_t = qdisynth::analysis::DEFAULT_ANALYSIS_CAP)]
        cap: usize,
    },
    /// Compare the built-in 3-input AND circuits codeword by codeword.
    Table1 {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_parser = parse_phase, default_value = "set")]
        phase: Phase,
        #[arg(long)]
        or_fanin: Option<usize>,
    },
    /// Print the set- and reset-phase event traces for one codeword.
    Simulate {
        netlist: PathBuf,
        /// Assignment over Xn..X1 (e.g. `110`), or all dashes for the spacer.
        #[arg(allow_hyphen_values = true)]
        codeword: String,
        /// Read CODEWORD as rail bits in Xn1 Xn0 .. X11 X10 order.
        #[arg(long)]
        rails: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write a built-in netlist: fig3, fig4, fig5 or early-and2.
    Fixture {
        #[arg(value_parser = parse_fixture)]
        name: Fixture,
        #[arg(long)]
        or_fanin: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synthesize random functions by all methods and check equivalence,
    /// protocol properties and orphan freedom.
    Check {
        #[arg(long, default_value_t = 3)]
        inputs: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Orphans,
    Indication,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PhaseSel {
    Set,
    Reset,
    Both,
}

impl PhaseSel {
    fn phases(self) -> &'static [Phase] {
        match self {
            PhaseSel::Set => &[Phase::Set],
            PhaseSel::Reset => &[Phase::Reset],
            PhaseSel::Both => &[Phase::Set, Phase::Reset],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_phase(s: &str) -> Result<Phase, String> {
    s.parse()
}

fn parse_fixture(s: &str) -> Result<Fixture, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Failures that are the user's input rather than a finding.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_circuit(path: &Path) -> Result<Circuit> {
    let text = read_input(path)?;
    let nl = Netlist::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    nl.validate().map_err(|d| anyhow!("{}: invalid netlist: {d}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode, InputError> {
    match cli.cmd {
        Cmd::Synth { file, method, or_fanin, max_inputs, output } => {
            let text = read_input(&file)?;
            let f = BooleanFunction::parse_text(&text).with_context(|| format!("parsing {}", file.display()))?;
            let s = synthesize(&f, method, &SynthOptions { or_fanin, max_inputs })?;
            write_output(output.as_deref(), &s.netlist.to_json())?;
            eprint!("method: {method}\n{}", s.cost());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Analyze { netlist, mode, phase, format, exhaustive, cap } => {
            let c = load_circuit(&netlist)?;
            let phases = phase.phases();
            let orphans = match mode {
                Mode::Indication => None,
                _ => Some(orphan_summary(&c, cap)?),
            };
            let subset_mode = if exhaustive { SubsetMode::Exhaustive } else { SubsetMode::Maximal };
            let indication = match mode {
                Mode::Orphans => None,
                _ => Some(classify_indication(&c, subset_mode)?),
            };
            let found = orphans.as_ref().is_some_and(|t| phases.iter().any(|&p| t.orphan_rows(p) > 0));
            let out = match format {
                Format::Text => {
                    let mut s = String::new();
                    if let Some(t) = &orphans {
                        s.push_str(&report::orphan_table_text(&c, t, phases));
                    }
                    if let Some(ind) = &indication {
                        s.push_str(&format!("indication: {}\n", ind.io_class));
                        s.push_str(&format!("early set: {}, early reset: {}\n", ind.early_set, ind.early_reset));
                        if !ind.witnesses.is_empty() {
                            s.push_str(&format!("witnesses: {}\n", ind.witnesses.len()));
                        }
                    }
                    if mode == Mode::All {
                        s.push_str(&estimate_cost(CostSource::Netlist(c.netlist())).to_string());
                    }
                    s
                }
                Format::Json => {
                    let mut v = serde_json::Map::new();
                    if let Some(t) = &orphans {
                        v.insert("orphans".into(), report::orphan_table_json(t, phases));
                    }
                    if let Some(ind) = &indication {
                        v.insert("indication".into(), serde_json::to_value(ind)?);
                    }
                    if mode == Mode::All {
                        v.insert("cost".into(), serde_json::to_value(estimate_cost(CostSource::Netlist(c.netlist())))?);
                    }
                    serde_json::to_string_pretty(&v)? + "\n"
                }
            };
            write_output(None, &out)?;
            Ok(if found { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Cmd::Table1 { format, phase, or_fanin } => {
            if or_fanin.is_some_and(|k| k < 2) {
                return Err(anyhow!("OR fan-in must be at least 2").into());
            }
            let tables = report::table1_data(or_fanin)?;
            let out = match format {
                Format::Text => report::table1_text(&tables, phase),
                Format::Json => serde_json::to_string_pretty(&report::table1_json(&tables, phase))? + "\n",
            };
            write_output(None, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Simulate { netlist, codeword, rails, format } => {
            let c = load_circuit(&netlist)?;
            let applied = parse_stimulus(&codeword, rails, c.n())?;
            let tx = simulate_transaction(&c, &applied)?;
            let out = match format {
                Format::Text => {
                    let mut s = format!("# set phase, rails {applied}\n");
                    s.push_str(&tx.set.dump(&c));
                    s.push_str("# reset phase\n");
                    s.push_str(&tx.reset.dump(&c));
                    s
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "set": tx.set.to_json_value(&c),
                        "reset": tx.reset.to_json_value(&c),
                        "rtz_complete": tx.is_rtz_complete(),
                    });
                    serde_json::to_string_pretty(&v)? + "\n"
                }
            };
            write_output(None, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fixture { name, or_fanin, output } => {
            if or_fanin.is_some_and(|k| k < 2) {
                return Err(anyhow!("OR fan-in must be at least 2").into());
            }
            write_output(output.as_deref(), &build_fixture(name, or_fanin).to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check { inputs, samples, seed } => Ok(check(inputs, samples, seed)?),
    }
}

fn parse_stimulus(s: &str, rails: bool, n: usize) -> Result<Rails> {
    let parsed = if rails {
        Rails::parse(s)?
    } else if !s.is_empty() && s.chars().all(|c| c == '-') {
        Rails::spacer(s.len())
    } else {
        Codeword::parse(s)?.rails()
    };
    if parsed.n() != n {
        bail!("stimulus `{s}` covers {} variables, netlist has {n}", parsed.n());
    }
    Ok(parsed)
}

fn check(n: usize, samples: usize, seed: u64) -> Result<ExitCode> {
    if n == 0 || n > qdisynth::analysis::DEFAULT_ANALYSIS_CAP {
        bail!("--inputs must be in 1..={}", qdisynth::analysis::DEFAULT_ANALYSIS_CAP);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    let mut fdims_orphaned = 0usize;
    let mut tested = 0usize;
    while tested < samples {
        let bits: Vec<bool> = (0..1usize << n).map(|_| rng.random()).collect();
        let f = BooleanFunction::from_truth_table(n, bits)?;
        if f.is_constant() {
            continue;
        }
        tested += 1;
        for method in Method::ALL {
            let c = synthesize(&f, method, &SynthOptions::default())?.netlist.validate().map_err(|d| anyhow!("{d}"))?;
            let mut problems = Vec::new();
            for cw in Codeword::all(n) {
                let tx = simulate_transaction(&c, &cw.rails())?;
                let v = f.eval(&cw);
                if tx.outputs(&c) != [(v, !v)] {
                    problems.push(format!("{cw}: wrong output"));
                }
                if tx.set.events.iter().any(|e| e.direction != Direction::Rise)
                    || tx.reset.events.iter().any(|e| e.direction != Direction::Fall)
                {
                    problems.push(format!("{cw}: non-monotonic"));
                }
                if !tx.is_rtz_complete() {
                    problems.push(format!("{cw}: not returned to zero"));
                }
            }
            let orphaned = orphan_summary(&c, n)?.has_orphans();
            if orphaned {
                if method == Method::Fdims {
                    fdims_orphaned += 1;
                } else {
                    problems.push("gate orphans".into());
                }
            }
            if !problems.is_empty() {
                failures += 1;
                println!("FAIL {method} f={}: {}", f.to_text().trim_end().replace('\n', " "), problems.join("; "));
            }
        }
    }
    println!("checked {tested} functions of {n} inputs (seed {seed})");
    println!("failures: {failures}");
    println!("fdims netlists with orphans: {fdims_orphaned}");
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
