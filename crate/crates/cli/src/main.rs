mod sweep;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qlzoc::analyzer::{analyze, compare_circuit, render_rows, render_table, ComparisonRow, Status};
use qlzoc::decompose::{expand, lower_for_qasm, CcxStyle, DecompositionPolicy, LadderGate};
use qlzoc::generators::{build, CountKind, DesignId};
use qlzoc::ir::{to_qasm, to_text, Circuit, GateKind};
use qlzoc::oracle::BitWord;
use qlzoc::sim::{exhaustive_verify_circuit, expected_count, sampled_verify_circuit, Execution, DEFAULT_SEED};
use qlzoc::vectors::{run_vector, PaperVector, LOC_VECTORS, LZC_VECTORS};
use qlzoc::Error;

/// Width up to which `verify` sweeps every input unless told otherwise.
const AUTO_EXHAUSTIVE: usize = 20;
const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Parser)]
#[command(name = "qlzoc", version, about = "Quantum leading-zero/one counter circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a circuit and write it in the interchange format.
    Generate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        policy: PolicyArgs,
        /// Write the Clifford+T expansion instead of the macro circuit.
        #[arg(long)]
        expand: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a design against the reference counts.
    Verify {
        #[command(flatten)]
        target: Target,
        /// Simulate every input (default up to m = 20).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Number of stratified random inputs.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run a single m-bit input instead (decimal, 0x or 0b).
        #[arg(long, value_parser = parse_word)]
        vector: Option<u128>,
        /// Mode bit for the reconfigurable design: 1 counts zeros, 0 counts ones.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        mode_bit: Option<u8>,
    },
    /// Resource metrics and the comparison rows for one design.
    Analyze {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Comparison rows against the published figures.
    Compare {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        policy: PolicyArgs,
        #[command(flatten)]
        report: ReportArgs,
        /// Exit 1 when an asserted table cell mismatches.
        #[arg(long)]
        strict: bool,
    },
    /// Write a circuit as interchange text or QASM.
    Emit {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, value_enum, default_value_t = EmitFormat::Interchange)]
        format: EmitFormat,
        /// Expand every macro gate, Toffolis included.
        #[arg(long)]
        expand: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify and compare a grid of designs and widths in one report.
    Sweep {
        /// Widths, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 8, 16, 32])]
        m: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long, value_parser = parse_design)]
    design: DesignId,
    #[arg(long)]
    m: usize,
    /// Build the next native width for tree designs instead of rejecting m.
    #[arg(long)]
    pad: bool,
}

#[derive(Args)]
struct PolicyArgs {
    #[arg(long, value_enum, default_value_t = CcxArg::Amy)]
    ccx: CcxArg,
    #[arg(long, value_enum, default_value_t = LadderArg::Ccx)]
    ladder: LadderArg,
}

#[derive(Args)]
struct ReportArgs {
    /// Print rows as key=value records instead of an aligned table.
    #[arg(long)]
    kv: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CcxArg {
    Amy,
    Jones,
}

#[derive(Clone, Copy, ValueEnum)]
enum LadderArg {
    Ccx,
    Tand,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitFormat {
    Interchange,
    Qasm,
}

impl PolicyArgs {
    fn policy(&self) -> DecompositionPolicy {
        DecompositionPolicy {
            ccx_style: match self.ccx {
                CcxArg::Amy => CcxStyle::AmyDepth9,
                CcxArg::Jones => CcxStyle::JonesMeasurement,
            },
            ladder_gate: match self.ladder {
                LadderArg::Ccx => LadderGate::Ccx,
                LadderArg::Tand => LadderGate::TAnd,
            },
            ..Default::default()
        }
    }

    fn describe(&self) -> String {
        let p = self.policy();
        format!("ccx={:?} tand={:?} mcx={:?} ladder={:?}", p.ccx_style, p.tand_style, p.mcx_style, p.ladder_gate)
    }
}

impl Target {
    /// Width actually built: `m` itself, or the padded native width.
    fn width(&self) -> Result<usize, Failure> {
        let m = if self.pad { self.design.native_width(self.m) } else { self.m };
        self.design.validate_width(m)?;
        Ok(m)
    }

    fn build(&self) -> Result<(usize, Circuit), Failure> {
        let m = self.width()?;
        Ok((m, build(self.design, m)?))
    }
}

fn parse_design(s: &str) -> Result<DesignId, String> {
    DesignId::parse(s).ok_or_else(|| {
        let names: Vec<&str> = DesignId::ALL.iter().map(|d| d.name()).collect();
        format!("unknown design `{s}` (known: {})", names.join(", "))
    })
}

fn parse_word(s: &str) -> Result<u128, String> {
    let (digits, radix) = if let Some(b) = s.strip_prefix("0b") {
        (b, 2)
    } else if let Some(h) = s.strip_prefix("0x") {
        (h, 16)
    } else {
        (s, 10)
    };
    u128::from_str_radix(&digits.replace('_', ""), radix).map_err(|e| format!("bad word `{s}`: {e}"))
}

/// An error together with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidWidth(_)
            | Error::Shape(_)
            | Error::VariantMismatch(_)
            | Error::Domain(_)
            | Error::Capacity(_)
            | Error::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Failed(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gate_summary(c: &Circuit) -> String {
    let mut parts = vec![format!("total={}", c.gates().len())];
    for kind in GateKind::ALL {
        let n = c.count(kind);
        if n > 0 {
            parts.push(format!("{}={n}", kind.mnemonic()));
        }
    }
    parts.join(" ")
}

fn generate(target: &Target, policy: &PolicyArgs, expand_all: bool, output: Option<&PathBuf>) -> Result<bool, Failure> {
    let (m, circuit) = target.build()?;
    let report = analyze(&circuit, &policy.policy())?;
    let body = if expand_all { expand(&circuit, &policy.policy())? } else { circuit.clone() };
    let mut text = String::new();
    writeln!(text, "# design {} m={m}", target.design).unwrap();
    if m != target.m {
        writeln!(text, "# padded from m={} to native width {m}", target.m).unwrap();
    }
    writeln!(text, "# policy {}", policy.describe()).unwrap();
    writeln!(text, "# gates {}", gate_summary(&body)).unwrap();
    writeln!(text, "# expanded t_count={} t_depth={}", report.t_count, report.t_depth).unwrap();
    text.push_str(&to_text(&body));
    write_out(output, &text)?;
    Ok(true)
}

fn vector_family(kind: CountKind) -> Vec<(&'static str, PaperVector, Option<bool>)> {
    let lzc = LZC_VECTORS.iter().map(|v| ("lzc", *v, Some(true)));
    let loc = LOC_VECTORS.iter().map(|v| ("loc", *v, Some(false)));
    match kind {
        CountKind::Lzc => lzc.collect(),
        CountKind::Loc => loc.collect(),
        CountKind::ModeSelected => lzc.chain(loc).collect(),
    }
}

fn verify(
    target: &Target,
    exhaustive: bool,
    samples: Option<usize>,
    seed: u64,
    vector: Option<u128>,
    mode_bit: Option<u8>,
) -> Result<bool, Failure> {
    let design = target.design;
    let mode = mode_bit.map(|b| b == 1);
    match (design.count_kind(), mode) {
        (CountKind::ModeSelected, None) if vector.is_some() => {
            return Err(Failure::Usage("the reconfigurable design needs --mode-bit".into()))
        }
        (CountKind::Lzc | CountKind::Loc, Some(_)) => {
            return Err(Failure::Usage(format!("{design} has no mode qubit; drop --mode-bit")))
        }
        _ => {}
    }
    if let Some(x) = vector {
        return verify_vector(target, x, mode);
    }
    let (m, circuit) = target.build()?;
    let report = if exhaustive || (samples.is_none() && m <= AUTO_EXHAUSTIVE) {
        exhaustive_verify_circuit(design, &circuit, Execution::Parallel)?
    } else {
        sampled_verify_circuit(design, &circuit, samples.unwrap_or(DEFAULT_SAMPLES), seed, Execution::Parallel)?
    };
    let mut text = report.to_key_value();
    let mut ok = report.passed();
    if !design.is_fixed_block() {
        text.push_str("\n# published vectors\n");
        for (family, v, mode) in vector_family(design.count_kind()) {
            let (run, circuit) = run_vector(design, v.n, v.x, mode)?;
            let pass = run.reported == v.count && run.clean(&circuit);
            ok &= pass;
            writeln!(
                text,
                "vector={family} n={} x={} native_m={} expected={} got={} status={}",
                v.n,
                v.x,
                run.native_m,
                v.count,
                run.reported,
                if pass { "pass" } else { "fail" }
            )
            .unwrap();
        }
    }
    print!("{text}");
    if !ok {
        if let Some(c) = &report.counterexample {
            eprintln!("verification failed: input {} expected {} got {} ({})", c.input, c.expected, c.got, c.reason);
        } else {
            eprintln!("verification failed on a published vector");
        }
    }
    Ok(ok)
}

fn verify_vector(target: &Target, x: u128, mode: Option<bool>) -> Result<bool, Failure> {
    let design = target.design;
    let n = target.m;
    let native = design.native_width(n);
    if native != n && !target.pad {
        design.validate_width(n)?;
    }
    let word = BitWord::new(x, n as u32)?;
    let (run, circuit) = run_vector(design, n as u32, x, mode)?;
    let expected = expected_count(design.count_kind(), word, mode);
    let pass = run.reported == expected && run.clean(&circuit);
    let mut text = String::new();
    writeln!(text, "design={design}").unwrap();
    writeln!(text, "n={n}").unwrap();
    writeln!(text, "x={x}").unwrap();
    if let Some(b) = mode {
        writeln!(text, "mode_bit={}", b as u8).unwrap();
    }
    writeln!(text, "native_m={}", run.native_m).unwrap();
    writeln!(text, "padded={}", run.padded).unwrap();
    writeln!(text, "raw={}", run.raw).unwrap();
    writeln!(text, "gamma={}", run.reported).unwrap();
    writeln!(text, "expected={expected}").unwrap();
    writeln!(text, "status={}", if pass { "pass" } else { "fail" }).unwrap();
    print!("{text}");
    if !pass {
        eprintln!("vector {x} gave {} instead of {expected}", run.reported);
    }
    Ok(pass)
}

fn rows_text(rows: &[ComparisonRow], kv: bool) -> String {
    if kv {
        render_rows(rows)
    } else {
        render_table(rows)
    }
}

/// Shared body of `analyze` (metrics and rows) and `compare` (rows only).
fn report_cmd(
    target: &Target,
    policy: &PolicyArgs,
    report: &ReportArgs,
    with_metrics: bool,
    strict: bool,
) -> Result<bool, Failure> {
    let (m, circuit) = target.build()?;
    let res = analyze(&circuit, &policy.policy())?;
    let rows = compare_circuit(target.design, m, &res);
    let mut text = String::new();
    if with_metrics {
        writeln!(text, "design={}\nm={m}", target.design).unwrap();
        text.push_str(&res.to_key_value());
        text.push('\n');
    }
    text.push_str(&rows_text(&rows, report.kv));
    let failing: Vec<&ComparisonRow> = rows.iter().filter(|r| r.asserted && r.status == Status::Mismatch).collect();
    if !with_metrics {
        writeln!(text, "\nasserted_mismatches={}", failing.len()).unwrap();
    }
    write_out(report.output.as_ref(), &text)?;
    if strict && !failing.is_empty() {
        for r in failing {
            eprintln!(
                "strict: {} m={} {} generated {} vs {}",
                r.design,
                r.m,
                r.metric,
                r.generated,
                r.paper.unwrap_or(0)
            );
        }
        return Ok(false);
    }
    Ok(true)
}

fn emit(
    target: &Target,
    policy: &PolicyArgs,
    format: EmitFormat,
    expand_all: bool,
    output: Option<&PathBuf>,
) -> Result<bool, Failure> {
    let (_, circuit) = target.build()?;
    let p = policy.policy();
    let text = match format {
        EmitFormat::Interchange if expand_all => to_text(&expand(&circuit, &p)?),
        EmitFormat::Interchange => to_text(&circuit),
        EmitFormat::Qasm if expand_all => to_qasm(&expand(&circuit, &p)?)?,
        EmitFormat::Qasm => to_qasm(&lower_for_qasm(&circuit, &p)?)?,
    };
    write_out(output, &text)?;
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Generate { target, policy, expand, output } => generate(&target, &policy, expand, output.as_ref()),
        Command::Verify { target, exhaustive, samples, seed, vector, mode_bit } => {
            verify(&target, exhaustive, samples, seed, vector, mode_bit)
        }
        Command::Analyze { target, policy, report } => report_cmd(&target, &policy, &report, true, false),
        Command::Compare { target, policy, report, strict } => report_cmd(&target, &policy, &report, false, strict),
        Command::Emit { target, policy, format, expand, output } => {
            emit(&target, &policy, format, expand, output.as_ref())
        }
        Command::Sweep { m, samples, seed, output } => {
            let (text, ok) = sweep::sweep(&m, samples, seed)?;
            write_out(output.as_ref(), &text)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
