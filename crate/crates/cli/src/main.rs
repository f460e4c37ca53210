//! `braidlab`: compile circuits to anyon schedules, run them, verify them
//! against the dense oracle and report schedule statistics.
//!
//! Machine-readable output is JSON on stdout; diagnostics go to stderr.
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 compile
//! error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use braidlab::compiler::{
    compile, execute, validate_schedule, CircuitIr, CompileError, OpCounts, Schedule,
};
use braidlab::encoding::{
    decode_amplitudes, encode_basis, readout_distribution, sample, Bits, EncodingError,
};
use braidlab::oracle::{fidelity, simulate};
use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Fidelity floor for `verify`.
const FIDELITY_THRESHOLD: f64 = 1.0 - 1e-9;
/// Largest register `verify --inputs all` will enumerate.
const MAX_EXHAUSTIVE_QUBITS: usize = 12;
/// Amplitudes smaller than this are left out of reports.
const AMPLITUDE_FLOOR: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "braidlab",
    version,
    about = "Quantum circuits on abelian anyons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower a circuit file to a schedule file.
    Compile {
        circuit: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Execute a schedule from one basis input.
    Run {
        schedule: PathBuf,
        /// Input bitstring, qubit 0 leftmost.
        #[arg(long)]
        input: String,
        /// Sample this many readouts instead of reporting amplitudes.
        #[arg(long, conflicts_with = "amplitudes")]
        shots: Option<u64>,
        #[arg(long, env = "BRAIDLAB_SEED", default_value_t = 0)]
        seed: u64,
        /// Report exact codespace amplitudes (the default without --shots).
        #[arg(long)]
        amplitudes: bool,
    },
    /// Compile a circuit and compare the anyon engine with the dense oracle.
    Verify {
        circuit: PathBuf,
        /// `all`, or `random N`.
        #[arg(long, num_args = 1..=2, value_names = ["MODE", "N"], default_values = ["all"])]
        inputs: Vec<String>,
        #[arg(long, env = "BRAIDLAB_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Operation counts and lattice dimensions of a schedule.
    Stats { schedule: PathBuf },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn compile(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<CompileError> for Failure {
    fn from(e: CompileError) -> Self {
        match e {
            CompileError::Parse(_) => Failure::input(e.to_string()),
            _ => Failure::compile(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<CircuitIr, Failure> {
    Ok(CircuitIr::from_json(&read(path)?)?)
}

fn load_schedule(path: &Path) -> Result<Schedule, Failure> {
    Schedule::from_json(&read(path)?).map_err(|e| Failure::input(e.to_string()))
}

fn parse_bits(s: &str, n_qubits: usize) -> Result<Bits, Failure> {
    let bits: Bits = s
        .parse()
        .map_err(|_| Failure::input(format!("input {s:?} is not a 0/1 bitstring")))?;
    if bits.len() != n_qubits {
        return Err(Failure::input(format!(
            "input {s:?} has {} bits, schedule has {n_qubits} qubits",
            bits.len()
        )));
    }
    Ok(bits)
}

/// Writes to stdout, tolerating a reader that has gone away (`| head`).
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("reports serialize") + "\n"));
}

fn cmd_compile(circuit: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let schedule = compile(&load_circuit(circuit)?)?;
    let json = schedule.to_json();
    match out {
        Some(path) => fs::write(path, json)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            emit(&json);
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct RunReport {
    input: Bits,
    n_qubits: usize,
    phi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    amplitudes: Option<BTreeMap<Bits, [f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shots: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<BTreeMap<Bits, u64>>,
    distribution: BTreeMap<Bits, f64>,
    op_counts: OpCounts,
    max_support: usize,
    wall_time_s: f64,
}

/// Drops negligible terms and rotates the global phase so the first
/// remaining amplitude is real and positive.
fn normalize_phase(amps: BTreeMap<Bits, Complex64>) -> BTreeMap<Bits, [f64; 2]> {
    let kept: Vec<_> = amps
        .into_iter()
        .filter(|(_, a)| a.norm() >= AMPLITUDE_FLOOR)
        .collect();
    let rotation = kept
        .first()
        .map_or(Complex64::new(1.0, 0.0), |(_, a)| a.conj() / a.norm());
    kept.into_iter()
        .map(|(b, a)| {
            let a = a * rotation;
            (b, [a.re, a.im])
        })
        .collect()
}

fn leak(e: EncodingError) -> Failure {
    Failure::verification(format!("readout failed: {e}"))
}

fn cmd_run(path: &Path, input: &str, shots: Option<u64>, seed: u64) -> Result<(), Failure> {
    let schedule = load_schedule(path)?;
    let layout = schedule.layout();
    let bits = parse_bits(input, layout.n_qubits())?;
    validate_schedule(&schedule)
        .map_err(|v| Failure::verification(format!("schedule failed validation: {v}")))?;

    let t0 = Instant::now();
    let mut state = encode_basis(layout, &bits).map_err(|e| Failure::input(e.to_string()))?;
    let stats = execute(&schedule, &mut state)
        .map_err(|e| Failure::verification(format!("execution failed: {e}")))?;
    let distribution = readout_distribution(layout, &state).map_err(leak)?;
    let (amplitudes, counts) = match shots {
        Some(k) => (None, Some(sample(layout, &state, k, seed).map_err(leak)?)),
        None => (
            Some(normalize_phase(
                decode_amplitudes(layout, &state).map_err(leak)?,
            )),
            None,
        ),
    };
    let wall_time_s = t0.elapsed().as_secs_f64();

    print_json(&RunReport {
        input: bits,
        n_qubits: layout.n_qubits(),
        phi: schedule.phi(),
        amplitudes,
        shots,
        seed: shots.map(|_| seed),
        counts,
        distribution,
        op_counts: schedule.counts(),
        max_support: stats.max_support,
        wall_time_s,
    });
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    n_qubits: usize,
    phi: f64,
    inputs_checked: usize,
    min_fidelity: f64,
    worst_input: Bits,
    threshold: f64,
    passed: bool,
    op_counts: OpCounts,
}

fn verify_inputs(mode: &[String], n_qubits: usize, seed: u64) -> Result<Vec<Bits>, Failure> {
    match mode {
        [m] if m == "all" => {
            if n_qubits > MAX_EXHAUSTIVE_QUBITS {
                return Err(Failure::input(format!(
                    "--inputs all supports at most {MAX_EXHAUSTIVE_QUBITS} qubits, circuit has {n_qubits}"
                )));
            }
            Ok(Bits::all(n_qubits).collect())
        }
        [m, count] if m == "random" => {
            let count: usize = count.parse().map_err(|_| {
                Failure::input(format!("--inputs random expects a count, got {count:?}"))
            })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count)
                .map(|_| Bits::new((0..n_qubits).map(|_| rng.gen()).collect()))
                .collect())
        }
        _ => Err(Failure::input(format!(
            "--inputs expects `all` or `random N`, got {:?}",
            mode.join(" ")
        ))),
    }
}

fn cmd_verify(path: &Path, mode: &[String], seed: u64) -> Result<(), Failure> {
    let circuit = load_circuit(path)?;
    let inputs = verify_inputs(mode, circuit.n_qubits(), seed)?;
    if inputs.is_empty() {
        return Err(Failure::input("no inputs to verify"));
    }
    let schedule = compile(&circuit)?;
    validate_schedule(&schedule)
        .map_err(|v| Failure::verification(format!("schedule failed validation: {v}")))?;

    let (mut min_fidelity, mut worst_input) = (f64::INFINITY, inputs[0].clone());
    for bits in &inputs {
        let mut state =
            encode_basis(schedule.layout(), bits).map_err(|e| Failure::input(e.to_string()))?;
        execute(&schedule, &mut state)
            .map_err(|e| Failure::verification(format!("execution failed: {e}")))?;
        let dense = simulate(&circuit, bits).map_err(|e| Failure::input(e.to_string()))?;
        let f = fidelity(&dense, schedule.layout(), &state).map_err(leak)?;
        if f < min_fidelity {
            min_fidelity = f;
            worst_input = bits.clone();
        }
    }
    let passed = min_fidelity >= FIDELITY_THRESHOLD;
    print_json(&VerifyReport {
        n_qubits: circuit.n_qubits(),
        phi: circuit.phi(),
        inputs_checked: inputs.len(),
        min_fidelity,
        worst_input,
        threshold: FIDELITY_THRESHOLD,
        passed,
        op_counts: schedule.counts(),
    });
    if passed {
        Ok(())
    } else {
        Err(Failure::verification(format!(
            "min fidelity {min_fidelity} below {FIDELITY_THRESHOLD}"
        )))
    }
}

#[derive(Serialize)]
struct StatsReport {
    n_qubits: usize,
    phi: f64,
    width: u32,
    height: u32,
    ops: usize,
    hops: usize,
    pswaps: usize,
    nphases: usize,
    braids: usize,
}

fn cmd_stats(path: &Path) -> Result<(), Failure> {
    let schedule = load_schedule(path)?;
    let layout = schedule.layout();
    let c = schedule.counts();
    print_json(&StatsReport {
        n_qubits: layout.n_qubits(),
        phi: schedule.phi(),
        width: layout.width(),
        height: layout.height(),
        ops: schedule.ops().len(),
        hops: c.hops,
        pswaps: c.pswaps,
        nphases: c.nphases,
        braids: c.braids,
    });
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compile { circuit, out } => cmd_compile(circuit, out.as_deref()),
        Command::Run {
            schedule,
            input,
            shots,
            seed,
            ..
        } => cmd_run(schedule, input, *shots, *seed),
        Command::Verify {
            circuit,
            inputs,
            seed,
        } => cmd_verify(circuit, inputs, *seed),
        Command::Stats { schedule } => cmd_stats(schedule),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("braidlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
