use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn braidlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidlab"))
        .args(args)
        .env_remove("BRAIDLAB_SEED")
        .output()
        .expect("spawn braidlab")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, value.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn bell() -> Value {
    json!({"format": 1, "qubits": 2, "phi": PI, "gates": [{"g": "h", "q": 0}, {"g": "cnot", "c": 0, "t": 1}]})
}

/// Compiles `circuit` into the temp dir and returns the schedule path.
fn compiled(dir: &TempDir, name: &str, circuit: &Value) -> PathBuf {
    let src = write(dir, &format!("{name}.circuit.json"), circuit);
    let out = dir.path().join(format!("{name}.schedule.json"));
    let res = braidlab(&["compile", s(&src), "-o", s(&out)]);
    assert_eq!(code(&res), 0, "{}", stderr(&res));
    out
}

#[test]
fn compile_bell_writes_schedule_deterministically() {
    let dir = TempDir::new().unwrap();
    let a = compiled(&dir, "a", &bell());
    let b = compiled(&dir, "b", &bell());
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let sched: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(sched["format"], 1);
    assert!(!sched["ops"].as_array().unwrap().is_empty());

    // without -o the schedule goes to stdout, byte for byte
    let src = dir.path().join("a.circuit.json");
    let out = braidlab(&["compile", s(&src)]);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, bytes);
}

#[test]
fn compile_malformed_json_is_input_error() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{not json").unwrap();
    let out = braidlab(&["compile", s(&p)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("parse"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn compile_cnot_off_semion_is_compile_error() {
    let dir = TempDir::new().unwrap();
    let circuit = json!({"qubits": 2, "phi": 2.0 * PI / 3.0, "gates": [{"g": "rz", "q": 1, "theta": 0.5}, {"g": "cnot", "c": 0, "t": 1}]});
    let p = write(&dir, "c.json", &circuit);
    let out = braidlab(&["compile", s(&p)]);
    assert_eq!(code(&out), 3);
    let err = stderr(&out);
    assert!(err.contains("CNOT requires semionic phase"), "{err}");
    assert!(err.contains("gate 1"), "{err}");
}

#[test]
fn compile_rejects_out_of_range_operand() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "c.json",
        &json!({"qubits": 2, "phi": PI, "gates": [{"g": "x", "q": 5}]}),
    );
    assert_ne!(code(&braidlab(&["compile", s(&p)])), 0);
}

#[test]
fn run_bell_amplitudes_are_phase_normalized() {
    let dir = TempDir::new().unwrap();
    let sched = compiled(&dir, "bell", &bell());
    let out = braidlab(&["run", s(&sched), "--input", "00", "--amplitudes"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = stdout_json(&out);
    let amps = report["amplitudes"].as_object().unwrap();
    assert_eq!(amps.keys().collect::<Vec<_>>(), ["00", "11"]);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((amps["00"][0].as_f64().unwrap() - h).abs() < 1e-12);
    assert_eq!(amps["00"][1].as_f64().unwrap(), 0.0);
    assert!((amps["11"][0].as_f64().unwrap() - h).abs() < 1e-12);
    assert!(amps["11"][1].as_f64().unwrap().abs() < 1e-12);
    let total: f64 = report["distribution"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_f64().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-9);
    assert_eq!(report["input"], "00");
    assert_eq!(report["op_counts"]["braids"], 1);
    assert!(report["wall_time_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn run_seeded_shots_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let sched = compiled(&dir, "bell", &bell());
    let args = [
        "run",
        s(&sched),
        "--input",
        "00",
        "--shots",
        "2000",
        "--seed",
        "17",
    ];
    let a = stdout_json(&braidlab(&args));
    let b = stdout_json(&braidlab(&args));
    assert_eq!(a["counts"], b["counts"]);
    let counts = a["counts"].as_object().unwrap();
    let total: u64 = counts.values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 2000);
    assert!(counts.keys().all(|k| k == "00" || k == "11"));

    // the environment supplies the default seed
    let env = Command::new(env!("CARGO_BIN_EXE_braidlab"))
        .args(["run", s(&sched), "--input", "00", "--shots", "2000"])
        .env("BRAIDLAB_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&env)["counts"], a["counts"]);
}

#[test]
fn run_zero_shots_gives_empty_counts() {
    let dir = TempDir::new().unwrap();
    let sched = compiled(&dir, "bell", &bell());
    let out = braidlab(&[
        "run",
        s(&sched),
        "--input",
        "01",
        "--shots",
        "0",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["counts"], json!({}));
}

#[test]
fn run_input_length_mismatch_is_input_error() {
    let dir = TempDir::new().unwrap();
    let sched = compiled(&dir, "bell", &bell());
    assert_eq!(code(&braidlab(&["run", s(&sched), "--input", "000"])), 2);
    assert_eq!(code(&braidlab(&["run", s(&sched), "--input", "0a"])), 2);
}

fn hop(from: [i32; 2], to: [i32; 2]) -> Value {
    json!({"op": "hop", "from": from, "to": to})
}

#[test]
fn run_rejects_corrupted_schedule() {
    let dir = TempDir::new().unwrap();
    let path = compiled(&dir, "bell", &bell());
    let mut sched: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    // drive qubit 0's rail-0 anyon straight into qubit 1's rail 0
    let ops = sched["ops"].as_array_mut().unwrap();
    ops.insert(0, hop([4, 0], [4, 1]));
    for (f, t) in [
        ([3, 0], [4, 0]),
        ([2, 0], [3, 0]),
        ([1, 0], [2, 0]),
        ([1, 1], [1, 0]),
    ] {
        ops.insert(0, hop(f, t));
    }
    let bad = write(&dir, "bad.json", &sched);
    let out = braidlab(&["run", s(&bad), "--input", "00"]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(err.contains("validation") && err.contains("op 4"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn run_reports_codespace_leak() {
    let dir = TempDir::new().unwrap();
    let path = compiled(&dir, "bell", &bell());
    let mut sched: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    // park qubit 0's rail-0 anyon in the corridor and leave it there
    sched["ops"]
        .as_array_mut()
        .unwrap()
        .push(hop([1, 1], [1, 0]));
    let leaky = write(&dir, "leaky.json", &sched);
    let out = braidlab(&["run", s(&leaky), "--input", "00", "--amplitudes"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("readout"), "{}", stderr(&out));
}

#[test]
fn verify_bell_all_inputs() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bell.json", &bell());
    let out = braidlab(&["verify", s(&p), "--inputs", "all"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = stdout_json(&out);
    assert_eq!(report["inputs_checked"], 4);
    assert!(report["min_fidelity"].as_f64().unwrap() >= 1.0 - 1e-9);
    assert_eq!(report["passed"], true);
}

fn random_circuit(seed: u64) -> Value {
    // small xorshift so the fixture needs no extra dependencies
    let mut x = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut next = move || {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        x
    };
    let gates: Vec<Value> = (0..20)
        .map(|_| {
            let q = next() % 3;
            let theta = (next() % 10_000) as f64 / 10_000.0 * 4.0 * PI - 2.0 * PI;
            match next() % 6 {
                0 => json!({"g": "rz", "q": q, "theta": theta}),
                1 => json!({"g": "rx", "q": q, "theta": theta}),
                2 => json!({"g": "h", "q": q}),
                3 => json!({"g": "x", "q": q}),
                4 => json!({"g": "cnot", "c": q, "t": (q + 1 + next() % 2) % 3}),
                _ => json!({"g": "cphase", "c": q, "t": (q + 1 + next() % 2) % 3}),
            }
        })
        .collect();
    json!({"qubits": 3, "phi": PI, "gates": gates})
}

#[test]
fn verify_random_circuits() {
    let dir = TempDir::new().unwrap();
    for seed in 1..=3 {
        let p = write(&dir, &format!("r{seed}.json"), &random_circuit(seed));
        let out = braidlab(&["verify", s(&p), "--inputs", "all"]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let sampled = braidlab(&["verify", s(&p), "--inputs", "random", "5", "--seed", "9"]);
        assert_eq!(code(&sampled), 0);
        assert_eq!(stdout_json(&sampled)["inputs_checked"], 5);
        // exit status and report depend only on file, flags and seed
        assert_eq!(
            sampled.stdout,
            braidlab(&["verify", s(&p), "--inputs", "random", "5", "--seed", "9"]).stdout
        );
    }
}

#[test]
fn verify_rejects_bad_input_modes() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bell.json", &bell());
    assert_eq!(code(&braidlab(&["verify", s(&p), "--inputs", "some"])), 2);
    assert_eq!(
        code(&braidlab(&["verify", s(&p), "--inputs", "random", "x"])),
        2
    );
    let wide = write(
        &dir,
        "wide.json",
        &json!({"qubits": 13, "phi": PI, "gates": []}),
    );
    assert_eq!(code(&braidlab(&["verify", s(&wide), "--inputs", "all"])), 2);
    let off = write(
        &dir,
        "off.json",
        &json!({"qubits": 2, "phi": 0.7, "gates": [{"g": "cz", "c": 0, "t": 1}]}),
    );
    assert_eq!(code(&braidlab(&["verify", s(&off)])), 3);
}

#[test]
fn stats_of_empty_schedule_are_zero() {
    let dir = TempDir::new().unwrap();
    let sched = compiled(&dir, "empty", &json!({"qubits": 1, "phi": PI, "gates": []}));
    let out = braidlab(&["stats", s(&sched)]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    for k in ["ops", "hops", "pswaps", "nphases", "braids"] {
        assert_eq!(r[k], 0, "{k}");
    }
    assert_eq!(
        (r["width"].as_u64(), r["height"].as_u64()),
        (Some(5), Some(5))
    );
}

#[test]
fn stats_of_single_cz_match_recount() {
    let dir = TempDir::new().unwrap();
    let sched = compiled(
        &dir,
        "cz",
        &json!({"qubits": 2, "phi": PI, "gates": [{"g": "cz", "c": 0, "t": 1}]}),
    );
    let r = stdout_json(&braidlab(&["stats", s(&sched)]));
    let file: Value = serde_json::from_slice(&std::fs::read(&sched).unwrap()).unwrap();
    let ops = file["ops"].as_array().unwrap();
    let count = |kind: &str| ops.iter().filter(|o| o["op"] == kind).count() as u64;
    assert_eq!(r["hops"].as_u64(), Some(count("hop")));
    assert_eq!(r["pswaps"].as_u64(), Some(count("pswap")));
    assert_eq!(r["nphases"].as_u64(), Some(count("nphase")));
    assert_eq!(r["ops"].as_u64(), Some(ops.len() as u64));
    // 14-edge braid loop plus two hops per Rx in the two X layers
    assert_eq!(r["hops"], 14 + 8);
    assert_eq!(r["braids"], 1);
    assert_eq!(
        (r["width"].as_u64(), r["height"].as_u64()),
        (Some(8), Some(5))
    );
}

#[test]
fn stats_of_missing_file_is_input_error() {
    let out = braidlab(&["stats", "/nonexistent/schedule.json"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}
