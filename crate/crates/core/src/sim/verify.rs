//! Exhaustive and sampled verification of generated designs against the
//! reference counts.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::{outcome_for_lane, run_lanes, SimEvidence, LANES};
use crate::error::{Error, Result};
use crate::generators::{build, CountKind, DesignId};
use crate::ir::{Circuit, RegisterRole};
use crate::oracle::{loc, lzc, width_mask, BitWord};

/// Largest width accepted for exhaustive sweeps.
pub const MAX_EXHAUSTIVE_WIDTH: usize = 24;

pub const DEFAULT_SEED: u64 = 0x51c0_2024;

/// How chunks of 64 inputs are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
    #[default]
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub input: u128,
    pub mode: Option<bool>,
    pub expected: u128,
    pub got: u128,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub design: DesignId,
    pub m: usize,
    pub method: Method,
    pub cases: u64,
    pub failures: u64,
    pub counterexample: Option<Counterexample>,
    pub evidence: SimEvidence,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    /// `key=value` lines in a fixed order.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("design={}\n", self.design));
        out.push_str(&format!("m={}\n", self.m));
        match self.method {
            Method::Exhaustive => out.push_str("method=exhaustive\n"),
            Method::Sampled { samples, seed } => {
                out.push_str(&format!("method=sampled\nsamples={samples}\nseed={seed}\n"))
            }
        }
        out.push_str(&format!("cases={}\n", self.cases));
        out.push_str(&format!("failures={}\n", self.failures));
        out.push_str(&format!("status={}\n", if self.passed() { "pass" } else { "fail" }));
        match &self.counterexample {
            None => out.push_str("counterexample=none\n"),
            Some(c) => {
                let mode = c.mode.map_or("-".to_string(), |b| (b as u8).to_string());
                out.push_str(&format!(
                    "counterexample=input:{} mode:{} expected:{} got:{} reason:{}\n",
                    c.input, mode, c.expected, c.got, c.reason
                ));
            }
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_key_value())
    }
}

/// Reference count of `x` for a design, given the mode bit when relevant.
pub fn expected_count(kind: CountKind, x: BitWord, mode: Option<bool>) -> u32 {
    match (kind, mode) {
        (CountKind::Lzc, _) | (CountKind::ModeSelected, Some(true)) => lzc(x),
        (CountKind::Loc, _) | (CountKind::ModeSelected, _) => loc(x),
    }
}

#[derive(Clone, Debug, Default)]
struct ChunkResult {
    cases: u64,
    failures: u64,
    first: Option<Counterexample>,
    evidence: SimEvidence,
}

impl ChunkResult {
    fn absorb(&mut self, other: ChunkResult) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
        self.evidence.merge(&other.evidence);
    }
}

fn check_chunk(circuit: &Circuit, kind: CountKind, cases: &[(u128, Option<bool>)]) -> Result<ChunkResult> {
    let inputs: Vec<u128> = cases.iter().map(|c| c.0).collect();
    let modes: Vec<bool> = cases.iter().map(|c| c.1.unwrap_or(false)).collect();
    let state = run_lanes(circuit, &inputs, &modes)?;
    let mut res = ChunkResult {
        cases: cases.len() as u64,
        evidence: SimEvidence::new(circuit.num_qubits()),
        ..Default::default()
    };
    res.evidence.record(&state);
    let m = circuit.m() as u32;

    // Lanes failing any word-wide check: contracts, input, mode, reusable ancillas.
    let lane_word = |bit: &dyn Fn(usize) -> bool| (0..cases.len()).fold(0u64, |w, l| w | ((bit(l) as u64) << l));
    let mut bad = state.violated_lanes();
    for (j, q) in circuit.input().iter().enumerate() {
        bad |= state.words[q.index()] ^ lane_word(&|l| (cases[l].0 >> j) & 1 == 1);
    }
    if let Some(c) = circuit.mode() {
        bad |= state.words[c.index()] ^ lane_word(&|l| cases[l].1 == Some(true));
    }
    for q in circuit.qubits_with_role(RegisterRole::AncillaReusable) {
        bad |= state.words[q.index()];
    }
    let mut expected = Vec::with_capacity(cases.len());
    for (lane, &(x, mode)) in cases.iter().enumerate() {
        let e = expected_count(kind, BitWord::new(x, m)?, mode) as u128;
        if state.register_value(circuit.output(), lane) != e {
            bad |= 1 << lane;
        }
        expected.push(e);
    }
    bad &= state.active;
    res.failures = bad.count_ones() as u64;

    if bad != 0 {
        let lane = bad.trailing_zeros() as usize;
        let (x, mode) = cases[lane];
        let out = outcome_for_lane(circuit, &state, lane);
        let reason = if !out.violations.is_empty() {
            format!("temporary-AND contract violated at gate {}", out.violations[0].gate_index)
        } else if out.output != expected[lane] {
            "wrong count".to_string()
        } else if out.input != x {
            format!("input not restored ({})", out.input)
        } else if out.mode != mode {
            "mode qubit changed".to_string()
        } else {
            "reusable ancilla left dirty".to_string()
        };
        res.first = Some(Counterexample { input: x, mode, expected: expected[lane], got: out.output, reason });
    }
    Ok(res)
}

fn run_chunks(
    circuit: &Circuit,
    kind: CountKind,
    chunks: Vec<Vec<(u128, Option<bool>)>>,
    exec: Execution,
) -> Result<ChunkResult> {
    let results: Vec<Result<ChunkResult>> = match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            chunks.par_iter().map(|c| check_chunk(circuit, kind, c)).collect()
        }
        _ => chunks.iter().map(|c| check_chunk(circuit, kind, c)).collect(),
    };
    let mut total = ChunkResult::default();
    for r in results {
        total.absorb(r?);
    }
    Ok(total)
}

fn modes_for(kind: CountKind) -> Vec<Option<bool>> {
    match kind {
        CountKind::ModeSelected => vec![Some(false), Some(true)],
        _ => vec![None],
    }
}

/// Verifies an already-built circuit on every input (and both mode bits for
/// mode-selected designs).
pub fn exhaustive_verify_circuit(design: DesignId, circuit: &Circuit, exec: Execution) -> Result<VerificationReport> {
    let m = circuit.m();
    if m > MAX_EXHAUSTIVE_WIDTH {
        return Err(Error::Domain(format!(
            "exhaustive sweeps are limited to m <= {MAX_EXHAUSTIVE_WIDTH}, got {m}; sample instead"
        )));
    }
    let kind = design.count_kind();
    let total = 1u128 << m;
    let mut chunks = Vec::new();
    for mode in modes_for(kind) {
        let mut start = 0u128;
        while start < total {
            let end = (start + LANES as u128).min(total);
            chunks.push((start..end).map(|x| (x, mode)).collect());
            start = end;
        }
    }
    let r = run_chunks(circuit, kind, chunks, exec)?;
    Ok(VerificationReport {
        design,
        m,
        method: Method::Exhaustive,
        cases: r.cases,
        failures: r.failures,
        counterexample: r.first,
        evidence: r.evidence,
    })
}

pub fn exhaustive_verify(design: DesignId, m: usize, exec: Execution) -> Result<VerificationReport> {
    let circuit = build(design, m)?;
    exhaustive_verify_circuit(design, &circuit, exec)
}

/// A word of width `m` whose leading run of `bit` has length exactly `k`.
fn word_with_run(rng: &mut ChaCha8Rng, m: u32, k: u32, ones: bool) -> u128 {
    let mask = width_mask(m);
    let mut v = rng.gen::<u128>() & mask;
    for j in 0..k {
        let pos = m - 1 - j;
        if ones {
            v |= 1 << pos;
        } else {
            v &= !(1 << pos);
        }
    }
    if k < m {
        let pos = m - 1 - k;
        if ones {
            v &= !(1 << pos);
        } else {
            v |= 1 << pos;
        }
    }
    v
}

/// Stratified sample: for every count `k` in `0..=m` one word with that count
/// per mode, then uniform words up to `samples` in total.
pub fn sample_inputs(design: DesignId, m: usize, samples: usize, seed: u64) -> Vec<(u128, Option<bool>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kind = design.count_kind();
    let modes = modes_for(kind);
    let m32 = m as u32;
    let mut cases = Vec::with_capacity(samples.max(modes.len() * (m + 1)));
    for &mode in &modes {
        let ones = matches!((kind, mode), (CountKind::Loc, _) | (CountKind::ModeSelected, Some(false)));
        for k in 0..=m32 {
            cases.push((word_with_run(&mut rng, m32, k, ones), mode));
        }
    }
    let mask = width_mask(m32);
    let mut i = 0;
    while cases.len() < samples {
        let mode = modes[i % modes.len()];
        cases.push((rng.gen::<u128>() & mask, mode));
        i += 1;
    }
    cases
}

pub fn sampled_verify_circuit(
    design: DesignId,
    circuit: &Circuit,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<VerificationReport> {
    let m = circuit.m();
    let cases = sample_inputs(design, m, samples, seed);
    let chunks = cases.chunks(LANES).map(|c| c.to_vec()).collect();
    let r = run_chunks(circuit, design.count_kind(), chunks, exec)?;
    Ok(VerificationReport {
        design,
        m,
        method: Method::Sampled { samples, seed },
        cases: r.cases,
        failures: r.failures,
        counterexample: r.first,
        evidence: r.evidence,
    })
}

pub fn sampled_verify(
    design: DesignId,
    m: usize,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<VerificationReport> {
    let circuit = build(design, m)?;
    sampled_verify_circuit(design, &circuit, samples, seed, exec)
}
