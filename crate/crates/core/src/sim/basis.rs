//! Classical simulation of macro-level circuits, 64 basis inputs per word.

use crate::error::{Error, Result};
use crate::ir::{Circuit, GateKind, QubitId, RegisterRole};
use crate::oracle::BitWord;

pub const LANES: usize = 64;

/// A temporary-AND whose precondition failed in some lanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractViolation {
    pub gate_index: usize,
    pub kind: GateKind,
    /// Lanes (bit positions) where the precondition failed.
    pub lanes: u64,
}

/// Final bit of every qubit in up to 64 parallel runs.
#[derive(Clone, Debug)]
pub struct LaneState {
    /// `words[q]` bit `l` is qubit `q` in lane `l`.
    pub words: Vec<u64>,
    pub active: u64,
    pub violations: Vec<ContractViolation>,
}

impl LaneState {
    pub fn lane_bit(&self, q: QubitId, lane: usize) -> bool {
        (self.words[q.index()] >> lane) & 1 == 1
    }

    /// Value of a bit-indexed register in one lane.
    pub fn register_value(&self, reg: &[QubitId], lane: usize) -> u128 {
        reg.iter().enumerate().fold(0u128, |acc, (j, &q)| acc | ((self.lane_bit(q, lane) as u128) << j))
    }

    pub fn violated_lanes(&self) -> u64 {
        self.violations.iter().fold(0, |acc, v| acc | v.lanes)
    }
}

/// Runs `inputs.len() <= 64` basis states at once. `modes` supplies the mode
/// qubit per lane when the circuit has one (missing entries default to 0).
pub fn run_lanes(circuit: &Circuit, inputs: &[u128], modes: &[bool]) -> Result<LaneState> {
    if inputs.len() > LANES {
        return Err(Error::Shape(format!("at most {LANES} lanes per run, got {}", inputs.len())));
    }
    let m = circuit.m();
    let limit = crate::oracle::width_mask(m as u32);
    let mut words = vec![0u64; circuit.num_qubits()];
    for (lane, &x) in inputs.iter().enumerate() {
        if x & !limit != 0 {
            return Err(Error::Domain(format!("input {x} does not fit in {m} bits")));
        }
        for (j, &q) in circuit.input().iter().enumerate() {
            words[q.index()] |= (((x >> j) & 1) as u64) << lane;
        }
    }
    if let Some(c) = circuit.mode() {
        for (lane, &bit) in modes.iter().enumerate().take(inputs.len()) {
            words[c.index()] |= (bit as u64) << lane;
        }
    }
    let active = if inputs.len() == LANES { u64::MAX } else { (1u64 << inputs.len()) - 1 };

    let mut violations = Vec::new();
    for (idx, g) in circuit.gates().iter().enumerate() {
        let and_of = |w: &[u64], qs: &[QubitId]| qs.iter().fold(u64::MAX, |acc, q| acc & w[q.index()]);
        match g.kind {
            GateKind::X => words[g.targets[0].index()] ^= u64::MAX,
            GateKind::CX | GateKind::CCX | GateKind::MCX => {
                let flip = and_of(&words, &g.controls);
                words[g.targets[0].index()] ^= flip;
            }
            GateKind::TAndCompute => {
                let t = g.targets[0].index();
                let bad = words[t] & active;
                if bad != 0 {
                    violations.push(ContractViolation { gate_index: idx, kind: g.kind, lanes: bad });
                }
                words[t] = and_of(&words, &g.controls);
            }
            GateKind::TAndUncompute => {
                let t = g.targets[0].index();
                let bad = (words[t] ^ and_of(&words, &g.controls)) & active;
                if bad != 0 {
                    violations.push(ContractViolation { gate_index: idx, kind: g.kind, lanes: bad });
                }
                words[t] = 0;
            }
            kind => return Err(Error::WrongLevel { kind, level: "basis" }),
        }
    }
    for w in &mut words {
        *w &= active;
    }
    Ok(LaneState { words, active, violations })
}

/// Result of one basis-state run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimOutcome {
    pub input: u128,
    pub output: u128,
    pub mode: Option<bool>,
    /// Final bit of every non-input, non-output, non-mode qubit.
    pub ancillas: Vec<(QubitId, bool)>,
    pub violations: Vec<ContractViolation>,
}

impl SimOutcome {
    /// True when every reusable ancilla is back to 0.
    pub fn reusable_clean(&self, circuit: &Circuit) -> bool {
        self.ancillas.iter().all(|&(q, v)| !v || circuit.role(q) != Some(RegisterRole::AncillaReusable))
    }
}

pub(crate) fn outcome_for_lane(circuit: &Circuit, state: &LaneState, lane: usize) -> SimOutcome {
    let ancillas = circuit
        .roles()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_ancilla())
        .map(|(i, _)| {
            let q = QubitId(i as u32);
            (q, state.lane_bit(q, lane))
        })
        .collect();
    let violations = state
        .violations
        .iter()
        .filter(|v| (v.lanes >> lane) & 1 == 1)
        .map(|v| ContractViolation { lanes: 1 << lane, ..v.clone() })
        .collect();
    SimOutcome {
        input: state.register_value(circuit.input(), lane),
        output: state.register_value(circuit.output(), lane),
        mode: circuit.mode().map(|c| state.lane_bit(c, lane)),
        ancillas,
        violations,
    }
}

/// Simulates a single basis input. The mode bit is required exactly when the
/// circuit has a mode qubit.
pub fn run_basis(circuit: &Circuit, input: BitWord, mode_bit: Option<bool>) -> Result<SimOutcome> {
    if input.width() as usize != circuit.m() {
        return Err(Error::Shape(format!("input has {} bits, circuit expects {}", input.width(), circuit.m())));
    }
    match (circuit.mode(), mode_bit) {
        (Some(_), None) => return Err(Error::Shape("circuit has a mode qubit; a mode bit is required".into())),
        (None, Some(_)) => return Err(Error::Shape("circuit has no mode qubit".into())),
        _ => {}
    }
    let modes = [mode_bit.unwrap_or(false)];
    let state = run_lanes(circuit, &[input.value()], &modes)?;
    Ok(outcome_for_lane(circuit, &state, 0))
}

/// Per-qubit record of which final values were observed across runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimEvidence {
    pub cases: u64,
    pub ever_one: Vec<bool>,
    pub ever_zero: Vec<bool>,
}

impl SimEvidence {
    pub fn new(num_qubits: usize) -> Self {
        SimEvidence { cases: 0, ever_one: vec![false; num_qubits], ever_zero: vec![false; num_qubits] }
    }

    pub fn record(&mut self, state: &LaneState) {
        let active = state.active;
        self.cases += active.count_ones() as u64;
        for (q, &w) in state.words.iter().enumerate() {
            self.ever_one[q] |= w & active != 0;
            self.ever_zero[q] |= !w & active != 0;
        }
    }

    pub fn merge(&mut self, other: &SimEvidence) {
        if self.ever_one.is_empty() {
            *self = other.clone();
            return;
        }
        self.cases += other.cases;
        for q in 0..self.ever_one.len() {
            self.ever_one[q] |= other.ever_one[q];
            self.ever_zero[q] |= other.ever_zero[q];
        }
    }

    /// True when the qubit ended at 0 in every recorded case.
    pub fn always_zero(&self, q: QubitId) -> bool {
        !self.ever_one[q.index()]
    }
}
