//! Gate vocabulary, qubit registry and the immutable circuit container.
//!
//! Generators build circuits through [`CircuitBuilder`]; everything downstream
//! (decomposition passes, simulators, analyzers, serializers) consumes the
//! finished [`Circuit`].
//!
//! Registers store their qubits bit-indexed: element `j` of
//! [`Circuit::input`] is input bit `X_j`, so the MSB is the last element.
//! Qubit ids only reflect allocation order and carry no significance.

mod qasm;
mod text;

use std::fmt;

pub use qasm::{from_qasm, to_qasm};
pub use text::{from_text, to_text};

use crate::error::{Error, Result};

/// Index of a qubit inside one circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitId(pub u32);

impl QubitId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Classical bit written by a measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassicalBit(pub u32);

impl ClassicalBit {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegisterRole {
    Input,
    Output,
    Mode,
    AncillaReusable,
    AncillaGarbage,
    TStateResource,
}

impl RegisterRole {
    pub const ALL: [RegisterRole; 6] = [
        RegisterRole::Input,
        RegisterRole::Output,
        RegisterRole::Mode,
        RegisterRole::AncillaReusable,
        RegisterRole::AncillaGarbage,
        RegisterRole::TStateResource,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegisterRole::Input => "input",
            RegisterRole::Output => "output",
            RegisterRole::Mode => "mode",
            RegisterRole::AncillaReusable => "ancilla-reusable",
            RegisterRole::AncillaGarbage => "ancilla-garbage",
            RegisterRole::TStateResource => "t-state",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.as_str() == s)
    }

    pub fn is_ancilla(self) -> bool {
        matches!(self, RegisterRole::AncillaReusable | RegisterRole::AncillaGarbage | RegisterRole::TStateResource)
    }
}

impl fmt::Display for RegisterRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    CX,
    CCX,
    MCX,
    /// Temporary logical-AND: writes `c0 & c1` into a target known to be `|0>`.
    TAndCompute,
    /// Measurement-based uncompute of a temporary logical-AND.
    TAndUncompute,
    H,
    S,
    Sdg,
    T,
    Tdg,
    CZ,
    /// Measures its target into a classical bit.
    Measure,
    /// CZ applied when the classical bit is 1.
    ClassicalCz,
    /// X applied when the classical bit is 1.
    ClassicalX,
}

impl GateKind {
    pub const ALL: [GateKind; 15] = [
        GateKind::X,
        GateKind::CX,
        GateKind::CCX,
        GateKind::MCX,
        GateKind::TAndCompute,
        GateKind::TAndUncompute,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::CZ,
        GateKind::Measure,
        GateKind::ClassicalCz,
        GateKind::ClassicalX,
    ];

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::CX => "CX",
            GateKind::CCX => "CCX",
            GateKind::MCX => "MCX",
            GateKind::TAndCompute => "TAND",
            GateKind::TAndUncompute => "TAND_UNCOMPUTE",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::CZ => "CZ",
            GateKind::Measure => "MEASURE",
            GateKind::ClassicalCz => "CZ_IF",
            GateKind::ClassicalX => "X_IF",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.mnemonic() == s)
    }

    pub fn is_t_type(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }

    /// Gates that only exist before Clifford+T expansion.
    pub fn is_macro(self) -> bool {
        matches!(self, GateKind::CCX | GateKind::MCX | GateKind::TAndCompute | GateKind::TAndUncompute)
    }

    /// Gates that only exist after expansion and have no classical bit-level meaning.
    pub fn is_expanded_only(self) -> bool {
        matches!(
            self,
            GateKind::H
                | GateKind::S
                | GateKind::Sdg
                | GateKind::T
                | GateKind::Tdg
                | GateKind::CZ
                | GateKind::Measure
                | GateKind::ClassicalCz
                | GateKind::ClassicalX
        )
    }

    fn uses_bit(self) -> bool {
        matches!(self, GateKind::Measure | GateKind::ClassicalCz | GateKind::ClassicalX)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// One circuit instruction.
///
/// Two-qubit symmetric gates (`CZ`, `CZ_IF`) keep their first qubit in
/// `controls` and the second in `targets`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Vec<QubitId>,
    pub targets: Vec<QubitId>,
    pub bit: Option<ClassicalBit>,
}

impl Gate {
    pub fn new(kind: GateKind, controls: Vec<QubitId>, targets: Vec<QubitId>, bit: Option<ClassicalBit>) -> Self {
        Gate { kind, controls, targets, bit }
    }

    fn single(kind: GateKind, q: QubitId) -> Self {
        Gate::new(kind, vec![], vec![q], None)
    }

    pub fn x(q: QubitId) -> Self {
        Gate::single(GateKind::X, q)
    }

    pub fn h(q: QubitId) -> Self {
        Gate::single(GateKind::H, q)
    }

    pub fn s(q: QubitId) -> Self {
        Gate::single(GateKind::S, q)
    }

    pub fn sdg(q: QubitId) -> Self {
        Gate::single(GateKind::Sdg, q)
    }

    pub fn t(q: QubitId) -> Self {
        Gate::single(GateKind::T, q)
    }

    pub fn tdg(q: QubitId) -> Self {
        Gate::single(GateKind::Tdg, q)
    }

    pub fn cx(control: QubitId, target: QubitId) -> Self {
        Gate::new(GateKind::CX, vec![control], vec![target], None)
    }

    pub fn ccx(c0: QubitId, c1: QubitId, target: QubitId) -> Self {
        Gate::new(GateKind::CCX, vec![c0, c1], vec![target], None)
    }

    pub fn mcx(controls: Vec<QubitId>, target: QubitId) -> Self {
        Gate::new(GateKind::MCX, controls, vec![target], None)
    }

    pub fn tand(c0: QubitId, c1: QubitId, target: QubitId) -> Self {
        Gate::new(GateKind::TAndCompute, vec![c0, c1], vec![target], None)
    }

    pub fn tand_uncompute(c0: QubitId, c1: QubitId, target: QubitId) -> Self {
        Gate::new(GateKind::TAndUncompute, vec![c0, c1], vec![target], None)
    }

    pub fn cz(a: QubitId, b: QubitId) -> Self {
        Gate::new(GateKind::CZ, vec![a], vec![b], None)
    }

    pub fn measure(q: QubitId, bit: ClassicalBit) -> Self {
        Gate::new(GateKind::Measure, vec![], vec![q], Some(bit))
    }

    pub fn classical_cz(a: QubitId, b: QubitId, bit: ClassicalBit) -> Self {
        Gate::new(GateKind::ClassicalCz, vec![a], vec![b], Some(bit))
    }

    pub fn classical_x(q: QubitId, bit: ClassicalBit) -> Self {
        Gate::new(GateKind::ClassicalX, vec![], vec![q], Some(bit))
    }

    /// Every qubit the gate touches, controls first.
    pub fn qubits(&self) -> impl Iterator<Item = QubitId> + '_ {
        self.controls.iter().chain(self.targets.iter()).copied()
    }

    /// Checks arity, qubit distinctness and classical-bit presence.
    pub fn validate(&self) -> Result<()> {
        let malformed = |reason: String| Error::MalformedGate { kind: self.kind, reason };
        let (controls, targets) = (self.controls.len(), self.targets.len());
        let arity_ok = match self.kind {
            GateKind::X
            | GateKind::H
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg
            | GateKind::Measure
            | GateKind::ClassicalX => controls == 0 && targets == 1,
            GateKind::CX | GateKind::CZ | GateKind::ClassicalCz => controls == 1 && targets == 1,
            GateKind::CCX | GateKind::TAndCompute | GateKind::TAndUncompute => controls == 2 && targets == 1,
            GateKind::MCX => controls >= 1 && targets == 1,
        };
        if !arity_ok {
            return Err(malformed(format!("{controls} controls and {targets} targets")));
        }
        let mut seen: Vec<QubitId> = self.qubits().collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(malformed(format!("qubit {} appears twice", w[0])));
        }
        match (self.kind.uses_bit(), self.bit) {
            (true, None) => Err(malformed("missing classical bit".into())),
            (false, Some(k)) => Err(malformed(format!("unexpected classical bit k{}", k.0))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        write!(f, " c:{}", join_ids(&self.controls))?;
        write!(f, " t:{}", join_ids(&self.targets))?;
        if let Some(k) = self.bit {
            write!(f, " k:{}", k.0)?;
        }
        Ok(())
    }
}

pub(crate) fn join_ids(ids: &[QubitId]) -> String {
    if ids.is_empty() {
        return "-".to_string();
    }
    ids.iter().map(|q| q.0.to_string()).collect::<Vec<_>>().join(",")
}

/// Output width of an `m`-input counter: `floor(lg m) + 1`.
pub fn output_width(m: usize) -> usize {
    assert!(m >= 1);
    (usize::BITS - m.leading_zeros()) as usize
}

/// Immutable gate sequence plus qubit registry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    name: String,
    m: usize,
    gates: Vec<Gate>,
    roles: Vec<RegisterRole>,
    input: Vec<QubitId>,
    output: Vec<QubitId>,
    mode: Vec<QubitId>,
    num_bits: u32,
}

impl Circuit {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Input width.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn num_qubits(&self) -> usize {
        self.roles.len()
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits as usize
    }

    pub fn role(&self, q: QubitId) -> Option<RegisterRole> {
        self.roles.get(q.index()).copied()
    }

    pub fn roles(&self) -> &[RegisterRole] {
        &self.roles
    }

    /// Input register, bit-indexed (element 0 is the LSB).
    pub fn input(&self) -> &[QubitId] {
        &self.input
    }

    /// Output register, bit-indexed (element 0 is the LSB).
    pub fn output(&self) -> &[QubitId] {
        &self.output
    }

    pub fn mode(&self) -> Option<QubitId> {
        self.mode.first().copied()
    }

    pub fn qubits_with_role(&self, role: RegisterRole) -> Vec<QubitId> {
        match role {
            RegisterRole::Input => self.input.clone(),
            RegisterRole::Output => self.output.clone(),
            RegisterRole::Mode => self.mode.clone(),
            _ => self.roles.iter().enumerate().filter(|(_, r)| **r == role).map(|(i, _)| QubitId(i as u32)).collect(),
        }
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    pub fn is_expanded(&self) -> bool {
        !self.gates.iter().any(|g| g.kind.is_macro())
    }

    /// Indices of `TAND` gates lacking exactly one later uncompute on the same
    /// target. Targets that end up carrying output data (output or garbage
    /// roles) are exempt.
    pub fn unpaired_tand_computes(&self) -> Vec<usize> {
        let mut bad = Vec::new();
        for (i, g) in self.gates.iter().enumerate() {
            if g.kind != GateKind::TAndCompute {
                continue;
            }
            let t = g.targets[0];
            if matches!(self.role(t), Some(RegisterRole::Output | RegisterRole::AncillaGarbage)) {
                continue;
            }
            let mut uncomputes = 0;
            for later in &self.gates[i + 1..] {
                if later.targets.first() != Some(&t) && !later.controls.contains(&t) {
                    continue;
                }
                match later.kind {
                    GateKind::TAndUncompute if later.targets[0] == t => uncomputes += 1,
                    GateKind::TAndCompute if later.targets[0] == t => break,
                    _ => {}
                }
            }
            if uncomputes != 1 {
                bad.push(i);
            }
        }
        bad
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        name: String,
        m: usize,
        roles: Vec<RegisterRole>,
        input: Vec<QubitId>,
        output: Vec<QubitId>,
        mode: Vec<QubitId>,
        num_bits: u32,
        gates: Vec<Gate>,
    ) -> Result<Self> {
        let mut b = CircuitBuilder {
            name,
            m,
            gates: Vec::with_capacity(gates.len()),
            roles,
            input,
            output,
            mode,
            num_bits,
            pool: Vec::new(),
            live: Vec::new(),
        };
        b.live = vec![false; b.roles.len()];
        for g in gates {
            b.append(g)?;
        }
        Ok(b.finish())
    }
}

/// Append-only circuit construction with a LIFO pool of reusable ancillas.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    name: String,
    m: usize,
    gates: Vec<Gate>,
    roles: Vec<RegisterRole>,
    input: Vec<QubitId>,
    output: Vec<QubitId>,
    mode: Vec<QubitId>,
    num_bits: u32,
    pool: Vec<QubitId>,
    live: Vec<bool>,
}

impl CircuitBuilder {
    /// Empty circuit with `m` input qubits and `floor(lg m) + 1` output
    /// qubits already registered.
    pub fn new(name: impl Into<String>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidWidth(m));
        }
        let mut b = CircuitBuilder {
            name: name.into(),
            m,
            gates: Vec::new(),
            roles: Vec::new(),
            input: Vec::new(),
            output: Vec::new(),
            mode: Vec::new(),
            num_bits: 0,
            pool: Vec::new(),
            live: Vec::new(),
        };
        for _ in 0..m {
            let q = b.register(RegisterRole::Input);
            b.input.push(q);
        }
        for _ in 0..output_width(m) {
            let q = b.register(RegisterRole::Output);
            b.output.push(q);
        }
        Ok(b)
    }

    /// Builder holding the registry of `circuit` but none of its gates; used by
    /// rewriting passes. Existing ancillas are not pooled.
    pub fn with_registry_of(circuit: &Circuit) -> Self {
        CircuitBuilder {
            name: circuit.name.clone(),
            m: circuit.m,
            gates: Vec::new(),
            roles: circuit.roles.clone(),
            input: circuit.input.clone(),
            output: circuit.output.clone(),
            mode: circuit.mode.clone(),
            num_bits: circuit.num_bits,
            pool: Vec::new(),
            live: vec![false; circuit.roles.len()],
        }
    }

    fn register(&mut self, role: RegisterRole) -> QubitId {
        let q = QubitId(self.roles.len() as u32);
        self.roles.push(role);
        self.live.push(false);
        q
    }

    pub fn input(&self) -> &[QubitId] {
        &self.input
    }

    pub fn output(&self) -> &[QubitId] {
        &self.output
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Registers the single mode-selection qubit.
    pub fn add_mode_qubit(&mut self) -> Result<QubitId> {
        if !self.mode.is_empty() {
            return Err(Error::Allocation("mode register already holds its qubit".into()));
        }
        let q = self.register(RegisterRole::Mode);
        self.mode.push(q);
        Ok(q)
    }

    /// Returns a qubit that is `|0>` at this point of the program.
    ///
    /// Reusable ancillas come from the LIFO pool when one has been released;
    /// garbage and T-state qubits are always fresh and never pooled.
    pub fn alloc_ancilla(&mut self, role: RegisterRole) -> Result<QubitId> {
        let q = match role {
            RegisterRole::AncillaReusable => match self.pool.pop() {
                Some(q) => q,
                None => self.register(role),
            },
            RegisterRole::AncillaGarbage | RegisterRole::TStateResource => self.register(role),
            other => return Err(Error::Allocation(format!("{other} is not an ancilla role"))),
        };
        self.live[q.index()] = true;
        Ok(q)
    }

    /// Returns a reusable ancilla to the pool. The caller guarantees it is
    /// back in `|0>`.
    pub fn release_ancilla(&mut self, q: QubitId) -> Result<()> {
        match self.roles.get(q.index()) {
            None => return Err(Error::UnregisteredQubit(q)),
            Some(RegisterRole::AncillaReusable) => {}
            Some(RegisterRole::TStateResource) => {
                return Err(Error::Allocation(format!("qubit {q} is a consumed T-state resource")))
            }
            Some(other) => return Err(Error::Allocation(format!("qubit {q} has role {other}, not reusable"))),
        }
        if !self.live[q.index()] {
            return Err(Error::Allocation(format!("qubit {q} is not currently allocated")));
        }
        self.live[q.index()] = false;
        self.pool.push(q);
        Ok(())
    }

    pub fn alloc_bit(&mut self) -> ClassicalBit {
        let k = ClassicalBit(self.num_bits);
        self.num_bits += 1;
        k
    }

    pub fn append(&mut self, gate: Gate) -> Result<()> {
        gate.validate()?;
        if let Some(q) = gate.qubits().find(|q| q.index() >= self.roles.len()) {
            return Err(Error::UnregisteredQubit(q));
        }
        if let Some(k) = gate.bit {
            if k.0 >= self.num_bits {
                return Err(Error::UnregisteredBit(k.0));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.append(g))
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn finish(self) -> Circuit {
        Circuit {
            name: self.name,
            m: self.m,
            gates: self.gates,
            roles: self.roles,
            input: self.input,
            output: self.output,
            mode: self.mode,
            num_bits: self.num_bits,
        }
    }
}
