//! OpenQASM 2.0 style emission and parsing.
//!
//! The dialect has no multi-controlled X or temporary-AND primitive, so only
//! circuits whose macro gates have been lowered to `ccx` (or fully expanded)
//! can be emitted. The registry travels in `// reg` pragma comments so that
//! parsing an emitted file rebuilds the same circuit.

use super::text::build_registry;
use super::{join_ids, Circuit, ClassicalBit, Gate, GateKind, QubitId, RegisterRole};
use crate::error::{Error, Result};

fn qasm_name(kind: GateKind) -> Option<&'static str> {
    Some(match kind {
        GateKind::X | GateKind::ClassicalX => "x",
        GateKind::CX => "cx",
        GateKind::CCX => "ccx",
        GateKind::H => "h",
        GateKind::S => "s",
        GateKind::Sdg => "sdg",
        GateKind::T => "t",
        GateKind::Tdg => "tdg",
        GateKind::CZ | GateKind::ClassicalCz => "cz",
        GateKind::Measure => "measure",
        GateKind::MCX | GateKind::TAndCompute | GateKind::TAndUncompute => return None,
    })
}

pub fn to_qasm(circuit: &Circuit) -> Result<String> {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    out.push_str(&format!("// circuit {} m={}\n", circuit.name(), circuit.m()));
    for role in RegisterRole::ALL {
        out.push_str(&format!("// reg {} {}\n", role, join_ids(&circuit.qubits_with_role(role))));
    }
    out.push_str(&format!("qreg q[{}];\n", circuit.num_qubits()));
    for k in 0..circuit.num_bits() {
        out.push_str(&format!("creg k{k}[1];\n"));
    }
    for g in circuit.gates() {
        let name = qasm_name(g.kind).ok_or(Error::WrongLevel { kind: g.kind, level: "qasm" })?;
        let operands = g.qubits().map(|q| format!("q[{q}]")).collect::<Vec<_>>().join(",");
        match g.kind {
            GateKind::Measure => {
                let k = g.bit.expect("validated gate");
                out.push_str(&format!("measure {operands} -> k{}[0];\n", k.0));
            }
            GateKind::ClassicalCz | GateKind::ClassicalX => {
                let k = g.bit.expect("validated gate");
                out.push_str(&format!("if(k{}==1) {name} {operands};\n", k.0));
            }
            _ => out.push_str(&format!("{name} {operands};\n")),
        }
    }
    Ok(out)
}

fn parse_operand(line: usize, s: &str) -> Result<QubitId> {
    s.trim()
        .strip_prefix("q[")
        .and_then(|t| t.strip_suffix(']'))
        .and_then(|t| t.parse::<u32>().ok())
        .map(QubitId)
        .ok_or_else(|| Error::parse(line, format!("bad operand `{s}`")))
}

fn parse_bit_ref(line: usize, s: &str, suffix: &str) -> Result<ClassicalBit> {
    s.trim()
        .strip_prefix('k')
        .and_then(|t| t.strip_suffix(suffix))
        .and_then(|t| t.parse::<u32>().ok())
        .map(ClassicalBit)
        .ok_or_else(|| Error::parse(line, format!("bad classical bit `{s}`")))
}

fn parse_instruction(line: usize, stmt: &str) -> Result<Gate> {
    let (condition, body) = match stmt.strip_prefix("if(") {
        Some(rest) => {
            let (cond, body) = rest.split_once(')').ok_or_else(|| Error::parse(line, "unterminated condition"))?;
            (Some(parse_bit_ref(line, cond, "==1")?), body.trim())
        }
        None => (None, stmt),
    };
    let (name, args) =
        body.split_once(' ').ok_or_else(|| Error::parse(line, format!("malformed statement `{stmt}`")))?;
    if name == "measure" {
        let (q, k) = args.split_once("->").ok_or_else(|| Error::parse(line, "measure without `->`"))?;
        return Ok(Gate::measure(parse_operand(line, q)?, parse_bit_ref(line, k, "[0]")?));
    }
    let qs = args.split(',').map(|a| parse_operand(line, a)).collect::<Result<Vec<_>>>()?;
    let (kind, n_targets) = match (name, condition) {
        ("x", None) => (GateKind::X, 1),
        ("x", Some(_)) => (GateKind::ClassicalX, 1),
        ("cz", None) => (GateKind::CZ, 1),
        ("cz", Some(_)) => (GateKind::ClassicalCz, 1),
        ("cx", None) => (GateKind::CX, 1),
        ("ccx", None) => (GateKind::CCX, 1),
        ("h", None) => (GateKind::H, 1),
        ("s", None) => (GateKind::S, 1),
        ("sdg", None) => (GateKind::Sdg, 1),
        ("t", None) => (GateKind::T, 1),
        ("tdg", None) => (GateKind::Tdg, 1),
        _ => return Err(Error::parse(line, format!("unsupported statement `{stmt}`"))),
    };
    if qs.len() < n_targets {
        return Err(Error::parse(line, "missing operands"));
    }
    let split = qs.len() - n_targets;
    let gate = Gate::new(kind, qs[..split].to_vec(), qs[split..].to_vec(), condition);
    gate.validate()?;
    Ok(gate)
}

pub fn from_qasm(src: &str) -> Result<Circuit> {
    let mut header: Option<(String, usize)> = None;
    let mut regs = Vec::new();
    let mut qubits = None;
    let mut bits = 0u32;
    let mut gates = Vec::new();

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if let Some(pragma) = text.strip_prefix("//") {
            let pragma = pragma.trim();
            if let Some(rest) = pragma.strip_prefix("circuit ") {
                let (name, m) = rest.split_once(" m=").ok_or_else(|| Error::parse(line, "malformed circuit pragma"))?;
                let m = m.parse().map_err(|_| Error::parse(line, "bad width"))?;
                header = Some((name.to_string(), m));
            } else if let Some(rest) = pragma.strip_prefix("reg ") {
                let (role, ids) = rest.split_once(' ').ok_or_else(|| Error::parse(line, "malformed reg pragma"))?;
                let role =
                    RegisterRole::parse(role).ok_or_else(|| Error::parse(line, format!("unknown role `{role}`")))?;
                let ids = if ids == "-" {
                    Vec::new()
                } else {
                    ids.split(',')
                        .map(|t| t.parse::<u32>().map(QubitId).map_err(|_| Error::parse(line, "bad id")))
                        .collect::<Result<Vec<_>>>()?
                };
                regs.push((role, ids));
            }
            continue;
        }
        if text.is_empty() || text.starts_with("OPENQASM") || text.starts_with("include") {
            continue;
        }
        let stmt = text.strip_suffix(';').ok_or_else(|| Error::parse(line, "missing `;`"))?.trim();
        if let Some(rest) = stmt.strip_prefix("qreg q[") {
            let n = rest
                .strip_suffix(']')
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| Error::parse(line, "bad qreg"))?;
            qubits = Some(n);
        } else if let Some(rest) = stmt.strip_prefix("creg ") {
            let k = parse_bit_ref(line, rest, "[1]")?;
            if k.0 != bits {
                return Err(Error::parse(line, "classical registers must be declared in order"));
            }
            bits += 1;
        } else {
            gates.push(parse_instruction(line, stmt)?);
        }
    }

    let (name, m) = header.ok_or_else(|| Error::parse(0, "missing `// circuit` pragma"))?;
    let qubits = qubits.ok_or_else(|| Error::parse(0, "missing qreg declaration"))?;
    build_registry(name, m, qubits, bits, regs, gates)
}
