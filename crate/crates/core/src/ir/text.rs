//! Line-oriented interchange format.
//!
//! ```text
//! # free-form comment lines
//! circuit ta-op-qlzc m=4 qubits=11 bits=3
//! reg input 4 0,1,2,3
//! reg output 3 4,5,6
//! ...
//! TAND c:7,2 t:8
//! MEASURE c:- t:8 k:0
//! ```
//!
//! Register qubit lists are bit-indexed (LSB first). Every role gets a `reg`
//! line, with `-` standing for an empty list. Gate lines follow the
//! registry, one per gate.

use super::{join_ids, Circuit, ClassicalBit, Gate, GateKind, QubitId, RegisterRole};
use crate::error::{Error, Result};

pub fn to_text(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "circuit {} m={} qubits={} bits={}\n",
        circuit.name(),
        circuit.m(),
        circuit.num_qubits(),
        circuit.num_bits()
    ));
    for role in RegisterRole::ALL {
        let qs = circuit.qubits_with_role(role);
        out.push_str(&format!("reg {} {} {}\n", role, qs.len(), join_ids(&qs)));
    }
    for g in circuit.gates() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

fn parse_ids(line: usize, s: &str) -> Result<Vec<QubitId>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.parse::<u32>().map(QubitId).map_err(|_| Error::parse(line, format!("bad qubit id `{t}`"))))
        .collect()
}

fn parse_kv<'a>(line: usize, tok: Option<&'a str>, key: &str) -> Result<&'a str> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing `{key}=`")))?;
    tok.strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `{key}=`, found `{tok}`")))
}

fn parse_num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::parse(line, format!("bad number `{s}`")))
}

pub(crate) fn parse_gate(line: usize, text: &str) -> Result<Gate> {
    let mut toks = text.split_whitespace();
    let kw = toks.next().unwrap_or_default();
    let kind = GateKind::from_mnemonic(kw).ok_or_else(|| Error::parse(line, format!("unknown gate `{kw}`")))?;
    let mut controls = None;
    let mut targets = None;
    let mut bit = None;
    for tok in toks {
        if let Some(v) = tok.strip_prefix("c:") {
            controls = Some(parse_ids(line, v)?);
        } else if let Some(v) = tok.strip_prefix("t:") {
            targets = Some(parse_ids(line, v)?);
        } else if let Some(v) = tok.strip_prefix("k:") {
            bit = Some(ClassicalBit(parse_num(line, v)?));
        } else {
            return Err(Error::parse(line, format!("unexpected token `{tok}`")));
        }
    }
    let controls = controls.ok_or_else(|| Error::parse(line, "missing `c:` field"))?;
    let targets = targets.ok_or_else(|| Error::parse(line, "missing `t:` field"))?;
    Ok(Gate::new(kind, controls, targets, bit))
}

pub fn from_text(src: &str) -> Result<Circuit> {
    let mut header: Option<(String, usize, usize, u32)> = None;
    let mut regs: Vec<(RegisterRole, Vec<QubitId>)> = Vec::new();
    let mut gates = Vec::new();

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if let Some(rest) = text.strip_prefix("circuit ") {
            if header.is_some() {
                return Err(Error::parse(line, "duplicate `circuit` header"));
            }
            let mut toks = rest.split_whitespace();
            let name = toks.next().ok_or_else(|| Error::parse(line, "missing circuit name"))?.to_string();
            let m = parse_num(line, parse_kv(line, toks.next(), "m")?)?;
            let qubits = parse_num(line, parse_kv(line, toks.next(), "qubits")?)?;
            let bits = parse_num(line, parse_kv(line, toks.next(), "bits")?)?;
            header = Some((name, m, qubits, bits));
        } else if let Some(rest) = text.strip_prefix("reg ") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let [role, width, ids] = toks[..] else {
                return Err(Error::parse(line, "expected `reg <role> <width> <ids>`"));
            };
            let role = RegisterRole::parse(role).ok_or_else(|| Error::parse(line, format!("unknown role `{role}`")))?;
            let width: usize = parse_num(line, width)?;
            let ids = parse_ids(line, ids)?;
            if ids.len() != width {
                return Err(Error::parse(line, format!("register width {width} but {} ids listed", ids.len())));
            }
            if regs.iter().any(|(r, _)| *r == role) {
                return Err(Error::parse(line, format!("duplicate register `{role}`")));
            }
            regs.push((role, ids));
        } else {
            if header.is_none() {
                return Err(Error::parse(line, "gate before `circuit` header"));
            }
            gates.push(parse_gate(line, text)?);
        }
    }

    let (name, m, qubits, bits) = header.ok_or_else(|| Error::parse(0, "missing `circuit` header"))?;
    build_registry(name, m, qubits, bits, regs, gates)
}

pub(crate) fn build_registry(
    name: String,
    m: usize,
    qubits: usize,
    bits: u32,
    regs: Vec<(RegisterRole, Vec<QubitId>)>,
    gates: Vec<Gate>,
) -> Result<Circuit> {
    let mut roles: Vec<Option<RegisterRole>> = vec![None; qubits];
    let mut input = Vec::new();
    let mut output = Vec::new();
    let mut mode = Vec::new();
    for (role, ids) in regs {
        for &q in &ids {
            let slot = roles.get_mut(q.index()).ok_or(Error::UnregisteredQubit(q))?;
            if slot.is_some() {
                return Err(Error::parse(0, format!("qubit {q} listed in two registers")));
            }
            *slot = Some(role);
        }
        match role {
            RegisterRole::Input => input = ids,
            RegisterRole::Output => output = ids,
            RegisterRole::Mode => mode = ids,
            _ => {}
        }
    }
    let roles = roles
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| Error::parse(0, format!("qubit {i} has no register"))))
        .collect::<Result<Vec<_>>>()?;
    if input.len() != m {
        return Err(Error::parse(0, format!("input register has {} qubits, m={m}", input.len())));
    }
    Circuit::from_parts(name, m, roles, input, output, mode, bits, gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::CircuitBuilder;

    fn sample() -> Circuit {
        let mut b = CircuitBuilder::new("sample", 2).unwrap();
        let (x0, x1) = (b.input()[0], b.input()[1]);
        let a = b.alloc_ancilla(RegisterRole::AncillaReusable).unwrap();
        let k = b.alloc_bit();
        b.append(Gate::tand(x0, x1, a)).unwrap();
        b.append(Gate::cx(a, b.output()[0])).unwrap();
        b.append(Gate::h(a)).unwrap();
        b.append(Gate::measure(a, k)).unwrap();
        b.append(Gate::classical_cz(x0, x1, k)).unwrap();
        b.append(Gate::classical_x(a, k)).unwrap();
        b.finish()
    }

    #[test]
    fn text_round_trip() {
        let c = sample();
        let text = to_text(&c);
        assert!(text.contains("TAND c:0,1 t:4\n"));
        assert!(text.contains("MEASURE c:- t:4 k:0\n"));
        assert!(text.contains("reg output 2 2,3\n"));
        let back = from_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_text(&back), text);
    }

    #[test]
    fn comments_are_ignored() {
        let text = format!("# header\n\n{}", to_text(&sample()));
        assert_eq!(from_text(&text).unwrap(), sample());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = to_text(&sample()).replace("TAND c:0,1", "FROB c:0,1");
        match from_text(&text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 8),
            other => panic!("expected parse error, got {other:?}"),
        }
        let text = to_text(&sample()).replace("t:4 k:0", "t:9 k:0");
        assert!(matches!(from_text(&text), Err(Error::UnregisteredQubit(QubitId(9)))));
        assert!(from_text("CX c:0 t:1\n").is_err());
    }
}
