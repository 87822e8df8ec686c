//! Resource metrics of expanded circuits and their comparison with the
//! published figures.
//!
//! Depth conventions: gates are layered as soon as possible in program order.
//! A gate's wires are its qubits plus its classical bit, so a correction waits
//! for the measurement it is conditioned on. For T-depth only `T`/`T†` open a
//! new layer; every other gate just propagates the deepest level among its
//! wires.

mod claims;
mod compare;

pub use claims::{closed_form, table_value, ClaimValue, Metric, Source};
pub use compare::{compare, compare_circuit, render_rows, render_table, ComparisonRow, Status};

use crate::decompose::{expand, DecompositionPolicy};
use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, QubitId, RegisterRole};
use crate::sim::SimEvidence;

fn wires(g: &Gate, num_qubits: usize) -> impl Iterator<Item = usize> + '_ {
    g.qubits().map(|q| q.index()).chain(g.bit.map(|k| num_qubits + k.index()))
}

fn reject_macros(circuit: &Circuit, level: &'static str) -> Result<()> {
    match circuit.gates().iter().find(|g| g.kind.is_macro()) {
        Some(g) => Err(Error::WrongLevel { kind: g.kind, level }),
        None => Ok(()),
    }
}

/// Layer of every gate when each gate costs one layer (1-based).
pub fn asap_layers(circuit: &Circuit) -> Vec<usize> {
    let nq = circuit.num_qubits();
    let mut level = vec![0usize; nq + circuit.num_bits()];
    circuit
        .gates()
        .iter()
        .map(|g| {
            let l = wires(g, nq).map(|w| level[w]).max().unwrap_or(0) + 1;
            wires(g, nq).for_each(|w| level[w] = l);
            l
        })
        .collect()
}

/// T layer reached after every gate; T gates open a new layer.
pub fn t_levels(circuit: &Circuit) -> Vec<usize> {
    let nq = circuit.num_qubits();
    let mut level = vec![0usize; nq + circuit.num_bits()];
    circuit
        .gates()
        .iter()
        .map(|g| {
            let l = wires(g, nq).map(|w| level[w]).max().unwrap_or(0) + g.kind.is_t_type() as usize;
            wires(g, nq).for_each(|w| level[w] = l);
            l
        })
        .collect()
}

/// `(t_count, t_depth)` of an expanded circuit.
pub fn t_metrics(circuit: &Circuit) -> Result<(usize, usize)> {
    reject_macros(circuit, "t-metrics")?;
    let t_count = circuit.gates().iter().filter(|g| g.kind.is_t_type()).count();
    let t_depth = t_levels(circuit).into_iter().max().unwrap_or(0);
    Ok((t_count, t_depth))
}

/// `(total_depth, width_total, width_excl_reusable)` of an expanded circuit.
pub fn depth_width(circuit: &Circuit) -> Result<(usize, usize, usize)> {
    reject_macros(circuit, "depth")?;
    let depth = asap_layers(circuit).into_iter().max().unwrap_or(0);
    let total = circuit.num_qubits();
    let reusable = circuit.qubits_with_role(RegisterRole::AncillaReusable).len();
    Ok((depth, total, total - reusable))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResourceReport {
    pub t_count: usize,
    pub t_depth: usize,
    pub total_depth: usize,
    pub width_total: usize,
    pub width_excl_reusable: usize,
    pub width_excl_input: usize,
    pub ancilla_reusable: usize,
    pub ancilla_garbage: usize,
    pub t_state_ancilla: usize,
}

impl ResourceReport {
    /// Reusable plus garbage ancillas.
    pub fn ancilla(&self) -> usize {
        self.ancilla_reusable + self.ancilla_garbage + self.t_state_ancilla
    }

    pub fn to_key_value(&self) -> String {
        [
            ("t_count", self.t_count),
            ("t_depth", self.t_depth),
            ("total_depth", self.total_depth),
            ("width_total", self.width_total),
            ("width_excl_reusable", self.width_excl_reusable),
            ("width_excl_input", self.width_excl_input),
            ("ancilla", self.ancilla()),
            ("ancilla_reusable", self.ancilla_reusable),
            ("ancilla_garbage", self.ancilla_garbage),
            ("t_state_ancilla", self.t_state_ancilla),
        ]
        .iter()
        .map(|(k, v)| format!("{k}={v}\n"))
        .collect()
    }
}

/// Metrics of an already expanded circuit.
pub fn resources(expanded: &Circuit) -> Result<ResourceReport> {
    let (t_count, t_depth) = t_metrics(expanded)?;
    let (total_depth, width_total, width_excl_reusable) = depth_width(expanded)?;
    let count = |r| expanded.qubits_with_role(r).len();
    Ok(ResourceReport {
        t_count,
        t_depth,
        total_depth,
        width_total,
        width_excl_reusable,
        width_excl_input: width_total - expanded.m(),
        ancilla_reusable: count(RegisterRole::AncillaReusable),
        ancilla_garbage: count(RegisterRole::AncillaGarbage),
        t_state_ancilla: count(RegisterRole::TStateResource),
    })
}

/// Expands a macro circuit under `policy` and measures it.
pub fn analyze(circuit: &Circuit, policy: &DecompositionPolicy) -> Result<ResourceReport> {
    resources(&expand(circuit, policy)?)
}

/// Ancilla classification observed in simulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncillaClasses {
    pub reusable: usize,
    pub garbage: usize,
    pub t_state: usize,
    /// Qubits whose observed class differs from their registered role.
    pub disagreements: Vec<QubitId>,
}

/// A non-input, non-output qubit is reusable iff it ended at 0 in every
/// recorded case.
pub fn ancilla_classes(circuit: &Circuit, evidence: &SimEvidence) -> Result<AncillaClasses> {
    if evidence.cases == 0 {
        return Err(Error::Evidence("no simulated cases recorded".into()));
    }
    if evidence.ever_one.len() != circuit.num_qubits() {
        return Err(Error::Evidence(format!(
            "evidence covers {} qubits, circuit has {}",
            evidence.ever_one.len(),
            circuit.num_qubits()
        )));
    }
    let mut classes = AncillaClasses { reusable: 0, garbage: 0, t_state: 0, disagreements: Vec::new() };
    for (i, role) in circuit.roles().iter().enumerate() {
        let q = QubitId(i as u32);
        match role {
            RegisterRole::TStateResource => classes.t_state += 1,
            RegisterRole::AncillaReusable | RegisterRole::AncillaGarbage => {
                let clean = evidence.always_zero(q);
                if clean {
                    classes.reusable += 1;
                } else {
                    classes.garbage += 1;
                }
                if clean != (*role == RegisterRole::AncillaReusable) {
                    classes.disagreements.push(q);
                }
            }
            _ => {}
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::expand_ccx_amy;
    use crate::ir::CircuitBuilder;

    fn amy_circuit() -> Circuit {
        let mut b = CircuitBuilder::new("amy", 2).unwrap();
        let (a, c, t) = (b.input()[0], b.input()[1], b.output()[0]);
        b.extend(expand_ccx_amy(a, c, t).unwrap()).unwrap();
        b.finish()
    }

    #[test]
    fn single_toffoli_costs() {
        let c = amy_circuit();
        assert_eq!(t_metrics(&c).unwrap(), (7, 3));
        let (depth, total, excl) = depth_width(&c).unwrap();
        assert_eq!((depth, total, excl), (10, 4, 4));
    }

    #[test]
    fn empty_and_single_cx() {
        let c = CircuitBuilder::new("e", 2).unwrap().finish();
        assert_eq!(depth_width(&c).unwrap(), (0, 4, 4));
        assert_eq!(t_metrics(&c).unwrap(), (0, 0));
        let mut b = CircuitBuilder::new("cx", 2).unwrap();
        let (x, y) = (b.input()[0], b.input()[1]);
        b.append(Gate::cx(x, y)).unwrap();
        assert_eq!(depth_width(&b.finish()).unwrap().0, 1);
    }

    #[test]
    fn macros_are_rejected() {
        let mut b = CircuitBuilder::new("m", 2).unwrap();
        let (x, y, t) = (b.input()[0], b.input()[1], b.output()[0]);
        b.append(Gate::ccx(x, y, t)).unwrap();
        let c = b.finish();
        assert!(matches!(t_metrics(&c), Err(Error::WrongLevel { .. })));
        assert!(matches!(depth_width(&c), Err(Error::WrongLevel { .. })));
    }

    #[test]
    fn classical_bits_order_corrections() {
        let mut b = CircuitBuilder::new("k", 2).unwrap();
        let (x, y, t) = (b.input()[0], b.input()[1], b.output()[0]);
        let k = b.alloc_bit();
        b.extend([Gate::h(t), Gate::measure(t, k), Gate::classical_cz(x, y, k)]).unwrap();
        assert_eq!(asap_layers(&b.finish()), vec![1, 2, 3]);
    }

    #[test]
    fn evidence_is_required() {
        let c = amy_circuit();
        let err = ancilla_classes(&c, &SimEvidence::new(c.num_qubits())).unwrap_err();
        assert!(matches!(err, Error::Evidence(_)));
    }
}
