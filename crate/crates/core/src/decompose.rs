//! Expansion of macro gates (`CCX`, `MCX`, temporary-AND) into Clifford+T
//! sequences with measurement-based uncomputation.

use crate::error::{Error, Result};
use crate::ir::{Circuit, CircuitBuilder, ClassicalBit, Gate, GateKind, QubitId, RegisterRole};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CcxStyle {
    /// Ancilla-free 7-T Toffoli with three T layers.
    #[default]
    AmyDepth9,
    /// 4-T Toffoli through an ancilla, an iX gate and a measured uncompute.
    JonesMeasurement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TAndStyle {
    /// The target is prepared as a T state in place; 4 T gates, 2 T layers.
    #[default]
    GidneyTState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum McxStyle {
    #[default]
    ToffoliLadderWithAncilla,
}

/// Gate used for the AND chain of an MCX ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LadderGate {
    #[default]
    Ccx,
    TAnd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct DecompositionPolicy {
    pub ccx_style: CcxStyle,
    pub tand_style: TAndStyle,
    pub mcx_style: McxStyle,
    pub ladder_gate: LadderGate,
}

/// Supplies zeroed ancillas for ladder expansion.
pub trait AncillaSource {
    fn take(&mut self) -> Result<QubitId>;
    fn give_back(&mut self, q: QubitId) -> Result<()>;
}

impl AncillaSource for CircuitBuilder {
    fn take(&mut self) -> Result<QubitId> {
        self.alloc_ancilla(RegisterRole::AncillaReusable)
    }

    fn give_back(&mut self, q: QubitId) -> Result<()> {
        self.release_ancilla(q)
    }
}

/// A fixed set of ancillas; running out is an allocation error.
#[derive(Clone, Debug)]
pub struct AncillaBudget {
    free: Vec<QubitId>,
}

impl AncillaBudget {
    pub fn new(mut qubits: Vec<QubitId>) -> Self {
        qubits.reverse();
        AncillaBudget { free: qubits }
    }
}

impl AncillaSource for AncillaBudget {
    fn take(&mut self) -> Result<QubitId> {
        self.free.pop().ok_or_else(|| Error::Allocation("ancilla budget exhausted".into()))
    }

    fn give_back(&mut self, q: QubitId) -> Result<()> {
        self.free.push(q);
        Ok(())
    }
}

fn distinct(kind: GateKind, qs: &[QubitId]) -> Result<()> {
    for (i, a) in qs.iter().enumerate() {
        if qs[i + 1..].contains(a) {
            return Err(Error::MalformedGate { kind, reason: format!("qubit {a} appears twice") });
        }
    }
    Ok(())
}

/// 7-T Toffoli: H on the target, a CNOT-phase network placing T/T† on the
/// seven parities of the CCZ phase polynomial in three T layers, H again.
pub fn expand_ccx_amy(c0: QubitId, c1: QubitId, t: QubitId) -> Result<Vec<Gate>> {
    distinct(GateKind::CCX, &[c0, c1, t])?;
    Ok(vec![
        Gate::h(t),
        Gate::t(c0),
        Gate::t(c1),
        Gate::t(t),
        Gate::cx(t, c1),
        Gate::cx(t, c0),
        Gate::tdg(c1),
        Gate::cx(c0, c1),
        Gate::cx(c1, t),
        Gate::tdg(c0),
        Gate::tdg(c1),
        Gate::t(t),
        Gate::cx(c1, t),
        Gate::cx(t, c0),
        Gate::cx(c0, c1),
        Gate::h(t),
    ])
}

/// `|q0 q1 y> -> i^(q0 q1) |q0 q1 (y ^ q0 q1)>` with four T gates.
pub fn expand_ix(q0: QubitId, q1: QubitId, y: QubitId) -> Result<Vec<Gate>> {
    distinct(GateKind::CCX, &[q0, q1, y])?;
    Ok(vec![
        Gate::h(y),
        Gate::s(q0),
        Gate::s(q1),
        Gate::t(y),
        Gate::cx(q0, q1),
        Gate::sdg(q1),
        Gate::cx(q0, y),
        Gate::tdg(y),
        Gate::cx(q1, y),
        Gate::tdg(y),
        Gate::cx(q0, y),
        Gate::t(y),
        Gate::cx(q1, y),
        Gate::cx(q0, q1),
        Gate::h(y),
    ])
}

/// Temporary-AND compute: `t` must start in `|0>` and ends holding `c0 & c1`
/// with no residual phase.
pub fn expand_tand_compute(c0: QubitId, c1: QubitId, t: QubitId) -> Result<Vec<Gate>> {
    distinct(GateKind::TAndCompute, &[c0, c1, t])?;
    Ok(vec![
        Gate::h(t),
        Gate::t(t),
        Gate::cx(c0, t),
        Gate::cx(c1, t),
        Gate::cx(t, c0),
        Gate::cx(t, c1),
        Gate::tdg(c0),
        Gate::tdg(c1),
        Gate::t(t),
        Gate::cx(t, c1),
        Gate::cx(t, c0),
        Gate::h(t),
        Gate::s(t),
    ])
}

/// Measurement-based uncompute: X-basis measurement of `t` into `bit`, a CZ
/// phase fix on the controls and a reset of `t`, both conditioned on `bit`.
pub fn expand_tand_uncompute(c0: QubitId, c1: QubitId, t: QubitId, bit: ClassicalBit) -> Result<Vec<Gate>> {
    distinct(GateKind::TAndUncompute, &[c0, c1, t])?;
    Ok(vec![Gate::h(t), Gate::measure(t, bit), Gate::classical_cz(c0, c1, bit), Gate::classical_x(t, bit)])
}

/// Toffoli through a zeroed ancilla: iX into the ancilla, S† phase fix,
/// copy onto the target, measured uncompute.
pub fn expand_ccx_jones(c0: QubitId, c1: QubitId, t: QubitId, anc: QubitId, bit: ClassicalBit) -> Result<Vec<Gate>> {
    distinct(GateKind::CCX, &[c0, c1, t, anc])?;
    let mut gates = expand_ix(c0, c1, anc)?;
    gates.push(Gate::sdg(anc));
    gates.push(Gate::cx(anc, t));
    gates.extend(expand_tand_uncompute(c0, c1, anc, bit)?);
    Ok(gates)
}

/// Multi-controlled X as an AND ladder into `k - 2` ancillas, one Toffoli
/// onto the target and the mirrored uncompute. One and two controls map to
/// `CX`/`CCX` directly.
pub fn expand_mcx_ladder(
    controls: &[QubitId],
    target: QubitId,
    ancillas: &mut impl AncillaSource,
    ladder: LadderGate,
) -> Result<Vec<Gate>> {
    let mut all = controls.to_vec();
    all.push(target);
    distinct(GateKind::MCX, &all)?;
    match controls {
        [] => return Err(Error::MalformedGate { kind: GateKind::MCX, reason: "no controls".into() }),
        [c] => return Ok(vec![Gate::cx(*c, target)]),
        [a, b] => return Ok(vec![Gate::ccx(*a, *b, target)]),
        _ => {}
    }
    let k = controls.len();
    let mut chain = Vec::with_capacity(k - 2);
    let mut compute = Vec::with_capacity(k - 2);
    let mut prev = controls[0];
    for &c in &controls[1..k - 1] {
        let a = ancillas.take()?;
        compute.push(match ladder {
            LadderGate::Ccx => Gate::ccx(prev, c, a),
            LadderGate::TAnd => Gate::tand(prev, c, a),
        });
        chain.push(a);
        prev = a;
    }
    let mut gates = compute.clone();
    gates.push(Gate::ccx(prev, controls[k - 1], target));
    for g in compute.into_iter().rev() {
        gates.push(match ladder {
            LadderGate::Ccx => g,
            LadderGate::TAnd => Gate::tand_uncompute(g.controls[0], g.controls[1], g.targets[0]),
        });
    }
    for a in chain.into_iter().rev() {
        ancillas.give_back(a)?;
    }
    Ok(gates)
}

/// Replaces every `MCX` by its ladder; everything else is copied.
pub fn lower_mcx(circuit: &Circuit, policy: &DecompositionPolicy) -> Result<Circuit> {
    let mut b = CircuitBuilder::with_registry_of(circuit);
    for g in circuit.gates() {
        if g.kind == GateKind::MCX {
            let gates = expand_mcx_ladder(&g.controls, g.targets[0], &mut b, policy.ladder_gate)?;
            b.extend(gates)?;
        } else {
            b.append(g.clone())?;
        }
    }
    Ok(b.finish())
}

fn rewrite(circuit: &Circuit, policy: &DecompositionPolicy, keep_ccx: bool) -> Result<Circuit> {
    let lowered = lower_mcx(circuit, policy)?;
    let mut b = CircuitBuilder::with_registry_of(&lowered);
    for g in lowered.gates() {
        let (c, t) = (&g.controls, &g.targets);
        match g.kind {
            GateKind::CCX if keep_ccx => b.append(g.clone())?,
            GateKind::CCX => match policy.ccx_style {
                CcxStyle::AmyDepth9 => b.extend(expand_ccx_amy(c[0], c[1], t[0])?)?,
                CcxStyle::JonesMeasurement => {
                    let anc = b.alloc_ancilla(RegisterRole::AncillaReusable)?;
                    let bit = b.alloc_bit();
                    b.extend(expand_ccx_jones(c[0], c[1], t[0], anc, bit)?)?;
                    b.release_ancilla(anc)?;
                }
            },
            GateKind::TAndCompute => match policy.tand_style {
                TAndStyle::GidneyTState => b.extend(expand_tand_compute(c[0], c[1], t[0])?)?,
            },
            GateKind::TAndUncompute => {
                let bit = b.alloc_bit();
                b.extend(expand_tand_uncompute(c[0], c[1], t[0], bit)?)?;
            }
            _ => b.append(g.clone())?,
        }
    }
    Ok(b.finish())
}

/// Full Clifford+T(+measurement) expansion.
pub fn expand(circuit: &Circuit, policy: &DecompositionPolicy) -> Result<Circuit> {
    rewrite(circuit, policy, false)
}

/// Expansion down to the gates the QASM dialect knows: `MCX` and
/// temporary-AND are expanded, `CCX` is kept.
pub fn lower_for_qasm(circuit: &Circuit, policy: &DecompositionPolicy) -> Result<Circuit> {
    rewrite(circuit, policy, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: u32) -> QubitId {
        QubitId(i)
    }

    fn t_count(gates: &[Gate]) -> usize {
        gates.iter().filter(|g| g.kind.is_t_type()).count()
    }

    #[test]
    fn t_counts_of_fixed_constructions() {
        assert_eq!(t_count(&expand_ccx_amy(q(0), q(1), q(2)).unwrap()), 7);
        assert_eq!(t_count(&expand_tand_compute(q(0), q(1), q(2)).unwrap()), 4);
        assert_eq!(t_count(&expand_tand_uncompute(q(0), q(1), q(2), ClassicalBit(0)).unwrap()), 0);
        assert_eq!(t_count(&expand_ix(q(0), q(1), q(2)).unwrap()), 4);
        assert_eq!(t_count(&expand_ccx_jones(q(0), q(1), q(2), q(3), ClassicalBit(0)).unwrap()), 4);
    }

    #[test]
    fn non_distinct_qubits_are_rejected() {
        assert!(matches!(expand_ccx_amy(q(0), q(0), q(2)), Err(Error::MalformedGate { .. })));
        assert!(expand_ix(q(1), q(2), q(1)).is_err());
        assert!(expand_tand_compute(q(1), q(2), q(2)).is_err());
    }

    #[test]
    fn ladder_uses_k_minus_two_ancillas() {
        let controls: Vec<_> = (0..5).map(q).collect();
        let mut budget = AncillaBudget::new(vec![q(10), q(11), q(12)]);
        let gates = expand_mcx_ladder(&controls, q(5), &mut budget, LadderGate::Ccx).unwrap();
        assert_eq!(gates.len(), 2 * 3 + 1);
        assert!(gates.iter().all(|g| g.kind == GateKind::CCX));

        let mut small = AncillaBudget::new(vec![q(10)]);
        let err = expand_mcx_ladder(&controls, q(5), &mut small, LadderGate::Ccx).unwrap_err();
        assert!(matches!(err, Error::Allocation(_)));
    }

    #[test]
    fn short_mcx_maps_directly() {
        let mut budget = AncillaBudget::new(vec![]);
        let one = expand_mcx_ladder(&[q(0)], q(1), &mut budget, LadderGate::Ccx).unwrap();
        assert_eq!(one, vec![Gate::cx(q(0), q(1))]);
        let two = expand_mcx_ladder(&[q(0), q(1)], q(2), &mut budget, LadderGate::Ccx).unwrap();
        assert_eq!(two, vec![Gate::ccx(q(0), q(1), q(2))]);
    }

    #[test]
    fn tand_ladder_pairs_compute_and_uncompute() {
        let controls: Vec<_> = (0..4).map(q).collect();
        let mut budget = AncillaBudget::new(vec![q(10), q(11)]);
        let gates = expand_mcx_ladder(&controls, q(4), &mut budget, LadderGate::TAnd).unwrap();
        let kinds: Vec<_> = gates.iter().map(|g| g.kind).collect();
        assert_eq!(
            kinds,
            vec![
                GateKind::TAndCompute,
                GateKind::TAndCompute,
                GateKind::CCX,
                GateKind::TAndUncompute,
                GateKind::TAndUncompute
            ]
        );
    }
}
