//! The i-MCXn stage primitive and the fan-out copy network.

use crate::decompose::AncillaSource;
use crate::error::{Error, Result};
use crate::ir::{Gate, QubitId};
use crate::oracle::flip_mask;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IMcxnVariant {
    /// `n` multi-controlled X gates sharing the same controls.
    Original,
    /// One MCX into an ancilla, `n` CX flips, MCX uncompute.
    AncillaAssisted,
    /// For `i = 2^p`: the AND lands directly in `gamma_p`, then `p` CX flips.
    PowerOfTwoInPlace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IMcxnSpec {
    pub i: u64,
    pub n: u32,
    pub variant: IMcxnVariant,
}

impl IMcxnSpec {
    /// Stage `i` with `n` taken from the flip mask.
    pub fn new(i: u64, variant: IMcxnVariant) -> Result<Self> {
        let n = flip_mask(i)?.n;
        let spec = IMcxnSpec { i, n, variant };
        spec.check()?;
        Ok(spec)
    }

    pub fn check(&self) -> Result<()> {
        let expected = flip_mask(self.i)?.n;
        if self.n != expected {
            return Err(Error::VariantMismatch(format!("stage {} flips {expected} bits, not {}", self.i, self.n)));
        }
        if self.variant == IMcxnVariant::PowerOfTwoInPlace && !self.i.is_power_of_two() {
            return Err(Error::VariantMismatch(format!("in-place stage needs a power-of-two index, got {}", self.i)));
        }
        Ok(())
    }
}

/// Multi-controlled X with the smallest gate kind for the control count.
pub(crate) fn controlled_x(controls: &[QubitId], target: QubitId) -> Gate {
    match controls {
        [c] => Gate::cx(*c, target),
        [a, b] => Gate::ccx(*a, *b, target),
        _ => Gate::mcx(controls.to_vec(), target),
    }
}

/// Gates for one stage. `controls` are the `i` most significant inputs (any
/// order); `gamma` is the bit-indexed output register.
///
/// The in-place variant is only correct inside the sequential counter, where
/// `gamma_p` is still 0 when stage `2^p` runs.
pub fn build_imcxn(
    spec: IMcxnSpec,
    controls: &[QubitId],
    gamma: &[QubitId],
    ancillas: &mut impl AncillaSource,
) -> Result<Vec<Gate>> {
    spec.check()?;
    if controls.len() as u64 != spec.i {
        return Err(Error::Shape(format!("stage {} needs {} controls, got {}", spec.i, spec.i, controls.len())));
    }
    let n = spec.n as usize;
    if gamma.len() < n {
        return Err(Error::Shape(format!("stage {} flips {n} bits but gamma has {}", spec.i, gamma.len())));
    }
    let mut gates = Vec::new();
    match spec.variant {
        IMcxnVariant::Original => {
            for &g in &gamma[..n] {
                gates.push(controlled_x(controls, g));
            }
        }
        IMcxnVariant::AncillaAssisted => {
            let a = ancillas.take()?;
            gates.push(controlled_x(controls, a));
            for &g in &gamma[..n] {
                gates.push(Gate::cx(a, g));
            }
            gates.push(controlled_x(controls, a));
            ancillas.give_back(a)?;
        }
        IMcxnVariant::PowerOfTwoInPlace => {
            let p = n - 1;
            gates.push(controlled_x(controls, gamma[p]));
            for &g in &gamma[..p] {
                gates.push(Gate::cx(gamma[p], g));
            }
        }
    }
    Ok(gates)
}

/// Doubling CX schedule copying `ctrl` onto `ancillas`, which must be `|0>`.
/// Round `r` doubles the number of qubits holding the value, so the network
/// has `ceil(lg(n + 1))` CX layers. The inverse is the reversed sequence.
pub fn build_fanout(ctrl: QubitId, ancillas: &[QubitId]) -> Vec<Gate> {
    let n = ancillas.len();
    let q = |idx: usize| if idx == 0 { ctrl } else { ancillas[idx - 1] };
    let mut gates = Vec::with_capacity(n);
    let mut span = 1;
    while span <= n {
        for j in 0..span {
            if j + span <= n {
                gates.push(Gate::cx(q(j), q(j + span)));
            }
        }
        span *= 2;
    }
    gates
}

pub fn build_fanout_inverse(ctrl: QubitId, ancillas: &[QubitId]) -> Vec<Gate> {
    let mut gates = build_fanout(ctrl, ancillas);
    gates.reverse();
    gates
}
