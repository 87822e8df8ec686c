//! Tree-structured counters: 4-input blocks combined by merge rounds.

use super::imcxn::{build_fanout, build_fanout_inverse};
use super::{loc4_block, msb_first, x_layer, AndGate, DesignId};
use crate::error::{Error, Result};
use crate::ir::{Circuit, CircuitBuilder, Gate, QubitId, RegisterRole};

/// Gates merging two `s`-input counts into a `2s`-input count.
///
/// `high` and `low` are bit-indexed registers of `lg s + 1` qubits each, the
/// top bit set only for a count of `s`. Afterwards `high ++ [new]` holds the
/// merged count and `low` is left as garbage. `new` must be `|0>` and is not
/// uncomputed. With `copies` (`lg s` zeroed qubits) the shared control is
/// fanned out first so the Toffolis touch disjoint qubits; the copies are
/// returned to zero before the final CX.
pub fn build_merge(high: &[QubitId], low: &[QubitId], new: QubitId, copies: &[QubitId]) -> Result<Vec<Gate>> {
    if high.len() != low.len() || high.len() < 2 {
        return Err(Error::Shape(format!(
            "merge registers must have equal length of at least 2, got {} and {}",
            high.len(),
            low.len()
        )));
    }
    let lg = high.len() - 1;
    if !copies.is_empty() && copies.len() != lg {
        return Err(Error::Shape(format!("merge fan-out needs {lg} copies, got {}", copies.len())));
    }
    let ctrl = high[lg];
    let mut gates = build_fanout(ctrl, copies);
    gates.push(Gate::tand(ctrl, low[lg], new));
    for i in 0..lg {
        let c = if copies.is_empty() { ctrl } else { copies[i] };
        gates.push(Gate::ccx(c, low[i], high[i]));
    }
    gates.extend(build_fanout_inverse(ctrl, copies));
    gates.push(Gate::cx(new, ctrl));
    Ok(gates)
}

fn tree(design: DesignId, m: usize, lzc: bool, fanout: bool) -> Result<Circuit> {
    design.validate_width(m)?;
    let mut b = CircuitBuilder::new(design.name(), m)?;
    let xs = msb_first(&b);
    let out = b.output().to_vec();

    let blocks = m / 4;
    let mut block_anc = Vec::with_capacity(blocks);
    for _ in 0..blocks {
        block_anc.push(b.alloc_ancilla(RegisterRole::AncillaReusable)?);
    }
    if lzc {
        x_layer(&mut b)?;
    }
    // Sub-counter registers, most significant first.
    let mut regs: Vec<Vec<QubitId>> = Vec::with_capacity(blocks);
    for k in 0..blocks {
        let gamma: Vec<QubitId> = if k == 0 {
            out[..3].to_vec()
        } else {
            (0..3).map(|_| b.alloc_ancilla(RegisterRole::AncillaGarbage)).collect::<Result<_>>()?
        };
        let x = [xs[4 * k], xs[4 * k + 1], xs[4 * k + 2], xs[4 * k + 3]];
        b.extend(loc4_block(x, [gamma[0], gamma[1], gamma[2]], block_anc[k], AndGate::TAnd))?;
        regs.push(gamma);
    }

    while regs.len() > 1 {
        let lg = regs[0].len() - 1;
        let mut next = Vec::with_capacity(regs.len() / 2);
        // Merges of one round run side by side, so their copies stay
        // allocated until the round ends.
        let mut held = Vec::new();
        for (pair, chunk) in regs.chunks(2).enumerate() {
            let (high, low) = (&chunk[0], &chunk[1]);
            let new = if pair == 0 { out[lg + 1] } else { b.alloc_ancilla(RegisterRole::AncillaGarbage)? };
            let copies: Vec<QubitId> = if fanout {
                (0..lg).map(|_| b.alloc_ancilla(RegisterRole::AncillaReusable)).collect::<Result<_>>()?
            } else {
                Vec::new()
            };
            b.extend(build_merge(high, low, new, &copies)?)?;
            let mut merged = high.clone();
            merged.push(new);
            next.push(merged);
            held.extend(copies);
        }
        for q in held.into_iter().rev() {
            b.release_ancilla(q)?;
        }
        regs = next;
    }

    if lzc {
        x_layer(&mut b)?;
    }
    for a in block_anc.into_iter().rev() {
        b.release_ancilla(a)?;
    }
    Ok(b.finish())
}

pub fn build_pqlzc(m: usize) -> Result<Circuit> {
    tree(DesignId::TaOpPqlzc, m, true, false)
}

pub fn build_fo_pqlzc(m: usize) -> Result<Circuit> {
    tree(DesignId::FoTaOpPqlzc, m, true, true)
}

pub fn build_pqloc(m: usize) -> Result<Circuit> {
    tree(DesignId::TaOpPqloc, m, false, false)
}

pub fn build_fo_pqloc(m: usize) -> Result<Circuit> {
    tree(DesignId::FoTaOpPqloc, m, false, true)
}
