//! Circuit constructions for every counter design.
//!
//! Generators emit macro-level circuits (`CCX`, `TAND`, `TAND_UNCOMPUTE`);
//! Clifford+T lowering is a separate pass in [`crate::decompose`].

mod imcxn;
mod parallel;

pub use imcxn::{build_fanout, build_fanout_inverse, build_imcxn, IMcxnSpec, IMcxnVariant};
pub use parallel::{build_fo_pqloc, build_fo_pqlzc, build_merge, build_pqloc, build_pqlzc};

use std::fmt;

use crate::error::{Error, Result};
use crate::ir::{Circuit, CircuitBuilder, Gate, QubitId, RegisterRole};
use crate::oracle::{flip_mask, BitWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DesignId {
    Qloc,
    Qlzc,
    TaOpQloc,
    TaOpQlzc,
    POp4Qlzc,
    TaPOp4Qlzc,
    TaOpPqlzc,
    FoTaOpPqlzc,
    TaOpPqloc,
    FoTaOpPqloc,
    ReconfigurableQlzoc,
}

/// What a design's output register holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountKind {
    Lzc,
    Loc,
    /// Leading zeros when the mode qubit is 1, leading ones when it is 0.
    ModeSelected,
}

impl DesignId {
    pub const ALL: [DesignId; 11] = [
        DesignId::Qloc,
        DesignId::Qlzc,
        DesignId::TaOpQloc,
        DesignId::TaOpQlzc,
        DesignId::POp4Qlzc,
        DesignId::TaPOp4Qlzc,
        DesignId::TaOpPqlzc,
        DesignId::FoTaOpPqlzc,
        DesignId::TaOpPqloc,
        DesignId::FoTaOpPqloc,
        DesignId::ReconfigurableQlzoc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DesignId::Qloc => "qloc",
            DesignId::Qlzc => "qlzc",
            DesignId::TaOpQloc => "ta-op-qloc",
            DesignId::TaOpQlzc => "ta-op-qlzc",
            DesignId::POp4Qlzc => "p-op-4qlzc",
            DesignId::TaPOp4Qlzc => "ta-p-op-4qlzc",
            DesignId::TaOpPqlzc => "ta-op-pqlzc",
            DesignId::FoTaOpPqlzc => "fo-ta-op-pqlzc",
            DesignId::TaOpPqloc => "ta-op-pqloc",
            DesignId::FoTaOpPqloc => "fo-ta-op-pqloc",
            DesignId::ReconfigurableQlzoc => "reconfigurable-qlzoc",
        }
    }

    /// Accepts the canonical names plus short aliases.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.to_ascii_lowercase();
        let alias = match s.as_str() {
            "pqlzc" => Some(DesignId::TaOpPqlzc),
            "fo-pqlzc" => Some(DesignId::FoTaOpPqlzc),
            "pqloc" => Some(DesignId::TaOpPqloc),
            "fo-pqloc" => Some(DesignId::FoTaOpPqloc),
            "reconfigurable" | "qlzoc" => Some(DesignId::ReconfigurableQlzoc),
            "p-op" | "p-op-4" => Some(DesignId::POp4Qlzc),
            "ta-p-op" | "ta-p-op-4" => Some(DesignId::TaPOp4Qlzc),
            _ => None,
        };
        alias.or_else(|| Self::ALL.into_iter().find(|d| d.name() == s))
    }

    pub fn count_kind(self) -> CountKind {
        match self {
            DesignId::Qloc | DesignId::TaOpQloc | DesignId::TaOpPqloc | DesignId::FoTaOpPqloc => CountKind::Loc,
            DesignId::ReconfigurableQlzoc => CountKind::ModeSelected,
            _ => CountKind::Lzc,
        }
    }

    /// Tree-structured designs built from 4-input blocks.
    pub fn is_parallel(self) -> bool {
        matches!(self, DesignId::TaOpPqlzc | DesignId::FoTaOpPqlzc | DesignId::TaOpPqloc | DesignId::FoTaOpPqloc)
    }

    pub fn is_fixed_block(self) -> bool {
        matches!(self, DesignId::POp4Qlzc | DesignId::TaPOp4Qlzc)
    }

    pub fn validate_width(self, m: usize) -> Result<()> {
        if m == 0 {
            return Err(Error::InvalidWidth(m));
        }
        if self.is_fixed_block() && m != 4 {
            return Err(Error::VariantMismatch(format!("{self} is a 4-input block, got m={m}")));
        }
        if self.is_parallel() && !is_parallel_native(m) {
            return Err(Error::Shape(format!(
                "{self} supports m = 4*2^p with p >= 1 (8, 16, 32, ...), got m={m}; use --pad to widen the input"
            )));
        }
        Ok(())
    }

    /// Smallest width this design builds natively that holds `n` input bits.
    pub fn native_width(self, n: usize) -> usize {
        if self.is_parallel() {
            n.max(8).next_power_of_two().max(8)
        } else if self.is_fixed_block() {
            4
        } else {
            n.max(1)
        }
    }
}

fn is_parallel_native(m: usize) -> bool {
    m >= 8 && m.is_power_of_two()
}

impl fmt::Display for DesignId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn build(design: DesignId, m: usize) -> Result<Circuit> {
    design.validate_width(m)?;
    match design {
        DesignId::Qloc => build_qloc(m),
        DesignId::Qlzc => build_qlzc(m),
        DesignId::TaOpQloc => build_ta_op_variant(m, Base::Loc),
        DesignId::TaOpQlzc => build_ta_op_variant(m, Base::Lzc),
        DesignId::POp4Qlzc => build_4qlzc_block(BlockStyle::POp, m),
        DesignId::TaPOp4Qlzc => build_4qlzc_block(BlockStyle::TaPOp, m),
        DesignId::TaOpPqlzc => build_pqlzc(m),
        DesignId::FoTaOpPqlzc => build_fo_pqlzc(m),
        DesignId::TaOpPqloc => build_pqloc(m),
        DesignId::FoTaOpPqloc => build_fo_pqloc(m),
        DesignId::ReconfigurableQlzoc => build_reconfigurable(m),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Loc,
    Lzc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockStyle {
    POp,
    TaPOp,
}

/// How an all-one flag is computed and uncomputed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum AndGate {
    Ccx,
    TAnd,
}

impl AndGate {
    pub(crate) fn compute(self, a: QubitId, b: QubitId, t: QubitId) -> Gate {
        match self {
            AndGate::Ccx => Gate::ccx(a, b, t),
            AndGate::TAnd => Gate::tand(a, b, t),
        }
    }

    pub(crate) fn uncompute(self, a: QubitId, b: QubitId, t: QubitId) -> Gate {
        match self {
            AndGate::Ccx => Gate::ccx(a, b, t),
            AndGate::TAnd => Gate::tand_uncompute(a, b, t),
        }
    }
}

/// Inputs ordered from the most significant bit down.
pub(crate) fn msb_first(b: &CircuitBuilder) -> Vec<QubitId> {
    b.input().iter().rev().copied().collect()
}

/// Sequential leading-one counter body. Stage `i` keeps the all-one flag of
/// the top `i` inputs in its own ancilla and flips the low `n_i` output bits
/// from it; the flags are uncomputed in reverse once every stage has run.
fn sequential_loc_core(b: &mut CircuitBuilder, and: AndGate) -> Result<()> {
    let xs = msb_first(b);
    let gamma = b.output().to_vec();
    let mut flags: Vec<QubitId> = Vec::with_capacity(xs.len());
    for (idx, &x) in xs.iter().enumerate() {
        let i = idx as u64 + 1;
        let f = b.alloc_ancilla(RegisterRole::AncillaReusable)?;
        match flags.last() {
            None => b.append(Gate::cx(x, f))?,
            Some(&prev) => b.append(and.compute(prev, x, f))?,
        }
        let n = flip_mask(i)?.n as usize;
        for &g in &gamma[..n] {
            b.append(Gate::cx(f, g))?;
        }
        flags.push(f);
    }
    for idx in (0..xs.len()).rev() {
        let f = flags[idx];
        if idx == 0 {
            b.append(Gate::cx(xs[0], f))?;
        } else {
            b.append(and.uncompute(flags[idx - 1], xs[idx], f))?;
        }
    }
    for f in flags.into_iter().rev() {
        b.release_ancilla(f)?;
    }
    Ok(())
}

pub(crate) fn x_layer(b: &mut CircuitBuilder) -> Result<()> {
    let xs = b.input().to_vec();
    b.extend(xs.into_iter().map(Gate::x))
}

fn sequential(name: &str, m: usize, base: Base, and: AndGate) -> Result<Circuit> {
    let mut b = CircuitBuilder::new(name, m)?;
    if base == Base::Lzc {
        x_layer(&mut b)?;
    }
    sequential_loc_core(&mut b, and)?;
    if base == Base::Lzc {
        x_layer(&mut b)?;
    }
    Ok(b.finish())
}

/// Baseline leading-one counter with Toffoli flag ladder.
pub fn build_qloc(m: usize) -> Result<Circuit> {
    sequential(DesignId::Qloc.name(), m, Base::Loc, AndGate::Ccx)
}

/// Baseline leading-zero counter: the leading-one counter between two X layers.
pub fn build_qlzc(m: usize) -> Result<Circuit> {
    sequential(DesignId::Qlzc.name(), m, Base::Lzc, AndGate::Ccx)
}

/// Sequential counter whose flag ladder uses temporary-AND compute and
/// measured uncompute; leaves no garbage.
pub fn build_ta_op_variant(m: usize, base: Base) -> Result<Circuit> {
    let name = match base {
        Base::Loc => DesignId::TaOpQloc,
        Base::Lzc => DesignId::TaOpQlzc,
    };
    sequential(name.name(), m, base, AndGate::TAnd)
}

/// Mode-selectable counter: CX from the mode qubit replaces both X layers.
pub fn build_reconfigurable(m: usize) -> Result<Circuit> {
    let mut b = CircuitBuilder::new(DesignId::ReconfigurableQlzoc.name(), m)?;
    let c = b.add_mode_qubit()?;
    let xs = b.input().to_vec();
    b.extend(xs.iter().map(|&x| Gate::cx(c, x)))?;
    sequential_loc_core(&mut b, AndGate::TAnd)?;
    b.extend(xs.iter().map(|&x| Gate::cx(c, x)))?;
    Ok(b.finish())
}

/// Four-input leading-one block using the in-place power-of-two stages.
///
/// `x` is most significant first, `gamma` bit-indexed with three entries and
/// `a` a zeroed ancilla returned to zero. The stage-3 flag is uncomputed
/// before the stage-4 flips rewrite `gamma_1`, which it is controlled on.
pub(crate) fn loc4_block(x: [QubitId; 4], gamma: [QubitId; 3], a: QubitId, and: AndGate) -> Vec<Gate> {
    let [x3, x2, x1, x0] = x;
    let [g0, g1, g2] = gamma;
    vec![
        Gate::cx(x3, g0),
        and.compute(x3, x2, g1),
        Gate::cx(g1, g0),
        and.compute(g1, x1, a),
        Gate::cx(a, g0),
        and.compute(a, x0, g2),
        and.uncompute(g1, x1, a),
        Gate::cx(g2, g1),
        Gate::cx(g2, g0),
    ]
}

pub fn build_4qlzc_block(style: BlockStyle, m: usize) -> Result<Circuit> {
    let (design, and) = match style {
        BlockStyle::POp => (DesignId::POp4Qlzc, AndGate::Ccx),
        BlockStyle::TaPOp => (DesignId::TaPOp4Qlzc, AndGate::TAnd),
    };
    if m != 4 {
        return Err(Error::VariantMismatch(format!("{design} is a 4-input block, got m={m}")));
    }
    let mut b = CircuitBuilder::new(design.name(), 4)?;
    let xs = msb_first(&b);
    let g = b.output().to_vec();
    let a = b.alloc_ancilla(RegisterRole::AncillaReusable)?;
    x_layer(&mut b)?;
    b.extend(loc4_block([xs[0], xs[1], xs[2], xs[3]], [g[0], g[1], g[2]], a, and))?;
    x_layer(&mut b)?;
    b.release_ancilla(a)?;
    Ok(b.finish())
}

/// Padding rule for a count mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadMode {
    /// Zeros appended below the LSB; leading zeros are unchanged.
    Lzc,
    /// Ones appended below the LSB; leading ones are unchanged.
    Loc,
}

/// Widens `x` to `m_native` bits by appending at the LSB end.
pub fn pad_input(x: BitWord, m_native: u32, mode: PadMode) -> Result<BitWord> {
    if x.width() > m_native {
        return Err(Error::Shape(format!("cannot pad a {}-bit word down to {m_native} bits", x.width())));
    }
    let extra = m_native - x.width();
    let fill = match mode {
        PadMode::Lzc => 0,
        PadMode::Loc => crate::oracle::width_mask(extra),
    };
    let shifted = if extra >= 128 { 0 } else { x.value() << extra };
    BitWord::new(shifted | fill, m_native)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::GateKind;
    use crate::oracle::{loc, lzc};

    #[test]
    fn design_names_round_trip() {
        for d in DesignId::ALL {
            assert_eq!(DesignId::parse(d.name()), Some(d));
        }
        assert_eq!(DesignId::parse("pqlzc"), Some(DesignId::TaOpPqlzc));
        assert_eq!(DesignId::parse("FO-PQLZC"), Some(DesignId::FoTaOpPqlzc));
        assert_eq!(DesignId::parse("reconfigurable"), Some(DesignId::ReconfigurableQlzoc));
        assert_eq!(DesignId::parse("nope"), None);
    }

    #[test]
    fn width_rules() {
        assert!(matches!(DesignId::TaOpPqlzc.validate_width(6), Err(Error::Shape(_))));
        assert!(matches!(DesignId::TaOpPqlzc.validate_width(4), Err(Error::Shape(_))));
        assert!(DesignId::TaOpPqlzc.validate_width(8).is_ok());
        assert!(DesignId::FoTaOpPqloc.validate_width(128).is_ok());
        assert!(matches!(DesignId::POp4Qlzc.validate_width(8), Err(Error::VariantMismatch(_))));
        assert!(matches!(DesignId::Qlzc.validate_width(0), Err(Error::InvalidWidth(0))));
        assert_eq!(DesignId::TaOpPqlzc.native_width(11), 16);
        assert_eq!(DesignId::TaOpPqlzc.native_width(5), 8);
        assert_eq!(DesignId::TaOpPqlzc.native_width(32), 32);
        assert_eq!(DesignId::TaOpQlzc.native_width(11), 11);
    }

    #[test]
    fn shape_error_mentions_padding() {
        let msg = build(DesignId::TaOpPqlzc, 6).unwrap_err().to_string();
        assert!(msg.contains("--pad"), "{msg}");
    }

    #[test]
    fn sequential_gate_inventory() {
        let c = build(DesignId::TaOpQlzc, 8).unwrap();
        assert_eq!(c.count(GateKind::TAndCompute), 7);
        assert_eq!(c.count(GateKind::TAndUncompute), 7);
        assert_eq!(c.count(GateKind::CCX), 0);
        assert_eq!(c.qubits_with_role(RegisterRole::AncillaReusable).len(), 8);
        assert!(c.unpaired_tand_computes().is_empty());
        let q = build(DesignId::Qloc, 8).unwrap();
        assert_eq!(q.count(GateKind::CCX), 14);
        assert_eq!(q.count(GateKind::X), 0);
    }

    #[test]
    fn block_orders_uncompute_before_top_flips() {
        for style in [BlockStyle::POp, BlockStyle::TaPOp] {
            let c = build_4qlzc_block(style, 4).unwrap();
            let g = c.output();
            let uncompute =
                c.gates().iter().rposition(|x| x.targets[0].index() >= 7 && x.kind != GateKind::CX).unwrap();
            let flip = c.gates().iter().position(|x| *x == Gate::cx(g[2], g[1])).unwrap();
            assert!(uncompute < flip);
        }
        assert!(build_4qlzc_block(BlockStyle::POp, 8).is_err());
    }

    #[test]
    fn padding_preserves_counts() {
        for v in 0u128..(1 << 11) {
            let x = BitWord::new(v, 11).unwrap();
            let p = pad_input(x, 16, PadMode::Lzc).unwrap();
            if v != 0 {
                assert_eq!(lzc(p), lzc(x));
            } else {
                assert_eq!(lzc(p).min(11), 11);
            }
        }
        for v in 0u128..(1 << 13) {
            let x = BitWord::new(v, 13).unwrap();
            let p = pad_input(x, 16, PadMode::Loc).unwrap();
            assert_eq!(loc(p).min(13), loc(x));
        }
        let z = pad_input(BitWord::zero(5).unwrap(), 8, PadMode::Lzc).unwrap();
        assert_eq!(lzc(z), 8);
        assert!(pad_input(BitWord::zero(9).unwrap(), 8, PadMode::Lzc).is_err());
    }
}
