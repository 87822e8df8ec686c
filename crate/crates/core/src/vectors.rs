//! Published test vectors and the padded-run harness used to replay them.

use crate::error::{Error, Result};
use crate::generators::{build, pad_input, CountKind, DesignId, PadMode};
use crate::ir::Circuit;
use crate::oracle::BitWord;
use crate::sim::{run_basis, SimOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PaperVector {
    pub n: u32,
    pub x: u128,
    pub count: u32,
}

const fn v(n: u32, x: u128, count: u32) -> PaperVector {
    PaperVector { n, x, count }
}

/// Leading-zero vectors (mode bit 1 for the reconfigurable design).
pub const LZC_VECTORS: [PaperVector; 7] =
    [v(11, 0, 11), v(13, 1, 12), v(16, 291, 7), v(20, 241, 12), v(24, 42480, 8), v(28, 8388608, 4), v(32, 15790320, 8)];

/// Leading-one vectors (mode bit 0 for the reconfigurable design).
pub const LOC_VECTORS: [PaperVector; 7] = [
    v(11, 0b11111111111, 11),
    v(13, 0b1111111111110, 12),
    v(16, 0b1111111111000011, 10),
    v(20, 0b11111110111100010001, 7),
    v(24, 0b111111110000000000000000, 8),
    v(28, 0b1111011110000000000000000000, 4),
    v(32, 0b11110000111100001111000011110000, 4),
];

pub const LZC_FAMILIES: [DesignId; 4] =
    [DesignId::TaOpQlzc, DesignId::TaOpPqlzc, DesignId::FoTaOpPqlzc, DesignId::ReconfigurableQlzoc];

pub const LOC_FAMILIES: [DesignId; 4] =
    [DesignId::TaOpQloc, DesignId::TaOpPqloc, DesignId::FoTaOpPqloc, DesignId::ReconfigurableQlzoc];

#[derive(Clone, Debug)]
pub struct VectorRun {
    pub design: DesignId,
    pub n: u32,
    pub x: u128,
    pub mode: Option<bool>,
    pub native_m: usize,
    pub padded: u128,
    /// Count read from the output register of the padded circuit.
    pub raw: u32,
    /// `min(raw, n)`.
    pub reported: u32,
    pub outcome: SimOutcome,
}

impl VectorRun {
    /// Input restored, reusable ancillas clean, no contract violations.
    pub fn clean(&self, circuit: &Circuit) -> bool {
        self.outcome.input == self.padded && self.outcome.violations.is_empty() && self.outcome.reusable_clean(circuit)
    }
}

fn pad_mode(kind: CountKind, mode: Option<bool>) -> Result<PadMode> {
    match (kind, mode) {
        (CountKind::Lzc, _) => Ok(PadMode::Lzc),
        (CountKind::Loc, _) => Ok(PadMode::Loc),
        (CountKind::ModeSelected, Some(true)) => Ok(PadMode::Lzc),
        (CountKind::ModeSelected, Some(false)) => Ok(PadMode::Loc),
        (CountKind::ModeSelected, None) => Err(Error::Shape("this design needs a mode bit".into())),
    }
}

/// Runs `x` (an `n`-bit word) on the smallest native instance of `design`,
/// padding below the LSB when the native width is larger. Returns the run and
/// the circuit it used.
pub fn run_vector(design: DesignId, n: u32, x: u128, mode: Option<bool>) -> Result<(VectorRun, Circuit)> {
    let word = BitWord::new(x, n)?;
    let kind = design.count_kind();
    let pad = pad_mode(kind, mode)?;
    let mode = if kind == CountKind::ModeSelected { mode } else { None };
    let native_m = design.native_width(n as usize);
    let circuit = build(design, native_m)?;
    let padded = pad_input(word, native_m as u32, pad)?;
    let outcome = run_basis(&circuit, padded, mode)?;
    let raw = outcome.output as u32;
    Ok((
        VectorRun { design, n, x, mode, native_m, padded: padded.value(), raw, reported: raw.min(n), outcome },
        circuit,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{loc, lzc};

    #[test]
    fn fixtures_agree_with_oracle() {
        for t in LZC_VECTORS {
            assert_eq!(lzc(BitWord::new(t.x, t.n).unwrap()), t.count);
        }
        for t in LOC_VECTORS {
            assert_eq!(loc(BitWord::new(t.x, t.n).unwrap()), t.count);
        }
    }

    #[test]
    fn padded_zero_is_clamped() {
        let (run, _) = run_vector(DesignId::TaOpPqlzc, 11, 0, None).unwrap();
        assert_eq!(run.native_m, 16);
        assert_eq!(run.raw, 16);
        assert_eq!(run.reported, 11);
    }

    #[test]
    fn reconfigurable_requires_mode() {
        assert!(run_vector(DesignId::ReconfigurableQlzoc, 16, 291, None).is_err());
        let (run, _) = run_vector(DesignId::ReconfigurableQlzoc, 16, 291, Some(true)).unwrap();
        assert_eq!(run.reported, 7);
    }
}
