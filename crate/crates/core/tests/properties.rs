use proptest::prelude::*;

use qlzoc::decompose::{expand, lower_for_qasm, DecompositionPolicy};
use qlzoc::generators::{build, pad_input, CountKind, DesignId, PadMode};
use qlzoc::ir::{from_qasm, from_text, to_qasm, to_text};
use qlzoc::oracle::{flip_mask, loc, lzc, merge_reference, mloc, BitWord};
use qlzoc::sim::run_basis;

fn binary(x: u128, n: u32) -> String {
    format!("{:0width$b}", x, width = n as usize)
}

fn leading(s: &str, c: char) -> u32 {
    s.chars().take_while(|&d| d == c).count() as u32
}

fn word() -> impl Strategy<Value = (u128, u32)> {
    (1u32..=128).prop_flat_map(|n| {
        let max = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        (0..=max, Just(n))
    })
}

fn sequential_design() -> impl Strategy<Value = DesignId> {
    prop::sample::select(vec![DesignId::Qloc, DesignId::Qlzc, DesignId::TaOpQloc, DesignId::TaOpQlzc])
}

proptest! {
    #[test]
    fn counts_match_string_scan((x, n) in word()) {
        let w = BitWord::new(x, n).unwrap();
        let s = binary(x, n);
        prop_assert_eq!(lzc(w), leading(&s, '0'));
        prop_assert_eq!(loc(w), leading(&s, '1'));
        prop_assert_eq!(lzc(w), loc(w.complement()));
    }

    #[test]
    fn modular_procedure_is_leading_one_count((x, n) in word()) {
        let w = BitWord::new(x, n).unwrap();
        prop_assert_eq!(mloc(w), loc(w) as u64);
    }

    #[test]
    fn flip_mask_shape(i in 1u64..=u64::MAX) {
        let f = flip_mask(i).unwrap();
        prop_assert_eq!(f.delta, (i - 1) ^ i);
        prop_assert_eq!(f.delta.count_ones(), f.n);
        prop_assert_eq!(f.delta.trailing_ones(), f.n);
        prop_assert_eq!(f.n, i.trailing_zeros() + 1);
    }

    #[test]
    fn padding_preserves_the_clamped_count((x, n) in word(), extra in 0u32..=16) {
        let native = (n + extra).min(128);
        let w = BitWord::new(x, n).unwrap();
        let z = pad_input(w, native, PadMode::Lzc).unwrap();
        let o = pad_input(w, native, PadMode::Loc).unwrap();
        prop_assert_eq!(lzc(z).min(n), lzc(w));
        prop_assert_eq!(loc(o).min(n), loc(w));
        prop_assert_eq!(z.value() >> (native - n), x);
    }

    #[test]
    fn merge_matches_concatenation(p in 0u32..6, hi in any::<u64>(), lo in any::<u64>()) {
        let m = 1u32 << p;
        let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let (hi, lo) = ((hi & mask) as u128, (lo & mask) as u128);
        let h = lzc(BitWord::new(hi, m).unwrap());
        let l = lzc(BitWord::new(lo, m).unwrap());
        let whole = lzc(BitWord::new((hi << m) | lo, 2 * m).unwrap());
        prop_assert_eq!(merge_reference(h, l, m).unwrap(), whole);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sequential_designs_count_random_words(design in sequential_design(), m in 1usize..=40, seed in any::<u128>()) {
        let x = seed & ((1u128 << m) - 1);
        let w = BitWord::new(x, m as u32).unwrap();
        let c = build(design, m).unwrap();
        let out = run_basis(&c, w, None).unwrap();
        let want = if design.count_kind() == CountKind::Lzc { lzc(w) } else { loc(w) };
        prop_assert_eq!(out.output as u32, want);
        prop_assert_eq!(out.input, x);
        prop_assert!(out.violations.is_empty());
        prop_assert!(out.reusable_clean(&c));
    }

    #[test]
    fn tree_designs_count_random_words(p in 3u32..=6, seed in any::<u128>(), run in 0u32..=64) {
        let m = 1u32 << p;
        // Shifting in leading zeros reaches the deeper merge cases.
        let mask = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
        let x = (seed & mask) >> run.min(m);
        let w = BitWord::new(x, m).unwrap();
        for design in [DesignId::TaOpPqlzc, DesignId::FoTaOpPqlzc] {
            let c = build(design, m as usize).unwrap();
            let out = run_basis(&c, w, None).unwrap();
            prop_assert_eq!(out.output as u32, lzc(w));
            prop_assert!(out.violations.is_empty());
        }
        for design in [DesignId::TaOpPqloc, DesignId::FoTaOpPqloc] {
            let c = build(design, m as usize).unwrap();
            let out = run_basis(&c, w.complement(), None).unwrap();
            prop_assert_eq!(out.output as u32, loc(w.complement()));
        }
    }

    #[test]
    fn reconfigurable_mode_selects_count(m in 1usize..=24, seed in any::<u128>(), mode in any::<bool>()) {
        let w = BitWord::new(seed & ((1u128 << m) - 1), m as u32).unwrap();
        let c = build(DesignId::ReconfigurableQlzoc, m).unwrap();
        let out = run_basis(&c, w, Some(mode)).unwrap();
        prop_assert_eq!(out.output as u32, if mode { lzc(w) } else { loc(w) });
        prop_assert_eq!(out.mode, Some(mode));
    }

    #[test]
    fn interchange_round_trip(idx in 0usize..DesignId::ALL.len(), m in 1usize..=16, expanded in any::<bool>()) {
        let design = DesignId::ALL[idx];
        let m = design.native_width(m);
        let mut c = build(design, m).unwrap();
        if expanded {
            c = expand(&c, &DecompositionPolicy::default()).unwrap();
        }
        let back = from_text(&to_text(&c)).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(to_text(&back), to_text(&c));
    }

    #[test]
    fn qasm_round_trip(idx in 0usize..DesignId::ALL.len(), m in 1usize..=16) {
        let design = DesignId::ALL[idx];
        let m = design.native_width(m);
        let c = lower_for_qasm(&build(design, m).unwrap(), &DecompositionPolicy::default()).unwrap();
        let back = from_qasm(&to_qasm(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
    }
}
