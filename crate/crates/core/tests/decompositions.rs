use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlzoc::analyzer::{asap_layers, t_metrics};
use qlzoc::decompose::{
    expand, expand_ccx_amy, expand_ccx_jones, expand_ix, expand_tand_compute, expand_tand_uncompute, lower_mcx,
    CcxStyle, DecompositionPolicy, LadderGate,
};
use qlzoc::ir::{CircuitBuilder, ClassicalBit, Gate, QubitId};
use qlzoc::sim::statevector::{basis_state, max_distance, run_statevector, unitary, Amplitudes};

const TOL: f64 = 1e-12;

fn q(i: u32) -> QubitId {
    QubitId(i)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Applies a classical reversible map with a phase to every amplitude.
fn apply_map(state: &[Complex64], f: impl Fn(usize) -> (usize, Complex64)) -> Amplitudes {
    let mut out = vec![c(0.0, 0.0); state.len()];
    for (i, a) in state.iter().enumerate() {
        let (j, ph) = f(i);
        out[j] += a * ph;
    }
    out
}

fn toffoli(c0: usize, c1: usize, t: usize) -> impl Fn(usize) -> (usize, Complex64) {
    move |i| {
        let fire = (i >> c0) & (i >> c1) & 1;
        (i ^ (fire << t), c(1.0, 0.0))
    }
}

fn random_state(n: usize, rng: &mut ChaCha8Rng, support: impl Fn(usize) -> bool) -> Amplitudes {
    let mut s: Amplitudes = (0..1usize << n)
        .map(|i| if support(i) { c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) } else { c(0.0, 0.0) })
        .collect();
    let norm = s.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    s.iter_mut().for_each(|a| *a /= norm);
    s
}

#[test]
fn amy_toffoli_equals_toffoli_exactly() {
    let gates = expand_ccx_amy(q(0), q(1), q(2)).unwrap();
    let u = unitary(&gates, 3).unwrap();
    for (j, col) in u.iter().enumerate() {
        let want = apply_map(&basis_state(3, j).unwrap(), toffoli(0, 1, 2));
        assert!(max_distance(col, &want) < TOL, "column {j}");
    }
}

#[test]
fn amy_toffoli_on_every_qubit_order() {
    for (a, b, t) in [(0, 1, 2), (2, 0, 1), (1, 2, 0), (3, 1, 0)] {
        let gates = expand_ccx_amy(q(a), q(b), q(t)).unwrap();
        let u = unitary(&gates, 4).unwrap();
        for (j, col) in u.iter().enumerate() {
            let want = apply_map(&basis_state(4, j).unwrap(), toffoli(a as usize, b as usize, t as usize));
            assert!(max_distance(col, &want) < TOL);
        }
    }
}

#[test]
fn amy_toffoli_costs() {
    let mut b = CircuitBuilder::new("amy", 2).unwrap();
    let (x0, x1, t) = (b.input()[0], b.input()[1], b.output()[0]);
    b.extend(expand_ccx_amy(x0, x1, t).unwrap()).unwrap();
    let circuit = b.finish();
    assert_eq!(t_metrics(&circuit).unwrap(), (7, 3));
    assert_eq!(asap_layers(&circuit).into_iter().max(), Some(10));
}

#[test]
fn ix_unitary() {
    let gates = expand_ix(q(0), q(1), q(2)).unwrap();
    let u = unitary(&gates, 3).unwrap();
    for (j, col) in u.iter().enumerate() {
        let want = apply_map(&basis_state(3, j).unwrap(), |i| {
            let fire = i & (i >> 1) & 1;
            (i ^ (fire << 2), if fire == 1 { c(0.0, 1.0) } else { c(1.0, 0.0) })
        });
        assert!(max_distance(col, &want) < TOL, "column {j}");
    }
    // |q0=1, q1=1, y=0> -> i|111>
    assert!((u[0b011][0b111] - c(0.0, 1.0)).norm() < TOL);
}

#[test]
fn tand_compute_writes_and_without_phase() {
    let gates = expand_tand_compute(q(0), q(1), q(2)).unwrap();
    for ab in 0..4usize {
        let branches = run_statevector(&gates, 3, 0, basis_state(3, ab).unwrap()).unwrap();
        assert_eq!(branches.len(), 1);
        let want_idx = ab | (((ab & 1) & (ab >> 1)) << 2);
        let want = basis_state(3, want_idx).unwrap();
        assert!(max_distance(&branches[0].state, &want) < TOL, "ab={ab:02b}");
    }
}

#[test]
fn tand_compute_then_uncompute_is_identity_in_every_branch() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut gates = expand_tand_compute(q(0), q(1), q(2)).unwrap();
    gates.extend(expand_tand_uncompute(q(0), q(1), q(2), ClassicalBit(0)).unwrap());
    for trial in 0..20 {
        // Controls and a spectator qubit 3 in superposition; the target starts at 0.
        let init = random_state(4, &mut rng, |i| (i >> 2) & 1 == 0);
        let branches = run_statevector(&gates, 4, 1, init.clone()).unwrap();
        assert_eq!(branches.len(), 2, "trial {trial}");
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        assert!((total - 1.0).abs() < TOL);
        for br in &branches {
            assert!(max_distance(&br.state, &init) < TOL, "trial {trial} bits {:?}", br.bits);
        }
    }
}

#[test]
fn tand_between_gates_acts_like_toffoli_into_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let init = random_state(3, &mut rng, |i| (i >> 2) & 1 == 0);
    let gates = expand_tand_compute(q(0), q(1), q(2)).unwrap();
    let out = run_statevector(&gates, 3, 0, init.clone()).unwrap();
    let want = apply_map(&init, toffoli(0, 1, 2));
    assert!(max_distance(&out[0].state, &want) < TOL);
}

#[test]
fn jones_toffoli_every_branch_equals_toffoli() {
    let gates = expand_ccx_jones(q(0), q(1), q(2), q(3), ClassicalBit(0)).unwrap();
    for j in 0..8usize {
        let branches = run_statevector(&gates, 4, 1, basis_state(4, j).unwrap()).unwrap();
        let want = apply_map(&basis_state(4, j).unwrap(), toffoli(0, 1, 2));
        for br in &branches {
            assert!(max_distance(&br.state, &want) < TOL, "input {j:03b} bits {:?}", br.bits);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let init = random_state(4, &mut rng, |i| (i >> 3) & 1 == 0);
        let branches = run_statevector(&gates, 4, 1, init.clone()).unwrap();
        let want = apply_map(&init, toffoli(0, 1, 2));
        assert_eq!(branches.len(), 2);
        for br in &branches {
            assert!(max_distance(&br.state, &want) < TOL);
        }
    }
}

#[test]
fn jones_and_amy_policies_agree_on_a_circuit() {
    let mut b = CircuitBuilder::new("pair", 3).unwrap();
    let x = b.input().to_vec();
    let o = b.output().to_vec();
    b.extend([Gate::ccx(x[0], x[1], o[0]), Gate::ccx(o[0], x[2], o[1]), Gate::cx(x[2], x[0])]).unwrap();
    let circuit = b.finish();
    let amy = expand(&circuit, &DecompositionPolicy::default()).unwrap();
    let jones =
        expand(&circuit, &DecompositionPolicy { ccx_style: CcxStyle::JonesMeasurement, ..Default::default() }).unwrap();
    assert_eq!(amy.num_qubits(), 5);
    assert_eq!(jones.num_qubits(), 6);
    let n = jones.num_qubits();
    for j in 0..8usize {
        let a = run_statevector(amy.gates(), amy.num_qubits(), amy.num_bits(), basis_state(5, j).unwrap()).unwrap();
        let want = &a[0].state;
        let branches = run_statevector(jones.gates(), n, jones.num_bits(), basis_state(n, j).unwrap()).unwrap();
        for br in &branches {
            // Jones keeps its ancilla (qubit 5) at zero, so the first 32 amplitudes carry the state.
            assert!(max_distance(&br.state[..32], want) < TOL);
            assert!(br.state[32..].iter().all(|z| z.norm() < TOL));
        }
    }
}

#[test]
fn mcx_ladders_equal_multi_controlled_x() {
    for ladder in [LadderGate::Ccx, LadderGate::TAnd] {
        let mut b = CircuitBuilder::new("mcx", 4).unwrap();
        let x = b.input().to_vec();
        let t = b.output()[0];
        b.append(Gate::mcx(x.clone(), t)).unwrap();
        let policy = DecompositionPolicy { ladder_gate: ladder, ..Default::default() };
        let lowered = lower_mcx(&b.finish(), &policy).unwrap();
        assert_eq!(lowered.num_qubits(), 4 + 3 + 2);
        let expanded = expand(&lowered, &policy).unwrap();
        let n = expanded.num_qubits();
        for j in 0..16usize {
            let branches =
                run_statevector(expanded.gates(), n, expanded.num_bits(), basis_state(n, j).unwrap()).unwrap();
            let want = basis_state(n, if j == 15 { j | (1 << t.index()) } else { j }).unwrap();
            for br in &branches {
                assert!(max_distance(&br.state, &want) < TOL, "{ladder:?} input {j:04b}");
            }
        }
    }
}
