//! Exact small-width statevector simulation of expanded circuits.
//!
//! Measurements fork the run: both outcomes are followed with their
//! probabilities, so results are deterministic.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ir::{Gate, GateKind};

pub const MAX_QUBITS: usize = 12;

pub type Amplitudes = Vec<Complex64>;

/// One measurement history and the (normalized) state it leaves.
#[derive(Clone, Debug)]
pub struct Branch {
    pub probability: f64,
    pub bits: Vec<bool>,
    pub state: Amplitudes,
}

fn check_width(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(Error::Capacity(n))
    } else {
        Ok(())
    }
}

pub fn basis_state(n: usize, index: usize) -> Result<Amplitudes> {
    check_width(n)?;
    let mut s = vec![Complex64::new(0.0, 0.0); 1 << n];
    s[index] = Complex64::new(1.0, 0.0);
    Ok(s)
}

fn bit(index: usize, q: usize) -> bool {
    (index >> q) & 1 == 1
}

fn phase_where(state: &mut [Complex64], phase: Complex64, pred: impl Fn(usize) -> bool) {
    for (i, a) in state.iter_mut().enumerate() {
        if pred(i) {
            *a *= phase;
        }
    }
}

fn flip_where(state: &mut [Complex64], t: usize, pred: impl Fn(usize) -> bool) {
    for i in 0..state.len() {
        if !bit(i, t) && pred(i) {
            state.swap(i, i | (1 << t));
        }
    }
}

fn apply_unitary(state: &mut [Complex64], g: &Gate) -> Result<()> {
    let t = g.targets[0].index();
    let controls: Vec<usize> = g.controls.iter().map(|q| q.index()).collect();
    let w = std::f64::consts::FRAC_1_SQRT_2;
    match g.kind {
        GateKind::X => flip_where(state, t, |_| true),
        GateKind::CX | GateKind::CCX | GateKind::MCX => flip_where(state, t, |i| controls.iter().all(|&c| bit(i, c))),
        GateKind::H => {
            for i in 0..state.len() {
                if !bit(i, t) {
                    let j = i | (1 << t);
                    let (a, b) = (state[i], state[j]);
                    state[i] = (a + b) * w;
                    state[j] = (a - b) * w;
                }
            }
        }
        GateKind::S => phase_where(state, Complex64::i(), |i| bit(i, t)),
        GateKind::Sdg => phase_where(state, -Complex64::i(), |i| bit(i, t)),
        GateKind::T => phase_where(state, Complex64::new(w, w), |i| bit(i, t)),
        GateKind::Tdg => phase_where(state, Complex64::new(w, -w), |i| bit(i, t)),
        GateKind::CZ => phase_where(state, Complex64::new(-1.0, 0.0), |i| bit(i, t) && bit(i, controls[0])),
        kind => return Err(Error::WrongLevel { kind, level: "statevector" }),
    }
    Ok(())
}

/// Runs `gates` on `initial`, forking at every measurement. Branches with zero
/// probability are dropped.
pub fn run_statevector(gates: &[Gate], num_qubits: usize, num_bits: usize, initial: Amplitudes) -> Result<Vec<Branch>> {
    check_width(num_qubits)?;
    if initial.len() != 1 << num_qubits {
        return Err(Error::Shape(format!("state has {} amplitudes, expected {}", initial.len(), 1usize << num_qubits)));
    }
    let mut branches = vec![Branch { probability: 1.0, bits: vec![false; num_bits], state: initial }];
    for g in gates {
        if let Some(q) = g.qubits().find(|q| q.index() >= num_qubits) {
            return Err(Error::UnregisteredQubit(q));
        }
        if let Some(k) = g.bit.filter(|k| k.index() >= num_bits) {
            return Err(Error::UnregisteredBit(k.0));
        }
        match g.kind {
            GateKind::Measure => {
                let t = g.targets[0].index();
                let k = g.bit.expect("validated gate").index();
                let mut next = Vec::with_capacity(branches.len() * 2);
                for br in branches {
                    for outcome in [false, true] {
                        let mut state = br.state.clone();
                        let mut p = 0.0;
                        for (i, a) in state.iter_mut().enumerate() {
                            if bit(i, t) == outcome {
                                p += a.norm_sqr();
                            } else {
                                *a = Complex64::new(0.0, 0.0);
                            }
                        }
                        if p < 1e-15 {
                            continue;
                        }
                        let scale = 1.0 / p.sqrt();
                        state.iter_mut().for_each(|a| *a *= scale);
                        let mut bits = br.bits.clone();
                        bits[k] = outcome;
                        next.push(Branch { probability: br.probability * p, bits, state });
                    }
                }
                branches = next;
            }
            GateKind::ClassicalCz | GateKind::ClassicalX => {
                let k = g.bit.expect("validated gate").index();
                let plain = Gate::new(
                    if g.kind == GateKind::ClassicalCz { GateKind::CZ } else { GateKind::X },
                    g.controls.clone(),
                    g.targets.clone(),
                    None,
                );
                for br in branches.iter_mut().filter(|br| br.bits[k]) {
                    apply_unitary(&mut br.state, &plain)?;
                }
            }
            _ => {
                for br in &mut branches {
                    apply_unitary(&mut br.state, g)?;
                }
            }
        }
    }
    Ok(branches)
}

/// Column `j` is the image of basis state `j`. Fails on measurements.
pub fn unitary(gates: &[Gate], num_qubits: usize) -> Result<Vec<Amplitudes>> {
    check_width(num_qubits)?;
    if let Some(g) = gates.iter().find(|g| g.bit.is_some()) {
        return Err(Error::WrongLevel { kind: g.kind, level: "unitary" });
    }
    (0..1usize << num_qubits)
        .map(|j| {
            let mut s = basis_state(num_qubits, j)?;
            for g in gates {
                apply_unitary(&mut s, g)?;
            }
            Ok(s)
        })
        .collect()
}

/// Largest absolute amplitude difference.
pub fn max_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// The basis index carrying all the probability, if the state is a basis
/// state up to phase.
pub fn point_mass(state: &[Complex64], tol: f64) -> Option<usize> {
    let idx = state.iter().position(|a| (a.norm_sqr() - 1.0).abs() < tol)?;
    state.iter().enumerate().all(|(i, a)| i == idx || a.norm_sqr() < tol).then_some(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{ClassicalBit, QubitId};

    #[test]
    fn hadamard_pair_is_identity() {
        let g = [Gate::h(QubitId(0)), Gate::h(QubitId(0))];
        let u = unitary(&g, 1).unwrap();
        assert!(max_distance(&u[0], &basis_state(1, 0).unwrap()) < 1e-12);
        assert!(max_distance(&u[1], &basis_state(1, 1).unwrap()) < 1e-12);
    }

    #[test]
    fn t_squared_is_s() {
        let a = unitary(&[Gate::h(QubitId(0)), Gate::t(QubitId(0)), Gate::t(QubitId(0))], 1).unwrap();
        let b = unitary(&[Gate::h(QubitId(0)), Gate::s(QubitId(0))], 1).unwrap();
        for j in 0..2 {
            assert!(max_distance(&a[j], &b[j]) < 1e-12);
        }
    }

    #[test]
    fn measurement_forks_with_probabilities() {
        let gates = [
            Gate::h(QubitId(0)),
            Gate::measure(QubitId(0), ClassicalBit(0)),
            Gate::classical_x(QubitId(0), ClassicalBit(0)),
        ];
        let branches = run_statevector(&gates, 1, 1, basis_state(1, 0).unwrap()).unwrap();
        assert_eq!(branches.len(), 2);
        for br in &branches {
            assert!((br.probability - 0.5).abs() < 1e-12);
            assert_eq!(point_mass(&br.state, 1e-12), Some(0));
        }
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(basis_state(13, 0), Err(Error::Capacity(13))));
        assert!(matches!(unitary(&[], 13), Err(Error::Capacity(13))));
    }

    #[test]
    fn macro_tand_is_rejected() {
        let g = [Gate::tand(QubitId(0), QubitId(1), QubitId(2))];
        assert!(matches!(run_statevector(&g, 3, 0, basis_state(3, 0).unwrap()), Err(Error::WrongLevel { .. })));
    }
}
