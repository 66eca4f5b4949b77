//! Exact recursive decomposition of `exp(it P)` into 2-local Pauli
//! rotations.
//!
//! A word of support width at most 2^k + 1 is split k times; each split
//! turns one evolution into four via [`depth4_solve`], so the gate count is
//! at most 4^k and the per-gate pulse after r levels is at most
//! `T(r) = 2^{1 - 2^{-r}} |t|^{2^{-r}}`. Words acting on at most 2 qubits
//! terminate the recursion as single gates regardless of how far apart
//! their support sits.

use super::depth4::depth4_solve;
use super::split::split_pauli;
use crate::qcore::{GateSequence, LocalGate, PauliWord};
use crate::{Error, Result};

/// Recursion depth needed by the width bracket `w in (2^{k-1}+1, 2^k+1]`;
/// words on at most 2 qubits need none.
pub fn recursion_depth(word: &PauliWord) -> usize {
    if word.weight() <= 2 {
        return 0;
    }
    let w = word.support_width();
    let mut k = 0usize;
    while (1usize << k) + 1 < w {
        k += 1;
    }
    k
}

/// Per-gate pulse bound after `r` recursion levels.
pub fn pulse_bound(t: f64, r: usize) -> f64 {
    let e = 0.5f64.powi(r as i32);
    2.0f64.powf(1.0 - e) * t.abs().powf(e)
}

fn emit(word: &PauliWord, t: f64, seq: &mut GateSequence) -> Result<()> {
    if word.weight() > 2 {
        let split = split_pauli(word)?;
        let d4 = depth4_solve(&split.h1, &split.h2, t)?;
        for (half, tau) in d4.factors() {
            emit(&half, tau, seq)?;
        }
        return Ok(());
    }
    // Leaf: a single 1- or 2-local rotation. The identity word becomes a
    // global phase carried on qubit 0.
    let support = word.support();
    let qubits = if support.is_empty() { vec![0] } else { support };
    let restricted = word.restrict(&qubits);
    seq.push(LocalGate::pauli_rotation(qubits, restricted, t)?);
    Ok(())
}

/// Decompose `exp(it P)` into an exactly equal product of 2-local Pauli
/// rotations on the word's register.
///
/// Precondition: `8 |t|^{1/2^k} <= pi/2` for the word's recursion depth k,
/// which keeps every intermediate pulse inside the depth-4 range.
pub fn decompose_pauli_rotation(word: &PauliWord, t: f64) -> Result<GateSequence> {
    if !t.is_finite() {
        return Err(Error::NonFinite(format!("pulse time {t}")));
    }
    let k = recursion_depth(word);
    let gate_cap = 8.0 * t.abs().powf(0.5f64.powi(k as i32));
    if gate_cap > std::f64::consts::FRAC_PI_2 + 1e-15 {
        return Err(Error::PulseOutOfRange(format!(
            "8 |t|^(1/2^{k}) = {gate_cap:.6} > pi/2 for word {word}"
        )));
    }
    let mut seq = GateSequence::empty(word.len());
    emit(word, t, &mut seq)?;
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product_deviation(word: &str, t: f64) -> (GateSequence, f64) {
        let w = PauliWord::parse(word).unwrap();
        let seq = decompose_pauli_rotation(&w, t).unwrap();
        let target = w.matrix().expm_i(t).unwrap();
        let dev = seq.unitary().unwrap().entrywise_distance(&target);
        (seq, dev)
    }

    #[test]
    fn two_local_word_is_single_gate() {
        let (seq, dev) = product_deviation("XZ", 0.15);
        assert_eq!(seq.len(), 1);
        assert!(dev < 1e-12);
        assert!((seq.total_pulse() - 0.15).abs() < 1e-15);
    }

    #[test]
    fn identity_word_is_single_phase_gate() {
        let (seq, dev) = product_deviation("II", 0.1);
        assert_eq!(seq.len(), 1);
        assert!(dev < 1e-12);
    }

    #[test]
    fn zzz_width3() {
        let t = 1e-3;
        let (seq, dev) = product_deviation("ZZZ", t);
        assert!(seq.len() <= 4);
        assert!(dev < 1e-10, "deviation {dev}");
        assert!(seq.total_pulse() <= 4.0 * (2.0 * t).sqrt() + 1e-12);
        for g in seq.gates() {
            assert!(g.qubits().len() <= 2);
            assert!(g.pulse_time() <= pulse_bound(t, 1) + 1e-12);
        }
    }

    #[test]
    fn width5_needs_two_levels() {
        let t = 1e-6;
        let (seq, dev) = product_deviation("XYZXY", t);
        assert!(seq.len() <= 16);
        assert!(dev < 1e-10, "deviation {dev}");
        assert!(seq.total_pulse() <= 16.0 * pulse_bound(t, 2) + 1e-12);
        for g in seq.gates() {
            assert!(g.qubits().len() <= 2);
            assert!(g.pulse_time() <= pulse_bound(t, 2) + 1e-12);
        }
    }

    #[test]
    fn negative_pulse_width4() {
        let (_, dev) = product_deviation("ZZZZ", -1e-4);
        assert!(dev < 1e-10, "deviation {dev}");
    }

    #[test]
    fn precondition_enforced() {
        let w = PauliWord::parse("ZZZ").unwrap();
        // k = 1: need 8 sqrt(t) <= pi/2, i.e. t <= (pi/16)^2 ~ 0.0385.
        assert!(decompose_pauli_rotation(&w, 0.05).is_err());
        assert!(decompose_pauli_rotation(&w, 0.03).is_ok());
        // Weight-2 wide word terminates immediately: only 8|t| <= pi/2.
        let wide = PauliWord::parse("XIIIZ").unwrap();
        let seq = decompose_pauli_rotation(&wide, 0.19).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.gates()[0].qubits(), &[0, 4]);
    }

    #[test]
    fn pulse_recurrence_monotone() {
        // T(r) as given: T(0) = |t|, T(r) = sqrt(2 T(r-1)).
        let t = 1e-4;
        let mut prev = t;
        for r in 1..6 {
            let direct = pulse_bound(t, r);
            let recur = (2.0 * prev).sqrt();
            assert!((direct - recur).abs() < 1e-12);
            prev = direct;
        }
    }
}
