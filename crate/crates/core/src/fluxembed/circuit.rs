//! Streaming-proof verifier circuits.
//!
//! A circuit acts on `q` ancilla qubits (the work register, qubit 0 carrying
//! the output wire) plus one proof qubit at index `q`. Proof bits arrive one
//! at a time through compute/copy/uncompute triples; the compute and
//! uncompute steps are the a-priori-unknown proof gates.

use crate::qcore::{DenseOperator, LocalGate, Pauli, StateVector};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// One time step of a streaming circuit.
#[derive(Debug, Clone)]
pub enum StreamGate {
    /// Known 1- or 2-qubit unitary on the ancilla register.
    Compute { qubits: Vec<usize>, matrix: DMatrix<Complex64> },
    /// Proof gate W_i in {I, X} on the proof qubit (value supplied by the
    /// streamed bit).
    ProofCompute,
    /// CNOT from the proof qubit onto the fixed ancilla target.
    ProofCopy { target: usize },
    /// The matching W_i undoing the proof qubit.
    ProofUncompute,
}

/// A streaming verifier: ancilla count plus the time-ordered gate list.
#[derive(Debug, Clone)]
pub struct StreamingCircuit {
    pub q: usize,
    pub gates: Vec<StreamGate>,
}

impl StreamingCircuit {
    pub fn new(q: usize, gates: Vec<StreamGate>) -> Result<StreamingCircuit> {
        if q == 0 {
            return Err(Error::InvalidCircuit("need at least one ancilla qubit".into()));
        }
        let circ = StreamingCircuit { q, gates };
        circ.validate()?;
        Ok(circ)
    }

    fn validate(&self) -> Result<()> {
        let mut i = 0usize;
        while i < self.gates.len() {
            match &self.gates[i] {
                StreamGate::Compute { qubits, matrix } => {
                    if qubits.is_empty() || qubits.len() > 2 {
                        return Err(Error::InvalidCircuit(format!(
                            "compute gate at step {} on {} qubits",
                            i + 1,
                            qubits.len()
                        )));
                    }
                    for &b in qubits {
                        if b >= self.q {
                            return Err(Error::InvalidCircuit(format!(
                                "compute gate at step {} touches qubit {b} outside the ancillas",
                                i + 1
                            )));
                        }
                    }
                    let dim = 1usize << qubits.len();
                    if matrix.nrows() != dim || matrix.ncols() != dim {
                        return Err(Error::InvalidCircuit(format!(
                            "compute gate at step {} has wrong dimension",
                            i + 1
                        )));
                    }
                    i += 1;
                }
                StreamGate::ProofCompute => {
                    // Must be followed by copy then uncompute.
                    let copy_ok = matches!(self.gates.get(i + 1), Some(StreamGate::ProofCopy { .. }));
                    let unc_ok = matches!(self.gates.get(i + 2), Some(StreamGate::ProofUncompute));
                    if !copy_ok || !unc_ok {
                        return Err(Error::InvalidCircuit(format!(
                            "proof phase at step {} is not a compute/copy/uncompute triple",
                            i + 1
                        )));
                    }
                    if let Some(StreamGate::ProofCopy { target }) = self.gates.get(i + 1) {
                        if *target >= self.q {
                            return Err(Error::InvalidCircuit(format!(
                                "copy target {target} outside the ancillas"
                            )));
                        }
                    }
                    i += 3;
                }
                StreamGate::ProofCopy { .. } | StreamGate::ProofUncompute => {
                    return Err(Error::InvalidCircuit(format!(
                        "stray proof copy/uncompute at step {}",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Total gate count m.
    pub fn m(&self) -> usize {
        self.gates.len()
    }

    /// Work-register width: ancillas plus the proof qubit.
    pub fn work_qubits(&self) -> usize {
        self.q + 1
    }

    /// Proof-qubit index inside the work register.
    pub fn proof_qubit(&self) -> usize {
        self.q
    }

    /// 1-based time steps carrying proof gates (compute and uncompute).
    pub fn proof_steps(&self) -> Vec<usize> {
        self.gates
            .iter()
            .enumerate()
            .filter_map(|(i, g)| {
                matches!(g, StreamGate::ProofCompute | StreamGate::ProofUncompute)
                    .then_some(i + 1)
            })
            .collect()
    }

    /// Number of streamed bits |y|.
    pub fn proof_len(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, StreamGate::ProofCompute))
            .count()
    }

    /// The known unitary at 1-based step `t` given the streamed bits, using
    /// the phase convention that bit 1 applies `iX` (the convention under
    /// which honest history states annihilate the flux terms).
    pub fn step_unitary(&self, t: usize, y: &[u8]) -> Result<LocalGate> {
        let gate = self
            .gates
            .get(t - 1)
            .ok_or_else(|| Error::IndexOutOfRange(format!("step {t} of {}", self.m())))?;
        // Which streamed bit governs step t.
        let bit_index = self.gates[..t - 1]
            .iter()
            .filter(|g| matches!(g, StreamGate::ProofCompute))
            .count();
        match gate {
            StreamGate::Compute { qubits, matrix } => {
                LocalGate::new(qubits.clone(), matrix.clone())
            }
            StreamGate::ProofCopy { target } => LocalGate::new(
                vec![self.proof_qubit(), *target],
                cnot(),
            ),
            StreamGate::ProofCompute | StreamGate::ProofUncompute => {
                let idx = if matches!(gate, StreamGate::ProofCompute) {
                    bit_index
                } else {
                    bit_index - 1
                };
                let bit = *y.get(idx).ok_or_else(|| {
                    Error::ProofLengthMismatch(format!(
                        "step {t} needs bit {idx}, proof has {} bits",
                        y.len()
                    ))
                })?;
                if bit == 0 {
                    LocalGate::new(vec![self.proof_qubit()], DMatrix::identity(2, 2))
                } else {
                    LocalGate::new(
                        vec![self.proof_qubit()],
                        Pauli::X.matrix().into_matrix() * Complex64::new(0.0, 1.0),
                    )
                }
            }
        }
    }

    /// Final state of the work register on streamed proof `y`.
    pub fn run(&self, y: &[u8]) -> Result<StateVector> {
        if y.len() != self.proof_len() {
            return Err(Error::ProofLengthMismatch(format!(
                "proof of {} bits, circuit streams {}",
                y.len(),
                self.proof_len()
            )));
        }
        let n = self.work_qubits();
        let mut amps = DVector::<Complex64>::zeros(1 << n);
        amps[0] = Complex64::from(1.0);
        for t in 1..=self.m() {
            self.step_unitary(t, y)?.apply_to_amps(n, &mut amps);
        }
        StateVector::normalized(n, amps)
    }

    /// Acceptance probability: the output wire (ancilla qubit 0) measures 1.
    pub fn acceptance(&self, y: &[u8]) -> Result<f64> {
        let state = self.run(y)?;
        let n = self.work_qubits();
        let mut p = 0.0;
        for (i, amp) in state.amps().iter().enumerate() {
            if (i >> (n - 1)) & 1 == 1 {
                p += amp.norm_sqr();
            }
        }
        Ok(p)
    }

    /// Exhaustive maximum acceptance over all streamed proofs, with the
    /// maximizing proof.
    pub fn max_acceptance(&self) -> Result<(f64, Vec<u8>)> {
        let bits = self.proof_len();
        if bits > 20 {
            return Err(Error::DenseLimitExceeded { n: bits, cap: 20 });
        }
        let mut best = (f64::NEG_INFINITY, Vec::new());
        for mask in 0..(1usize << bits) {
            let y: Vec<u8> = (0..bits).map(|i| ((mask >> (bits - 1 - i)) & 1) as u8).collect();
            let p = self.acceptance(&y)?;
            if p > best.0 + 1e-15 {
                best = (p, y);
            }
        }
        Ok(best)
    }
}

pub(crate) fn cnot() -> DMatrix<Complex64> {
    let z = Complex64::default();
    let one = Complex64::from(1.0);
    DMatrix::from_row_slice(
        4,
        4,
        &[
            one, z, z, z, //
            z, one, z, z, //
            z, z, z, one, //
            z, z, one, z,
        ],
    )
}

fn controlled_ry(theta: f64) -> DMatrix<Complex64> {
    let z = Complex64::default();
    let one = Complex64::from(1.0);
    let c = Complex64::from((theta / 2.0).cos());
    let s = Complex64::from((theta / 2.0).sin());
    DMatrix::from_row_slice(
        4,
        4,
        &[
            one, z, z, z, //
            z, one, z, z, //
            z, z, c, -s, //
            z, z, s, c,
        ],
    )
}

/// Toy verifier (q = 2, m = 7): streams two bits, copies the first into
/// ancilla 1, flips the output conditioned on it, then streams a dummy
/// trailing bit so the final step is a proof gate. Accepts iff the first
/// bit is 1.
pub fn toy_accept() -> StreamingCircuit {
    StreamingCircuit::new(
        2,
        vec![
            StreamGate::ProofCompute,
            StreamGate::ProofCopy { target: 1 },
            StreamGate::ProofUncompute,
            StreamGate::Compute { qubits: vec![1, 0], matrix: cnot() },
            StreamGate::ProofCompute,
            StreamGate::ProofCopy { target: 1 },
            StreamGate::ProofUncompute,
        ],
    )
    .expect("toy circuit is well formed")
}

/// Variant whose best acceptance is sin^2(theta/2): the conditional flip is
/// replaced by a conditional rotation.
pub fn toy_partial(theta: f64) -> StreamingCircuit {
    StreamingCircuit::new(
        2,
        vec![
            StreamGate::ProofCompute,
            StreamGate::ProofCopy { target: 1 },
            StreamGate::ProofUncompute,
            StreamGate::Compute { qubits: vec![1, 0], matrix: controlled_ry(theta) },
            StreamGate::ProofCompute,
            StreamGate::ProofCopy { target: 1 },
            StreamGate::ProofUncompute,
        ],
    )
    .expect("toy circuit is well formed")
}

/// Variant that never accepts (the output wire is left untouched).
pub fn toy_reject() -> StreamingCircuit {
    StreamingCircuit::new(
        2,
        vec![
            StreamGate::ProofCompute,
            StreamGate::ProofCopy { target: 1 },
            StreamGate::ProofUncompute,
            StreamGate::Compute { qubits: vec![1], matrix: DMatrix::identity(2, 2) },
            StreamGate::ProofCompute,
            StreamGate::ProofCopy { target: 1 },
            StreamGate::ProofUncompute,
        ],
    )
    .expect("toy circuit is well formed")
}

/// A chain of `s` identity compute steps (no proof phases); its propagation
/// spectrum is the classic hopping chain.
pub fn identity_chain(q: usize, s: usize) -> StreamingCircuit {
    StreamingCircuit::new(
        q,
        (0..s)
            .map(|_| StreamGate::Compute { qubits: vec![0], matrix: DMatrix::identity(2, 2) })
            .collect(),
    )
    .expect("identity chain is well formed")
}

/// Dense work-space matrix of the step unitary (for small tests).
pub fn step_unitary_dense(circ: &StreamingCircuit, t: usize, y: &[u8]) -> Result<DenseOperator> {
    let gate = circ.step_unitary(t, y)?;
    crate::qcore::embed_local(&gate, circ.work_qubits())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_accept_accepts_only_first_bit() {
        let c = toy_accept();
        assert_eq!(c.m(), 7);
        assert_eq!(c.proof_len(), 2);
        assert_eq!(c.proof_steps(), vec![1, 3, 5, 7]);
        assert_eq!(c.acceptance(&[1, 0]).unwrap(), 1.0);
        assert_eq!(c.acceptance(&[1, 1]).unwrap(), 1.0);
        assert_eq!(c.acceptance(&[0, 0]).unwrap(), 0.0);
        let (alpha, best) = c.max_acceptance().unwrap();
        assert_eq!(alpha, 1.0);
        assert_eq!(best[0], 1);
    }

    #[test]
    fn toy_partial_acceptance_matches_rotation() {
        let theta = 1.1;
        let c = toy_partial(theta);
        let (alpha, _) = c.max_acceptance().unwrap();
        assert!((alpha - (theta / 2.0).sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn toy_reject_never_accepts() {
        let (alpha, _) = toy_reject().max_acceptance().unwrap();
        assert_eq!(alpha, 0.0);
    }

    #[test]
    fn streamed_ones_leave_registers_clean() {
        // After the full run the proof qubit is back to |0> (up to phase).
        let c = toy_accept();
        let state = c.run(&[1, 1]).unwrap();
        for (i, amp) in state.amps().iter().enumerate() {
            if amp.norm_sqr() > 1e-20 {
                // proof qubit (index 2 of 3) must be 0
                assert_eq!(i & 1, 0, "proof qubit set in basis state {i}");
            }
        }
    }

    #[test]
    fn malformed_patterns_rejected() {
        assert!(StreamingCircuit::new(1, vec![StreamGate::ProofCompute]).is_err());
        assert!(StreamingCircuit::new(
            1,
            vec![StreamGate::ProofCopy { target: 0 }]
        )
        .is_err());
        assert!(StreamingCircuit::new(
            1,
            vec![StreamGate::Compute { qubits: vec![1], matrix: DMatrix::identity(2, 2) }]
        )
        .is_err());
    }
}
