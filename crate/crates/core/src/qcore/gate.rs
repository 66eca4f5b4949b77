//! Local gates, gate sequences, and tensor embedding into n qubits.

use super::operator::DenseOperator;
use super::pauli::PauliWord;
use super::state::StateVector;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Optional pulse-time annotation: the gate equals `exp(i t P)` for the
/// stored (restricted) Pauli word `P`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseAnnotation {
    pub t: f64,
    pub word: PauliWord,
}

/// A unitary acting on 1 or 2 (not necessarily adjacent) qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGate {
    qubits: Vec<usize>,
    matrix: DMatrix<Complex64>,
    pulse: Option<PulseAnnotation>,
}

impl LocalGate {
    pub fn new(qubits: Vec<usize>, matrix: DMatrix<Complex64>) -> Result<LocalGate> {
        LocalGate::with_pulse(qubits, matrix, None)
    }

    pub fn with_pulse(
        qubits: Vec<usize>,
        matrix: DMatrix<Complex64>,
        pulse: Option<PulseAnnotation>,
    ) -> Result<LocalGate> {
        if qubits.is_empty() || qubits.len() > 2 {
            return Err(Error::LocalityViolation(format!(
                "gate must act on 1 or 2 qubits, got {}",
                qubits.len()
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::IndexOutOfRange(format!("repeated qubit index {}", qubits[0])));
        }
        let dim = 1usize << qubits.len();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "gate on {} qubit(s) needs a {dim}x{dim} matrix, got {}x{}",
                qubits.len(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let gate = DenseOperator::from_matrix(matrix.clone());
        let dev = gate.unitarity_deviation();
        if dev > 1e-12 {
            return Err(Error::MalformedInput(format!(
                "gate is not unitary: max |U^dag U - I| entry = {dev:.3e}"
            )));
        }
        if let Some(p) = &pulse {
            if p.word.len() != qubits.len() {
                return Err(Error::DimensionMismatch(format!(
                    "pulse word length {} != qubit count {}",
                    p.word.len(),
                    qubits.len()
                )));
            }
            let expect = p.word.matrix().expm_i(p.t)?;
            let d = expect.entrywise_distance(&gate);
            if d > 1e-10 {
                return Err(Error::MalformedInput(format!(
                    "pulse annotation inconsistent with gate matrix: deviation {d:.3e}"
                )));
            }
        }
        Ok(LocalGate { qubits, matrix, pulse })
    }

    /// `exp(i t P)` on the support of the word `P`, annotated.
    ///
    /// Pauli words are involutions, so the exponential is the closed form
    /// `cos(t) I + i sin(t) P`; construction is exact and skips the generic
    /// validation pass.
    pub fn pauli_rotation(qubits: Vec<usize>, word: PauliWord, t: f64) -> Result<LocalGate> {
        if word.len() != qubits.len() {
            return Err(Error::DimensionMismatch(format!(
                "pulse word length {} != qubit count {}",
                word.len(),
                qubits.len()
            )));
        }
        if qubits.is_empty() || qubits.len() > 2 || (qubits.len() == 2 && qubits[0] == qubits[1]) {
            return Err(Error::LocalityViolation(format!("gate qubits {qubits:?}")));
        }
        if !t.is_finite() {
            return Err(Error::NonFinite(format!("pulse time {t}")));
        }
        let dim = 1usize << qubits.len();
        let mut matrix = DMatrix::<Complex64>::identity(dim, dim) * Complex64::from(t.cos());
        let phase = Complex64::new(0.0, t.sin());
        for col in 0..dim {
            let (row, amp) = word.act_on_index(col);
            matrix[(row, col)] += phase * amp;
        }
        Ok(LocalGate { qubits, matrix, pulse: Some(PulseAnnotation { t, word }) })
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn pulse(&self) -> Option<&PulseAnnotation> {
        self.pulse.as_ref()
    }

    pub fn pulse_time(&self) -> f64 {
        self.pulse.as_ref().map(|p| p.t.abs()).unwrap_or(0.0)
    }

    /// Apply in place to a raw amplitude vector over n qubits.
    pub fn apply_to_amps(&self, n: usize, amps: &mut DVector<Complex64>) {
        debug_assert_eq!(amps.len(), 1 << n);
        let shifts: Vec<usize> = self.qubits.iter().map(|&q| n - 1 - q).collect();
        let k = self.qubits.len();
        let sub = 1usize << k;
        let mask: usize = shifts.iter().map(|&s| 1usize << s).sum();
        let dim = amps.len();
        let mut scratch = vec![Complex64::default(); sub];
        // Iterate over base indices with zeros at all gate-qubit positions.
        for base in 0..dim {
            if base & mask != 0 {
                continue;
            }
            for (row, s) in scratch.iter_mut().enumerate() {
                *s = Complex64::default();
                for col in 0..sub {
                    let a = self.matrix[(row, col)];
                    if a.norm_sqr() == 0.0 {
                        continue;
                    }
                    let mut idx = base;
                    for (b, &shift) in shifts.iter().enumerate() {
                        if (col >> (k - 1 - b)) & 1 == 1 {
                            idx |= 1 << shift;
                        }
                    }
                    *s += a * amps[idx];
                }
            }
            for (row, s) in scratch.iter().enumerate() {
                let mut idx = base;
                for (b, &shift) in shifts.iter().enumerate() {
                    if (row >> (k - 1 - b)) & 1 == 1 {
                        idx |= 1 << shift;
                    }
                }
                amps[idx] = *s;
            }
        }
    }
}

/// Tensor embedding of a local gate into n qubits: acts as the gate on its
/// listed qubits (first listed qubit = more significant matrix factor) and
/// as identity elsewhere.
pub fn embed_local(gate: &LocalGate, n: usize) -> Result<DenseOperator> {
    if n > crate::config::RunConfig::default().dense_limit {
        return Err(Error::DenseLimitExceeded {
            n,
            cap: crate::config::RunConfig::default().dense_limit,
        });
    }
    for &q in gate.qubits() {
        if q >= n {
            return Err(Error::IndexOutOfRange(format!("qubit {q} on {n}-qubit register")));
        }
    }
    let dim = 1usize << n;
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    // Column j of the embedding is the gate applied to |j>.
    let mut col = DVector::<Complex64>::zeros(dim);
    for j in 0..dim {
        col.fill(Complex64::default());
        col[j] = Complex64::from(1.0);
        gate.apply_to_amps(n, &mut col);
        for r in 0..dim {
            if col[r].norm_sqr() != 0.0 {
                out[(r, j)] = col[r];
            }
        }
    }
    Ok(DenseOperator::from_matrix(out))
}

/// An ordered list of local gates in application order.
///
/// The sequence `[U1, ..., UM]` implements `UM * ... * U1`; `total_pulse`
/// accumulates |t| over all annotated gates.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSequence {
    n: usize,
    gates: Vec<LocalGate>,
    total_pulse: f64,
}

impl GateSequence {
    pub fn new(n: usize, gates: Vec<LocalGate>) -> Result<GateSequence> {
        for g in &gates {
            for &q in g.qubits() {
                if q >= n {
                    return Err(Error::IndexOutOfRange(format!(
                        "gate qubit {q} on {n}-qubit register"
                    )));
                }
            }
        }
        let total_pulse = gates.iter().map(|g| g.pulse_time()).sum();
        Ok(GateSequence { n, gates, total_pulse })
    }

    pub fn empty(n: usize) -> GateSequence {
        GateSequence { n, gates: Vec::new(), total_pulse: 0.0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[LocalGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn total_pulse(&self) -> f64 {
        self.total_pulse
    }

    /// Append another sequence (same register).
    pub fn extend(&mut self, other: GateSequence) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot concatenate sequences on {} and {} qubits",
                self.n, other.n
            )));
        }
        self.total_pulse += other.total_pulse;
        self.gates.extend(other.gates);
        Ok(())
    }

    pub fn push(&mut self, gate: LocalGate) {
        self.total_pulse += gate.pulse_time();
        self.gates.push(gate);
    }

    /// The inverse sequence (reversed order, adjoint gates, negated pulses).
    pub fn inverse(&self) -> GateSequence {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| {
                let pulse = g
                    .pulse()
                    .map(|p| PulseAnnotation { t: -p.t, word: p.word.clone() });
                LocalGate::with_pulse(g.qubits().to_vec(), g.matrix().adjoint(), pulse)
                    .expect("adjoint of a valid gate is valid")
            })
            .collect();
        GateSequence { n: self.n, gates, total_pulse: self.total_pulse }
    }

    /// Dense product of the whole sequence (application order).
    pub fn unitary(&self) -> Result<DenseOperator> {
        let dim = 1usize << self.n;
        let mut out = DMatrix::<Complex64>::identity(dim, dim);
        // Build by applying the sequence to each basis column.
        let mut col = DVector::<Complex64>::zeros(dim);
        for j in 0..dim {
            col.fill(Complex64::default());
            col[j] = Complex64::from(1.0);
            for g in &self.gates {
                g.apply_to_amps(self.n, &mut col);
            }
            out.set_column(j, &col);
        }
        Ok(DenseOperator::from_matrix(out))
    }

    /// Apply the sequence to a state.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "state on {} qubits, sequence on {}",
                state.n(),
                self.n
            )));
        }
        let mut amps = state.amps().clone();
        for g in &self.gates {
            g.apply_to_amps(self.n, &mut amps);
        }
        StateVector::normalized(self.n, amps)
    }

    /// States after each prefix, starting with the input state (m+1 entries).
    pub fn trajectory(&self, state: &StateVector) -> Result<Vec<StateVector>> {
        let mut out = Vec::with_capacity(self.gates.len() + 1);
        let mut amps = state.amps().clone();
        out.push(state.clone());
        for g in &self.gates {
            g.apply_to_amps(self.n, &mut amps);
            out.push(StateVector::normalized(self.n, amps.clone())?);
        }
        Ok(out)
    }

    /// Recomputed sum of |t| over annotations; must match `total_pulse`.
    pub fn recompute_total_pulse(&self) -> f64 {
        self.gates.iter().map(|g| g.pulse_time()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::pauli::{Pauli, PauliWord};

    pub fn cnot() -> DMatrix<Complex64> {
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

    #[test]
    fn x_on_qubit0_flips_msb() {
        let g = LocalGate::new(vec![0], Pauli::X.matrix().matrix().clone()).unwrap();
        let s = StateVector::basis(2, 0b00);
        let mut amps = s.amps().clone();
        g.apply_to_amps(2, &mut amps);
        assert_eq!(amps[0b10], Complex64::from(1.0));
    }

    #[test]
    fn identity_gate_embeds_to_identity() {
        let g = LocalGate::new(vec![1], DMatrix::identity(2, 2)).unwrap();
        let op = embed_local(&g, 3).unwrap();
        assert!(op.entrywise_distance(&DenseOperator::identity(8)) < 1e-15);
    }

    #[test]
    fn cnot_embedding_enumerates_basis() {
        // CNOT on (0,1) in a 3-qubit register, checked against the direct
        // tensor product on all 8 basis states.
        let g = LocalGate::new(vec![0, 1], cnot()).unwrap();
        let op = embed_local(&g, 3).unwrap();
        let expect = DenseOperator::from_matrix(cnot())
            .kron(&DenseOperator::identity(2));
        assert!(op.entrywise_distance(&expect) < 1e-15);
        // |110> -> |100>: control qubit 0 stays, target qubit 1 flips.
        let s = StateVector::from_bits(&[1, 1, 0]);
        let out = GateSequence::new(3, vec![g]).unwrap().apply(&s).unwrap();
        assert_eq!(out, StateVector::from_bits(&[1, 0, 0]));
    }

    #[test]
    fn disjoint_embeddings_commute() {
        let a = embed_local(
            &LocalGate::new(vec![0], Pauli::X.matrix().matrix().clone()).unwrap(),
            3,
        )
        .unwrap();
        let b = embed_local(
            &LocalGate::new(vec![1, 2], cnot()).unwrap(),
            3,
        )
        .unwrap();
        assert!(a.mul(&b).entrywise_distance(&b.mul(&a)) < 1e-12);
    }

    #[test]
    fn pulse_annotation_validated() {
        let w = PauliWord::parse("ZZ").unwrap();
        let good = LocalGate::pauli_rotation(vec![0, 2], w.clone(), 0.1).unwrap();
        assert!((good.pulse_time() - 0.1).abs() < 1e-15);
        // Mismatched annotation is rejected.
        let bad = LocalGate::with_pulse(
            vec![0, 1],
            DMatrix::identity(4, 4),
            Some(PulseAnnotation { t: 0.5, word: w }),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn sequence_total_pulse_consistent() {
        let mut seq = GateSequence::empty(3);
        seq.push(LocalGate::pauli_rotation(vec![0], PauliWord::parse("X").unwrap(), 0.2).unwrap());
        seq.push(LocalGate::pauli_rotation(vec![1, 2], PauliWord::parse("YZ").unwrap(), -0.3).unwrap());
        assert!((seq.total_pulse() - 0.5).abs() < 1e-12);
        assert!((seq.total_pulse() - seq.recompute_total_pulse()).abs() < 1e-12);
    }

    #[test]
    fn inverse_sequence_is_inverse() {
        let mut seq = GateSequence::empty(2);
        seq.push(LocalGate::pauli_rotation(vec![0], PauliWord::parse("X").unwrap(), 0.4).unwrap());
        seq.push(LocalGate::pauli_rotation(vec![0, 1], PauliWord::parse("ZY").unwrap(), 0.7).unwrap());
        let u = seq.unitary().unwrap();
        let v = seq.inverse().unitary().unwrap();
        assert!(u.mul(&v).entrywise_distance(&DenseOperator::identity(4)) < 1e-12);
    }
}
