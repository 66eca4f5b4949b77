//! JSON interchange for states, operators, and gate sequences.
//!
//! Complex data is encoded as `[re, im]` pairs, matrices row-major. Every
//! top-level document carries the bit-ordering convention.

use super::gate::{GateSequence, LocalGate, PulseAnnotation};
use super::operator::DenseOperator;
use super::state::StateVector;
use crate::{Error, Result, CONVENTION};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

fn c_to_pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn pair_to_c(p: &[f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn check_convention(convention: &str) -> Result<()> {
    if convention != CONVENTION {
        return Err(Error::MalformedInput(format!(
            "unsupported bit-ordering convention `{convention}` (expected `{CONVENTION}`)"
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
pub struct StateVectorJson {
    pub convention: String,
    pub n: usize,
    pub amps: Vec<[f64; 2]>,
}

impl StateVectorJson {
    pub fn encode(state: &StateVector) -> StateVectorJson {
        StateVectorJson {
            convention: CONVENTION.to_string(),
            n: state.n(),
            amps: state.amps().iter().map(c_to_pair).collect(),
        }
    }

    pub fn decode(&self) -> Result<StateVector> {
        check_convention(&self.convention)?;
        let amps = DVector::from_iterator(self.amps.len(), self.amps.iter().map(pair_to_c));
        StateVector::new(self.n, amps)
    }
}

#[derive(Serialize, Deserialize)]
pub struct DenseOperatorJson {
    pub convention: String,
    pub dim: usize,
    pub hermitian: bool,
    /// Row-major entries.
    pub entries: Vec<[f64; 2]>,
}

impl DenseOperatorJson {
    pub fn encode(op: &DenseOperator) -> DenseOperatorJson {
        let m = op.matrix();
        let mut entries = Vec::with_capacity(op.dim() * op.dim());
        for r in 0..op.dim() {
            for c in 0..op.dim() {
                entries.push(c_to_pair(&m[(r, c)]));
            }
        }
        DenseOperatorJson {
            convention: CONVENTION.to_string(),
            dim: op.dim(),
            hermitian: op.is_hermitian(),
            entries,
        }
    }

    pub fn decode(&self) -> Result<DenseOperator> {
        check_convention(&self.convention)?;
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::DimensionMismatch(format!(
                "operator dim {} needs {} entries, got {}",
                self.dim,
                self.dim * self.dim,
                self.entries.len()
            )));
        }
        let m = DMatrix::from_row_iterator(self.dim, self.dim, self.entries.iter().map(pair_to_c));
        let op = DenseOperator::from_matrix(m);
        if self.hermitian {
            op.require_hermitian()?;
        }
        Ok(op)
    }
}

#[derive(Serialize, Deserialize)]
pub struct GateJson {
    pub qubits: Vec<usize>,
    /// Row-major entries of the 2x2 or 4x4 unitary.
    pub matrix: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pulse: Option<PulseAnnotation>,
}

#[derive(Serialize, Deserialize)]
pub struct GateSequenceJson {
    pub convention: String,
    pub n: usize,
    pub gates: Vec<GateJson>,
    pub total_pulse: f64,
}

impl GateSequenceJson {
    pub fn encode(seq: &GateSequence) -> GateSequenceJson {
        let gates = seq
            .gates()
            .iter()
            .map(|g| {
                let dim = g.matrix().nrows();
                let mut matrix = Vec::with_capacity(dim * dim);
                for r in 0..dim {
                    for c in 0..dim {
                        matrix.push(c_to_pair(&g.matrix()[(r, c)]));
                    }
                }
                GateJson { qubits: g.qubits().to_vec(), matrix, pulse: g.pulse().cloned() }
            })
            .collect();
        GateSequenceJson {
            convention: CONVENTION.to_string(),
            n: seq.n(),
            gates,
            total_pulse: seq.total_pulse(),
        }
    }

    pub fn decode(&self) -> Result<GateSequence> {
        check_convention(&self.convention)?;
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let dim = 1usize << g.qubits.len();
            if g.matrix.len() != dim * dim {
                return Err(Error::DimensionMismatch(format!(
                    "gate on {:?} needs {} entries, got {}",
                    g.qubits,
                    dim * dim,
                    g.matrix.len()
                )));
            }
            let m = DMatrix::from_row_iterator(dim, dim, g.matrix.iter().map(pair_to_c));
            gates.push(LocalGate::with_pulse(g.qubits.clone(), m, g.pulse.clone())?);
        }
        let seq = GateSequence::new(self.n, gates)?;
        if (seq.total_pulse() - self.total_pulse).abs() > 1e-12 {
            return Err(Error::MalformedInput(format!(
                "total_pulse {} does not match recomputed {}",
                self.total_pulse,
                seq.total_pulse()
            )));
        }
        Ok(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::pauli::PauliWord;

    #[test]
    fn state_roundtrip() {
        let s = StateVector::normalized(
            2,
            DVector::from_vec(vec![
                Complex64::new(0.5, 0.5),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, 0.5),
                Complex64::new(0.0, 0.0),
            ]),
        )
        .unwrap();
        let json = serde_json::to_string(&StateVectorJson::encode(&s)).unwrap();
        let back: StateVectorJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.decode().unwrap(), s);
        assert!(json.contains("qubit0-most-significant"));
    }

    #[test]
    fn sequence_roundtrip_preserves_pulses() {
        let mut seq = GateSequence::empty(3);
        seq.push(
            LocalGate::pauli_rotation(vec![0, 2], PauliWord::parse("XY").unwrap(), 0.05).unwrap(),
        );
        let json = serde_json::to_string(&GateSequenceJson::encode(&seq)).unwrap();
        let back: GateSequenceJson = serde_json::from_str(&json).unwrap();
        let decoded = back.decode().unwrap();
        assert_eq!(decoded, seq);
    }

    #[test]
    fn wrong_convention_rejected() {
        let s = StateVector::basis(1, 0);
        let mut j = StateVectorJson::encode(&s);
        j.convention = "qubit0-least-significant".into();
        assert!(j.decode().is_err());
    }
}
