//! Connectivity instances and candidate-sequence verification.

use crate::qcore::{DenseOperator, GateSequence, StateVector};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Verdict of checking a candidate unitary sequence against an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Certifies a YES instance: all energies at most eta1, final distance
    /// at most eta3.
    Witness,
    /// The sequence hits the NO thresholds (energy >= eta2 or distance
    /// >= eta4); it is no evidence either way.
    NoEvidence,
    /// The sequence lands between the promise thresholds.
    PromiseGap,
}

/// A connectivity instance: Hamiltonian, thresholds, gate locality, length
/// bound, endpoints, and optional bipartition restricting gate supports.
#[derive(Debug, Clone)]
pub struct GsconInstance {
    pub h: DenseOperator,
    /// Hamiltonian locality (recorded, not enforced on the dense form).
    pub k: usize,
    pub eta1: f64,
    pub eta2: f64,
    pub eta3: f64,
    pub eta4: f64,
    pub delta: f64,
    /// Gate locality bound l.
    pub l: usize,
    /// Sequence length bound; None encodes unbounded m.
    pub m: Option<usize>,
    pub psi: StateVector,
    pub phi: StateVector,
    /// Gates must act entirely inside one side when set.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
}

/// Verification report for a candidate sequence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_energy: f64,
    /// 1-based step index attaining `max_energy` (0 when the sequence is
    /// empty).
    pub argmax_step: usize,
    pub final_distance: f64,
    pub verdict: Verdict,
}

impl GsconInstance {
    pub fn new(
        h: DenseOperator,
        k: usize,
        thresholds: (f64, f64, f64, f64, f64),
        l: usize,
        m: Option<usize>,
        psi: StateVector,
        phi: StateVector,
        bipartition: Option<(Vec<usize>, Vec<usize>)>,
    ) -> Result<GsconInstance> {
        let (eta1, eta2, eta3, eta4, delta) = thresholds;
        h.require_hermitian()?;
        if eta2 - eta1 < delta - 1e-12 || eta4 - eta3 < delta - 1e-12 {
            return Err(Error::InvalidThresholds(format!(
                "need eta2-eta1 >= Delta and eta4-eta3 >= Delta, got \
                 ({eta1}, {eta2}, {eta3}, {eta4}, Delta={delta})"
            )));
        }
        let inst = GsconInstance { h, k, eta1, eta2, eta3, eta4, delta, l, m, psi, phi, bipartition };
        let e_psi = inst.energy(&inst.psi);
        let e_phi = inst.energy(&inst.phi);
        if e_psi > eta1 + 1e-9 || e_phi > eta1 + 1e-9 {
            return Err(Error::EnergyPreconditionViolated(format!(
                "endpoint energies {e_psi:.3e}, {e_phi:.3e} exceed eta1 = {eta1:.3e}"
            )));
        }
        Ok(inst)
    }

    pub fn energy(&self, state: &StateVector) -> f64 {
        self.h.expectation(state.amps()).re
    }

    fn gate_side_ok(&self, qubits: &[usize]) -> bool {
        match &self.bipartition {
            None => true,
            Some((left, right)) => {
                qubits.iter().all(|q| left.contains(q)) || qubits.iter().all(|q| right.contains(q))
            }
        }
    }
}

/// Check a candidate sequence: locality, length, bipartition confinement,
/// then the energy trace and final distance against the thresholds.
pub fn verify_gscon_sequence(inst: &GsconInstance, seq: &GateSequence) -> Result<VerifyReport> {
    if seq.n() != inst.psi.n() {
        return Err(Error::DimensionMismatch(format!(
            "sequence on {} qubits, instance on {}",
            seq.n(),
            inst.psi.n()
        )));
    }
    for (i, gate) in seq.gates().iter().enumerate() {
        if gate.qubits().len() > inst.l {
            return Err(Error::LocalityViolation(format!(
                "gate {} acts on {} qubits, l = {}",
                i + 1,
                gate.qubits().len(),
                inst.l
            )));
        }
        if !inst.gate_side_ok(gate.qubits()) {
            return Err(Error::BipartitionViolation(format!(
                "gate {} on qubits {:?} straddles the (L, R) cut",
                i + 1,
                gate.qubits()
            )));
        }
    }
    if let Some(bound) = inst.m {
        if seq.len() > bound {
            return Err(Error::LengthExceeded(format!("{} gates > m = {bound}", seq.len())));
        }
    }

    let mut max_energy = f64::NEG_INFINITY;
    let mut argmax_step = 0usize;
    let mut amps = inst.psi.amps().clone();
    for (i, gate) in seq.gates().iter().enumerate() {
        gate.apply_to_amps(seq.n(), &mut amps);
        let e = inst.h.matrix() * &amps;
        let energy = amps.dotc(&e).re;
        if energy > max_energy {
            max_energy = energy;
            argmax_step = i + 1;
        }
    }
    if seq.is_empty() {
        max_energy = inst.energy(&inst.psi);
    }
    let final_distance = (&amps - inst.phi.amps()).norm();

    let tol = 1e-12;
    let verdict = if max_energy <= inst.eta1 + tol && final_distance <= inst.eta3 + tol {
        Verdict::Witness
    } else if max_energy >= inst.eta2 - tol || final_distance >= inst.eta4 - tol {
        Verdict::NoEvidence
    } else {
        Verdict::PromiseGap
    };
    Ok(VerifyReport { max_energy, argmax_step, final_distance, verdict })
}
