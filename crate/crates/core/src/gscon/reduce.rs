//! Reductions into connectivity instances: clause-penalty Hamiltonians from
//! reconfiguration instances, and the 3-control-qubit construction turning
//! low-energy state preparation into a traversal problem.

use super::cnf::bits_to_index;
use super::instance::GsconInstance;
use super::stconn::StConnInstance;
use crate::qcore::{DenseOperator, GateSequence, LocalGate, Pauli, PauliWord, StateVector};
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Clause-penalty Hamiltonian: one rank-1 projector onto the falsifying
/// assignment per clause, tensored with identity. Diagonal, so the energy of
/// a basis state is exactly its violated-clause count.
pub fn clause_penalty_hamiltonian(inst: &StConnInstance) -> DenseOperator {
    let n = inst.formula.num_vars;
    let dim = 1usize << n;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for x in 0..dim {
        m[(x, x)] = Complex64::from(inst.formula.violated_count(x) as f64);
    }
    DenseOperator::from_matrix(m)
}

/// Reduce an l=1 reconfiguration instance to a connectivity instance with
/// thresholds eta1 = eta3 = 0, eta2 = 1/8, eta4 = 1/2, Delta = 1/8, 1-local
/// gates, and unbounded length.
pub fn reduce_stconn_to_gscon(inst: &StConnInstance) -> Result<GsconInstance> {
    if inst.l != 1 {
        return Err(Error::MalformedInput(format!(
            "reduction starts from an l=1 instance, got l = {}",
            inst.l
        )));
    }
    inst.check_endpoints()?;
    let h = clause_penalty_hamiltonian(inst);
    let n = inst.formula.num_vars;
    let psi = StateVector::basis(n, bits_to_index(&inst.x));
    let phi = StateVector::basis(n, bits_to_index(&inst.y));
    GsconInstance::new(
        h,
        3,
        (0.0, 1.0 / 8.0, 0.0, 0.5, 1.0 / 8.0),
        1,
        None,
        psi,
        phi,
        None,
    )
}

/// Map a classical flip path to the 1-local X-gate sequence realizing it.
pub fn path_to_gate_sequence(path: &[Vec<u8>]) -> Result<GateSequence> {
    if path.is_empty() {
        return Err(Error::MalformedInput("empty path".into()));
    }
    let n = path[0].len();
    let x = Pauli::X.matrix().into_matrix();
    let mut seq = GateSequence::empty(n);
    for pair in path.windows(2) {
        for q in 0..n {
            if pair[0][q] != pair[1][q] {
                seq.push(LocalGate::new(vec![q], x.clone())?);
            }
        }
    }
    Ok(seq)
}

/// Output of the control-register reduction: the instance plus the honest
/// 4-phase sequence.
#[derive(Debug)]
pub struct LhReduction {
    pub instance: GsconInstance,
    pub honest: GateSequence,
    /// Index of the single honest step with nonzero energy (after phase 2).
    pub check_step: usize,
}

/// Reduce "can a short 2-local circuit prepare a state of energy <= alpha
/// under A" to connectivity, by adjoining three control qubits gated by the
/// projector `P = I - |000><000| - |111><111|`.
///
/// The honest sequence prepares the witness, flips the first two control
/// qubits, flips the third, and uncomputes; only the state between the two
/// control flips feels `A`, with energy exactly `<psi_A| A |psi_A>`.
pub fn reduce_lh_to_gscon(
    a: &DenseOperator,
    k_prime: usize,
    alpha: f64,
    beta: f64,
    witness_seq: &GateSequence,
) -> Result<LhReduction> {
    a.require_hermitian()?;
    if beta <= alpha {
        return Err(Error::InvalidThresholds(format!("need beta > alpha, got {alpha}, {beta}")));
    }
    let n = witness_seq.n();
    if a.dim() != 1 << n {
        return Err(Error::DimensionMismatch(format!(
            "A has dim {}, witness register has {n} qubits",
            a.dim()
        )));
    }
    let m_honest = 2 * witness_seq.len() + 2;

    // P on the 3 control qubits keeps only the non-uniform control values.
    let mut p = DMatrix::<Complex64>::identity(8, 8);
    p[(0, 0)] = Complex64::default();
    p[(7, 7)] = Complex64::default();
    let h = a.kron(&DenseOperator::from_matrix(p));

    let total = n + 3;
    let psi = StateVector::basis(total, 0);
    let phi = StateVector::basis(total, 0b111);
    let eta2 = beta / (16.0 * (m_honest as f64) * (m_honest as f64));
    let delta = (eta2 - alpha).min(0.25);
    if delta <= 0.0 {
        return Err(Error::InvalidThresholds(format!(
            "beta/(16 m^2) = {eta2:.3e} does not exceed alpha = {alpha:.3e}"
        )));
    }
    let instance = GsconInstance::new(
        h,
        k_prime + 2,
        (alpha, eta2, 0.0, 0.25, delta),
        2,
        Some(m_honest),
        psi,
        phi,
        None,
    )?;

    let mut honest = GateSequence::empty(total);
    for g in witness_seq.gates() {
        honest.push(LocalGate::with_pulse(
            g.qubits().to_vec(),
            g.matrix().clone(),
            g.pulse().cloned(),
        )?);
    }
    honest.push(LocalGate::new(
        vec![n, n + 1],
        PauliWord::parse("XX")?.matrix().into_matrix(),
    )?);
    honest.push(LocalGate::new(vec![n + 2], Pauli::X.matrix().into_matrix())?);
    for g in witness_seq.inverse().gates() {
        honest.push(LocalGate::with_pulse(
            g.qubits().to_vec(),
            g.matrix().clone(),
            g.pulse().cloned(),
        )?);
    }
    Ok(LhReduction { instance, honest, check_step: witness_seq.len() + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gscon::cnf::{Clause, CnfFormula, Literal};
    use crate::gscon::instance::{verify_gscon_sequence, Verdict};
    use crate::gscon::stconn::{stconn_solve, StConnOutcome};

    fn lit(v: usize, neg: bool) -> Literal {
        Literal { var: v, negated: neg }
    }

    #[test]
    fn clause_penalty_counts_violations() {
        let f = CnfFormula::new(
            3,
            vec![
                Clause(vec![lit(0, false), lit(1, false), lit(2, false)]),
                Clause(vec![lit(0, true), lit(1, false), lit(2, false)]),
            ],
        )
        .unwrap();
        let inst = StConnInstance::new(f, vec![0, 1, 0], vec![0, 1, 1], 1).unwrap();
        let h = clause_penalty_hamiltonian(&inst);
        for x in 0..8usize {
            let e = h.matrix()[(x, x)].re;
            assert_eq!(e as usize, inst.formula.violated_count(x));
        }
        // Satisfying basis states sit at energy zero.
        assert_eq!(h.matrix()[(0b010, 0b010)].re, 0.0);
    }

    #[test]
    fn classical_path_becomes_witness_sequence() {
        let f = CnfFormula::new(
            2,
            vec![Clause(vec![lit(0, false), lit(1, false), lit(1, false)])],
        )
        .unwrap();
        let st = StConnInstance::new(f, vec![0, 1], vec![1, 0], 1).unwrap();
        let gs = reduce_stconn_to_gscon(&st).unwrap();
        let path = match stconn_solve(&st).unwrap() {
            StConnOutcome::Path(p) => p,
            other => panic!("{other:?}"),
        };
        let seq = path_to_gate_sequence(&path).unwrap();
        let report = verify_gscon_sequence(&gs, &seq).unwrap();
        assert_eq!(report.verdict, Verdict::Witness);
        assert_eq!(report.max_energy, 0.0);
    }

    #[test]
    fn zero_hamiltonian_honest_energies_vanish() {
        let a = DenseOperator::zeros(2);
        let red = reduce_lh_to_gscon(&a, 1, 0.0, 1.0, &GateSequence::empty(1)).unwrap();
        let report = verify_gscon_sequence(&red.instance, &red.honest).unwrap();
        assert_eq!(report.verdict, Verdict::Witness);
        assert!(report.max_energy <= 1e-12);
        assert_eq!(red.honest.len(), 2);
    }

    #[test]
    fn check_step_energy_is_witness_energy() {
        // A = diag(0, 1) with identity witness: checked energy <0|A|0> = 0.
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(1, 1)] = Complex64::from(1.0);
        let a = DenseOperator::from_matrix(m);
        let red = reduce_lh_to_gscon(&a, 1, 0.0, 0.9, &GateSequence::empty(1)).unwrap();
        let traj = red.honest.trajectory(&red.instance.psi).unwrap();
        for (i, state) in traj.iter().enumerate().skip(1) {
            let e = red.instance.energy(state);
            assert!(e.abs() <= 1e-12, "step {i} energy {e}");
        }
    }
}
