//! Clock-register Hamiltonian elements for one side of the embedding.
//!
//! The side register is work (ancillas + proof qubit) tensor a binary clock
//! occupying the least significant bits. Terms are the standard
//! initialization, output, and propagation elements; propagation terms touch
//! only two clock values, which keeps every row of the assembled Hamiltonian
//! sparse.

use super::circuit::{StreamGate, StreamingCircuit};
use crate::qcore::{DenseOperator, LocalGate, Pauli, StateVector};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Index layout of one side: work bits (most significant) then clock bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideLayout {
    pub work_qubits: usize,
    pub clock_bits: usize,
    /// Number of circuit steps m (clock values 0..=m are meaningful).
    pub m: usize,
}

impl SideLayout {
    pub fn for_circuit(circ: &StreamingCircuit) -> SideLayout {
        let m = circ.m();
        let clock_bits = usize::BITS as usize - (m.max(1)).leading_zeros() as usize;
        // ceil(log2(m+1)): values 0..=m must fit.
        let clock_bits = if (m + 1).is_power_of_two() {
            (m + 1).trailing_zeros() as usize
        } else {
            clock_bits
        };
        SideLayout { work_qubits: circ.work_qubits(), clock_bits, m }
    }

    pub fn side_qubits(&self) -> usize {
        self.work_qubits + self.clock_bits
    }

    pub fn side_dim(&self) -> usize {
        1 << self.side_qubits()
    }

    pub fn work_dim(&self) -> usize {
        1 << self.work_qubits
    }

    pub fn clock_dim(&self) -> usize {
        1 << self.clock_bits
    }

    pub fn index(&self, work: usize, clock: usize) -> usize {
        work * self.clock_dim() + clock
    }

    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.clock_dim(), idx % self.clock_dim())
    }
}

/// Gate choice inside a propagation term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropGate {
    /// The circuit's own step unitary (only valid for steps outside P).
    Actual,
    /// Identity on the proof qubit (logical bit 0).
    Identity,
    /// iX on the proof qubit (logical bit 1).
    IX,
}

/// One side-space Hamiltonian element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideOp {
    /// Penalizes any nonzero work bit at clock 0 (a single projector).
    In,
    /// Penalizes output wire 0 at clock m.
    Out,
    /// Propagation element H_t (norm 2; H_t/2 is a projector).
    Prop { t: usize, gate: PropGate },
}

/// Side operators bound to a circuit and layout.
pub struct SideSpace {
    pub circ: StreamingCircuit,
    pub layout: SideLayout,
}

impl SideSpace {
    pub fn new(circ: StreamingCircuit) -> SideSpace {
        let layout = SideLayout::for_circuit(&circ);
        SideSpace { circ, layout }
    }

    /// The work-space unitary inside `H_t`.
    fn prop_unitary(&self, t: usize, gate: PropGate) -> Result<LocalGate> {
        match gate {
            PropGate::Actual => {
                match &self.circ.gates[t - 1] {
                    // Proof steps have no fixed actual gate.
                    StreamGate::ProofCompute | StreamGate::ProofUncompute => {
                        Err(Error::InvalidCircuit(format!(
                            "step {t} is a proof gate; choose Identity or IX"
                        )))
                    }
                    _ => self.circ.step_unitary(t, &[]),
                }
            }
            PropGate::Identity => {
                LocalGate::new(vec![self.circ.proof_qubit()], DMatrix::identity(2, 2))
            }
            PropGate::IX => LocalGate::new(
                vec![self.circ.proof_qubit()],
                Pauli::X.matrix().into_matrix() * Complex64::new(0.0, 1.0),
            ),
        }
    }

    /// Apply a side operator to a side-space vector.
    pub fn apply(&self, op: SideOp, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        let l = &self.layout;
        debug_assert_eq!(v.len(), l.side_dim());
        let mut out = DVector::<Complex64>::zeros(l.side_dim());
        match op {
            SideOp::In => {
                for w in 1..l.work_dim() {
                    let i = l.index(w, 0);
                    out[i] = v[i];
                }
            }
            SideOp::Out => {
                let out_shift = l.work_qubits - 1; // ancilla 0 is the top work bit
                for w in 0..l.work_dim() {
                    if (w >> out_shift) & 1 == 0 {
                        let i = l.index(w, l.m);
                        out[i] = v[i];
                    }
                }
            }
            SideOp::Prop { t, gate } => {
                if t == 0 || t > l.m {
                    return Err(Error::IndexOutOfRange(format!("time step {t} of {}", l.m)));
                }
                let u = self.prop_unitary(t, gate)?;
                // Extract the two clock slices.
                let wd = l.work_dim();
                let mut eta_prev = DVector::<Complex64>::zeros(wd);
                let mut eta_cur = DVector::<Complex64>::zeros(wd);
                for w in 0..wd {
                    eta_prev[w] = v[l.index(w, t - 1)];
                    eta_cur[w] = v[l.index(w, t)];
                }
                // out_{t-1} = eta_{t-1} - U^dag eta_t ; out_t = eta_t - U eta_{t-1}
                let mut u_prev = eta_prev.clone();
                u.apply_to_amps(l.work_qubits, &mut u_prev);
                let mut udag_cur = eta_cur.clone();
                let u_inv = LocalGate::new(u.qubits().to_vec(), u.matrix().adjoint())?;
                u_inv.apply_to_amps(l.work_qubits, &mut udag_cur);
                for w in 0..wd {
                    out[l.index(w, t - 1)] = eta_prev[w] - udag_cur[w];
                    out[l.index(w, t)] = eta_cur[w] - u_prev[w];
                }
            }
        }
        Ok(out)
    }

    /// Expectation of a side operator (real; the operators are Hermitian).
    pub fn expectation(&self, op: SideOp, v: &DVector<Complex64>) -> Result<f64> {
        Ok(v.dotc(&self.apply(op, v)?).re)
    }

    /// Nonzero entries of row `row` of a side operator.
    pub fn row_entries(&self, op: SideOp, row: usize) -> Result<Vec<(usize, Complex64)>> {
        let l = &self.layout;
        if row >= l.side_dim() {
            return Err(Error::IndexOutOfRange(format!("row {row} of {}", l.side_dim())));
        }
        let (w, c) = l.split(row);
        let mut entries = Vec::new();
        match op {
            SideOp::In => {
                if c == 0 && w != 0 {
                    entries.push((row, Complex64::from(1.0)));
                }
            }
            SideOp::Out => {
                let out_shift = l.work_qubits - 1;
                if c == l.m && (w >> out_shift) & 1 == 0 {
                    entries.push((row, Complex64::from(1.0)));
                }
            }
            SideOp::Prop { t, gate } => {
                if c + 1 == t || c == t {
                    entries.push((row, Complex64::from(1.0)));
                    let u = self.prop_unitary(t, gate)?;
                    let dense = gate_work_column_entries(&u, l.work_qubits, w);
                    if c == t {
                        // -V entries: H_{(w,t),(w',t-1)} = -V_{w,w'}; row w of V.
                        for (wp, val) in gate_work_row_entries(&u, l.work_qubits, w) {
                            entries.push((l.index(wp, t - 1), -val));
                        }
                    } else {
                        // -V^dag entries: H_{(w,t-1),(w',t)} = -conj(V_{w',w});
                        // column w of V, conjugated.
                        for (wp, val) in dense {
                            entries.push((l.index(wp, t), -val.conj()));
                        }
                    }
                }
            }
        }
        Ok(entries)
    }

    /// Densify a side operator (tests and desk-scale checks only).
    pub fn dense(&self, op: SideOp) -> Result<DenseOperator> {
        let d = self.layout.side_dim();
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        let mut col = DVector::<Complex64>::zeros(d);
        for j in 0..d {
            col.fill(Complex64::default());
            col[j] = Complex64::from(1.0);
            let out = self.apply(op, &col)?;
            for r in 0..d {
                if out[r].norm_sqr() != 0.0 {
                    m[(r, j)] = out[r];
                }
            }
        }
        Ok(DenseOperator::from_matrix(m))
    }

    /// The history state for streamed proof `y`: the uniform superposition
    /// of the circuit's partial runs entangled with the clock.
    pub fn history_state(&self, y: &[u8]) -> Result<StateVector> {
        if y.len() != self.circ.proof_len() {
            return Err(Error::ProofLengthMismatch(format!(
                "proof of {} bits, circuit streams {}",
                y.len(),
                self.circ.proof_len()
            )));
        }
        let l = &self.layout;
        let mut work = DVector::<Complex64>::zeros(l.work_dim());
        work[0] = Complex64::from(1.0);
        let norm = Complex64::from(1.0 / ((l.m + 1) as f64).sqrt());
        let mut amps = DVector::<Complex64>::zeros(l.side_dim());
        for w in 0..l.work_dim() {
            if work[w].norm_sqr() != 0.0 {
                amps[l.index(w, 0)] = work[w] * norm;
            }
        }
        for t in 1..=l.m {
            let gate = self.circ.step_unitary(t, y)?;
            gate.apply_to_amps(l.work_qubits, &mut work);
            for w in 0..l.work_dim() {
                if work[w].norm_sqr() != 0.0 {
                    amps[l.index(w, t)] = work[w] * norm;
                }
            }
        }
        StateVector::normalized(l.side_qubits(), amps)
    }

    /// Kitaev's change-of-basis unitary `W = sum_t V_1^dag ... V_t^dag (x)
    /// |t><t|`, with the proof-step gates replaced per `flux_gates[t]`.
    pub fn change_of_basis(&self, flux_gates: &[(usize, PropGate)]) -> Result<DenseOperator> {
        let l = &self.layout;
        let d = l.side_dim();
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        // Accumulate V_t ... V_1 column by column, then invert by adjoint.
        let mut prefix = DMatrix::<Complex64>::identity(l.work_dim(), l.work_dim());
        let lookup = |t: usize| -> PropGate {
            flux_gates
                .iter()
                .find(|(s, _)| *s == t)
                .map(|(_, g)| *g)
                .unwrap_or(PropGate::Actual)
        };
        for t in 0..=l.m {
            if t > 0 {
                let gate = self.prop_unitary(t, lookup(t))?;
                let embedded = crate::qcore::embed_local(&gate, l.work_qubits)?;
                prefix = embedded.matrix() * prefix;
            }
            // Block (V_t ... V_1)^dag at clock t.
            let adj = prefix.adjoint();
            for wr in 0..l.work_dim() {
                for wc in 0..l.work_dim() {
                    let v = adj[(wr, wc)];
                    if v.norm_sqr() != 0.0 {
                        m[(l.index(wr, t), l.index(wc, t))] = v;
                    }
                }
            }
        }
        // Padding clock values (t > m) act as identity.
        for c in (l.m + 1)..l.clock_dim() {
            for w in 0..l.work_dim() {
                m[(l.index(w, c), l.index(w, c))] = Complex64::from(1.0);
            }
        }
        Ok(DenseOperator::from_matrix(m))
    }
}

fn gate_work_row_entries(
    gate: &LocalGate,
    work_qubits: usize,
    row: usize,
) -> Vec<(usize, Complex64)> {
    // Row `row` of the embedded gate: nonzero at columns differing from
    // `row` only on the gate's qubits.
    let shifts: Vec<usize> = gate.qubits().iter().map(|&q| work_qubits - 1 - q).collect();
    let k = gate.qubits().len();
    let mut sub_row = 0usize;
    for (b, &s) in shifts.iter().enumerate() {
        if (row >> s) & 1 == 1 {
            sub_row |= 1 << (k - 1 - b);
        }
    }
    let mut out = Vec::new();
    for sub_col in 0..(1usize << k) {
        let v = gate.matrix()[(sub_row, sub_col)];
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let mut col = row;
        for (b, &s) in shifts.iter().enumerate() {
            let bit = (sub_col >> (k - 1 - b)) & 1;
            col = (col & !(1 << s)) | (bit << s);
        }
        out.push((col, v));
    }
    out
}

fn gate_work_column_entries(
    gate: &LocalGate,
    work_qubits: usize,
    col: usize,
) -> Vec<(usize, Complex64)> {
    let shifts: Vec<usize> = gate.qubits().iter().map(|&q| work_qubits - 1 - q).collect();
    let k = gate.qubits().len();
    let mut sub_col = 0usize;
    for (b, &s) in shifts.iter().enumerate() {
        if (col >> s) & 1 == 1 {
            sub_col |= 1 << (k - 1 - b);
        }
    }
    let mut out = Vec::new();
    for sub_row in 0..(1usize << k) {
        let v = gate.matrix()[(sub_row, sub_col)];
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let mut row = col;
        for (b, &s) in shifts.iter().enumerate() {
            let bit = (sub_row >> (k - 1 - b)) & 1;
            row = (row & !(1 << s)) | (bit << s);
        }
        out.push((row, v));
    }
    out
}
