//! First-order product formulas for sums of local Hermitian terms.

use crate::qcore::{DenseOperator, GateSequence, LocalGate};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A Hermitian term acting on 1 or 2 listed qubits.
#[derive(Debug, Clone)]
pub struct LocalTerm {
    pub op: DenseOperator,
    pub qubits: Vec<usize>,
}

impl LocalTerm {
    pub fn new(op: DenseOperator, qubits: Vec<usize>) -> Result<LocalTerm> {
        op.require_hermitian()?;
        let dim = 1usize << qubits.len();
        if qubits.is_empty() || qubits.len() > 2 || op.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "term on {:?} with operator dim {}",
                qubits,
                op.dim()
            )));
        }
        Ok(LocalTerm { op, qubits })
    }
}

/// Measured error report for a product-formula synthesis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrotterReport {
    /// Spectral-norm distance between exp(i sum H_j) and the emitted product.
    pub measured_error: f64,
    /// Sum of the terms' spectral norms (the budget `t`).
    pub sum_norm: f64,
    pub steps: usize,
}

/// First-order formula `(prod_j exp(i H_j / s))^s` for `sum_j ||H_j|| <= 1`.
///
/// Returns the gate sequence (term order within each slice, slices repeated
/// `s` times) together with the measured spectral error against the exact
/// joint evolution on the full register.
pub fn trotter_first_order(
    terms: &[LocalTerm],
    n: usize,
    s: usize,
) -> Result<(GateSequence, TrotterReport)> {
    if s == 0 {
        return Err(Error::MalformedInput("step count s must be >= 1".into()));
    }
    let sum_norm: f64 = terms.iter().map(|t| t.op.spectral_norm()).sum();
    if sum_norm > 1.0 + 1e-12 {
        return Err(Error::NormBudgetExceeded(format!(
            "sum of term norms {sum_norm:.6} > 1"
        )));
    }
    let mut slice = Vec::with_capacity(terms.len());
    for term in terms {
        let gate = term.op.expm_i(1.0 / s as f64)?;
        slice.push(LocalGate::new(term.qubits.clone(), gate.into_matrix())?);
    }
    let mut seq = GateSequence::empty(n);
    for _ in 0..s {
        for g in &slice {
            seq.push(g.clone());
        }
    }
    // Exact joint evolution for the error report.
    let dim = 1usize << n;
    let mut total = DenseOperator::zeros(dim);
    for term in terms {
        total = total.add(&embed_hermitian(term, n)?);
    }
    let target = total.expm_i(1.0)?;
    let measured_error = seq.unitary()?.sub(&target).spectral_norm();
    Ok((seq, TrotterReport { measured_error, sum_norm, steps: s }))
}

/// Embed a local Hermitian term into the full register.
pub fn embed_hermitian(term: &LocalTerm, n: usize) -> Result<DenseOperator> {
    // exp-free embedding: permute the term into place by acting on basis
    // columns, mirroring `embed_local` but without the unitarity check.
    let dim = 1usize << n;
    let mut out = nalgebra::DMatrix::<num_complex::Complex64>::zeros(dim, dim);
    let shifts: Vec<usize> = term.qubits.iter().map(|&q| n - 1 - q).collect();
    let k = term.qubits.len();
    let sub = 1usize << k;
    let m = term.op.matrix();
    for col in 0..dim {
        // Extract the sub-index of this column on the term's qubits.
        let mut sub_col = 0usize;
        for (b, &shift) in shifts.iter().enumerate() {
            if (col >> shift) & 1 == 1 {
                sub_col |= 1 << (k - 1 - b);
            }
        }
        for sub_row in 0..sub {
            let a = m[(sub_row, sub_col)];
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let mut row = col;
            for (b, &shift) in shifts.iter().enumerate() {
                let bit = (sub_row >> (k - 1 - b)) & 1;
                row = (row & !(1 << shift)) | (bit << shift);
            }
            out[(row, col)] += a;
        }
    }
    Ok(DenseOperator::from_matrix(out))
}
