//! Approximate 2-local decomposition of `exp(iH)` for small-norm `H`.
//!
//! `H` is expanded in the Pauli basis, each word evolution is decomposed
//! exactly, and the per-word products are chained with a single first-order
//! step. The residual is quadratic in the coefficients while the sum of
//! gate deviations from identity scales with the fractional-power pulse
//! bounds; both are measured and reported rather than assumed.

use super::expansion::pauli_expand;
use super::rotation::{decompose_pauli_rotation, recursion_depth};
use crate::qcore::{DenseOperator, GateSequence};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Measured quality report for a small-unitary decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SmallUnitaryReport {
    /// ||exp(iH) - product|| (spectral).
    pub product_error: f64,
    /// Sum over gates of ||I - U_j|| (spectral).
    pub sum_gate_deviation: f64,
    /// epsilon = ||H|| (spectral).
    pub epsilon: f64,
    /// product_error / (d^2 eps^2); finite-sample constant, reported.
    pub c1: f64,
    /// sum_gate_deviation / (n^2 d^2 eps^(1/2n)); reported.
    pub c2: f64,
}

/// Synthesize the 2-local gate sequence for `exp(iH)` without the dense
/// verification report; the hot path for per-segment path synthesis.
pub fn synthesize_small_unitary(h: &DenseOperator) -> Result<GateSequence> {
    h.require_hermitian()?;
    let expansion = pauli_expand(h)?;
    let n = expansion.n;
    for term in &expansion.terms {
        let k = recursion_depth(&term.word);
        let cap = 8.0 * term.coeff.abs().powf(0.5f64.powi(k as i32));
        if cap > std::f64::consts::FRAC_PI_2 + 1e-15 {
            return Err(Error::NormTooLarge(format!(
                "coefficient {:.3e} of word {} violates its pulse precondition \
                 (8 |a|^(1/2^{k}) = {cap:.4} > pi/2)",
                term.coeff, term.word
            )));
        }
    }
    let mut seq = GateSequence::empty(n);
    for term in &expansion.terms {
        seq.extend(decompose_pauli_rotation(&term.word, term.coeff)?)?;
    }
    Ok(seq)
}

/// Decompose `exp(iH)` into 2-local gates for Hermitian `H` of small norm.
///
/// Every Pauli coefficient must satisfy its own word's pulse precondition
/// `8 |a_j|^(1/2^k_j) <= pi/2`; the blanket bound `||H|| < (pi/16)^(2n)`
/// implies this for every word, but wide margins are not required when the
/// expansion only contains low-depth words.
pub fn decompose_small_unitary(h: &DenseOperator) -> Result<(GateSequence, SmallUnitaryReport)> {
    let seq = synthesize_small_unitary(h)?;
    let n = seq.n();
    let epsilon = h.spectral_norm();
    let dim = 1usize << n;
    let target = h.expm_i(1.0)?;
    let product_error = seq.unitary()?.sub(&target).spectral_norm();
    let sum_gate_deviation: f64 = seq
        .gates()
        .iter()
        .map(|g| {
            let gd = g.matrix().nrows();
            DenseOperator::from_matrix(g.matrix().clone())
                .sub(&DenseOperator::identity(gd))
                .spectral_norm()
        })
        .sum();
    let d = dim as f64;
    let nf = n as f64;
    let c1 = if epsilon > 0.0 { product_error / (d * d * epsilon * epsilon) } else { 0.0 };
    let c2 = if epsilon > 0.0 {
        sum_gate_deviation / (nf * nf * d * d * epsilon.powf(1.0 / (2.0 * nf)))
    } else {
        0.0
    };
    Ok((
        seq,
        SmallUnitaryReport { product_error, sum_gate_deviation, epsilon, c1, c2 },
    ))
}
