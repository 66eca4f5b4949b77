//! Expansion of Hermitian operators in the Pauli-word basis.

use crate::qcore::{DenseOperator, Pauli, PauliTerm, PauliWord};
use crate::{Error, Result};
use num_complex::Complex64;

/// Coefficients below this are structural zeros of the expansion.
const COEFF_CUTOFF: f64 = 1e-14;

/// A Hermitian operator written as a real combination of Pauli words.
#[derive(Debug, Clone)]
pub struct PauliExpansion {
    pub n: usize,
    pub terms: Vec<PauliTerm>,
}

impl PauliExpansion {
    /// Rebuild the dense operator from the terms.
    pub fn reconstruct(&self) -> DenseOperator {
        let dim = 1usize << self.n;
        let mut m = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
        for term in &self.terms {
            for col in 0..dim {
                let (row, amp) = term.word.act_on_index(col);
                m[(row, col)] += amp * Complex64::from(term.coeff);
            }
        }
        DenseOperator::from_matrix(m)
    }

    /// Sum of absolute coefficients (the l1 pulse budget of the expansion).
    pub fn coeff_l1(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }
}

fn word_from_digits(n: usize, mut idx: usize) -> PauliWord {
    let mut letters = vec![Pauli::I; n];
    for q in (0..n).rev() {
        letters[q] = match idx % 4 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        };
        idx /= 4;
    }
    PauliWord(letters)
}

/// Expand a Hermitian operator as `H = sum_j alpha_j P_j` with real
/// coefficients `alpha_j = Tr(P_j H) / d`.
///
/// The one-nonzero-per-row structure of Pauli words makes each trace O(d),
/// so the full expansion costs O(d^3) and needs no Kronecker products.
pub fn pauli_expand(h: &DenseOperator) -> Result<PauliExpansion> {
    h.require_hermitian()?;
    let dim = h.dim();
    if !dim.is_power_of_two() {
        return Err(Error::DimensionMismatch(format!("dimension {dim} is not a power of 2")));
    }
    let n = dim.trailing_zeros() as usize;
    let m = h.matrix();
    let mut terms = Vec::new();
    for idx in 0..(1usize << (2 * n)) {
        let word = word_from_digits(n, idx);
        // Tr(P H) = sum_k <k|P H|k>; P^dag |k> has a single component.
        let mut tr = Complex64::default();
        for k in 0..dim {
            let (row, amp) = word.act_on_index(k);
            // <k| P = (P^dag |k>)^dag = ((P|k*>)...); P is Hermitian up to
            // the word phases, so use P_{k,row'} directly: P|j> = amp|row>
            // means P_{row, j} = amp, and Tr(PH) = sum_j P_{j', j} H_{j, j'}
            // with j' = row(j).
            tr += amp * m[(k, row)];
        }
        let coeff = tr.re / dim as f64;
        debug_assert!(
            tr.im.abs() <= 1e-9 * (1.0 + tr.re.abs()),
            "Pauli coefficient of a Hermitian operator must be real"
        );
        if coeff.abs() > COEFF_CUTOFF {
            terms.push(PauliTerm::new(coeff, word)?);
        }
    }
    Ok(PauliExpansion { n, terms })
}
