//! Normalized state vectors over 2^n basis states.

use crate::{Error, Result};
use nalgebra::DVector;
use num_complex::Complex64;

/// A unit vector of 2^n complex amplitudes.
///
/// Immutable after construction; the norm is validated to 1e-12 on entry.
/// Qubit 0 is the most significant index bit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: DVector<Complex64>,
}

impl StateVector {
    pub fn new(n: usize, amps: DVector<Complex64>) -> Result<StateVector> {
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "expected 2^{n} = {} amplitudes, got {}",
                1usize << n,
                amps.len()
            )));
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() {
            return Err(Error::NonFinite("state amplitude".into()));
        }
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::MalformedInput(format!(
                "state not normalized: | ||psi||^2 - 1 | = {:.3e}",
                (norm_sq - 1.0).abs()
            )));
        }
        Ok(StateVector { n, amps })
    }

    /// Normalize on entry (rejects the null vector).
    pub fn normalized(n: usize, amps: DVector<Complex64>) -> Result<StateVector> {
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-14 {
            return Err(Error::MalformedInput("cannot normalize a null vector".into()));
        }
        StateVector::new(n, amps / Complex64::from(norm))
    }

    /// Computational basis state |idx>.
    pub fn basis(n: usize, idx: usize) -> StateVector {
        let dim = 1usize << n;
        assert!(idx < dim, "basis index {idx} out of range for {n} qubits");
        let mut amps = DVector::zeros(dim);
        amps[idx] = Complex64::from(1.0);
        StateVector { n, amps }
    }

    /// Basis state from a bitstring, qubit 0 first.
    pub fn from_bits(bits: &[u8]) -> StateVector {
        let n = bits.len();
        let mut idx = 0usize;
        for &b in bits {
            idx = (idx << 1) | (b as usize);
        }
        StateVector::basis(n, idx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn into_amps(self) -> DVector<Complex64> {
        self.amps
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    /// Euclidean distance ||self - other||_2.
    pub fn distance_to(&self, other: &StateVector) -> f64 {
        (&self.amps - &other.amps).norm()
    }

    /// Tensor product self (x) other (self on the more significant qubits).
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let n = self.n + other.n;
        let mut amps = DVector::zeros(self.dim() * other.dim());
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (j, b) in other.amps.iter().enumerate() {
                amps[i * other.dim() + j] = a * b;
            }
        }
        StateVector { n, amps }
    }
}

/// Euclidean distance between two equal-size states.
///
/// Agrees with sqrt(2 - 2 Re<phi|psi>) to machine precision.
pub fn euclid_diff(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    if psi.n() != phi.n() {
        return Err(Error::DimensionMismatch(format!(
            "states on {} vs {} qubits",
            psi.n(),
            phi.n()
        )));
    }
    Ok(psi.distance_to(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized() {
        let amps = DVector::from_vec(vec![Complex64::from(1.0), Complex64::from(1.0)]);
        assert!(StateVector::new(1, amps.clone()).is_err());
        assert!(StateVector::normalized(1, amps).is_ok());
    }

    #[test]
    fn euclid_diff_formula() {
        let zero = StateVector::basis(1, 0);
        let one = StateVector::basis(1, 1);
        // identical states
        assert_eq!(euclid_diff(&zero, &zero).unwrap(), 0.0);
        // orthogonal states: sqrt(2)
        assert!((euclid_diff(&zero, &one).unwrap() - 2.0f64.sqrt()).abs() < 1e-12);
        // |0> vs |+>: sqrt(2 - sqrt(2))
        let plus = StateVector::normalized(
            1,
            DVector::from_vec(vec![Complex64::from(1.0), Complex64::from(1.0)]),
        )
        .unwrap();
        let expect = (2.0 - 2.0f64.sqrt()).sqrt();
        assert!((euclid_diff(&zero, &plus).unwrap() - expect).abs() < 1e-12);
        // closed form sqrt(2 - 2 Re<phi|psi>) on the same pair
        let formula = (2.0 - 2.0 * plus.inner(&zero).re).sqrt();
        assert!((euclid_diff(&zero, &plus).unwrap() - formula).abs() < 1e-12);
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states() {
        // || |0><0| - |1><1| ||_tr = 2 sqrt(1 - |<psi|phi>|^2) = 2.
        use crate::qcore::operator::DenseOperator;
        let mut m = nalgebra::DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 0)] = Complex64::from(1.0);
        m[(1, 1)] = Complex64::from(-1.0);
        let norms = DenseOperator::from_matrix(m).norms().unwrap();
        assert!((norms.trace - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bit_convention_qubit0_most_significant() {
        // |10> on 2 qubits is index 2.
        let s = StateVector::from_bits(&[1, 0]);
        assert_eq!(s.amps()[2], Complex64::from(1.0));
    }

    #[test]
    fn tensor_product_ordering() {
        let a = StateVector::basis(1, 1);
        let b = StateVector::basis(1, 0);
        let ab = a.tensor(&b); // |10>
        assert_eq!(ab.amps()[2], Complex64::from(1.0));
    }
}
