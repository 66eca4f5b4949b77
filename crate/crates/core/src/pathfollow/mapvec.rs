//! Mapping between close vectors with 2-local gates, tracking drift.

use super::rotate::rotation_between;
use crate::decomp::synthesize_small_unitary;
use crate::qcore::{GateSequence, StateVector};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Measured endpoint error and intermediate drift of a close-vector map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapReport {
    pub theta: f64,
    /// || U psi - phi || after the full sequence.
    pub endpoint_error: f64,
    /// max_i || psi - U_i ... U_1 psi ||.
    pub max_drift: f64,
    /// endpoint_error / (d^2 eps^2), reported not assumed.
    pub c1: f64,
    /// max_drift / (n^2 d^2 eps^(1/2n)), reported not assumed.
    pub c2: f64,
}

/// Produce a 2-local sequence carrying `psi` to `phi` (both unit, distance
/// at most `eps`), with endpoint error quadratic in `eps` and bounded
/// intermediate drift away from `psi`.
pub fn map_close_vectors(
    psi: &StateVector,
    phi: &StateVector,
    eps: f64,
) -> Result<(GateSequence, MapReport)> {
    let dist = psi.distance_to(phi);
    if dist > eps + 1e-12 {
        return Err(Error::MalformedInput(format!(
            "||psi - phi|| = {dist:.3e} exceeds declared eps = {eps:.3e}"
        )));
    }
    let n = psi.n();
    let (theta, generator) = rotation_between(psi, phi)?;
    let seq = synthesize_small_unitary(&generator)?;

    // Simulate for the measured report.
    let mut current = psi.amps().clone();
    let mut max_drift = 0.0f64;
    for gate in seq.gates() {
        gate.apply_to_amps(n, &mut current);
        let drift = (&current - psi.amps()).norm();
        if drift > max_drift {
            max_drift = drift;
        }
    }
    let endpoint_error = (&current - phi.amps()).norm();
    let d = (1usize << n) as f64;
    let nf = n as f64;
    let (c1, c2) = if eps > 0.0 {
        (
            endpoint_error / (d * d * eps * eps),
            max_drift / (nf * nf * d * d * eps.powf(1.0 / (2.0 * nf))),
        )
    } else {
        (0.0, 0.0)
    };
    Ok((seq, MapReport { theta, endpoint_error, max_drift, c1, c2 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;
    use num_complex::Complex64;

    #[test]
    fn identical_pair_empty_sequence() {
        let psi = StateVector::basis(2, 3);
        let (seq, report) = map_close_vectors(&psi, &psi, 1e-3).unwrap();
        assert!(seq.is_empty());
        assert_eq!(report.max_drift, 0.0);
        assert_eq!(report.endpoint_error, 0.0);
    }

    #[test]
    fn single_qubit_small_rotation() {
        let eps: f64 = 1e-3;
        let psi = StateVector::basis(1, 0);
        let phi = StateVector::new(
            1,
            DVector::from_vec(vec![
                Complex64::from(eps.cos()),
                Complex64::from(eps.sin()),
            ]),
        )
        .unwrap();
        let (seq, report) = map_close_vectors(&psi, &phi, 2.0 * eps).unwrap();
        assert!(!seq.is_empty());
        // Quadratic endpoint regime: far below the linear distance.
        assert!(report.endpoint_error < 16.0 * eps * eps, "{}", report.endpoint_error);
    }

    #[test]
    fn two_qubit_pair_direct_simulation() {
        let eps = 1e-2;
        let psi = StateVector::basis(2, 0);
        let amps = DVector::from_vec(vec![
            Complex64::from(1.0),
            Complex64::new(4e-3, 2e-3),
            Complex64::new(-3e-3, 1e-3),
            Complex64::new(2e-3, -4e-3),
        ]);
        let phi = StateVector::normalized(2, amps).unwrap();
        assert!(psi.distance_to(&phi) <= eps);
        let (seq, report) = map_close_vectors(&psi, &phi, eps).unwrap();
        // Re-simulate independently and check the reported numbers.
        let end = seq.apply(&psi).unwrap();
        assert!((end.distance_to(&phi) - report.endpoint_error).abs() < 1e-12);
        assert!(report.endpoint_error < 16.0 * eps * eps);
        // Drift stays within 10x of the theoretical envelope at this scale.
        assert!(report.max_drift <= 10.0 * (psi.distance_to(&phi) + report.theta));
    }

    #[test]
    fn distance_beyond_eps_rejected() {
        let psi = StateVector::basis(1, 0);
        let phi = StateVector::basis(1, 1);
        assert!(map_close_vectors(&psi, &phi, 1e-3).is_err());
    }
}
