//! The exact planar rotation carrying one unit vector to another.

use crate::qcore::{DenseOperator, StateVector};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Angle threshold beyond which the pair is reported as degenerate; callers
/// subdivide instead of rotating through a near-antipodal frame.
pub const DEGENERATE_ANGLE: f64 = std::f64::consts::PI - 0.1;

/// Rotation generator between two states.
///
/// Returns `(theta, H)` with `theta = arccos(Re<psi|phi>)`, `||H|| = theta`,
/// and `exp(iH) psi = phi` exactly. The unitary acts on the plane spanned by
/// `psi` and the Gram-Schmidt complement of `phi`, and as the identity on
/// the orthogonal complement, so its eigenvalues are `e^{i theta}`,
/// `e^{-i theta}`, and 1.
pub fn rotation_between(psi: &StateVector, phi: &StateVector) -> Result<(f64, DenseOperator)> {
    if psi.n() != phi.n() {
        return Err(Error::DimensionMismatch(format!(
            "states on {} vs {} qubits",
            psi.n(),
            phi.n()
        )));
    }
    let dim = psi.dim();
    let c = psi.inner(phi); // <psi|phi>
    let theta = c.re.clamp(-1.0, 1.0).acos();
    if theta > DEGENERATE_ANGLE {
        return Err(Error::DegeneratePair(format!(
            "angle {theta:.4} > pi - 0.1; subdivide the pair"
        )));
    }
    let e1 = psi.amps().clone();
    let resid = phi.amps() - &e1 * c;
    let s = resid.norm();

    // K is the Hermitian part of the 2x2 block B = [[c, -s], [s, conj(c)]]
    // restricted to span{e1, e2}; B = cos(theta) I + i sin(theta) K_hat with
    // K_hat^2 = I, so H = theta * K_hat.
    let y = c.im;
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    let sin_theta = (1.0 - c.re * c.re).max(0.0).sqrt();
    if sin_theta < 1e-14 {
        // Parallel up to phase: rank-1 phase generator on |psi>.
        let beta = c.arg();
        for r in 0..dim {
            for col in 0..dim {
                h[(r, col)] = e1[r] * e1[col].conj() * Complex64::from(beta);
            }
        }
        return Ok((theta, DenseOperator::from_matrix(h)));
    }
    let e2: DVector<Complex64> = resid / Complex64::from(s);
    let factor = theta / sin_theta;
    // H = factor * [ y (e1 e1^dag - e2 e2^dag) + i s e1 e2^dag - i s e2 e1^dag ]
    let is = Complex64::new(0.0, s);
    for r in 0..dim {
        for col in 0..dim {
            let v = Complex64::from(y) * (e1[r] * e1[col].conj() - e2[r] * e2[col].conj())
                + is * e1[r] * e2[col].conj()
                - is * e2[r] * e1[col].conj();
            h[(r, col)] = v * Complex64::from(factor);
        }
    }
    Ok((theta, DenseOperator::from_matrix(h)))
}
