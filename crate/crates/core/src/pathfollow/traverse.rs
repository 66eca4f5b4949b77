//! Low-energy traversal between two states of a bounded Hamiltonian.
//!
//! The route goes through a ground state: rotate the start state onto a
//! ground state mu (which can only lower the energy), then rotate from mu to
//! the target. Both legs keep the amplitude profile monotone on mu, so the
//! exact path never exceeds the larger endpoint energy; the gate synthesis
//! then tracks the path to within the requested accuracy.

use super::follow::{follow_path, FollowReport, Path};
use crate::qcore::{DenseOperator, StateVector};
use crate::{Error, Result};
use nalgebra::DVector;
use num_complex::Complex64;

struct Leg {
    mu: DVector<Complex64>,
    nu: DVector<Complex64>,
    theta: f64,
    beta: f64,
}

impl Leg {
    /// Build the geodesic-with-phase leg from `mu` to `state`:
    /// `g(u) = cos(u theta) e^{i u beta} mu + sin(u theta) nu`, which starts
    /// at `mu` (u=0) and ends at `state` (u=1) with monotone ground-state
    /// amplitude.
    fn towards(mu: &DVector<Complex64>, state: &StateVector) -> Leg {
        let c = mu.dotc(state.amps());
        let theta = c.norm().clamp(0.0, 1.0).acos();
        let beta = if c.norm() > 1e-14 { c.arg() } else { 0.0 };
        let resid = state.amps() - mu * c;
        let s = resid.norm();
        let nu = if s > 1e-14 { resid / Complex64::from(s) } else { DVector::zeros(mu.len()) };
        Leg { mu: mu.clone(), nu, theta, beta }
    }

    fn at(&self, u: f64, n: usize) -> StateVector {
        let phase = Complex64::new(0.0, u * self.beta).exp();
        let amps = &self.mu * (phase * Complex64::from((u * self.theta).cos()))
            + &self.nu * Complex64::from((u * self.theta).sin());
        StateVector::normalized(n, amps).expect("leg states are unit")
    }

    /// sup_u ||g'(u)|| = sqrt(theta^2 + beta^2) bounds the leg's Lipschitz
    /// constant.
    fn lipschitz(&self) -> f64 {
        (self.theta * self.theta + self.beta * self.beta).sqrt()
    }
}

/// Traverse from `psi` to `phi` through the low-energy space of `H`
/// (`0 <= H <= I`, endpoint energies at most `eta`), with final distance and
/// energy excursion at most `delta`.
pub fn traverse_ground_space(
    h: &DenseOperator,
    psi: &StateVector,
    phi: &StateVector,
    eta: f64,
    delta: f64,
) -> Result<FollowReport> {
    h.require_hermitian()?;
    if delta <= 0.0 {
        return Err(Error::EpsilonOutOfRange(format!("delta = {delta} must be positive")));
    }
    let (values, _) = h.eigendecomposition()?;
    let lo = *values.first().unwrap();
    let hi = *values.last().unwrap();
    if lo < -1e-9 || hi > 1.0 + 1e-9 {
        return Err(Error::EnergyPreconditionViolated(format!(
            "spectrum [{lo:.3e}, {hi:.3e}] outside [0, 1]"
        )));
    }
    let e_psi = h.expectation(psi.amps()).re;
    let e_phi = h.expectation(phi.amps()).re;
    if e_psi > eta + 1e-9 || e_phi > eta + 1e-9 {
        return Err(Error::EnergyPreconditionViolated(format!(
            "endpoint energies {e_psi:.3e}, {e_phi:.3e} exceed eta = {eta:.3e}"
        )));
    }

    let (_, mu) = h.eig_low()?;
    // Re-phase mu to the circular midpoint of the two endpoint overlap
    // phases; each leg then carries at most half the phase, shortening the
    // path. Any global phase of mu is a valid ground state.
    let b1 = mu.dotc(psi.amps()).arg();
    let b2 = mu.dotc(phi.amps()).arg();
    let mut half = (b2 - b1) / 2.0;
    while half > std::f64::consts::FRAC_PI_2 {
        half -= std::f64::consts::PI;
    }
    while half < -std::f64::consts::FRAC_PI_2 {
        half += std::f64::consts::PI;
    }
    let mu = &mu * Complex64::new(0.0, b1 + half).exp();
    let leg_in = Leg::towards(&mu, psi);
    let leg_out = Leg::towards(&mu, phi);
    let n = psi.n();
    let k = 2.0 * leg_in.lipschitz().max(leg_out.lipschitz());
    let path = Path::new(n, k.max(1e-9), move |t| {
        if t <= 0.5 {
            leg_in.at(1.0 - 2.0 * t, n) // psi at t=0, mu at t=1/2
        } else {
            leg_out.at(2.0 * t - 1.0, n)
        }
    });

    let mut eps = delta / 2.0;
    for _ in 0..8 {
        let report = follow_path(&path, eps, Some(h))?;
        let max_energy = report.max_energy().unwrap_or(f64::NEG_INFINITY);
        let final_dist = {
            let end = report.sequence.apply(psi)?;
            end.distance_to(phi)
        };
        if final_dist <= delta && max_energy <= eta + delta + 1e-12 {
            return Ok(report);
        }
        eps /= 2.0;
    }
    Err(Error::SubdivisionLimit(format!(
        "could not meet delta = {delta} within the refinement budget"
    )))
}

/// Scale a PSD Hamiltonian down to `H <= I`, returning the factor applied.
///
/// Already-bounded operators pass through with factor 1, so thresholds
/// transform consistently.
pub fn rescale_hamiltonian(h: &DenseOperator) -> Result<(DenseOperator, f64)> {
    h.require_hermitian()?;
    let (values, _) = h.eigendecomposition()?;
    let lo = *values.first().unwrap();
    let hi = *values.last().unwrap();
    if lo < -1e-9 {
        return Err(Error::NegativeEigenvalue(format!("lambda_min = {lo:.3e}")));
    }
    if hi <= 1.0 + 1e-12 {
        return Ok((h.clone(), 1.0));
    }
    Ok((h.scale(Complex64::from(1.0 / hi)), hi))
}
