//! Discretizing Lipschitz paths on the unit hypersphere into 2-local gates.

use super::mapvec::map_close_vectors;
use crate::qcore::{DenseOperator, GateSequence, StateVector};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Hard cap on the adaptive subdivision count.
pub const SUBDIVISION_CAP: usize = 1 << 24;
/// Above this many gates, pointwise checks thin to a stride (segment
/// boundaries always included).
const POINTWISE_DENSE_LIMIT: usize = 1_000_000;
/// Energy sampling density limit.
const ENERGY_DENSE_LIMIT: usize = 100_000;

/// A path on the unit hypersphere with a declared Lipschitz constant.
pub struct Path {
    pub n: usize,
    pub lipschitz: f64,
    eval: Box<dyn Fn(f64) -> StateVector + Send + Sync>,
}

impl Path {
    pub fn new(
        n: usize,
        lipschitz: f64,
        eval: impl Fn(f64) -> StateVector + Send + Sync + 'static,
    ) -> Path {
        Path { n, lipschitz, eval: Box::new(eval) }
    }

    pub fn at(&self, t: f64) -> StateVector {
        (self.eval)(t.clamp(0.0, 1.0))
    }

    /// Constant path at a fixed state.
    pub fn constant(state: StateVector) -> Path {
        let n = state.n();
        Path::new(n, 0.0, move |_| state.clone())
    }

    /// Geodesic between two non-antipodal states (spherical interpolation
    /// with respect to the real part of the overlap). The Lipschitz constant
    /// is exactly the subtended angle.
    pub fn great_circle(psi: StateVector, phi: StateVector) -> Result<Path> {
        if psi.n() != phi.n() {
            return Err(Error::DimensionMismatch(format!(
                "endpoints on {} vs {} qubits",
                psi.n(),
                phi.n()
            )));
        }
        let n = psi.n();
        let omega = psi.inner(&phi).re.clamp(-1.0, 1.0).acos();
        if omega < 1e-12 {
            return Ok(Path::constant(psi));
        }
        if omega > std::f64::consts::PI - 1e-6 {
            return Err(Error::DegeneratePair(format!(
                "great-circle endpoints subtend {omega:.6}, too close to antipodal"
            )));
        }
        let sin_omega = omega.sin();
        Ok(Path::new(n, omega, move |t| {
            let a = ((1.0 - t) * omega).sin() / sin_omega;
            let b = (t * omega).sin() / sin_omega;
            let amps = psi.amps() * num_complex::Complex64::from(a)
                + phi.amps() * num_complex::Complex64::from(b);
            StateVector::normalized(n, amps).expect("slerp of unit vectors is unit")
        }))
    }

    /// Piecewise geodesic through the listed states, uniformly parametrized
    /// per segment.
    pub fn piecewise_linear(points: Vec<StateVector>) -> Result<Path> {
        if points.len() < 2 {
            return Err(Error::MalformedInput("need at least two states".into()));
        }
        let n = points[0].n();
        let mut segments = Vec::with_capacity(points.len() - 1);
        let mut max_omega = 0.0f64;
        for pair in points.windows(2) {
            let seg = Path::great_circle(pair[0].clone(), pair[1].clone())?;
            max_omega = max_omega.max(seg.lipschitz);
            segments.push(seg);
        }
        let count = segments.len();
        let k = max_omega * count as f64;
        Ok(Path::new(n, k, move |t| {
            let scaled = (t * count as f64).min(count as f64 - 1e-12);
            let idx = scaled.floor() as usize;
            segments[idx].at(scaled - idx as f64)
        }))
    }

    /// Sampled Lipschitz check: `||f(a) - f(b)|| <= K|a-b| + 1e-9` on random
    /// pairs, plus unit norm at the samples (enforced by `StateVector`).
    pub fn check_lipschitz(&self, samples: usize, seed: u64) -> Result<()> {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = rng.random::<f64>();
            let b = rng.random::<f64>();
            let d = self.at(a).distance_to(&self.at(b));
            if d > self.lipschitz * (a - b).abs() + 1e-9 {
                return Err(Error::MalformedInput(format!(
                    "Lipschitz violation: ||f({a:.4}) - f({b:.4})|| = {d:.4e} > K|a-b|"
                )));
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Path")
            .field("n", &self.n)
            .field("lipschitz", &self.lipschitz)
            .finish()
    }
}

/// Result of following a path: the sequence, measured pointwise error, and
/// optional per-step energies.
#[derive(Debug)]
pub struct FollowReport {
    pub sequence: GateSequence,
    /// Gate count M.
    pub m: usize,
    /// max over checked steps t of || psi_t - f(tau_t) ||, where tau_t is
    /// the reference parameter pinned to i/N' at interval boundaries and
    /// uniform inside each interval (equal to t/M for uniform intervals).
    pub pointwise_err: f64,
    /// (step, error) checkpoints backing `pointwise_err`.
    pub checkpoints: Vec<(usize, f64)>,
    /// (step, energy) samples when an observable was supplied.
    pub energies: Option<Vec<(usize, f64)>>,
    /// Final subdivision count N'.
    pub subdivisions: usize,
    /// || psi_M - f(1) ||.
    pub endpoint_err: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FollowSummary {
    pub m: usize,
    pub pointwise_err: f64,
    pub endpoint_err: f64,
    pub subdivisions: usize,
    pub max_energy: Option<f64>,
}

impl FollowReport {
    pub fn max_energy(&self) -> Option<f64> {
        self.energies
            .as_ref()
            .map(|es| es.iter().map(|(_, e)| *e).fold(f64::NEG_INFINITY, f64::max))
    }

    pub fn summary(&self) -> FollowSummary {
        FollowSummary {
            m: self.m,
            pointwise_err: self.pointwise_err,
            endpoint_err: self.endpoint_err,
            subdivisions: self.subdivisions,
            max_energy: self.max_energy(),
        }
    }
}

fn build_and_simulate(
    path: &Path,
    n_prime: usize,
    observable: Option<&DenseOperator>,
) -> Result<FollowReport> {
    let n = path.n;
    // Discretize and synthesize each interval.
    let mut sequence = GateSequence::empty(n);
    let mut boundaries = vec![0usize];
    for i in 0..n_prime {
        let a = path.at(i as f64 / n_prime as f64);
        let b = path.at((i + 1) as f64 / n_prime as f64);
        let gap = a.distance_to(&b);
        let (seg, _) = map_close_vectors(&a, &b, gap + 1e-12)?;
        sequence.extend(seg)?;
        boundaries.push(sequence.len());
    }
    let m = sequence.len();

    // Reference parameter for gate step t: interval boundaries land exactly
    // on the discretization points i/N', and steps inside interval i
    // interpolate uniformly. When every interval emits the same gate count
    // this is exactly t/M.
    let param_of = |t: usize, seg: usize| -> f64 {
        let (lo, hi) = (boundaries[seg], boundaries[seg + 1]);
        let inner = if hi > lo { (t - lo) as f64 / (hi - lo) as f64 } else { 1.0 };
        (seg as f64 + inner) / n_prime as f64
    };

    let stride = if m > POINTWISE_DENSE_LIMIT { m.div_ceil(POINTWISE_DENSE_LIMIT) } else { 1 };
    let energy_stride = if m > ENERGY_DENSE_LIMIT { m.div_ceil(ENERGY_DENSE_LIMIT) } else { 1 };
    let mut seg = 0usize;
    let mut checkpoints = Vec::new();
    let mut energies = observable.map(|_| Vec::new());
    let mut current = path.at(0.0).amps().clone();
    for t in 0..=m {
        if t > 0 {
            sequence.gates()[t - 1].apply_to_amps(n, &mut current);
        }
        while seg + 1 < n_prime && t > boundaries[seg + 1] {
            seg += 1;
        }
        let at_boundary = t == boundaries[seg] || t == boundaries[seg + 1];
        if t % stride == 0 || at_boundary || t == m {
            let reference = path.at(param_of(t, seg));
            let err = (&current - reference.amps()).norm();
            checkpoints.push((t, err));
        }
        if let (Some(es), Some(obs)) = (energies.as_mut(), observable) {
            if t % energy_stride == 0 || at_boundary || t == m {
                es.push((t, obs.expectation(&current).re));
            }
        }
    }
    let pointwise_err = checkpoints.iter().map(|(_, e)| *e).fold(0.0, f64::max);
    let endpoint_err = (&current - path.at(1.0).amps()).norm();
    Ok(FollowReport {
        sequence,
        m,
        pointwise_err,
        checkpoints,
        energies,
        subdivisions: n_prime,
        endpoint_err,
    })
}

/// Follow a path to pointwise accuracy `eps`, verified by simulation.
///
/// Subdivision starts at `ceil(K / eps)` and doubles until the simulated
/// pointwise error meets `eps` (the proof's constants are unknowable, so
/// verification is by measurement), up to a cap of 2^24 intervals.
pub fn follow_path(
    path: &Path,
    eps: f64,
    observable: Option<&DenseOperator>,
) -> Result<FollowReport> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::EpsilonOutOfRange(format!("eps = {eps}")));
    }
    let mut n_prime = ((path.lipschitz / eps).ceil() as usize).max(1);
    loop {
        match build_and_simulate(path, n_prime, observable) {
            Ok(report) if report.pointwise_err <= eps => return Ok(report),
            // Too coarse: either measured error too large or a segment was
            // too wide for the close-vector machinery.
            Ok(_) | Err(Error::DegeneratePair(_)) | Err(Error::NormTooLarge(_)) => {}
            Err(other) => return Err(other),
        }
        n_prime *= 2;
        if n_prime > SUBDIVISION_CAP {
            return Err(Error::SubdivisionLimit(format!(
                "N' > {SUBDIVISION_CAP} without meeting eps = {eps}"
            )));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_path_has_zero_error() {
        let path = Path::constant(StateVector::basis(2, 2));
        let report = follow_path(&path, 0.05, None).unwrap();
        assert!(report.pointwise_err <= 1e-12);
    }

    #[test]
    fn single_qubit_great_circle() {
        let path = Path::great_circle(StateVector::basis(1, 0), StateVector::basis(1, 1)).unwrap();
        path.check_lipschitz(50, 3).unwrap();
        let report = follow_path(&path, 0.05, None).unwrap();
        assert!(report.pointwise_err <= 0.05, "err {}", report.pointwise_err);
        assert!(report.endpoint_err <= 0.05);
        for g in report.sequence.gates() {
            assert!(g.qubits().len() <= 2);
        }
    }

    #[test]
    fn two_qubit_great_circle_tighter() {
        let path = Path::great_circle(StateVector::basis(2, 0), StateVector::basis(2, 3)).unwrap();
        let report = follow_path(&path, 0.05, None).unwrap();
        assert!(report.pointwise_err <= 0.05);
    }

    #[test]
    fn refinement_does_not_regress() {
        // Doubling the subdivision count never worsens the measured error
        // beyond tolerance.
        let path = Path::great_circle(StateVector::basis(1, 0), StateVector::basis(1, 1)).unwrap();
        let coarse = build_and_simulate(&path, 64, None).unwrap();
        let fine = build_and_simulate(&path, 128, None).unwrap();
        assert!(fine.pointwise_err <= coarse.pointwise_err + 1e-9);
    }

    #[test]
    fn piecewise_path_hits_waypoints() {
        let pts = vec![
            StateVector::basis(1, 0),
            StateVector::normalized(
                1,
                nalgebra::DVector::from_vec(vec![
                    num_complex::Complex64::from(1.0),
                    num_complex::Complex64::from(1.0),
                ]),
            )
            .unwrap(),
            StateVector::basis(1, 1),
        ];
        let path = Path::piecewise_linear(pts.clone()).unwrap();
        assert!(path.at(0.5).distance_to(&pts[1]) < 1e-12);
        path.check_lipschitz(50, 4).unwrap();
    }

    #[test]
    fn bad_epsilon_rejected() {
        let path = Path::constant(StateVector::basis(1, 0));
        assert!(matches!(
            follow_path(&path, 0.0, None),
            Err(Error::EpsilonOutOfRange(_))
        ));
    }
}
