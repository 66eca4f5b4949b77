//! Alternating minimization of product-state energy over a bipartition.
//!
//! The objective is a sum of product terms `w A (x) B` plus an optional
//! symmetric-subspace penalty. Fixing one side makes the other side's
//! optimum the ground state of an effective operator, so each sweep is an
//! eigenproblem; restarts guard against the nonconvexity.

use crate::qcore::{DenseOperator, StateVector};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// One product term `weight * left (x) right`.
pub struct DenseProductTerm {
    pub weight: f64,
    pub left: DenseOperator,
    pub right: DenseOperator,
}

/// A separable-energy problem over two sides of `n_side` qubits each.
pub struct SeparableProblem {
    pub n_side: usize,
    pub terms: Vec<DenseProductTerm>,
    /// Adds `sym_weight * (1 - |<a|b>|^2) / 2`.
    pub sym_weight: f64,
}

impl SeparableProblem {
    pub fn side_dim(&self) -> usize {
        1 << self.n_side
    }

    pub fn energy(&self, a: &StateVector, b: &StateVector) -> Result<f64> {
        let mut e = 0.0;
        for t in &self.terms {
            e += t.weight * t.left.expectation(a.amps()).re * t.right.expectation(b.amps()).re;
        }
        e += self.sym_weight * (1.0 - a.inner(b).norm_sqr()) / 2.0;
        Ok(e)
    }

    fn effective(&self, own_left: bool, other: &StateVector) -> DenseOperator {
        let d = self.side_dim();
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        for t in &self.terms {
            let (own, opp) = if own_left { (&t.left, &t.right) } else { (&t.right, &t.left) };
            let c = opp.expectation(other.amps()).re * t.weight;
            m += own.matrix() * Complex64::from(c);
        }
        if self.sym_weight != 0.0 {
            for i in 0..d {
                m[(i, i)] += Complex64::from(self.sym_weight * 0.5);
            }
            for r in 0..d {
                let br = other.amps()[r];
                if br.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    m[(r, c)] -=
                        Complex64::from(self.sym_weight * 0.5) * br * other.amps()[c].conj();
                }
            }
        }
        DenseOperator::from_matrix(m)
    }

    /// Best product pair over seeded restarts; the returned energy is an
    /// upper bound on the true separable minimum.
    pub fn minimize(&self, restarts: usize, seed: u64) -> Result<(f64, StateVector, StateVector)> {
        if self.n_side > 10 {
            return Err(Error::DenseLimitExceeded { n: self.n_side, cap: 10 });
        }
        let d = self.side_dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: Option<(f64, StateVector, StateVector)> = None;
        for _ in 0..restarts.max(1) {
            let mut a = random_side(d, self.n_side, &mut rng);
            let mut b = random_side(d, self.n_side, &mut rng);
            let mut energy = self.energy(&a, &b)?;
            let mut converged = false;
            for _ in 0..500 {
                let (_, va) = self.effective(true, &b).eig_low()?;
                a = StateVector::normalized(self.n_side, va)?;
                let (_, vb) = self.effective(false, &a).eig_low()?;
                b = StateVector::normalized(self.n_side, vb)?;
                let next = self.energy(&a, &b)?;
                let gain = energy - next;
                energy = next;
                if gain.abs() <= 1e-9 {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NoConvergence(
                    "alternating sweep did not settle within 500 iterations".into(),
                ));
            }
            if best.as_ref().is_none_or(|(e, _, _)| energy < *e) {
                best = Some((energy, a, b));
            }
        }
        Ok(best.expect("at least one restart"))
    }
}

fn random_side(dim: usize, n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let amps = DVector::from_iterator(
        dim,
        (0..dim).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)),
    );
    StateVector::normalized(n, amps).expect("random state is normalizable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_problem_minimizes_to_zero() {
        let p = SeparableProblem { n_side: 1, terms: vec![], sym_weight: 0.0 };
        let (e, _, _) = p.minimize(4, 1).unwrap();
        assert_eq!(e, 0.0);
    }

    #[test]
    fn sum_form_has_closed_minimum() {
        // H = A (x) I + I (x) B: separable minimum = lmin(A) + lmin(B).
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..3 {
            let rand_herm = |rng: &mut rand_chacha::ChaCha8Rng| {
                let a = DMatrix::from_fn(4, 4, |_, _| {
                    Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                });
                DenseOperator::from_matrix((&a + a.adjoint()) * Complex64::from(0.5))
            };
            let a = rand_herm(&mut rng);
            let b = rand_herm(&mut rng);
            let (la, _) = a.eig_low().unwrap();
            let (lb, _) = b.eig_low().unwrap();
            let p = SeparableProblem {
                n_side: 2,
                terms: vec![
                    DenseProductTerm { weight: 1.0, left: a, right: DenseOperator::identity(4) },
                    DenseProductTerm { weight: 1.0, left: DenseOperator::identity(4), right: b },
                ],
                sym_weight: 0.0,
            };
            let (e, _, _) = p.minimize(8, 5).unwrap();
            assert!((e - (la + lb)).abs() < 1e-6, "{e} vs {}", la + lb);
        }
    }

    #[test]
    fn single_qubit_diagonal_matches_bloch_grid() {
        // Diagonal 2-qubit instance: energy depends only on the two polar
        // angles, so a 1e-3 grid over them is an exhaustive oracle.
        let d0 = DenseOperator::from_matrix(DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::from(0.3),
            Complex64::from(-0.7),
        ])));
        let d1 = DenseOperator::from_matrix(DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::from(-0.2),
            Complex64::from(0.9),
        ])));
        let cross0 = DenseOperator::from_matrix(DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::from(0.8),
            Complex64::from(0.1),
        ])));
        let cross1 = DenseOperator::from_matrix(DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::from(-0.5),
            Complex64::from(0.4),
        ])));
        let p = SeparableProblem {
            n_side: 1,
            terms: vec![
                DenseProductTerm { weight: 1.0, left: d0, right: DenseOperator::identity(2) },
                DenseProductTerm { weight: 1.0, left: DenseOperator::identity(2), right: d1 },
                DenseProductTerm { weight: 1.0, left: cross0, right: cross1 },
            ],
            sym_weight: 0.0,
        };
        // Grid oracle over (theta_a, theta_b) at 1e-3 resolution.
        let steps = (std::f64::consts::PI / 1e-3).ceil() as usize;
        let eval = |ta: f64, tb: f64| -> f64 {
            let pa = (ta / 2.0).cos().powi(2);
            let pb = (tb / 2.0).cos().powi(2);
            let ea0 = 0.3 * pa - 0.7 * (1.0 - pa);
            let eb1 = -0.2 * pb + 0.9 * (1.0 - pb);
            let ec0 = 0.8 * pa + 0.1 * (1.0 - pa);
            let ec1 = -0.5 * pb + 0.4 * (1.0 - pb);
            ea0 + eb1 + ec0 * ec1
        };
        let mut grid_min = f64::INFINITY;
        for i in 0..=steps {
            let ta = std::f64::consts::PI * i as f64 / steps as f64;
            for j in 0..=steps {
                let tb = std::f64::consts::PI * j as f64 / steps as f64;
                let e = eval(ta, tb);
                if e < grid_min {
                    grid_min = e;
                }
            }
        }
        let (e, _, _) = p.minimize(16, 9).unwrap();
        assert!((e - grid_min).abs() < 1e-5, "{e} vs grid {grid_min}");
    }
}
