//! Depth-4 product decomposition of `exp(itH)` for `H = (1/2i)[h1, h2]`
//! with anti-commuting involutions `h1, h2`.
//!
//! Since `h1`, `h2` anti-commute and square to identity, the triple
//! `(h1, h2, h3 := (1/2i)[h1, h2])` satisfies exactly the multiplication
//! rules of `(X, Y, Z)`. The pulse times `(t1, t2)` with
//!
//! ```text
//! exp(itH) = exp(i t1 h1) exp(i t2 h2) exp(i t2 h1) exp(i t1 h2)
//! ```
//!
//! can therefore be found on the 2x2 model. Writing `u = 2 t1`, `v = 2 t2`,
//! the quaternion components of the four-factor product reduce the problem to
//!
//! ```text
//! sin(u) + cos(u) sin(v)            = 0
//! cos(u) - cos(v) - sin(u) sin(v)   = 2 sin(t)
//! ```
//!
//! Substituting `tan(u) = -sin(v) =: -w` collapses this to a single monotone
//! equation per branch: `sqrt(1+w^2) -+ sqrt(1-w^2) = 2 sin(t)` with the `-`
//! branch for `2 sin(t) <= sqrt(2)` and the `+` branch (second-quadrant `v`)
//! above. The root is bracketed by bisection and polished by Newton; the
//! solution satisfies `|t1| + |t2| <= sqrt(2t)` on the whole admissible range
//! `0 <= t <= pi/2`.

use crate::qcore::PauliWord;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A solved depth-4 split: `exp(itH) = e^{i t1 h1} e^{i t2 h2} e^{i t2 h1}
/// e^{i t1 h2}` with `[h1, h2] = 2i H`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Depth4Split {
    pub h1: PauliWord,
    pub h2: PauliWord,
    pub t1: f64,
    pub t2: f64,
    /// Position at which the halves anti-commute.
    pub pivot: usize,
}

impl Depth4Split {
    /// The four factors in application order (rightmost factor first).
    pub fn factors(&self) -> [(PauliWord, f64); 4] {
        [
            (self.h2.clone(), self.t1),
            (self.h1.clone(), self.t2),
            (self.h2.clone(), self.t2),
            (self.h1.clone(), self.t1),
        ]
    }

    pub fn pulse_sum(&self) -> f64 {
        self.t1.abs() + self.t2.abs()
    }
}

fn residual(u: f64, v: f64, t: f64) -> (f64, f64) {
    (
        u.sin() + u.cos() * v.sin(),
        u.cos() - v.cos() - u.sin() * v.sin() - 2.0 * t.sin(),
    )
}

/// Solve the reduced 2x2 problem for `0 <= t <= pi/2`.
fn solve_pulses(t: f64) -> Result<(f64, f64)> {
    if t == 0.0 {
        return Ok((0.0, 0.0));
    }
    let target = 2.0 * t.sin();
    let sqrt2 = 2.0f64.sqrt();
    // Bisection on w = sin(v) in [0, 1]; each branch is monotone.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let low_branch = target <= sqrt2;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g = if low_branch {
            (1.0 + mid * mid).sqrt() - (1.0 - mid * mid).sqrt() - target
        } else {
            (1.0 + mid * mid).sqrt() + (1.0 - mid * mid).sqrt() - target
        };
        // The low branch increases with w, the high branch decreases.
        if (g < 0.0) == low_branch {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let w = 0.5 * (lo + hi).min(2.0);
    let mut v = if low_branch {
        w.clamp(-1.0, 1.0).asin()
    } else {
        std::f64::consts::PI - w.clamp(-1.0, 1.0).asin()
    };
    let mut u = -w.atan();
    // Newton polish to machine precision.
    for _ in 0..60 {
        let (f1, f2) = residual(u, v, t);
        if f1.abs().max(f2.abs()) < 1e-15 {
            break;
        }
        let j11 = u.cos() - u.sin() * v.sin();
        let j12 = u.cos() * v.cos();
        let j21 = -u.sin() - u.cos() * v.sin();
        let j22 = v.sin() - u.sin() * v.cos();
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-300 {
            return Err(Error::NoSolution(format!("singular Jacobian at t = {t}")));
        }
        u -= (f1 * j22 - f2 * j12) / det;
        v -= (f2 * j11 - f1 * j21) / det;
    }
    let (f1, f2) = residual(u, v, t);
    if f1.abs().max(f2.abs()) > 1e-12 {
        return Err(Error::NoSolution(format!(
            "residual {:.3e} after polish at t = {t}",
            f1.abs().max(f2.abs())
        )));
    }
    Ok((0.5 * u, 0.5 * v))
}

fn anticommute_pivot(h1: &PauliWord, h2: &PauliWord) -> Option<usize> {
    h1.0.iter()
        .zip(&h2.0)
        .position(|(a, b)| !a.commutes_with(*b))
}

/// Solve the depth-4 decomposition for anti-commuting Pauli words and
/// `|t| <= pi/2`.
///
/// Negative `t` is handled by decomposing `-t` and inverting the product,
/// which swaps the roles of `h1`/`h2` and negates both pulses.
pub fn depth4_solve(h1: &PauliWord, h2: &PauliWord, t: f64) -> Result<Depth4Split> {
    if h1.len() != h2.len() {
        return Err(Error::DimensionMismatch(format!(
            "halves of length {} and {}",
            h1.len(),
            h2.len()
        )));
    }
    if h1.commutes_with(h2) {
        return Err(Error::NoSolution(format!("{h1} and {h2} commute")));
    }
    if t.abs() > std::f64::consts::FRAC_PI_2 + 1e-15 {
        return Err(Error::PulseOutOfRange(format!("|t| = {} > pi/2", t.abs())));
    }
    let pivot = anticommute_pivot(h1, h2).expect("anti-commuting words differ somewhere");
    let (t1, t2) = solve_pulses(t.abs())?;
    let split = if t >= 0.0 {
        Depth4Split { h1: h1.clone(), h2: h2.clone(), t1, t2, pivot }
    } else {
        // Inverse of the |t| decomposition, rewritten in the same 4-factor
        // shape: swap the halves and negate the pulses.
        Depth4Split { h1: h2.clone(), h2: h1.clone(), t1: -t1, t2: -t2, pivot }
    };
    let bound = (2.0 * t.abs()).sqrt();
    if split.pulse_sum() > bound + 1e-12 {
        return Err(Error::NoSolution(format!(
            "pulse sum {:.6} exceeds sqrt(2t) = {bound:.6}",
            split.pulse_sum()
        )));
    }
    Ok(split)
}
