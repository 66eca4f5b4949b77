//! Dense complex operators: norms, Hermitian eigensolvers, exponentials.

use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Dimension above which `eig_low` switches from full dense decomposition to
/// the iterative Lanczos path.
pub const FULL_EIG_DIM: usize = 1 << 10;

/// A dense complex operator on a 2^n-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    matrix: DMatrix<Complex64>,
    hermitian: bool,
}

/// Spectral, Frobenius, and trace norms of an operator.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Norms {
    pub spectral: f64,
    pub frobenius: f64,
    pub trace: f64,
}

impl DenseOperator {
    /// Wrap a square matrix, detecting Hermiticity.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> DenseOperator {
        assert_eq!(matrix.nrows(), matrix.ncols(), "operator must be square");
        let dim = matrix.nrows();
        let hermitian = hermitian_deviation(&matrix) <= 1e-12;
        DenseOperator { dim, matrix, hermitian }
    }

    /// Build from row-major entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<DenseOperator> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(DenseOperator::from_matrix(DMatrix::from_row_iterator(
            dim,
            dim,
            entries.iter().copied(),
        )))
    }

    pub fn zeros(dim: usize) -> DenseOperator {
        DenseOperator::from_matrix(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> DenseOperator {
        DenseOperator::from_matrix(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Require the Hermitian flag, with the measured deviation in the error.
    pub fn require_hermitian(&self) -> Result<()> {
        if self.hermitian {
            Ok(())
        } else {
            Err(Error::NotHermitian(format!(
                "max |H - H^dag| entry = {:.3e}",
                hermitian_deviation(&self.matrix)
            )))
        }
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator::from_matrix(self.matrix.adjoint())
    }

    pub fn scale(&self, c: Complex64) -> DenseOperator {
        DenseOperator::from_matrix(&self.matrix * c)
    }

    pub fn add(&self, other: &DenseOperator) -> DenseOperator {
        DenseOperator::from_matrix(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &DenseOperator) -> DenseOperator {
        DenseOperator::from_matrix(&self.matrix - &other.matrix)
    }

    pub fn mul(&self, other: &DenseOperator) -> DenseOperator {
        DenseOperator::from_matrix(&self.matrix * &other.matrix)
    }

    pub fn kron(&self, other: &DenseOperator) -> DenseOperator {
        DenseOperator::from_matrix(self.matrix.kronecker(&other.matrix))
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.matrix * v
    }

    /// Expectation value <v|M|v>.
    pub fn expectation(&self, v: &DVector<Complex64>) -> Complex64 {
        v.dotc(&(&self.matrix * v))
    }

    /// Max entrywise deviation of U^dag U from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.matrix.adjoint() * &self.matrix;
        let id = DMatrix::<Complex64>::identity(self.dim, self.dim);
        (prod - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral, Frobenius, and trace norms.
    ///
    /// Spectral = largest singular value, Frobenius = entrywise 2-norm,
    /// trace = sum of singular values.
    pub fn norms(&self) -> Result<Norms> {
        if self.matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("operator entry".into()));
        }
        let frobenius = self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let svd = self.matrix.clone().svd(false, false);
        let spectral = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let trace = svd.singular_values.iter().sum();
        Ok(Norms { spectral, frobenius, trace })
    }

    /// Spectral norm only.
    pub fn spectral_norm(&self) -> f64 {
        self.matrix
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    /// Full Hermitian eigendecomposition, eigenvalues ascending.
    pub fn eigendecomposition(&self) -> Result<(Vec<f64>, Vec<DVector<Complex64>>)> {
        self.require_hermitian()?;
        let eig = self.matrix.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..self.dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = order
            .iter()
            .map(|&i| DVector::from_column_slice(eig.eigenvectors.column(i).as_slice()))
            .collect();
        Ok((values, vectors))
    }

    /// Minimum eigenvalue and a corresponding unit eigenvector.
    ///
    /// Uses the full dense decomposition up to dimension 2^10 and a Lanczos
    /// iteration with full reorthogonalization above; the residual
    /// ||Hv - lambda v|| is checked against `1e-9 * ||H||` either way.
    pub fn eig_low(&self) -> Result<(f64, DVector<Complex64>)> {
        self.require_hermitian()?;
        let (lambda, vec) = if self.dim <= FULL_EIG_DIM {
            let (values, vectors) = self.eigendecomposition()?;
            (values[0], vectors.into_iter().next().unwrap())
        } else {
            let m = &self.matrix;
            lanczos_min(self.dim, |v| m * v, 400)?
        };
        let scale = self
            .matrix
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
            .max(1.0);
        let residual = (&self.matrix * &vec - &vec * Complex64::from(lambda)).norm();
        if residual > 1e-9 * scale * (self.dim as f64).sqrt() {
            return Err(Error::NoConvergence(format!(
                "eig_low residual {residual:.3e} (dim {})",
                self.dim
            )));
        }
        Ok((lambda, vec))
    }

    /// `exp(i * scale * H)` for Hermitian `H`, via spectral decomposition.
    pub fn expm_i(&self, scale: f64) -> Result<DenseOperator> {
        self.require_hermitian()?;
        let eig = self.matrix.clone().symmetric_eigen();
        let phases: Vec<Complex64> = eig
            .eigenvalues
            .iter()
            .map(|&l| Complex64::new(0.0, scale * l).exp())
            .collect();
        let v = &eig.eigenvectors;
        let mut out = DMatrix::<Complex64>::zeros(self.dim, self.dim);
        for k in 0..self.dim {
            let col = v.column(k);
            // out += phase_k |v_k><v_k|
            for r in 0..self.dim {
                let a = col[r] * phases[k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..self.dim {
                    out[(r, c)] += a * col[c].conj();
                }
            }
        }
        Ok(DenseOperator::from_matrix(out))
    }

    /// Max entrywise |self - other|.
    pub fn entrywise_distance(&self, other: &DenseOperator) -> f64 {
        (&self.matrix - &other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut max = 0.0f64;
    for r in 0..m.nrows() {
        for c in r..m.ncols() {
            let d = (m[(r, c)] - m[(c, r)].conj()).norm();
            if d > max {
                max = d;
            }
        }
    }
    max
}

/// Minimum eigenpair of a Hermitian operator given only a matvec closure.
///
/// Lanczos with full reorthogonalization and a deterministic start vector;
/// extremal Ritz pairs converge first, so the smallest Ritz value is taken.
pub fn lanczos_min<F>(dim: usize, matvec: F, max_iter: usize) -> Result<(f64, DVector<Complex64>)>
where
    F: Fn(&DVector<Complex64>) -> DVector<Complex64>,
{
    use rand::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6c616e);
    let mut v = DVector::from_iterator(
        dim,
        (0..dim).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)),
    );
    v /= Complex64::from(v.norm());

    let m = max_iter.min(dim);
    let mut basis: Vec<DVector<Complex64>> = vec![v.clone()];
    let mut alpha: Vec<f64> = Vec::with_capacity(m);
    let mut beta: Vec<f64> = Vec::with_capacity(m);

    for j in 0..m {
        let mut w = matvec(&basis[j]);
        let a = basis[j].dotc(&w).re;
        alpha.push(a);
        w -= &basis[j] * Complex64::from(a);
        if j > 0 {
            let b = beta[j - 1];
            w -= &basis[j - 1] * Complex64::from(b);
        }
        // Full reorthogonalization keeps the basis numerically orthonormal.
        for q in &basis {
            let overlap = q.dotc(&w);
            w -= q * overlap;
        }
        let b = w.norm();
        if b < 1e-14 {
            break;
        }
        beta.push(b);
        basis.push(w / Complex64::from(b));
    }

    let k = alpha.len();
    let mut tri = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        tri[(i, i)] = alpha[i];
        if i + 1 < k {
            tri[(i, i + 1)] = beta[i];
            tri[(i + 1, i)] = beta[i];
        }
    }
    let eig = tri.symmetric_eigen();
    let mut min_idx = 0;
    for i in 1..k {
        if eig.eigenvalues[i] < eig.eigenvalues[min_idx] {
            min_idx = i;
        }
    }
    let lambda = eig.eigenvalues[min_idx];
    let coeffs = eig.eigenvectors.column(min_idx);
    let mut ground = DVector::<Complex64>::zeros(dim);
    for (j, q) in basis.iter().take(k).enumerate() {
        ground += q * Complex64::from(coeffs[j]);
    }
    let norm = ground.norm();
    if norm < 1e-12 {
        return Err(Error::NoConvergence("Lanczos produced a null Ritz vector".into()));
    }
    ground /= Complex64::from(norm);
    Ok((lambda, ground))
}
