//! Centralized tolerances and run configuration.
//!
//! Every numeric threshold used in contracts and verification lives here,
//! so acceptance runs have a single tuning point.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Named tolerances with the toolkit-wide defaults.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tolerances {
    /// State-vector normalization: | ||psi||^2 - 1 |.
    pub unit_norm: f64,
    /// Max entrywise deviation from the conjugate transpose.
    pub hermitian: f64,
    /// Max entrywise deviation of U^dag U from identity.
    pub unitary: f64,
    /// Pulse annotation consistency: || gate - exp(i t P) ||.
    pub pulse_annotation: f64,
    /// Exact Pauli-rotation decomposition product error.
    pub decomp_product: f64,
    /// Depth-4 split product error.
    pub depth4_product: f64,
    /// Pauli-basis reconstruction error.
    pub reconstruction: f64,
    /// Eigensolver residual, relative to the spectral norm.
    pub eig_residual: f64,
    /// Projector idempotence check.
    pub projector_idem: f64,
    /// Row-oracle vs densified-matrix agreement.
    pub row_oracle: f64,
    /// Expectation values asserted to vanish.
    pub energy_zero: f64,
    /// Alternating-minimization convergence (energy change per sweep).
    pub opt_converge: f64,
    /// Generic closed-form arithmetic identities.
    pub formula: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit_norm: 1e-12,
            hermitian: 1e-12,
            unitary: 1e-12,
            pulse_annotation: 1e-10,
            decomp_product: 1e-10,
            depth4_product: 1e-12,
            reconstruction: 1e-10,
            eig_residual: 1e-9,
            projector_idem: 1e-10,
            row_oracle: 1e-10,
            energy_zero: 1e-12,
            opt_converge: 1e-9,
            formula: 1e-10,
        }
    }
}

impl Tolerances {
    /// Override a tolerance by name (as used by `--tol name=value`).
    pub fn set(&mut self, name: &str, value: f64) -> crate::Result<()> {
        match name {
            "unit_norm" => self.unit_norm = value,
            "hermitian" => self.hermitian = value,
            "unitary" => self.unitary = value,
            "pulse_annotation" => self.pulse_annotation = value,
            "decomp_product" => self.decomp_product = value,
            "depth4_product" => self.depth4_product = value,
            "reconstruction" => self.reconstruction = value,
            "eig_residual" => self.eig_residual = value,
            "projector_idem" => self.projector_idem = value,
            "row_oracle" => self.row_oracle = value,
            "energy_zero" => self.energy_zero = value,
            "opt_converge" => self.opt_converge = value,
            "formula" => self.formula = value,
            other => {
                return Err(crate::Error::MalformedInput(format!(
                    "unknown tolerance name `{other}`"
                )))
            }
        }
        Ok(())
    }

    /// All tolerances as a name -> value map, for report embedding.
    pub fn as_map(&self) -> BTreeMap<String, f64> {
        let json = serde_json::to_value(self).expect("tolerances serialize");
        json.as_object()
            .expect("tolerances are a flat object")
            .iter()
            .map(|(k, v)| (k.clone(), v.as_f64().unwrap()))
            .collect()
    }
}

/// Run configuration: seed, tolerances, size caps, and optimizer settings.
///
/// Identical configs and inputs produce byte-identical reports; all
/// randomness is drawn from `seed`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Dense-matrix qubit cap; beyond this only row-oracle paths apply.
    pub dense_limit: usize,
    /// Random restarts for product-state optimization.
    pub restarts: usize,
    /// Variable cap for exhaustive ST-CONN search.
    pub stconn_var_limit: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            tolerances: Tolerances::default(),
            dense_limit: 14,
            restarts: 32,
            stconn_var_limit: 20,
        }
    }
}
