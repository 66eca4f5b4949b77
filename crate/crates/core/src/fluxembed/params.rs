//! Parameter arithmetic for embedding multi-prover protocols, in exact
//! integer arithmetic so exponential proof lengths never overflow.

use crate::{Error, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Derived embedding parameters for a protocol with `t` bits of
/// communication per round, `u` space, `v` random bits, `p` provers, `r`
/// rounds, and completeness/soundness `c`, `s`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MipEmbedding {
    /// Streamed proof length |y| = p * t * 2^(t r).
    pub proof_length: BigUint,
    /// Qubit count expression u + v + log(t r log(p t)).
    pub qubits: u64,
    /// The promise gap is 1 / (2^gap_exponent * (c - s)).
    pub gap_exponent: BigUint,
    /// c - s.
    pub gap_factor: f64,
}

fn ceil_log2(x: u64) -> u64 {
    debug_assert!(x >= 1);
    64 - (x - 1).leading_zeros() as u64
}

/// Evaluate the embedding parameters; all counts must be at least 1 and the
/// thresholds must satisfy `c > s`.
pub fn mip_embedding_params(
    t: u64,
    u: u64,
    v: u64,
    p: u64,
    r: u64,
    c: f64,
    s: f64,
) -> Result<MipEmbedding> {
    if t == 0 || p == 0 || r == 0 {
        return Err(Error::MalformedInput(format!(
            "counts must be >= 1: t={t}, p={p}, r={r}"
        )));
    }
    if !(c > s) {
        return Err(Error::InvalidThresholds(format!("need c > s, got c={c}, s={s}")));
    }
    let proof_length = BigUint::from(p) * BigUint::from(t) * (BigUint::from(1u8) << (t * r));
    let log_pt = ceil_log2(p * t).max(1);
    let qubits = u + v + ceil_log2((t * r * log_pt).max(1)).max(1);
    let gap_exponent = BigUint::from(t) * BigUint::from(r) * BigUint::from(log_pt);
    Ok(MipEmbedding { proof_length, qubits, gap_exponent, gap_factor: c - s })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_protocol_proof_length() {
        // p = 2, r = 1, t = 3: |y| = 6 * 2^3 = 48.
        let e = mip_embedding_params(3, 4, 4, 2, 1, 1.0, 0.5).unwrap();
        assert_eq!(e.proof_length, BigUint::from(48u32));
    }

    #[test]
    fn np_style_parameters() {
        // p = 2, r = 1, t = ceil(log 16) = 4: |y| = 2 * 4 * 2^4 = 128.
        let e = mip_embedding_params(4, 4, 4, 2, 1, 1.0, 0.9).unwrap();
        assert_eq!(e.proof_length, BigUint::from(128u32));
        assert!(e.qubits >= 8);
    }

    #[test]
    fn exponential_lengths_do_not_overflow() {
        let e = mip_embedding_params(64, 10, 10, 2, 4, 2.0 / 3.0, 1.0 / 3.0).unwrap();
        // 2 * 64 * 2^256 has 256 + 7 bits.
        assert!(e.proof_length.bits() > 256);
        assert_eq!(e.gap_exponent, BigUint::from(64u32 * 4 * 7));
    }

    #[test]
    fn equal_thresholds_rejected() {
        assert!(matches!(
            mip_embedding_params(3, 1, 1, 2, 1, 1.0, 1.0),
            Err(Error::InvalidThresholds(_))
        ));
    }
}
