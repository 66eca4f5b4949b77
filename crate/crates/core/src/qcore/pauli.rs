//! Pauli letters, words, and weighted terms.
//!
//! A [`PauliWord`] is a length-n string over {I,X,Y,Z}; its matrix has one
//! nonzero per row, which is exploited everywhere instead of forming Kronecker
//! products explicitly.

use super::operator::DenseOperator;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Result<Pauli> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::MalformedInput(format!("invalid Pauli letter `{other}`"))),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// The 2x2 matrix of this letter.
    pub fn matrix(self) -> DenseOperator {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let entries = match self {
            Pauli::I => [one, z, z, one],
            Pauli::X => [z, one, one, z],
            Pauli::Y => [z, -i, i, z],
            Pauli::Z => [one, z, z, -one],
        };
        DenseOperator::from_rows(2, &entries).expect("2x2 Pauli is well formed")
    }

    /// Action on a basis bit: returns (output bit, amplitude).
    ///
    /// `P |b> = amp * |b'>`; every Pauli letter is a (signed, possibly
    /// imaginary) permutation of the computational basis.
    pub fn act_on_bit(self, b: u8) -> (u8, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => (b, one),
            Pauli::X => (1 - b, one),
            // Y|0> = i|1>, Y|1> = -i|0>
            Pauli::Y => (1 - b, if b == 0 { i } else { -i }),
            Pauli::Z => (b, if b == 0 { one } else { -one }),
        }
    }

    /// Whether two letters commute.
    pub fn commutes_with(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    /// The anti-commuting pair (a, b) with [a, b] = 2i * self.
    ///
    /// Cyclic: Z -> (X, Y), X -> (Y, Z), Y -> (Z, X). Identity has no such
    /// pair.
    pub fn commutator_pair(self) -> Option<(Pauli, Pauli)> {
        match self {
            Pauli::Z => Some((Pauli::X, Pauli::Y)),
            Pauli::X => Some((Pauli::Y, Pauli::Z)),
            Pauli::Y => Some((Pauli::Z, Pauli::X)),
            Pauli::I => None,
        }
    }
}

/// The standard Pauli matrix for a letter.
pub fn pauli_matrix(letter: Pauli) -> DenseOperator {
    letter.matrix()
}

/// A length-n word over {I,X,Y,Z}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliWord(pub Vec<Pauli>);

impl PauliWord {
    pub fn parse(s: &str) -> Result<PauliWord> {
        let letters = s.chars().map(Pauli::from_char).collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::MalformedInput("empty Pauli word".into()));
        }
        Ok(PauliWord(letters))
    }

    pub fn identity(n: usize) -> PauliWord {
        PauliWord(vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|p| **p != Pauli::I).count()
    }

    /// Indices of non-identity letters.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, p)| (*p != Pauli::I).then_some(i))
            .collect()
    }

    /// Width of the support segment (last - first + 1), or 0 for identity.
    pub fn support_width(&self) -> usize {
        let s = self.support();
        match (s.first(), s.last()) {
            (Some(a), Some(b)) => b - a + 1,
            _ => 0,
        }
    }

    /// Whether two words commute as operators.
    ///
    /// Words commute iff the number of positions where both letters are
    /// non-identity and distinct is even.
    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        debug_assert_eq!(self.len(), other.len());
        let odd = self
            .0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.commutes_with(**b))
            .count();
        odd % 2 == 0
    }

    /// Action on a basis index: `P |idx> = amp * |out>`.
    pub fn act_on_index(&self, idx: usize) -> (usize, Complex64) {
        let n = self.len();
        let mut out = idx;
        let mut amp = Complex64::new(1.0, 0.0);
        for (q, p) in self.0.iter().enumerate() {
            if *p == Pauli::I {
                continue;
            }
            let shift = n - 1 - q;
            let b = ((idx >> shift) & 1) as u8;
            let (nb, a) = p.act_on_bit(b);
            amp *= a;
            if nb != b {
                out ^= 1 << shift;
            }
        }
        (out, amp)
    }

    /// Dense matrix of the word on its full n qubits.
    pub fn matrix(&self) -> DenseOperator {
        let n = self.len();
        let dim = 1usize << n;
        let mut m = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
        for col in 0..dim {
            let (row, amp) = self.act_on_index(col);
            m[(row, col)] = amp;
        }
        DenseOperator::from_matrix(m)
    }

    /// Restriction of the word to the given qubits (used for pulse
    /// annotations of embedded gates).
    pub fn restrict(&self, qubits: &[usize]) -> PauliWord {
        PauliWord(qubits.iter().map(|&q| self.0[q]).collect())
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for PauliWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PauliWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A real coefficient attached to a Pauli word.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coeff: f64,
    pub word: PauliWord,
}

impl PauliTerm {
    pub fn new(coeff: f64, word: PauliWord) -> Result<PauliTerm> {
        if !coeff.is_finite() {
            return Err(Error::NonFinite(format!("Pauli coefficient {coeff}")));
        }
        Ok(PauliTerm { coeff, word })
    }
}
