//! Splitting a Pauli word into two anti-commuting halves.
//!
//! For a word `P` with pivot letter `P_j != I`, pick the anti-commuting pair
//! `(A, B)` with `[A, B] = 2i P_j` and set
//!
//! ```text
//! h1 = P_1 ... P_{j-1} A_j I ... I
//! h2 = I ... I        B_j P_{j+1} ... P_n
//! ```
//!
//! Then `[h1, h2] = 2i P`, both halves square to identity, and each half's
//! support is confined to one side of the pivot (inclusive).

use crate::qcore::{Pauli, PauliWord};
use crate::{Error, Result};

/// Result of splitting: the two halves and the pivot position.
#[derive(Debug, Clone)]
pub struct SplitWord {
    pub h1: PauliWord,
    pub h2: PauliWord,
    pub pivot: usize,
}

/// Pivot rule: the non-identity letter closest to the (fractional) midpoint
/// of the support segment, tie-breaking leftward.
///
/// The two support endpoints are always the farthest positions from the
/// center, so for weight >= 3 the pivot lands strictly between other
/// support letters and both halves lose at least one non-identity letter;
/// the recursion therefore terminates.
fn choose_pivot(word: &PauliWord) -> usize {
    let support = word.support();
    let (a, b) = (*support.first().unwrap(), *support.last().unwrap());
    let center = (a + b) as f64 / 2.0;
    let mut best = support[0];
    let mut best_dist = f64::INFINITY;
    for &p in &support {
        let d = (p as f64 - center).abs();
        if d + 1e-9 < best_dist {
            best = p;
            best_dist = d;
        }
    }
    best
}

/// Split a Pauli word at its support midpoint into anti-commuting halves
/// with `[h1, h2] = 2i * word`.
pub fn split_pauli(word: &PauliWord) -> Result<SplitWord> {
    let weight = word.weight();
    let width = word.support_width();
    if weight < 2 || (weight == 2 && width == 2) {
        return Err(Error::NotSplittable(format!(
            "word {word} has weight {weight} and support width {width}"
        )));
    }
    let pivot = choose_pivot(word);
    let (a, b) = word.0[pivot]
        .commutator_pair()
        .expect("pivot letter is non-identity");
    let n = word.len();
    let mut h1 = vec![Pauli::I; n];
    let mut h2 = vec![Pauli::I; n];
    h1[..pivot].copy_from_slice(&word.0[..pivot]);
    h1[pivot] = a;
    h2[pivot] = b;
    h2[pivot + 1..].copy_from_slice(&word.0[pivot + 1..]);
    Ok(SplitWord { h1: PauliWord(h1), h2: PauliWord(h2), pivot })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn check_commutator(word: &str) {
        let w = PauliWord::parse(word).unwrap();
        let s = split_pauli(&w).unwrap();
        assert!(!s.h1.commutes_with(&s.h2));
        let (m1, m2) = (s.h1.matrix(), s.h2.matrix());
        let comm = m1.matrix() * m2.matrix() - m2.matrix() * m1.matrix();
        let expect = w.matrix().matrix() * Complex64::new(0.0, 2.0);
        let dev = (&comm - &expect).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(dev < 1e-14, "[h1,h2] != 2i {word}: deviation {dev}");
    }

    #[test]
    fn zzz_splits_at_middle() {
        let s = split_pauli(&PauliWord::parse("ZZZ").unwrap()).unwrap();
        assert_eq!(s.pivot, 1);
        assert_eq!(s.h1.to_string(), "ZXI");
        assert_eq!(s.h2.to_string(), "IYZ");
        check_commutator("ZZZ");
    }

    #[test]
    fn pivot_letter_x_uses_yz_pair() {
        let s = split_pauli(&PauliWord::parse("ZXZ").unwrap()).unwrap();
        assert_eq!(s.pivot, 1);
        assert_eq!(s.h1.to_string(), "ZYI");
        assert_eq!(s.h2.to_string(), "IZZ");
        check_commutator("ZXZ");
    }

    #[test]
    fn identity_midpoint_moves_to_nearest() {
        // XIIZ: support {0,3}, midpoint 1 is I; nearest non-identity is 0.
        let s = split_pauli(&PauliWord::parse("XIIZ").unwrap()).unwrap();
        assert_eq!(s.pivot, 0);
        check_commutator("XIIZ");
        // Tie at equal distance goes leftward: XIZ, midpoint 1 is I? No:
        // support {0,2}, midpoint 1 is I, distances equal, pick 0.
        let s = split_pauli(&PauliWord::parse("XIZ").unwrap()).unwrap();
        assert_eq!(s.pivot, 0);
        check_commutator("XIZ");
    }

    #[test]
    fn halves_respect_locality_bound() {
        for word in ["ZZZZZ", "XYZXY", "ZZZZ", "YYYYYYY"] {
            let w = PauliWord::parse(word).unwrap();
            let s = split_pauli(&w).unwrap();
            let half = w.support_width().div_ceil(2);
            assert!(s.h1.support_width() <= half + 1);
            assert!(s.h2.support_width() <= half + 1);
            check_commutator(word);
        }
    }

    #[test]
    fn sparse_words_lose_weight_on_both_sides() {
        // Interior pivots guarantee recursion progress for weight >= 3.
        for word in ["XIYZ", "XIIYZ", "ZIZIZ", "XYIIZ"] {
            let w = PauliWord::parse(word).unwrap();
            let s = split_pauli(&w).unwrap();
            assert!(s.h1.weight() < w.weight(), "{word}: h1 = {}", s.h1);
            assert!(s.h2.weight() < w.weight(), "{word}: h2 = {}", s.h2);
            check_commutator(word);
        }
    }

    #[test]
    fn two_local_words_not_splittable() {
        assert!(split_pauli(&PauliWord::parse("ZZ").unwrap()).is_err());
        assert!(split_pauli(&PauliWord::parse("IXI").unwrap()).is_err());
        assert!(split_pauli(&PauliWord::parse("III").unwrap()).is_err());
        // Weight 2 with wide support is splittable.
        assert!(split_pauli(&PauliWord::parse("XIIZ").unwrap()).is_ok());
    }
}
