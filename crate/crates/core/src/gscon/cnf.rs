//! 3-CNF formulas, assignments, and DIMACS parsing.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A literal: variable index plus negation flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    /// True under the assignment (bit 0 of `x` is variable 0's value via the
    /// shared convention: variable i occupies bit `n-1-i`).
    fn satisfied(&self, x: usize, n: usize) -> bool {
        let bit = (x >> (n - 1 - self.var)) & 1 == 1;
        bit != self.negated
    }
}

/// A clause of up to three literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause(pub Vec<Literal>);

impl Clause {
    pub fn satisfied(&self, x: usize, n: usize) -> bool {
        self.0.iter().any(|l| l.satisfied(x, n))
    }

    /// Distinct variables of the clause, sorted.
    pub fn vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.iter().map(|l| l.var).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The unique assignment of the clause's variables that falsifies it,
    /// or None for tautological clauses (a variable in both polarities).
    pub fn falsifying_assignment(&self) -> Option<Vec<(usize, u8)>> {
        let mut out: Vec<(usize, u8)> = Vec::new();
        for l in &self.0 {
            let bit = if l.negated { 1u8 } else { 0u8 };
            match out.iter().find(|(v, _)| *v == l.var) {
                Some((_, existing)) if *existing != bit => return None,
                Some(_) => {}
                None => out.push((l.var, bit)),
            }
        }
        out.sort_unstable();
        Some(out)
    }
}

/// A CNF formula with at most 3 literals per clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<CnfFormula> {
        for c in &clauses {
            if c.0.is_empty() || c.0.len() > 3 {
                return Err(Error::MalformedInput(format!(
                    "clause with {} literals (3-CNF expected)",
                    c.0.len()
                )));
            }
            for l in &c.0 {
                if l.var >= num_vars {
                    return Err(Error::IndexOutOfRange(format!(
                        "variable {} of {num_vars}",
                        l.var
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn satisfied(&self, x: usize) -> bool {
        self.clauses.iter().all(|c| c.satisfied(x, self.num_vars))
    }

    pub fn violated_count(&self, x: usize) -> usize {
        self.clauses.iter().filter(|c| !c.satisfied(x, self.num_vars)).count()
    }

    /// Parse DIMACS CNF text ("p cnf <vars> <clauses>" + clause lines).
    pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
        let mut num_vars = None;
        let mut clauses = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p cnf") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(Error::MalformedInput(format!("bad problem line `{line}`")));
                }
                num_vars = Some(parts[0].parse::<usize>().map_err(|e| {
                    Error::MalformedInput(format!("bad variable count: {e}"))
                })?);
                continue;
            }
            let n = num_vars
                .ok_or_else(|| Error::MalformedInput("clause before `p cnf` line".into()))?;
            let mut lits = Vec::new();
            for tok in line.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|e| Error::MalformedInput(format!("bad literal `{tok}`: {e}")))?;
                if v == 0 {
                    break;
                }
                let var = v.unsigned_abs() as usize - 1;
                if var >= n {
                    return Err(Error::IndexOutOfRange(format!("variable {} of {n}", var + 1)));
                }
                lits.push(Literal { var, negated: v < 0 });
            }
            if !lits.is_empty() {
                clauses.push(Clause(lits));
            }
        }
        let n = num_vars.ok_or_else(|| Error::MalformedInput("missing `p cnf` line".into()))?;
        CnfFormula::new(n, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in &c.0 {
                let v = (l.var + 1) as i64;
                out.push_str(&format!("{} ", if l.negated { -v } else { v }));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Bitstring helpers shared by the reconfiguration code.
pub fn bits_to_index(bits: &[u8]) -> usize {
    bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

pub fn index_to_bits(x: usize, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((x >> (n - 1 - i)) & 1) as u8).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: usize, neg: bool) -> Literal {
        Literal { var: v, negated: neg }
    }

    #[test]
    fn dimacs_roundtrip() {
        let text = "c comment\np cnf 3 2\n1 -2 3 0\n-1 2 0\n";
        let f = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(f.num_vars, 3);
        assert_eq!(f.clauses.len(), 2);
        let f2 = CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap();
        assert_eq!(f, f2);
    }

    #[test]
    fn satisfaction_and_violation_counts() {
        // (x1 or x2) with the bit convention: var 0 is the leading bit.
        let f = CnfFormula::new(2, vec![Clause(vec![lit(0, false), lit(1, false)])]).unwrap();
        assert!(!f.satisfied(0b00));
        assert!(f.satisfied(0b01));
        assert!(f.satisfied(0b10));
        assert_eq!(f.violated_count(0b00), 1);
    }

    #[test]
    fn falsifying_assignment_of_clause() {
        let c = Clause(vec![lit(0, false), lit(1, true), lit(2, false)]);
        assert_eq!(c.falsifying_assignment().unwrap(), vec![(0, 0), (1, 1), (2, 0)]);
        // Tautology has none.
        let t = Clause(vec![lit(0, false), lit(0, true)]);
        assert!(t.falsifying_assignment().is_none());
    }

    #[test]
    fn bit_helpers_follow_convention() {
        assert_eq!(bits_to_index(&[1, 0, 1]), 5);
        assert_eq!(index_to_bits(5, 3), vec![1, 0, 1]);
    }
}
