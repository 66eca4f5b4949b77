//! Reconfiguration connectivity of CNF solution spaces under bounded flips.

use super::cnf::{bits_to_index, index_to_bits, CnfFormula};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Hard cap on exhaustive search; the hypercube has 2^n vertices.
pub const STCONN_VAR_CAP: usize = 20;

/// A solution-space connectivity instance: formula, endpoints, flip budget.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StConnInstance {
    pub formula: CnfFormula,
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    /// Per-step Hamming budget l.
    pub l: usize,
}

impl StConnInstance {
    pub fn new(formula: CnfFormula, x: Vec<u8>, y: Vec<u8>, l: usize) -> Result<StConnInstance> {
        let n = formula.num_vars;
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "endpoints of length {}/{} for {n} variables",
                x.len(),
                y.len()
            )));
        }
        if l == 0 {
            return Err(Error::MalformedInput("flip budget l must be >= 1".into()));
        }
        let inst = StConnInstance { formula, x, y, l };
        inst.check_endpoints()?;
        Ok(inst)
    }

    pub fn check_endpoints(&self) -> Result<()> {
        for (name, bits) in [("x", &self.x), ("y", &self.y)] {
            if !self.formula.satisfied(bits_to_index(bits)) {
                return Err(Error::InvalidEndpoints(format!(
                    "{name} does not satisfy the formula"
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StConnOutcome {
    /// Shortest path of bitstrings from x to y (inclusive).
    Path(Vec<Vec<u8>>),
    Unreachable,
}

/// Solve by breadth-first search over the full hypercube (n <= 20).
///
/// Neighbors are all satisfying strings within Hamming distance `l`,
/// enumerated in ascending flip-mask order so the returned shortest path is
/// deterministic.
pub fn stconn_solve(inst: &StConnInstance) -> Result<StConnOutcome> {
    let n = inst.formula.num_vars;
    if n > STCONN_VAR_CAP {
        return Err(Error::DenseLimitExceeded { n, cap: STCONN_VAR_CAP });
    }
    inst.check_endpoints()?;
    let start = bits_to_index(&inst.x);
    let goal = bits_to_index(&inst.y);
    let size = 1usize << n;

    // Flip masks of weight 1..=l in ascending numeric order.
    let masks: Vec<usize> = (1..size)
        .filter(|m| (m.count_ones() as usize) <= inst.l)
        .collect();

    let mut parent: Vec<Option<usize>> = vec![None; size];
    let mut seen = vec![false; size];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if v == goal {
            let mut path = vec![index_to_bits(v, n)];
            let mut cur = v;
            while let Some(p) = parent[cur] {
                path.push(index_to_bits(p, n));
                cur = p;
            }
            path.reverse();
            return Ok(StConnOutcome::Path(path));
        }
        for &m in &masks {
            let w = v ^ m;
            if !seen[w] && inst.formula.satisfied(w) {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    Ok(StConnOutcome::Unreachable)
}

/// Independent validity check of a claimed path: endpoints, satisfaction of
/// every vertex, and the per-step Hamming budget.
pub fn validate_path(inst: &StConnInstance, path: &[Vec<u8>]) -> Result<()> {
    if path.first() != Some(&inst.x) || path.last() != Some(&inst.y) {
        return Err(Error::InvalidEndpoints("path endpoints do not match instance".into()));
    }
    for v in path {
        if !inst.formula.satisfied(bits_to_index(v)) {
            return Err(Error::InvalidEndpoints(format!("vertex {v:?} unsatisfying")));
        }
    }
    for pair in path.windows(2) {
        let dist = pair[0]
            .iter()
            .zip(&pair[1])
            .filter(|(a, b)| a != b)
            .count();
        if dist > inst.l {
            return Err(Error::LocalityViolation(format!(
                "step Hamming distance {dist} > l = {}",
                inst.l
            )));
        }
    }
    Ok(())
}

/// Lift an l=1 instance to flip budget `l_target` by duplicating every
/// variable `l_target` times, bound together with implication-cycle
/// equality clauses (padded to 3-CNF). Connectivity is preserved exactly.
pub fn lift_stconn_locality(inst: &StConnInstance, l_target: usize) -> Result<StConnInstance> {
    if inst.l != 1 {
        return Err(Error::MalformedInput(format!(
            "lift starts from an l=1 instance, got l = {}",
            inst.l
        )));
    }
    if l_target == 0 {
        return Err(Error::MalformedInput("target l must be >= 1".into()));
    }
    if l_target == 1 {
        return Ok(inst.clone());
    }
    use super::cnf::{Clause, Literal};
    let n = inst.formula.num_vars;
    // Copy c of variable v becomes variable v * l_target + c.
    let copy = |v: usize, c: usize| v * l_target + c;
    let mut clauses: Vec<Clause> = inst
        .formula
        .clauses
        .iter()
        .map(|cl| {
            Clause(
                cl.0.iter()
                    .map(|l| Literal { var: copy(l.var, 0), negated: l.negated })
                    .collect(),
            )
        })
        .collect();
    // Equality ring: copy_c -> copy_{c+1} -> ... -> copy_0; two-literal
    // implications padded by repeating the head literal.
    for v in 0..n {
        for c in 0..l_target {
            let a = copy(v, c);
            let b = copy(v, (c + 1) % l_target);
            clauses.push(Clause(vec![
                Literal { var: a, negated: true },
                Literal { var: b, negated: false },
                Literal { var: b, negated: false },
            ]));
        }
    }
    let formula = CnfFormula::new(n * l_target, clauses)?;
    let expand = |bits: &[u8]| -> Vec<u8> {
        bits.iter().flat_map(|&b| std::iter::repeat_n(b, l_target)).collect()
    };
    StConnInstance::new(formula, expand(&inst.x), expand(&inst.y), l_target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gscon::cnf::{Clause, Literal};

    fn lit(v: usize, neg: bool) -> Literal {
        Literal { var: v, negated: neg }
    }

    /// (x1 or x2) as a padded 3-CNF clause.
    fn or_formula() -> CnfFormula {
        CnfFormula::new(
            2,
            vec![Clause(vec![lit(0, false), lit(1, false), lit(1, false)])],
        )
        .unwrap()
    }

    /// x1 = x2 via two implications.
    fn eq_formula() -> CnfFormula {
        CnfFormula::new(
            2,
            vec![
                Clause(vec![lit(0, true), lit(1, false), lit(1, false)]),
                Clause(vec![lit(1, true), lit(0, false), lit(0, false)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_single_vertex_path() {
        let inst = StConnInstance::new(or_formula(), vec![0, 1], vec![0, 1], 1).unwrap();
        match stconn_solve(&inst).unwrap() {
            StConnOutcome::Path(p) => assert_eq!(p, vec![vec![0, 1]]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn or_instance_connects_through_11() {
        let inst = StConnInstance::new(or_formula(), vec![0, 1], vec![1, 0], 1).unwrap();
        match stconn_solve(&inst).unwrap() {
            StConnOutcome::Path(p) => {
                assert_eq!(p, vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
                validate_path(&inst, &p).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equality_instance_disconnected() {
        let inst = StConnInstance::new(eq_formula(), vec![0, 0], vec![1, 1], 1).unwrap();
        assert_eq!(stconn_solve(&inst).unwrap(), StConnOutcome::Unreachable);
    }

    #[test]
    fn unsatisfying_endpoint_rejected() {
        assert!(matches!(
            StConnInstance::new(or_formula(), vec![0, 0], vec![1, 1], 1),
            Err(Error::InvalidEndpoints(_))
        ));
    }

    #[test]
    fn lift_preserves_connectivity_both_ways() {
        let connected = StConnInstance::new(or_formula(), vec![0, 1], vec![1, 0], 1).unwrap();
        let lifted = lift_stconn_locality(&connected, 2).unwrap();
        assert_eq!(lifted.l, 2);
        assert!(matches!(stconn_solve(&lifted).unwrap(), StConnOutcome::Path(_)));

        let disconnected = StConnInstance::new(eq_formula(), vec![0, 0], vec![1, 1], 1).unwrap();
        let lifted = lift_stconn_locality(&disconnected, 3).unwrap();
        assert_eq!(stconn_solve(&lifted).unwrap(), StConnOutcome::Unreachable);
    }

    #[test]
    fn lift_l1_is_identity() {
        let inst = StConnInstance::new(or_formula(), vec![0, 1], vec![1, 0], 1).unwrap();
        let lifted = lift_stconn_locality(&inst, 1).unwrap();
        assert_eq!(lifted.formula, inst.formula);
    }
}
