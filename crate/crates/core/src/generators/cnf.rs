use serde::Serialize;

use crate::error::{Error, Result};

/// A literal in DIMACS convention: `v` is variable `v`, `-v` its negation,
/// variables numbered from 1.
pub type Literal = i32;

/// A 3-CNF formula read under not-all-equal semantics. Shorter clauses are
/// padded by repeating their last literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

pub fn var_of(lit: Literal) -> usize {
    lit.unsigned_abs() as usize - 1
}

fn literal_true(lit: Literal, assignment: &[bool]) -> bool {
    assignment[var_of(lit)] == (lit > 0)
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let mut padded = Vec::with_capacity(clauses.len());
        for (i, clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() || clause.len() > 3 {
                return Err(Error::InvalidArgument(format!(
                    "clause {} has {} literals; expected 1 to 3",
                    i + 1,
                    clause.len()
                )));
            }
            for &lit in &clause {
                if lit == 0 || var_of(lit) >= num_vars {
                    return Err(Error::InvalidArgument(format!(
                        "literal {lit} in clause {} is out of range",
                        i + 1
                    )));
                }
            }
            let last = *clause.last().expect("non-empty");
            padded.push([
                clause[0],
                clause.get(1).copied().unwrap_or(last),
                clause.get(2).copied().unwrap_or(last),
            ]);
        }
        Ok(CnfFormula {
            num_vars,
            clauses: padded,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Index of the first clause whose literals all agree under `assignment`.
    pub fn first_nae_violation(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|cl| {
            let t = cl.iter().filter(|&&l| literal_true(l, assignment)).count();
            t == 0 || t == 3
        })
    }

    pub fn nae_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars && self.first_nae_violation(assignment).is_none()
    }

    /// Number of literal occurrences of every variable.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.num_vars];
        for cl in &self.clauses {
            for &l in cl {
                occ[var_of(l)] += 1;
            }
        }
        occ
    }
}

pub(crate) fn is_satisfied(lit: Literal, assignment: &[bool]) -> bool {
    literal_true(lit, assignment)
}

const NAE_BRUTE_MAX_VARS: usize = 24;

/// Exhaustive search for a not-all-equal satisfying assignment.
pub fn nae_brute_check(phi: &CnfFormula) -> Result<Option<Vec<bool>>> {
    let n = phi.num_vars;
    if n > NAE_BRUTE_MAX_VARS {
        return Err(Error::CapExceeded {
            what: "NAE brute force variable count",
            size: n,
            cap: NAE_BRUTE_MAX_VARS,
        });
    }
    let mut assignment = vec![false; n];
    for bits in 0u64..(1 << n) {
        for (v, a) in assignment.iter_mut().enumerate() {
            *a = bits & (1 << v) != 0;
        }
        if phi.first_nae_violation(&assignment).is_none() {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// The formula after dropping, repeatedly, every variable with a single
/// occurrence together with its clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preprocessed {
    pub formula: CnfFormula,
    /// Original indices of the clauses that were removed.
    pub removed_clauses: Vec<usize>,
    /// Variables (zero-based) eliminated because they occurred once.
    pub removed_vars: Vec<usize>,
}

pub fn preprocess(phi: &CnfFormula) -> Preprocessed {
    let mut alive = vec![true; phi.clauses.len()];
    let mut removed_vars = Vec::new();
    loop {
        let mut occ = vec![0usize; phi.num_vars];
        for (cl, _) in phi.clauses.iter().zip(&alive).filter(|(_, &a)| a) {
            for &l in cl {
                occ[var_of(l)] += 1;
            }
        }
        let Some(v) = (0..phi.num_vars).find(|&v| occ[v] == 1) else {
            break;
        };
        removed_vars.push(v);
        let c = (0..phi.clauses.len())
            .find(|&c| alive[c] && phi.clauses[c].iter().any(|&l| var_of(l) == v))
            .expect("occurrence exists");
        alive[c] = false;
    }
    let removed_clauses = (0..alive.len()).filter(|&c| !alive[c]).collect();
    let clauses = phi
        .clauses
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(cl, _)| *cl)
        .collect();
    Preprocessed {
        formula: CnfFormula {
            num_vars: phi.num_vars,
            clauses,
        },
        removed_clauses,
        removed_vars,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding_and_range() {
        let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
        assert_eq!(f.clauses(), &[[1, 1, 1]]);
        let f = CnfFormula::new(2, vec![vec![1, -2]]).unwrap();
        assert_eq!(f.clauses(), &[[1, -2, -2]]);
        assert!(CnfFormula::new(2, vec![vec![3]]).is_err());
        assert!(CnfFormula::new(4, vec![vec![1, 2, 3, 4]]).is_err());
    }

    #[test]
    fn nae_examples() {
        let xxx = CnfFormula::new(1, vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(nae_brute_check(&xxx).unwrap(), None);
        let xyz = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        let a = nae_brute_check(&xyz).unwrap().unwrap();
        let neg: Vec<bool> = a.iter().map(|&b| !b).collect();
        assert!(xyz.nae_satisfied_by(&neg));
    }

    #[test]
    fn preprocessing_cascades() {
        // y occurs once, so the first clause goes; x keeps three occurrences.
        let f = CnfFormula::new(3, vec![vec![1, 2, 3], vec![1, -1, 1]]).unwrap();
        let p = preprocess(&f);
        assert_eq!(p.formula.num_clauses(), 1);
        assert_eq!(p.removed_clauses, vec![0]);
        let g = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(preprocess(&g).formula.num_clauses(), 0);
    }
}
