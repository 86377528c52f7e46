//! The basic digraph `D(phi)` built from a 3-CNF formula, its semi-complete
//! complement, the extremal cut profile and the ordering attaining it.

use serde::Serialize;

use super::cnf::{is_satisfied, preprocess, var_of, CnfFormula, Preprocessed};
use crate::digraph::{complement, Digraph, VertexOrdering};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaProfile {
    pub m: usize,
    pub lambda: Vec<u64>,
    pub lambda_bar: Vec<u64>,
}

impl LambdaProfile {
    pub fn lambda_max(&self) -> u64 {
        self.lambda.iter().copied().max().unwrap_or(0)
    }

    pub fn lambda_bar_max(&self) -> u64 {
        self.lambda_bar.iter().copied().max().unwrap_or(0)
    }

    pub fn lambda_bar_sum(&self) -> u64 {
        self.lambda_bar.iter().sum()
    }
}

/// The upper envelope of the cut vectors of `D(phi)` for `m` clauses, and
/// its complement `i(14m - i) - lambda(i)`.
pub fn lambda_profile(m: usize) -> Result<LambdaProfile> {
    if m == 0 {
        return Err(Error::InvalidArgument("lambda profile needs m >= 1".into()));
    }
    let m64 = m as u64;
    let lambda: Vec<u64> = (0..=14 * m64)
        .map(|i| match i {
            _ if i <= 5 * m64 => 2 * i,
            _ if i <= 6 * m64 => 5 * m64 + i,
            _ if i <= 7 * m64 => 11 * m64,
            _ if i <= 12 * m64 => 18 * m64 - i,
            _ => 42 * m64 - 3 * i,
        })
        .collect();
    let lambda_bar = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let i = i as u64;
            i * (14 * m64 - i) - l
        })
        .collect();
    Ok(LambdaProfile {
        m,
        lambda,
        lambda_bar,
    })
}

/// Vertices of the cycle of one variable: `bottom[i]` and `top[i]` for its
/// `i`-th occurrence; the cycle runs `bottom[0] -> top[0] -> bottom[1] -> ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableGadget {
    pub var: usize,
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
}

/// The two clause gadgets: a center pointing into a directed triangle on
/// one vertex per literal position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseGadget {
    pub top_center: usize,
    pub top: [usize; 3],
    pub bottom_center: usize,
    pub bottom: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaeInstance {
    pub preprocessed: Preprocessed,
    pub m: usize,
    #[serde(skip)]
    pub digraph: Digraph,
    pub variables: Vec<VariableGadget>,
    pub clauses: Vec<ClauseGadget>,
}

/// Builds `D(phi)` on `14m` vertices and `24m` arcs, where `m` counts the
/// clauses left after preprocessing. Variable gadgets come first (by
/// variable, alternating bottom and top), then per clause the top center,
/// its three literal vertices, the bottom center and its literal vertices.
pub fn nae_instance(phi: &CnfFormula) -> Result<NaeInstance> {
    let pre = preprocess(phi);
    let formula = &pre.formula;
    let m = formula.num_clauses();
    if m == 0 {
        return Err(Error::EmptyFormula);
    }
    let occ = formula.occurrences();
    let mut arcs = Vec::with_capacity(24 * m);
    let mut next = 0usize;
    let mut gadget_of = vec![usize::MAX; formula.num_vars()];
    let mut variables = Vec::new();
    for (var, &p) in occ.iter().enumerate() {
        if p == 0 {
            continue;
        }
        let mut bottom = Vec::with_capacity(p);
        let mut top = Vec::with_capacity(p);
        for _ in 0..p {
            bottom.push(next);
            top.push(next + 1);
            next += 2;
        }
        let cycle: Vec<usize> = (bottom[0]..next).collect();
        for i in 0..cycle.len() {
            arcs.push((cycle[i], cycle[(i + 1) % cycle.len()]));
        }
        gadget_of[var] = variables.len();
        variables.push(VariableGadget { var, bottom, top });
    }

    let mut seen = vec![0usize; formula.num_vars()];
    let mut clauses = Vec::with_capacity(m);
    for cl in formula.clauses() {
        let top_center = next;
        let top = [next + 1, next + 2, next + 3];
        let bottom_center = next + 4;
        let bottom = [next + 5, next + 6, next + 7];
        next += 8;
        for (center, side) in [(top_center, top), (bottom_center, bottom)] {
            for j in 0..3 {
                arcs.push((center, side[j]));
                arcs.push((side[j], side[(j + 1) % 3]));
            }
        }
        for (j, &lit) in cl.iter().enumerate() {
            let var = var_of(lit);
            let i = seen[var];
            seen[var] += 1;
            let g = &variables[gadget_of[var]];
            if lit > 0 {
                arcs.push((top[j], g.bottom[i]));
                arcs.push((bottom[j], g.top[i]));
            } else {
                arcs.push((top[j], g.top[i]));
                arcs.push((bottom[j], g.bottom[i]));
            }
        }
        clauses.push(ClauseGadget {
            top_center,
            top,
            bottom_center,
            bottom,
        });
    }
    let digraph = Digraph::from_arcs(next, arcs)?;
    Ok(NaeInstance {
        preprocessed: pre,
        m,
        digraph,
        variables,
        clauses,
    })
}

/// The ordering of `D(phi)` whose cut vector equals `lambda_m`, built from
/// an assignment that NAE-satisfies the preprocessed formula. Choices left
/// open are resolved by the smallest literal position and gadget order.
pub fn witness_ordering(inst: &NaeInstance, assignment: &[bool]) -> Result<VertexOrdering> {
    let formula = &inst.preprocessed.formula;
    if assignment.len() != formula.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: formula.num_vars(),
            got: assignment.len(),
        });
    }
    if let Some(c) = formula.first_nae_violation(assignment) {
        return Err(Error::NotNaeSatisfying(c));
    }
    let mut seq = Vec::with_capacity(inst.digraph.n());
    for g in &inst.variables {
        seq.extend(if assignment[g.var] { &g.bottom } else { &g.top });
    }
    // Per clause: an unsatisfied position, a satisfied one and the third.
    let picks: Vec<(usize, usize, usize)> = formula
        .clauses()
        .iter()
        .map(|cl| {
            let sat = |j: usize| is_satisfied(cl[j], assignment);
            let x = (0..3).find(|&j| !sat(j)).expect("NAE clause");
            let y = (0..3).find(|&j| sat(j)).expect("NAE clause");
            let z = 3 - x - y;
            (x, y, z)
        })
        .collect();
    for (g, &(x, y, _)) in inst.clauses.iter().zip(&picks) {
        seq.push(g.top[x]);
        seq.push(g.bottom[y]);
    }
    let z_satisfied = |ci: usize, z: usize| is_satisfied(formula.clauses()[ci][z], assignment);
    for (ci, (g, &(_, _, z))) in inst.clauses.iter().zip(&picks).enumerate() {
        seq.push(if z_satisfied(ci, z) { g.bottom[z] } else { g.top[z] });
    }
    for (ci, (g, &(_, _, z))) in inst.clauses.iter().zip(&picks).enumerate() {
        seq.push(if z_satisfied(ci, z) { g.top[z] } else { g.bottom[z] });
    }
    for (g, &(x, y, _)) in inst.clauses.iter().zip(&picks) {
        seq.push(g.bottom[x]);
        seq.push(g.top[y]);
    }
    for g in &inst.variables {
        seq.extend(if assignment[g.var] { &g.top } else { &g.bottom });
    }
    for g in &inst.clauses {
        seq.push(g.top_center);
        seq.push(g.bottom_center);
    }
    VertexOrdering::new(seq)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HardnessInstance {
    pub nae: NaeInstance,
    #[serde(skip)]
    pub digraph: Digraph,
    /// `phi` is NAE-satisfiable iff the cutwidth is at most this.
    pub ctw_target: u64,
    /// `phi` is NAE-satisfiable iff the OLA cost is at most this.
    pub ola_target: u64,
}

/// The semi-complete complement of `D(phi)` with its decision thresholds.
pub fn hardness_instance(phi: &CnfFormula) -> Result<HardnessInstance> {
    let nae = nae_instance(phi)?;
    let profile = lambda_profile(nae.m)?;
    let m = nae.m as u64;
    Ok(HardnessInstance {
        digraph: complement(&nae.digraph),
        ctw_target: 49 * m * m - 11 * m,
        ola_target: profile.lambda_bar_sum(),
        nae,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{classify, cut_vector};

    #[test]
    fn lambda_one() {
        let p = lambda_profile(1).unwrap();
        assert_eq!(p.lambda, vec![0, 2, 4, 6, 8, 10, 11, 11, 10, 9, 8, 7, 6, 3, 0]);
        assert_eq!(p.lambda_bar[7], 38);
        assert_eq!(p.lambda_bar_max(), 38);
        assert!(lambda_profile(0).is_err());
        for m in 1..5 {
            let p = lambda_profile(m).unwrap();
            assert_eq!(p.lambda_max(), 11 * m as u64);
            assert_eq!(p.lambda_bar_max(), 49 * (m * m) as u64 - 11 * m as u64);
        }
    }

    #[test]
    fn single_clause_instance() {
        let phi = CnfFormula::new(1, vec![vec![1, 1, -1]]).unwrap();
        let inst = nae_instance(&phi).unwrap();
        let d = &inst.digraph;
        assert_eq!((d.n(), d.arc_count()), (14, 24));
        let cls = classify(d);
        assert!(cls.is_basic && !cls.is_semicomplete);
        assert!(cls.in_degrees.iter().all(|&x| x <= 2));
        assert!(cls.out_degrees.iter().all(|&x| x <= 3));
        let ord = witness_ordering(&inst, &[true]).unwrap();
        let cuts = cut_vector(d, &ord).unwrap();
        assert_eq!(cuts.entries(), lambda_profile(1).unwrap().lambda.as_slice());
    }

    #[test]
    fn rejects_bad_assignment_and_empty() {
        let phi = CnfFormula::new(1, vec![vec![1, 1, 1]]).unwrap();
        let inst = nae_instance(&phi).unwrap();
        assert!(matches!(witness_ordering(&inst, &[true]), Err(Error::NotNaeSatisfying(0))));
        let lone = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert!(matches!(nae_instance(&lone), Err(Error::EmptyFormula)));
    }

    #[test]
    fn complement_is_semicomplete() {
        let phi = CnfFormula::new(2, vec![vec![1, 2, -1], vec![-2, 1, 2]]).unwrap();
        let h = hardness_instance(&phi).unwrap();
        assert!(h.digraph.is_semicomplete());
        assert_eq!(h.ctw_target, 49 * 4 - 22);
    }
}
