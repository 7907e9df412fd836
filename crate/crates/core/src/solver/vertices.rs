//! Enumeration of alternate optimal basic solutions.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;

use super::simplex::{optimal_tableau, Phase};
use super::{LpProblem, Solution, Status};
use crate::error::{Error, Result};

/// Upper limit on bases visited while walking the optimal face.
const BASIS_BUDGET: usize = 20_000;

/// Distinct optimal vertices of an LP, at most `cap` of them.
///
/// Starting from the simplex optimum, columns with positive reduced cost are
/// zero at every optimum, so the optimal face is the standard-form polyhedron
/// over the remaining columns. Its feasible bases are connected by single
/// pivots; a breadth-first walk over them (entering any face column, leaving
/// any minimum-ratio row) reaches every vertex of the face. Vertices come out
/// in discovery order, the simplex optimum first.
pub fn enumerate_optimal_vertices(problem: &LpProblem, cap: usize) -> Result<Vec<Solution>> {
    let (start, form) = match optimal_tableau(problem)? {
        Phase::Optimal(t, f) => (t, f),
        Phase::Infeasible => return Err(Error::Status(Status::Infeasible)),
        Phase::Unbounded => return Err(Error::Status(Status::Unbounded)),
    };
    if cap == 0 {
        return Ok(Vec::new());
    }

    let face: Vec<usize> = (0..start.cols())
        .filter(|&j| start.allowed[j] && start.cost[j].is_zero())
        .collect();

    let mut seen_bases = BTreeSet::from([start.sorted_basis()]);
    let mut seen_points = BTreeSet::new();
    let mut found = Vec::new();
    let mut queue = VecDeque::from([start]);

    while let Some(tableau) = queue.pop_front() {
        let values = form.original_values(&tableau.column_values());
        if seen_points.insert(values.clone()) {
            found.push(Solution {
                status: Status::Optimal,
                objective: problem.objective_value(&values),
                values,
            });
            if found.len() == cap {
                break;
            }
        }
        if seen_bases.len() >= BASIS_BUDGET {
            continue;
        }
        for &j in &face {
            if tableau.basis.contains(&j) {
                continue;
            }
            let Some(rows) = tableau.ratio_rows(j) else {
                continue;
            };
            for r in rows {
                let mut next = tableau.clone();
                next.pivot(r, j);
                if seen_bases.insert(next.sorted_basis()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::solver::{Relation, Sense};

    #[test]
    fn unique_optimum_yields_one_vertex() {
        let mut p = LpProblem::new(Sense::Maximize, vec![int(2), int(1)]);
        p.add_constraint(vec![int(1), int(1)], Relation::Le, int(1));
        let v = enumerate_optimal_vertices(&p, 10).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].values, vec![int(1), int(0)]);
    }

    #[test]
    fn optimal_edge_has_two_vertices() {
        let mut p = LpProblem::new(Sense::Maximize, vec![int(1), int(1)]);
        p.add_constraint(vec![int(1), int(1)], Relation::Le, int(1));
        let v = enumerate_optimal_vertices(&p, 10).unwrap();
        let points: BTreeSet<_> = v.iter().map(|s| s.values.clone()).collect();
        assert_eq!(points, BTreeSet::from([vec![int(1), int(0)], vec![int(0), int(1)]]));
        assert!(v.iter().all(|s| s.objective == int(1)));
        assert_eq!(enumerate_optimal_vertices(&p, 1).unwrap().len(), 1);
    }

    #[test]
    fn status_errors() {
        let mut p = LpProblem::new(Sense::Maximize, vec![int(1)]);
        assert_eq!(
            enumerate_optimal_vertices(&p, 3),
            Err(Error::Status(Status::Unbounded))
        );
        p.add_constraint(vec![int(1)], Relation::Le, int(-1));
        assert_eq!(
            enumerate_optimal_vertices(&p, 3),
            Err(Error::Status(Status::Infeasible))
        );
    }
}
