//! Depth-first branch-and-bound over the exact simplex.

use std::collections::BTreeSet;

use num_traits::{One, Signed};

use super::{lexicographic_refine, solve_lp, Bounds, LpProblem, MilpProblem, Sense, Solution, Status};
use crate::error::Result;
use crate::rational::{frac, is_integral, Rational};

enum Search {
    Optimal(Rational),
    Infeasible,
    Unbounded,
}

/// Picks the integer variable whose fractional part is closest to 1/2
/// (lowest index on ties).
fn branching_var(values: &[Rational], integer_vars: &BTreeSet<usize>) -> Option<usize> {
    let half = frac(1, 2);
    integer_vars
        .iter()
        .copied()
        .filter(|&j| !is_integral(&values[j]))
        .min_by_key(|&j| {
            let v = &values[j];
            (v - v.floor() - &half).abs()
        })
}

/// Finds the optimal objective value. Prunes nodes whose relaxation cannot
/// strictly beat the incumbent.
fn branch_and_bound(lp: &LpProblem, integer_vars: &BTreeSet<usize>) -> Result<Search> {
    let sign = match lp.sense {
        Sense::Minimize => Rational::one(),
        Sense::Maximize => -Rational::one(),
    };
    let mut incumbent: Option<Rational> = None;
    let mut stack: Vec<Vec<Bounds>> = vec![lp.bounds.clone()];
    let mut node = lp.clone();

    while let Some(bounds) = stack.pop() {
        node.bounds = bounds;
        let relaxed = solve_lp(&node)?;
        match relaxed.status {
            Status::Infeasible => continue,
            Status::Unbounded => return Ok(Search::Unbounded),
            Status::Optimal => {}
        }
        let key = &relaxed.objective * &sign;
        if incumbent.as_ref().is_some_and(|best| key >= *best) {
            continue;
        }
        match branching_var(&relaxed.values, integer_vars) {
            None => incumbent = Some(key),
            Some(j) => {
                let floor = relaxed.values[j].floor();
                let mut up = node.bounds.clone();
                up[j].lower = &floor + Rational::one();
                let mut down = node.bounds.clone();
                down[j].upper = Some(floor);
                // Down branch is explored first.
                stack.push(up);
                stack.push(down);
            }
        }
    }
    Ok(match incumbent {
        Some(key) => Search::Optimal(key * sign),
        None => Search::Infeasible,
    })
}

/// Solves a MILP exactly. Among equally optimal solutions the one with the
/// lexicographically smallest integer-variable vector is returned, and the
/// continuous variables are then resolved the same way.
///
/// Every integer variable needs a finite upper bound.
pub fn solve_milp(problem: &MilpProblem) -> Result<Solution> {
    problem.validate()?;
    let lp = &problem.lp;
    let optimum = match branch_and_bound(lp, &problem.integer_vars)? {
        Search::Optimal(z) => z,
        Search::Infeasible => return Ok(Solution::without_optimum(Status::Infeasible)),
        Search::Unbounded => return Ok(Solution::without_optimum(Status::Unbounded)),
    };

    let integer_order: Vec<usize> = problem.integer_vars.iter().copied().collect();
    let continuous_order: Vec<usize> = (0..lp.var_count())
        .filter(|j| !problem.integer_vars.contains(j))
        .collect();

    let integer_values = lexicographic_refine(lp, &optimum, &integer_order, &problem.integer_vars)?;
    let mut pinned = lp.clone();
    for &j in &integer_order {
        pinned.bounds[j] = Bounds::fixed(integer_values[j].clone());
    }
    let values = if continuous_order.is_empty() {
        integer_values
    } else {
        lexicographic_refine(&pinned, &optimum, &continuous_order, &BTreeSet::new())?
    };

    Ok(Solution {
        status: Status::Optimal,
        objective: lp.objective_value(&values),
        values,
    })
}

/// Optimal value only, without the canonical tie-break.
pub(crate) fn milp_optimum(problem: &MilpProblem) -> Result<Option<Rational>> {
    problem.validate()?;
    Ok(match branch_and_bound(&problem.lp, &problem.integer_vars)? {
        Search::Optimal(z) => Some(z),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::solver::Relation;
    use crate::rational::int;

    #[test]
    fn rounds_a_fractional_bound_up() {
        let mut lp = LpProblem::new(Sense::Minimize, vec![int(1)]);
        lp.set_bounds(0, frac(1, 2), Some(frac(5, 2)));
        let s = solve_milp(&MilpProblem::new(lp, [0])).unwrap();
        assert_eq!(s.objective, int(1));
        assert_eq!(s.values, vec![int(1)]);
    }

    #[test]
    fn unbounded_integer_variable_is_a_contract_error() {
        let lp = LpProblem::new(Sense::Minimize, vec![int(1)]);
        assert_eq!(
            solve_milp(&MilpProblem::new(lp, [0])),
            Err(Error::UnboundedIntegerVar(0))
        );
    }

    #[test]
    fn infeasible_relaxation() {
        let mut lp = LpProblem::new(Sense::Minimize, vec![int(1)]);
        lp.set_bounds(0, int(0), Some(int(3)));
        lp.add_constraint(vec![int(1)], Relation::Ge, int(4));
        let s = solve_milp(&MilpProblem::new(lp, [0])).unwrap();
        assert_eq!(s.status, Status::Infeasible);
    }

    #[test]
    fn integer_gap_with_no_integer_point() {
        // 2x = 1 has no integer solution even though the relaxation does.
        let mut lp = LpProblem::new(Sense::Minimize, vec![int(1)]);
        lp.set_bounds(0, int(0), Some(int(3)));
        lp.add_constraint(vec![int(2)], Relation::Eq, int(1));
        assert_eq!(solve_milp(&MilpProblem::new(lp, [0])).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn knapsack() {
        // max 5a + 4b + 3c s.t. 2a + 3b + c <= 5, 4a + b + 2c <= 11, 3a + 4b + 2c <= 8
        let mut lp = LpProblem::new(Sense::Maximize, vec![int(5), int(4), int(3)]);
        for j in 0..3 {
            lp.set_bounds(j, int(0), Some(int(10)));
        }
        lp.add_constraint(vec![int(2), int(3), int(1)], Relation::Le, int(5));
        lp.add_constraint(vec![int(4), int(1), int(2)], Relation::Le, int(11));
        lp.add_constraint(vec![int(3), int(4), int(2)], Relation::Le, int(8));
        let s = solve_milp(&MilpProblem::new(lp.clone(), [0, 1, 2])).unwrap();
        assert_eq!(s.objective, int(13));
        assert_eq!(s.values, vec![int(2), int(0), int(1)]);
    }

    #[test]
    fn ties_resolve_to_lexicographically_smallest() {
        // max a + b s.t. a + b <= 2 with a, b in {0..2}: optima (0,2), (1,1), (2,0).
        let mut lp = LpProblem::new(Sense::Maximize, vec![int(1), int(1)]);
        lp.set_bounds(0, int(0), Some(int(2)));
        lp.set_bounds(1, int(0), Some(int(2)));
        lp.add_constraint(vec![int(1), int(1)], Relation::Le, int(2));
        let s = solve_milp(&MilpProblem::new(lp, [0, 1])).unwrap();
        assert_eq!(s.values, vec![int(0), int(2)]);
    }

    #[test]
    fn branching_prefers_fraction_nearest_half() {
        let values = vec![frac(1, 3), frac(5, 2), int(1), frac(9, 10)];
        let ints: BTreeSet<usize> = [0, 1, 2, 3].into();
        assert_eq!(branching_var(&values, &ints), Some(1));
    }
}
