//! Exact rational linear and mixed-integer programming.
//!
//! [`solve_lp`] is a two-phase dense-tableau simplex with Bland's rule, so it
//! terminates on degenerate problems without perturbation. [`solve_milp`]
//! runs depth-first branch-and-bound over it. Both report the canonical
//! (lexicographically smallest) optimum when the optimum is not unique; see
//! [`solve_lp_canonical`].

mod milp;
mod simplex;
mod vertices;

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{is_integral, Rational};

pub use milp::solve_milp;
pub use simplex::solve_lp;
pub use vertices::enumerate_optimal_vertices;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Variable bounds. The lower bound is always finite (0 by default).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub lower: Rational,
    pub upper: Option<Rational>,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            lower: Rational::zero(),
            upper: None,
        }
    }
}

impl Bounds {
    pub fn fixed(value: Rational) -> Self {
        Self {
            lower: value.clone(),
            upper: Some(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bounds>,
}

impl LpProblem {
    /// A problem over `objective.len()` variables, each in `[0, +inf)`.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            constraints: Vec::new(),
            bounds: vec![Bounds::default(); n],
        }
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    /// Adds a constraint given as `(variable, coefficient)` pairs.
    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) -> &mut Self {
        let mut coeffs = vec![Rational::zero(); self.var_count()];
        for (var, coeff) in terms {
            coeffs[*var] += coeff;
        }
        self.add_constraint(coeffs, relation, rhs)
    }

    pub fn set_bounds(&mut self, var: usize, lower: Rational, upper: Option<Rational>) -> &mut Self {
        self.bounds[var] = Bounds { lower, upper };
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.var_count();
        if self.bounds.len() != n {
            return Err(Error::Malformed(format!(
                "{} bounds for {n} variables",
                self.bounds.len()
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::Malformed(format!(
                    "constraint {i} has {} coefficients for {n} variables",
                    c.coeffs.len()
                )));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, values: &[Rational]) -> Rational {
        dot(&self.objective, values)
    }

    /// Exact feasibility check of a point against every constraint and bound.
    pub fn is_feasible(&self, values: &[Rational]) -> bool {
        values.len() == self.var_count()
            && self
                .constraints
                .iter()
                .all(|c| c.relation.holds(&dot(&c.coeffs, values), &c.rhs))
            && self.bounds.iter().zip(values).all(|(b, v)| {
                *v >= b.lower && b.upper.as_ref().is_none_or(|u| v <= u)
            })
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, y)| x * y)
        .fold(Rational::zero(), |acc, t| acc + t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilpProblem {
    pub lp: LpProblem,
    pub integer_vars: BTreeSet<usize>,
}

impl MilpProblem {
    pub fn new(lp: LpProblem, integer_vars: impl IntoIterator<Item = usize>) -> Self {
        Self {
            lp,
            integer_vars: integer_vars.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.lp.validate()?;
        for &j in &self.integer_vars {
            let bounds = self
                .lp
                .bounds
                .get(j)
                .ok_or_else(|| Error::Malformed(format!("integer variable {j} does not exist")))?;
            if bounds.upper.is_none() {
                return Err(Error::UnboundedIntegerVar(j));
            }
        }
        Ok(())
    }

    /// LP feasibility plus integrality of the integer variables.
    pub fn is_feasible(&self, values: &[Rational]) -> bool {
        self.lp.is_feasible(values) && self.integer_vars.iter().all(|&j| is_integral(&values[j]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub status: Status,
    /// Meaningful only when `status` is [`Status::Optimal`].
    pub objective: Rational,
    /// Empty unless optimal.
    pub values: Vec<Rational>,
}

impl Solution {
    pub(crate) fn without_optimum(status: Status) -> Self {
        Self {
            status,
            objective: Rational::zero(),
            values: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    /// The solution itself when optimal, otherwise a status error.
    pub fn optimal(self) -> Result<Self> {
        match self.status {
            Status::Optimal => Ok(self),
            status => Err(Error::Status(status)),
        }
    }
}

/// Optimal LP solution with ties resolved toward the lexicographically
/// smallest variable vector among all optima.
pub fn solve_lp_canonical(problem: &LpProblem) -> Result<Solution> {
    let first = solve_lp(problem)?;
    if !first.is_optimal() {
        return Ok(first);
    }
    let order: Vec<usize> = (0..problem.var_count()).collect();
    let values = lexicographic_refine(problem, &first.objective, &order, &BTreeSet::new())?;
    Ok(Solution {
        status: Status::Optimal,
        objective: first.objective,
        values,
    })
}

/// Fixes the objective at `optimum` and then minimizes each variable of
/// `order` in turn, freezing it at its minimum. When `integer_vars` is
/// non-empty the minima are taken over the mixed-integer set, and `order`
/// must list every integer variable. Returns the resulting point.
pub(crate) fn lexicographic_refine(
    problem: &LpProblem,
    optimum: &Rational,
    order: &[usize],
    integer_vars: &BTreeSet<usize>,
) -> Result<Vec<Rational>> {
    let n = problem.var_count();
    let mut fixed = problem.clone();
    fixed.add_constraint(problem.objective.clone(), Relation::Eq, optimum.clone());

    for &j in order {
        let mut target = vec![Rational::zero(); n];
        target[j] = Rational::from_integer(1.into());
        let sub = LpProblem {
            sense: Sense::Minimize,
            objective: target,
            ..fixed.clone()
        };
        let minimum = if integer_vars.is_empty() {
            solve_lp(&sub)?.optimal()?.objective
        } else {
            milp::milp_optimum(&MilpProblem {
                lp: sub,
                integer_vars: integer_vars.clone(),
            })?
            .ok_or(Error::Status(Status::Infeasible))?
        };
        fixed.bounds[j] = Bounds::fixed(minimum);
    }
    Ok(solve_lp(&fixed)?.optimal()?.values)
}
