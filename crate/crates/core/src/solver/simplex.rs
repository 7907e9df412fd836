//! Two-phase tableau simplex over exact rationals.

use num_traits::{One, Signed, Zero};

use super::{LpProblem, Relation, Sense, Solution, Status};
use crate::error::Result;
use crate::rational::Rational;

/// Dense simplex tableau in standard form `A x = b, x >= 0`.
#[derive(Debug, Clone)]
pub(super) struct Tableau {
    /// Constraint rows, each `cols + 1` wide with the right-hand side last.
    pub rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry holds minus the objective value.
    pub cost: Vec<Rational>,
    /// Basic column of each row.
    pub basis: Vec<usize>,
    /// Columns allowed to enter the basis (artificials are barred after phase one).
    pub allowed: Vec<bool>,
}

impl Tableau {
    pub fn cols(&self) -> usize {
        self.cost.len() - 1
    }

    pub fn pivot(&mut self, r: usize, c: usize) {
        let width = self.cols() + 1;
        let inv = self.rows[r][c].recip();
        for k in 0..width {
            if !self.rows[r][k].is_zero() {
                self.rows[r][k] *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nonzero: Vec<usize> = (0..width).filter(|&k| !pivot_row[k].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &k in &nonzero {
                row[k] -= &factor * &pivot_row[k];
            }
        }
        if !self.cost[c].is_zero() {
            let factor = self.cost[c].clone();
            for &k in &nonzero {
                self.cost[k] -= &factor * &pivot_row[k];
            }
        }
        self.basis[r] = c;
    }

    /// Recomputes reduced costs for the column costs `c` under the current basis.
    pub fn set_costs(&mut self, c: &[Rational]) {
        let width = self.cols() + 1;
        let mut cost: Vec<Rational> = (0..width)
            .map(|k| c.get(k).cloned().unwrap_or_else(Rational::zero))
            .collect();
        cost[width - 1] = Rational::zero();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = c.get(b).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for k in 0..width {
                if !row[k].is_zero() {
                    cost[k] -= &cb * &row[k];
                }
            }
        }
        self.cost = cost;
    }

    /// Minimum-ratio rows for entering column `c` (ties included), or `None`
    /// when the column has no positive entry.
    pub fn ratio_rows(&self, c: usize) -> Option<Vec<usize>> {
        let rhs = self.cols();
        let mut best: Option<Rational> = None;
        let mut rows = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            if !row[c].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[c];
            match &best {
                Some(b) if ratio > *b => {}
                Some(b) if ratio == *b => rows.push(i),
                _ => {
                    best = Some(ratio);
                    rows = vec![i];
                }
            }
        }
        best.map(|_| rows)
    }

    /// Bland's rule: lowest-index improving column enters, and among tied
    /// ratio rows the one whose basic variable has the lowest index leaves.
    /// Returns `false` on an unbounded ray.
    pub fn optimize(&mut self) -> bool {
        loop {
            let entering = (0..self.cols()).find(|&j| self.allowed[j] && self.cost[j].is_negative());
            let Some(c) = entering else {
                return true;
            };
            let Some(rows) = self.ratio_rows(c) else {
                return false;
            };
            let r = rows
                .into_iter()
                .min_by_key(|&i| self.basis[i])
                .expect("ratio rows are non-empty");
            self.pivot(r, c);
        }
    }

    /// Column values of the current basic solution.
    pub fn column_values(&self) -> Vec<Rational> {
        let rhs = self.cols();
        let mut values = vec![Rational::zero(); rhs];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            values[b] = row[rhs].clone();
        }
        values
    }

    pub fn sorted_basis(&self) -> Vec<usize> {
        let mut basis = self.basis.clone();
        basis.sort_unstable();
        basis
    }
}

/// The structural part of a standard-form problem: maps tableau columns back
/// to the caller's variables.
#[derive(Debug, Clone)]
pub(super) struct StandardForm {
    pub vars: usize,
    pub lower: Vec<Rational>,
}

impl StandardForm {
    pub fn original_values(&self, columns: &[Rational]) -> Vec<Rational> {
        (0..self.vars).map(|j| &self.lower[j] + &columns[j]).collect()
    }
}

pub(super) enum Phase {
    Optimal(Tableau, StandardForm),
    Infeasible,
    Unbounded,
}

/// Runs both phases and returns the final optimal tableau.
pub(super) fn optimal_tableau(problem: &LpProblem) -> Result<Phase> {
    problem.validate()?;
    let n = problem.var_count();
    let lower: Vec<Rational> = problem.bounds.iter().map(|b| b.lower.clone()).collect();

    // Shift x = lower + x' and turn finite upper bounds into rows.
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &problem.constraints {
        let shift = super::dot(&c.coeffs, &lower);
        rows.push((c.coeffs.clone(), c.relation, &c.rhs - shift));
    }
    for (j, b) in problem.bounds.iter().enumerate() {
        if let Some(upper) = &b.upper {
            let span = upper - &b.lower;
            if span.is_negative() {
                return Ok(Phase::Infeasible);
            }
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[j] = Rational::one();
            rows.push((coeffs, Relation::Le, span));
        }
    }

    // Non-negative right-hand sides.
    for (coeffs, relation, rhs) in rows.iter_mut() {
        if rhs.is_negative() {
            coeffs.iter_mut().for_each(|a| *a = -a.clone());
            *rhs = -rhs.clone();
            *relation = match relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let artificial_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let cols = n + slack_count + artificial_count;
    let first_artificial = n + slack_count;

    let mut table = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut next_slack, mut next_artificial) = (n, first_artificial);
    for (coeffs, relation, rhs) in rows {
        let mut row = coeffs;
        row.resize(cols + 1, Rational::zero());
        row[cols] = rhs;
        match relation {
            Relation::Le => {
                row[next_slack] = Rational::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_artificial] = Rational::one();
                basis.push(next_artificial);
                next_artificial += 1;
            }
            Relation::Eq => {
                row[next_artificial] = Rational::one();
                basis.push(next_artificial);
                next_artificial += 1;
            }
        }
        table.push(row);
    }

    let mut tableau = Tableau {
        rows: table,
        cost: vec![Rational::zero(); cols + 1],
        basis,
        allowed: vec![true; cols],
    };

    if artificial_count > 0 {
        let phase_one: Vec<Rational> = (0..cols)
            .map(|j| if j >= first_artificial { Rational::one() } else { Rational::zero() })
            .collect();
        tableau.set_costs(&phase_one);
        let bounded = tableau.optimize();
        debug_assert!(bounded, "phase one is bounded below by zero");
        if !tableau.cost[cols].is_zero() {
            return Ok(Phase::Infeasible);
        }

        // Drive artificials out of the basis; rows where that is impossible
        // are redundant and dropped.
        let mut r = 0;
        while r < tableau.rows.len() {
            if tableau.basis[r] >= first_artificial {
                let replacement = (0..first_artificial).find(|&j| !tableau.rows[r][j].is_zero());
                match replacement {
                    Some(j) => tableau.pivot(r, j),
                    None => {
                        tableau.rows.remove(r);
                        tableau.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for j in first_artificial..cols {
            tableau.allowed[j] = false;
        }
    }

    let sign = match problem.sense {
        Sense::Minimize => Rational::one(),
        Sense::Maximize => -Rational::one(),
    };
    let phase_two: Vec<Rational> = problem.objective.iter().map(|c| c * &sign).collect();
    tableau.set_costs(&phase_two);
    if !tableau.optimize() {
        return Ok(Phase::Unbounded);
    }
    Ok(Phase::Optimal(tableau, StandardForm { vars: n, lower }))
}

/// Solves an LP exactly. The returned point satisfies every constraint with
/// exact equality or inequality.
pub fn solve_lp(problem: &LpProblem) -> Result<Solution> {
    Ok(match optimal_tableau(problem)? {
        Phase::Optimal(tableau, form) => {
            let values = form.original_values(&tableau.column_values());
            Solution {
                status: Status::Optimal,
                objective: problem.objective_value(&values),
                values,
            }
        }
        Phase::Infeasible => Solution::without_optimum(Status::Infeasible),
        Phase::Unbounded => Solution::without_optimum(Status::Unbounded),
    })
}
