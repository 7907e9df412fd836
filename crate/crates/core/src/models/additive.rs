//! Additive (slack-based, non-radial) VRS model.

use num_traits::{One, Zero};

use super::{EfficiencyResult, ModelKind, ModelSpec, Score, SlackOptimum};
use crate::data::{Dataset, Point};
use crate::error::Result;
use crate::rational::Rational;
use crate::solver::{enumerate_optimal_vertices, solve_lp_canonical, LpProblem, Relation, Sense};

/// Most alternate optima reported per evaluation.
pub const ALTERNATE_CAP: usize = 64;

pub fn solve_additive(data: &Dataset, dmu: &str) -> Result<EfficiencyResult> {
    super::solve(data, ModelSpec::of(ModelKind::Additive), dmu)
}

/// Variables `[λ_1..λ_n, s⁻_1..s⁻_m, s⁺_1..s⁺_p]`:
/// `max Σs⁻ + Σs⁺` s.t. `Σλx + s⁻ = x0`, `Σλy - s⁺ = y0`, `Σλ = 1`.
pub fn formulation(data: &Dataset, subject: &Point) -> LpProblem {
    let (n, m, p) = (data.len(), data.input_count(), data.output_count());
    let mut objective = vec![Rational::zero(); n];
    objective.extend(std::iter::repeat_n(Rational::one(), m + p));
    let mut lp = LpProblem::new(Sense::Maximize, objective);
    for k in 0..m {
        let mut terms: Vec<_> = data
            .dmus()
            .iter()
            .enumerate()
            .map(|(i, d)| (i, d.inputs[k].clone()))
            .collect();
        terms.push((n + k, Rational::one()));
        lp.add_sparse(&terms, Relation::Eq, subject.inputs[k].clone());
    }
    for r in 0..p {
        let mut terms: Vec<_> = data
            .dmus()
            .iter()
            .enumerate()
            .map(|(i, d)| (i, d.outputs[r].clone()))
            .collect();
        terms.push((n + m + r, -Rational::one()));
        lp.add_sparse(&terms, Relation::Eq, subject.outputs[r].clone());
    }
    let terms: Vec<_> = (0..n).map(|j| (j, Rational::one())).collect();
    lp.add_sparse(&terms, Relation::Eq, Rational::one());
    lp
}

fn split(values: &[Rational], n: usize, m: usize) -> SlackOptimum {
    SlackOptimum {
        lambda: values[..n].to_vec(),
        input_slacks: values[n..n + m].to_vec(),
        output_slacks: values[n + m..].to_vec(),
    }
}

pub(super) fn evaluate(data: &Dataset, label: &str, subject: &Point) -> Result<EfficiencyResult> {
    let (n, m) = (data.len(), data.input_count());
    let lp = formulation(data, subject);
    let best = solve_lp_canonical(&lp)?.optimal()?;
    let alternates = enumerate_optimal_vertices(&lp, ALTERNATE_CAP)?
        .into_iter()
        .map(|s| split(&s.values, n, m))
        .collect();
    let chosen = split(&best.values, n, m);
    let targets = Point::new(
        subject
            .inputs
            .iter()
            .zip(&chosen.input_slacks)
            .map(|(x, s)| x - s)
            .collect(),
        subject
            .outputs
            .iter()
            .zip(&chosen.output_slacks)
            .map(|(y, s)| y + s)
            .collect(),
    );
    Ok(EfficiencyResult {
        dmu: label.to_string(),
        model: ModelSpec::of(ModelKind::Additive),
        score: Score::Additive(best.objective),
        lambda: chosen.lambda,
        targets,
        input_slacks: chosen.input_slacks,
        output_slacks: chosen.output_slacks,
        dominated_by: Vec::new(),
        alternates,
    })
}
