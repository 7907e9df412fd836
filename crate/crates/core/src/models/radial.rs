//! Real-valued radial models (CCR and VRS).

use num_traits::{One, Zero};

use super::{EfficiencyResult, ModelKind, ModelSpec, Rts, Score};
use crate::data::{Dataset, Point};
use crate::error::Result;
use crate::rational::Rational;
use crate::solver::{solve_lp_canonical, LpProblem, Relation, Sense};

pub fn solve_ccr(data: &Dataset, dmu: &str) -> Result<EfficiencyResult> {
    super::solve(data, ModelSpec::of(ModelKind::Ccr), dmu)
}

pub fn solve_vrs_radial(data: &Dataset, dmu: &str) -> Result<EfficiencyResult> {
    super::solve(data, ModelSpec::of(ModelKind::VrsRadial), dmu)
}

/// Envelopment form over `[θ, λ_1..λ_n]`:
/// `min θ` s.t. `Σλx_i <= θx0`, `Σλy_i >= y0`, plus `Σλ = 1` under VRS.
pub(super) fn envelopment(data: &Dataset, rts: Rts, subject: &Point) -> LpProblem {
    let n = data.len();
    let mut objective = vec![Rational::zero(); n + 1];
    objective[0] = Rational::one();
    let mut lp = LpProblem::new(Sense::Minimize, objective);
    for k in 0..data.input_count() {
        let mut row = vec![-subject.inputs[k].clone()];
        row.extend(data.dmus().iter().map(|d| d.inputs[k].clone()));
        lp.add_constraint(row, Relation::Le, Rational::zero());
    }
    for r in 0..data.output_count() {
        let mut row = vec![Rational::zero()];
        row.extend(data.dmus().iter().map(|d| d.outputs[r].clone()));
        lp.add_constraint(row, Relation::Ge, subject.outputs[r].clone());
    }
    if rts == Rts::Vrs {
        let terms: Vec<_> = (1..=n).map(|j| (j, Rational::one())).collect();
        lp.add_sparse(&terms, Relation::Eq, Rational::one());
    }
    lp
}

pub(super) fn evaluate(data: &Dataset, spec: ModelSpec, label: &str, subject: &Point) -> Result<EfficiencyResult> {
    let lp = envelopment(data, spec.rts, subject);
    let solution = solve_lp_canonical(&lp)?.optimal()?;
    let theta = solution.values[0].clone();
    let lambda = solution.values[1..].to_vec();
    let targets = combine(data, &lambda);
    Ok(radial_result(label, spec, subject, theta, lambda, targets))
}

/// `(Σλx_i, Σλy_i)`.
pub(super) fn combine(data: &Dataset, lambda: &[Rational]) -> Point {
    let sum = |pick: &dyn Fn(usize) -> Vec<Rational>, len: usize| -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); len];
        for (i, weight) in lambda.iter().enumerate() {
            for (a, v) in acc.iter_mut().zip(pick(i)) {
                *a += weight * v;
            }
        }
        acc
    };
    let dmus = data.dmus();
    Point::new(
        sum(&|i| dmus[i].inputs.clone(), data.input_count()),
        sum(&|i| dmus[i].outputs.clone(), data.output_count()),
    )
}

/// Slacks relative to the contracted input vector: `s⁻ = θx0 - x̂`,
/// `s⁺ = ŷ - y0`.
pub(super) fn radial_result(
    label: &str,
    spec: ModelSpec,
    subject: &Point,
    theta: Rational,
    lambda: Vec<Rational>,
    targets: Point,
) -> EfficiencyResult {
    let input_slacks = subject
        .inputs
        .iter()
        .zip(&targets.inputs)
        .map(|(x0, t)| &theta * x0 - t)
        .collect();
    let output_slacks = subject
        .outputs
        .iter()
        .zip(&targets.outputs)
        .map(|(y0, t)| t - y0)
        .collect();
    EfficiencyResult {
        dmu: label.to_string(),
        model: spec,
        score: Score::Radial(theta),
        lambda,
        targets,
        input_slacks,
        output_slacks,
        dominated_by: Vec::new(),
        alternates: Vec::new(),
    }
}
