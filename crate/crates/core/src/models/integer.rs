//! Integer radial models: LVM (equality targets) and KKM (disposable targets).

use num_traits::{One, Zero};

use super::radial::radial_result;
use super::{output_target_bounds, require_integer_point, EfficiencyResult, ModelKind, ModelSpec, Rts};
use crate::data::{Dataset, Point};
use crate::error::Result;
use crate::rational::Rational;
use crate::solver::{solve_milp, LpProblem, MilpProblem, Relation, Sense};

pub fn solve_lvm(data: &Dataset, dmu: &str) -> Result<EfficiencyResult> {
    super::solve(data, ModelSpec::of(ModelKind::Lvm), dmu)
}

pub fn solve_kkm(data: &Dataset, dmu: &str) -> Result<EfficiencyResult> {
    super::solve(data, ModelSpec::of(ModelKind::Kkm), dmu)
}

/// Variables `[θ, λ_1..λ_n, x̃_1..x̃_m, ỹ_1..ỹ_p]` with `x̃, ỹ` integral.
///
/// LVM ties the targets to the combination (`x̃ = Σλx`, `ỹ = Σλy`); KKM
/// only asks the combination to dominate them (`Σλx <= x̃`, `Σλy >= ỹ`).
/// Both require `x̃ <= θx0` and `ỹ >= y0`.
pub(super) fn formulation(data: &Dataset, spec: ModelSpec, subject: &Point) -> Result<MilpProblem> {
    let (n, m, p) = (data.len(), data.input_count(), data.output_count());
    let x_at = |k: usize| 1 + n + k;
    let y_at = |r: usize| 1 + n + m + r;

    let mut objective = vec![Rational::zero(); 1 + n + m + p];
    objective[0] = Rational::one();
    let mut lp = LpProblem::new(Sense::Minimize, objective);
    let (input_rel, output_rel) = match spec.kind {
        ModelKind::Lvm => (Relation::Eq, Relation::Eq),
        _ => (Relation::Le, Relation::Ge),
    };

    for k in 0..m {
        let mut terms: Vec<_> = data
            .dmus()
            .iter()
            .enumerate()
            .map(|(i, d)| (1 + i, d.inputs[k].clone()))
            .collect();
        terms.push((x_at(k), -Rational::one()));
        lp.add_sparse(&terms, input_rel, Rational::zero());
        lp.add_sparse(
            &[(x_at(k), Rational::one()), (0, -subject.inputs[k].clone())],
            Relation::Le,
            Rational::zero(),
        );
        lp.set_bounds(x_at(k), Rational::zero(), Some(subject.inputs[k].floor()));
    }

    let output_max = output_target_bounds(data, spec.rts, subject)?;
    for r in 0..p {
        let mut terms: Vec<_> = data
            .dmus()
            .iter()
            .enumerate()
            .map(|(i, d)| (1 + i, d.outputs[r].clone()))
            .collect();
        terms.push((y_at(r), -Rational::one()));
        lp.add_sparse(&terms, output_rel, Rational::zero());
        lp.set_bounds(y_at(r), subject.outputs[r].ceil(), Some(output_max[r].clone()));
    }

    if spec.rts == Rts::Vrs {
        let terms: Vec<_> = (1..=n).map(|j| (j, Rational::one())).collect();
        lp.add_sparse(&terms, Relation::Eq, Rational::one());
    }
    Ok(MilpProblem::new(lp, (1 + n)..(1 + n + m + p)))
}

pub(super) fn evaluate(data: &Dataset, spec: ModelSpec, label: &str, subject: &Point) -> Result<EfficiencyResult> {
    data.require_integer()?;
    require_integer_point(subject)?;
    let (n, m) = (data.len(), data.input_count());
    let milp = formulation(data, spec, subject)?;
    let solution = solve_milp(&milp)?.optimal()?;
    let v = solution.values;
    let targets = Point::new(v[1 + n..1 + n + m].to_vec(), v[1 + n + m..].to_vec());
    Ok(radial_result(label, spec, subject, v[0].clone(), v[1..=n].to_vec(), targets))
}
