//! Membership oracles for the real and integer technologies.

use itertools::Itertools;
use num_traits::{One, Zero};

use super::segment::lattice_disposal;
use crate::data::{BoundingBox, Dataset, Point};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::solver::{solve_lp_canonical, LpProblem, Relation, Sense};

fn convex_weights_problem(n: usize) -> LpProblem {
    let mut lp = LpProblem::new(Sense::Minimize, vec![Rational::zero(); n]);
    lp.add_constraint(vec![Rational::one(); n], Relation::Eq, Rational::one());
    lp
}

fn canonical_weights(lp: &LpProblem) -> Result<Option<Vec<Rational>>> {
    let solution = solve_lp_canonical(lp)?;
    Ok(solution.is_optimal().then_some(solution.values))
}

/// Membership in the real VRS technology: is there a convex `λ` with
/// `Σλx_i <= x` and `Σλy_i >= y`? Returns the lexicographically smallest
/// such `λ`.
pub fn membership_real_vrs(data: &Dataset, candidate: &Point) -> Result<Option<Vec<Rational>>> {
    data.check_point(candidate)?;
    let mut lp = convex_weights_problem(data.len());
    for k in 0..data.input_count() {
        let row = data.dmus().iter().map(|d| d.inputs[k].clone()).collect();
        lp.add_constraint(row, Relation::Le, candidate.inputs[k].clone());
    }
    for r in 0..data.output_count() {
        let row = data.dmus().iter().map(|d| d.outputs[r].clone()).collect();
        lp.add_constraint(row, Relation::Ge, candidate.outputs[r].clone());
    }
    canonical_weights(&lp)
}

/// Exact convex combination of the observations equal to the candidate,
/// without disposal: `Σλ(x_i, y_i) = (x, y)`, `Σλ = 1`, `λ >= 0`.
/// Returns the lexicographically smallest such `λ`.
pub fn n_point_integer_combination(data: &Dataset, candidate: &Point) -> Result<Option<Vec<Rational>>> {
    data.check_point(candidate)?;
    candidate.require_integer()?;
    let mut lp = convex_weights_problem(data.len());
    for k in 0..data.input_count() {
        let row = data.dmus().iter().map(|d| d.inputs[k].clone()).collect();
        lp.add_constraint(row, Relation::Eq, candidate.inputs[k].clone());
    }
    for r in 0..data.output_count() {
        let row = data.dmus().iter().map(|d| d.outputs[r].clone()).collect();
        lp.add_constraint(row, Relation::Eq, candidate.outputs[r].clone());
    }
    canonical_weights(&lp)
}

/// Integer disposed generators, one per participating DMU, whose convex
/// combination is the candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryWitness {
    /// `(dmu name, disposed integer generator)`.
    pub generators: Vec<(String, Point)>,
    pub weights: Vec<Rational>,
}

impl CorollaryWitness {
    pub fn combination(&self) -> Option<Point> {
        let (m, p) = self.generators.first()?.1.dimension();
        let mut inputs = vec![Rational::zero(); m];
        let mut outputs = vec![Rational::zero(); p];
        for ((_, g), w) in self.generators.iter().zip(&self.weights) {
            for (acc, v) in inputs.iter_mut().zip(&g.inputs) {
                *acc += w * v;
            }
            for (acc, v) in outputs.iter_mut().zip(&g.outputs) {
                *acc += w * v;
            }
        }
        Some(Point::new(inputs, outputs))
    }
}

fn convex_hits(generators: &[&Vec<i64>], target: &[i64]) -> Result<Option<Vec<Rational>>> {
    let mut lp = convex_weights_problem(generators.len());
    for (k, &value) in target.iter().enumerate() {
        let row = generators.iter().map(|g| int(g[k])).collect();
        lp.add_constraint(row, Relation::Eq, int(value));
    }
    canonical_weights(&lp)
}

/// Searches directly for integer generators `x'_i >= x_i`, `y'_i <= y_i`
/// inside the box and convex weights with `candidate = Σλ(x'_i, y'_i)`.
///
/// Candidates outside the convex hull of all disposed generators are
/// rejected with a single LP. Otherwise supports of increasing size (up to
/// `m + p + 1`, which suffices by Carathéodory) and generator tuples are
/// tried in order of closeness to the candidate.
pub fn corollary_witness(data: &Dataset, candidate: &Point, bbox: &BoundingBox) -> Result<Option<CorollaryWitness>> {
    data.require_integer()?;
    bbox.check(data)?;
    data.check_point(candidate)?;
    let target = candidate.require_integer()?;
    if !bbox.contains(candidate) {
        return Err(Error::Domain(format!("candidate {candidate} lies outside the bounding box")));
    }
    let inputs = data.input_count();
    let limits = bbox.limits();
    let distance = |g: &Vec<i64>| g.iter().zip(&target).map(|(a, b)| (a - b).abs()).sum::<i64>();

    let cones: Vec<Vec<Vec<i64>>> = data
        .dmus()
        .iter()
        .map(|d| {
            let own = d.point().to_lattice().expect("integer data");
            let mut cone: Vec<Vec<i64>> = std::iter::once(own.clone())
                .chain(lattice_disposal(&own, inputs, &limits))
                .collect();
            cone.sort_by_key(|g| (distance(g), g.clone()));
            cone
        })
        .collect();

    let all: Vec<&Vec<i64>> = cones.iter().flatten().collect();
    if convex_hits(&all, &target)?.is_none() {
        return Ok(None);
    }

    let max_support = data.len().min(target.len() + 1);
    for size in 1..=max_support {
        for subset in (0..data.len()).combinations(size) {
            let choices = subset.iter().map(|&i| 0..cones[i].len()).multi_cartesian_product();
            for choice in choices {
                let tuple: Vec<&Vec<i64>> = subset.iter().zip(&choice).map(|(&i, &c)| &cones[i][c]).collect();
                let spans = (0..target.len()).all(|k| {
                    let lo = tuple.iter().map(|g| g[k]).min().unwrap_or(0);
                    let hi = tuple.iter().map(|g| g[k]).max().unwrap_or(0);
                    lo <= target[k] && target[k] <= hi
                });
                if !spans {
                    continue;
                }
                if let Some(weights) = convex_hits(&tuple, &target)? {
                    let generators = subset
                        .iter()
                        .zip(&tuple)
                        .map(|(&i, g)| (data.dmus()[i].name.clone(), Point::from_lattice(g, inputs)))
                        .collect();
                    return Ok(Some(CorollaryWitness { generators, weights }));
                }
            }
        }
    }
    Ok(None)
}

/// The generator-based integer technology, decided by [`corollary_witness`].
pub fn membership_corollary(data: &Dataset, candidate: &Point, bbox: &BoundingBox) -> Result<bool> {
    Ok(corollary_witness(data, candidate, bbox)?.is_some())
}

/// Real VRS membership restricted to integer points: the right-hand side of
/// the identity that [`membership_corollary`] is checked against.
pub fn membership_corollary_identity(data: &Dataset, candidate: &Point) -> Result<bool> {
    Ok(candidate.is_integer() && membership_real_vrs(data, candidate)?.is_some())
}
