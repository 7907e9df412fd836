//! Sequential application of the integer axioms.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::segment::{lattice_disposal, lattice_segment};
use crate::data::{lattice_range, BoundingBox, Dataset, Point};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::solver::{solve_lp_canonical, LpProblem, Relation, Sense};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Every observation belongs to the set.
    Inclusion,
    /// Integer convexity over all pairs of current points.
    Convexity,
    /// Integer convexity over any number of current points: every integer
    /// box point that is an exact convex combination of the current set.
    CombinationConvexity,
    /// Integer free disposability of every current point.
    Disposal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomOrder {
    pub sequence: Vec<Axiom>,
    pub iterate_to_fixpoint: bool,
}

impl AxiomOrder {
    pub fn new(sequence: Vec<Axiom>, iterate_to_fixpoint: bool) -> Result<Self> {
        let order = Self {
            sequence,
            iterate_to_fixpoint,
        };
        order.validate()?;
        Ok(order)
    }

    /// Inclusion, convexity, disposal, applied once.
    pub fn single_pass() -> Self {
        Self {
            sequence: vec![Axiom::Inclusion, Axiom::Convexity, Axiom::Disposal],
            iterate_to_fixpoint: false,
        }
    }

    /// Inclusion, n-point combination convexity, disposal, applied once.
    pub fn single_pass_combination() -> Self {
        Self {
            sequence: vec![Axiom::Inclusion, Axiom::CombinationConvexity, Axiom::Disposal],
            iterate_to_fixpoint: false,
        }
    }

    /// Inclusion, convexity, disposal, repeated until nothing new appears.
    pub fn fixpoint() -> Self {
        Self {
            iterate_to_fixpoint: true,
            ..Self::single_pass()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let inclusions = self.sequence.iter().filter(|a| **a == Axiom::Inclusion).count();
        if self.sequence.first() != Some(&Axiom::Inclusion) || inclusions != 1 {
            return Err(Error::Domain(
                "axiom order must start with inclusion and contain it exactly once".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Observed(String),
    /// `(u/v) p + (1 - u/v) q`.
    Convexity { p: Point, q: Point, u: i64, v: i64 },
    /// `Σ weight_i * generator_i` over points already in the set.
    Combination { generators: Vec<Point>, weights: Vec<Rational> },
    Disposal { parent: Point },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub rule: Rule,
    /// Axiom application step that first produced the point (0 = inclusion).
    pub generation: usize,
}

/// The integer set produced by [`axiom_closure`], with the first derivation
/// found for every point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureState {
    pub points: BTreeSet<Point>,
    pub provenance: BTreeMap<Point, Provenance>,
    /// Number of the last axiom application step.
    pub generation: usize,
}

impl ClosureState {
    pub fn contains(&self, point: &Point) -> bool {
        self.points.contains(point)
    }

    pub fn generation_of(&self, point: &Point) -> Option<usize> {
        self.provenance.get(point).map(|p| p.generation)
    }

    /// Points in order of generation, ties in point order.
    pub fn log(&self) -> Vec<(&Point, &Provenance)> {
        let mut entries: Vec<_> = self.provenance.iter().collect();
        entries.sort_by(|a, b| a.1.generation.cmp(&b.1.generation).then_with(|| a.0.cmp(b.0)));
        entries
    }
}

enum LatticeRule {
    Observed(String),
    Convexity { p: Vec<i64>, q: Vec<i64>, u: i64, v: i64 },
    Combination { generators: Vec<Vec<i64>>, weights: Vec<Rational> },
    Disposal { parent: Vec<i64> },
}

struct Growing {
    points: BTreeMap<Vec<i64>, (LatticeRule, usize)>,
}

impl Growing {
    fn add(&mut self, point: Vec<i64>, rule: LatticeRule, generation: usize) -> bool {
        if self.points.contains_key(&point) {
            return false;
        }
        self.points.insert(point, (rule, generation));
        true
    }
}

/// Integer points of the box lying in the convex hull of `set`, each with
/// the lexicographically smallest weights (zero weights dropped).
/// `(point, generators, weights)`.
type Combination = (Vec<i64>, Vec<Vec<i64>>, Vec<Rational>);

fn combinations_in_box(set: &[Vec<i64>], limits: &[i64]) -> Result<Vec<Combination>> {
    let Some(first) = set.first() else {
        return Ok(Vec::new());
    };
    let dims = first.len();
    let lo: Vec<i64> = (0..dims).map(|k| set.iter().map(|p| p[k]).min().unwrap_or(0)).collect();
    let hi: Vec<i64> = (0..dims)
        .map(|k| set.iter().map(|p| p[k]).max().unwrap_or(0).min(limits[k]))
        .collect();
    let mut found = Vec::new();
    for target in lattice_range(&lo, &hi) {
        let mut lp = LpProblem::new(Sense::Minimize, vec![Rational::zero(); set.len()]);
        lp.add_constraint(vec![Rational::one(); set.len()], Relation::Eq, Rational::one());
        for (k, &value) in target.iter().enumerate() {
            lp.add_constraint(set.iter().map(|p| int(p[k])).collect(), Relation::Eq, int(value));
        }
        let solution = solve_lp_canonical(&lp)?;
        if !solution.is_optimal() {
            continue;
        }
        let (generators, weights) = set
            .iter()
            .zip(solution.values)
            .filter(|(_, w)| !w.is_zero())
            .map(|(p, w)| (p.clone(), w))
            .unzip();
        found.push((target, generators, weights));
    }
    Ok(found)
}

/// Applies the axioms of `order` to the observations inside `bbox`.
///
/// Each step acts on a snapshot of the set as it stood before the step. With
/// `iterate_to_fixpoint` the whole sequence repeats until a full pass adds
/// nothing; the box is finite, so this terminates.
pub fn axiom_closure(data: &Dataset, bbox: &BoundingBox, order: &AxiomOrder) -> Result<ClosureState> {
    order.validate()?;
    data.require_integer()?;
    bbox.check(data)?;
    let inputs = data.input_count();
    let limits = bbox.limits();

    let mut set = Growing {
        points: BTreeMap::new(),
    };
    let mut generation = 0;
    let mut first_step = true;
    loop {
        let mut added = false;
        for axiom in &order.sequence {
            if !first_step {
                generation += 1;
            }
            first_step = false;
            let snapshot: Vec<Vec<i64>> = set.points.keys().cloned().collect();
            match axiom {
                Axiom::Inclusion => {
                    for dmu in data.dmus() {
                        let coords = dmu.point().to_lattice().expect("integer data");
                        added |= set.add(coords, LatticeRule::Observed(dmu.name.clone()), generation);
                    }
                }
                Axiom::Convexity => {
                    for (i, a) in snapshot.iter().enumerate() {
                        for b in &snapshot[i + 1..] {
                            for (k, g, point) in lattice_segment(a, b) {
                                let d = k.gcd(&g);
                                let rule = LatticeRule::Convexity {
                                    p: a.clone(),
                                    q: b.clone(),
                                    u: k / d,
                                    v: g / d,
                                };
                                added |= set.add(point, rule, generation);
                            }
                        }
                    }
                }
                Axiom::CombinationConvexity => {
                    for (point, generators, weights) in combinations_in_box(&snapshot, &limits)? {
                        if set.points.contains_key(&point) {
                            continue;
                        }
                        let rule = LatticeRule::Combination { generators, weights };
                        added |= set.add(point, rule, generation);
                    }
                }
                Axiom::Disposal => {
                    for parent in &snapshot {
                        for point in lattice_disposal(parent, inputs, &limits) {
                            let rule = LatticeRule::Disposal {
                                parent: parent.clone(),
                            };
                            added |= set.add(point, rule, generation);
                        }
                    }
                }
            }
        }
        if !order.iterate_to_fixpoint || !added {
            break;
        }
    }

    let to_point = |coords: &[i64]| Point::from_lattice(coords, inputs);
    let mut points = BTreeSet::new();
    let mut provenance = BTreeMap::new();
    for (coords, (rule, gen)) in set.points {
        let rule = match rule {
            LatticeRule::Observed(name) => Rule::Observed(name),
            LatticeRule::Convexity { p, q, u, v } => Rule::Convexity {
                p: to_point(&p),
                q: to_point(&q),
                u,
                v,
            },
            LatticeRule::Combination { generators, weights } => Rule::Combination {
                generators: generators.iter().map(|g| to_point(g)).collect(),
                weights,
            },
            LatticeRule::Disposal { parent } => Rule::Disposal {
                parent: to_point(&parent),
            },
        };
        let point = to_point(&coords);
        points.insert(point.clone());
        provenance.insert(point, Provenance { rule, generation: gen });
    }
    Ok(ClosureState {
        points,
        provenance,
        generation,
    })
}
