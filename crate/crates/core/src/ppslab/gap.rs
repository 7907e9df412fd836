//! Differences between the real technology and the sequentially generated
//! integer sets.

use std::collections::BTreeSet;

use super::closure::{axiom_closure, AxiomOrder};
use super::membership::{membership_real_vrs, n_point_integer_combination};
use crate::data::{BoundingBox, Dataset, Point};
use crate::error::Result;

/// Integer points of the box that belong to the real VRS technology,
/// decided point by point with the LP oracle.
pub fn real_integer_points(data: &Dataset, bbox: &BoundingBox) -> Result<BTreeSet<Point>> {
    data.require_integer()?;
    bbox.check(data)?;
    let mut members = BTreeSet::new();
    for point in bbox.grid() {
        if membership_real_vrs(data, &point)?.is_some() {
            members.insert(point);
        }
    }
    Ok(members)
}

/// Integer points of the real technology (inside the box) that a single pass
/// of inclusion, integer convexity and disposal over the observations never
/// reaches. Convexity here admits integer combinations of any number of
/// observations; see [`lemma_gap_with`] for other axiom orders.
pub fn lemma_gap(data: &Dataset, bbox: &BoundingBox) -> Result<BTreeSet<Point>> {
    lemma_gap_with(data, bbox, &AxiomOrder::single_pass_combination())
}

/// Real integer points of the box missing from the closure under `order`.
pub fn lemma_gap_with(data: &Dataset, bbox: &BoundingBox, order: &AxiomOrder) -> Result<BTreeSet<Point>> {
    let generated = axiom_closure(data, bbox, order)?;
    let mut gap = BTreeSet::new();
    for point in bbox.grid() {
        if generated.contains(&point) {
            continue;
        }
        if membership_real_vrs(data, &point)?.is_some() {
            gap.insert(point);
        }
    }
    Ok(gap)
}

/// Box points that are exact convex combinations of the observations but
/// are absent from the pairwise fixpoint closure. Empty whenever pairwise
/// integer convexity plus disposal already covers every n-point combination.
pub fn npoint_points_missing_from_closure(data: &Dataset, bbox: &BoundingBox) -> Result<BTreeSet<Point>> {
    let closure = axiom_closure(data, bbox, &AxiomOrder::fixpoint())?;
    let mut missing = BTreeSet::new();
    for point in bbox.grid() {
        if closure.contains(&point) {
            continue;
        }
        if n_point_integer_combination(data, &point)?.is_some() {
            missing.insert(point);
        }
    }
    Ok(missing)
}
