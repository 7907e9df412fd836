use std::collections::BTreeSet;

use num_integer::Integer;

use crate::data::{lattice_range, BoundingBox, Point};
use crate::error::{Error, Result};

/// Interior lattice points of the segment from `b` to `a`, as
/// `(step, steps, point)` with `point = b + (step/steps)(a - b)`.
/// `steps` is the gcd of all componentwise differences.
pub(crate) fn lattice_segment(a: &[i64], b: &[i64]) -> Vec<(i64, i64, Vec<i64>)> {
    let diff: Vec<i64> = a.iter().zip(b).map(|(p, q)| p - q).collect();
    let g = diff.iter().fold(0i64, |acc, d| acc.gcd(d));
    if g <= 1 {
        return Vec::new();
    }
    (1..g)
        .map(|k| {
            let point = b.iter().zip(&diff).map(|(q, d)| q + d / g * k).collect();
            (k, g, point)
        })
        .collect()
}

/// All integer points strictly between `a` and `b` on the segment `ab`.
///
/// A point `(u/v)a + (1 - u/v)b` with `0 < u < v` is integral exactly when
/// `v` divides every component of `a - b`, so the admissible `v` are the
/// divisors of the gcd of those differences. Empty when that gcd is at most 1.
pub fn integer_segment_points(a: &Point, b: &Point) -> Result<BTreeSet<Point>> {
    if a.dimension() != b.dimension() {
        return Err(Error::Dimension(format!("segment between {a} and {b}")));
    }
    let la = a.require_integer()?;
    let lb = b.require_integer()?;
    let inputs = a.inputs.len();
    Ok(lattice_segment(&la, &lb)
        .into_iter()
        .map(|(_, _, p)| Point::from_lattice(&p, inputs))
        .collect())
}

/// Integer points `(x', y')` with `x' >= x` inside the box and
/// `0 <= y' <= y`, excluding the point itself.
pub(crate) fn lattice_disposal(point: &[i64], inputs: usize, limits: &[i64]) -> impl Iterator<Item = Vec<i64>> {
    let lo: Vec<i64> = point
        .iter()
        .enumerate()
        .map(|(k, &v)| if k < inputs { v } else { 0 })
        .collect();
    let hi: Vec<i64> = point
        .iter()
        .enumerate()
        .map(|(k, &v)| if k < inputs { limits[k] } else { v })
        .collect();
    let own = point.to_vec();
    lattice_range(&lo, &hi).filter(move |q| *q != own)
}

/// Integer free disposability of one point within the box.
pub fn integer_disposal_points(a: &Point, bbox: &BoundingBox) -> Result<BTreeSet<Point>> {
    let coords = a.require_integer()?;
    if !bbox.contains(a) {
        return Err(Error::Domain(format!("point {a} lies outside the bounding box")));
    }
    let inputs = a.inputs.len();
    Ok(lattice_disposal(&coords, inputs, &bbox.limits())
        .map(|q| Point::from_lattice(&q, inputs))
        .collect())
}
