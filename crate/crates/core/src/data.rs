//! Observations, candidate activities and the enumeration window.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{compact_string, int, is_integral, parse_rational, to_i64, Rational};

/// A decision making unit: one observed activity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dmu {
    pub name: String,
    pub inputs: Vec<Rational>,
    pub outputs: Vec<Rational>,
}

impl Dmu {
    pub fn new(name: impl Into<String>, inputs: Vec<Rational>, outputs: Vec<Rational>) -> Self {
        Self {
            name: name.into(),
            inputs,
            outputs,
        }
    }

    /// Convenience constructor for integer observations.
    pub fn integer(name: impl Into<String>, inputs: &[i64], outputs: &[i64]) -> Self {
        Self::new(
            name,
            inputs.iter().map(|&v| int(v)).collect(),
            outputs.iter().map(|&v| int(v)).collect(),
        )
    }

    pub fn point(&self) -> Point {
        Point::new(self.inputs.clone(), self.outputs.clone())
    }

    pub fn is_integer(&self) -> bool {
        self.inputs.iter().chain(&self.outputs).all(is_integral)
    }
}

/// An ordered, dimension-consistent collection of observations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    dmus: Vec<Dmu>,
    inputs: usize,
    outputs: usize,
}

impl Dataset {
    pub fn new(dmus: Vec<Dmu>) -> Result<Self> {
        let first = dmus
            .first()
            .ok_or_else(|| Error::Domain("dataset has no DMUs".into()))?;
        let (m, p) = (first.inputs.len(), first.outputs.len());
        if m == 0 || p == 0 {
            return Err(Error::Dimension(
                "at least one input and one output are required".into(),
            ));
        }
        let mut names = BTreeSet::new();
        for dmu in &dmus {
            if dmu.inputs.len() != m || dmu.outputs.len() != p {
                return Err(Error::Dimension(format!(
                    "DMU `{}` has {} inputs and {} outputs, expected {m} and {p}",
                    dmu.name,
                    dmu.inputs.len(),
                    dmu.outputs.len()
                )));
            }
            if dmu.inputs.iter().chain(&dmu.outputs).any(Signed::is_negative) {
                return Err(Error::Domain(format!("DMU `{}` has a negative value", dmu.name)));
            }
            if !names.insert(dmu.name.as_str()) {
                return Err(Error::Domain(format!("duplicate DMU name `{}`", dmu.name)));
            }
        }
        Ok(Self {
            dmus,
            inputs: m,
            outputs: p,
        })
    }

    pub fn dmus(&self) -> &[Dmu] {
        &self.dmus
    }

    pub fn len(&self) -> usize {
        self.dmus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dmus.is_empty()
    }

    /// Number of inputs `m`.
    pub fn input_count(&self) -> usize {
        self.inputs
    }

    /// Number of outputs `p`.
    pub fn output_count(&self) -> usize {
        self.outputs
    }

    pub fn get(&self, name: &str) -> Result<&Dmu> {
        self.dmus
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| Error::UnknownDmu(name.to_string()))
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.dmus
            .iter()
            .position(|d| d.name == name)
            .ok_or_else(|| Error::UnknownDmu(name.to_string()))
    }

    /// The sub-dataset made of the named DMUs, in the given order.
    pub fn subset(&self, names: &[&str]) -> Result<Self> {
        let dmus = names
            .iter()
            .map(|n| self.get(n).cloned())
            .collect::<Result<Vec<_>>>()?;
        Self::new(dmus)
    }

    /// A copy with one more observation appended.
    pub fn with(&self, dmu: Dmu) -> Result<Self> {
        let mut dmus = self.dmus.clone();
        dmus.push(dmu);
        Self::new(dmus)
    }

    pub fn is_integer(&self) -> bool {
        self.dmus.iter().all(Dmu::is_integer)
    }

    /// Fails with the first non-integer cell, for the integer-valued models.
    pub fn require_integer(&self) -> Result<()> {
        for dmu in &self.dmus {
            let cells = dmu
                .inputs
                .iter()
                .enumerate()
                .map(|(k, v)| (format!("x{}", k + 1), v))
                .chain(dmu.outputs.iter().enumerate().map(|(r, v)| (format!("y{}", r + 1), v)));
            for (column, value) in cells {
                if !is_integral(value) {
                    return Err(Error::NonInteger(format!(
                        "DMU `{}`, column {column} = {}",
                        dmu.name,
                        compact_string(value)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Names of DMUs that have at least one zero input. Radial contraction
    /// of a zero input is vacuous, so reports flag these.
    pub fn zero_input_dmus(&self) -> Vec<&str> {
        self.dmus
            .iter()
            .filter(|d| d.inputs.iter().any(Zero::is_zero))
            .map(|d| d.name.as_str())
            .collect()
    }

    pub fn check_point(&self, point: &Point) -> Result<()> {
        if point.inputs.len() != self.inputs || point.outputs.len() != self.outputs {
            return Err(Error::Dimension(format!(
                "point {point} does not have {} inputs and {} outputs",
                self.inputs, self.outputs
            )));
        }
        Ok(())
    }
}

/// A candidate activity `(x; y)`.
///
/// Ordering is lexicographic on inputs, then outputs, which gives every
/// point set a stable iteration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub inputs: Vec<Rational>,
    pub outputs: Vec<Rational>,
}

impl Point {
    pub fn new(inputs: Vec<Rational>, outputs: Vec<Rational>) -> Self {
        Self { inputs, outputs }
    }

    pub fn integer(inputs: &[i64], outputs: &[i64]) -> Self {
        Self::new(
            inputs.iter().map(|&v| int(v)).collect(),
            outputs.iter().map(|&v| int(v)).collect(),
        )
    }

    /// True when every component is an integer.
    pub fn is_integer(&self) -> bool {
        self.components().all(is_integral)
    }

    pub fn components(&self) -> impl Iterator<Item = &Rational> {
        self.inputs.iter().chain(&self.outputs)
    }

    pub fn dimension(&self) -> (usize, usize) {
        (self.inputs.len(), self.outputs.len())
    }

    /// Integer coordinates (inputs then outputs), or `None` if any component
    /// is fractional or out of `i64` range.
    pub fn to_lattice(&self) -> Option<Vec<i64>> {
        self.components().map(to_i64).collect()
    }

    pub fn from_lattice(coords: &[i64], inputs: usize) -> Self {
        let (x, y) = coords.split_at(inputs);
        Self::integer(x, y)
    }

    pub(crate) fn require_integer(&self) -> Result<Vec<i64>> {
        self.to_lattice()
            .ok_or_else(|| Error::NonInteger(format!("point {self}")))
    }
}

impl FromStr for Point {
    type Err = Error;

    /// Inverse of `Display`; the parentheses are optional.
    fn from_str(text: &str) -> Result<Self> {
        let body = text.trim();
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let (inputs, outputs) = body
            .split_once(';')
            .ok_or_else(|| Error::Malformed(format!("point `{text}` needs `;` between inputs and outputs")))?;
        let parse = |part: &str| -> Result<Vec<Rational>> {
            part.split(',')
                .map(|cell| {
                    parse_rational(cell)
                        .filter(|v| !v.is_negative())
                        .ok_or_else(|| Error::Malformed(format!("bad coordinate `{}` in point `{text}`", cell.trim())))
                })
                .collect()
        };
        Ok(Point::new(parse(inputs)?, parse(outputs)?))
    }
}

impl fmt::Display for Point {
    /// `(x1,...,xm;y1,...,yp)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({};{})",
            self.inputs.iter().map(compact_string).join(","),
            self.outputs.iter().map(compact_string).join(",")
        )
    }
}

/// True iff `a` uses no more of any input, produces no less of any output,
/// and differs from `b`.
pub fn dominates(a: &Point, b: &Point) -> Result<bool> {
    if a.dimension() != b.dimension() {
        return Err(Error::Dimension(format!("cannot compare {a} with {b}")));
    }
    let weakly = a.inputs.iter().zip(&b.inputs).all(|(p, q)| p <= q)
        && a.outputs.iter().zip(&b.outputs).all(|(p, q)| p >= q);
    Ok(weakly && a != b)
}

/// Finite integer window for enumeration. Inputs range over `0..=input_max`
/// and outputs over `0..=output_max`, componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingBox {
    pub input_max: Vec<u64>,
    pub output_max: Vec<u64>,
}

impl BoundingBox {
    pub fn new(input_max: Vec<u64>, output_max: Vec<u64>) -> Self {
        Self {
            input_max,
            output_max,
        }
    }

    /// Componentwise maximum of the observed (integer) data.
    pub fn covering(data: &Dataset) -> Result<Self> {
        data.require_integer()?;
        let column_max = |values: &mut dyn Iterator<Item = &Rational>| {
            values.filter_map(to_i64).max().unwrap_or(0).max(0) as u64
        };
        let input_max = (0..data.input_count())
            .map(|k| column_max(&mut data.dmus().iter().map(|d| &d.inputs[k])))
            .collect();
        let output_max = (0..data.output_count())
            .map(|r| column_max(&mut data.dmus().iter().map(|d| &d.outputs[r])))
            .collect();
        Ok(Self::new(input_max, output_max))
    }

    /// Ensures the box matches the dataset's dimensions and holds every
    /// observation.
    pub fn check(&self, data: &Dataset) -> Result<()> {
        if self.input_max.len() != data.input_count() || self.output_max.len() != data.output_count()
        {
            return Err(Error::Dimension(format!(
                "box has {} inputs and {} outputs, dataset has {} and {}",
                self.input_max.len(),
                self.output_max.len(),
                data.input_count(),
                data.output_count()
            )));
        }
        for dmu in data.dmus() {
            if !self.contains(&dmu.point()) {
                return Err(Error::Domain(format!(
                    "DMU `{}` lies outside the bounding box",
                    dmu.name
                )));
            }
        }
        Ok(())
    }

    pub fn contains(&self, point: &Point) -> bool {
        if point.dimension() != (self.input_max.len(), self.output_max.len()) {
            return false;
        }
        let within = |value: &Rational, max: u64| {
            !value.is_negative() && *value <= int(max.min(i64::MAX as u64) as i64)
        };
        point.inputs.iter().zip(&self.input_max).all(|(v, &m)| within(v, m))
            && point.outputs.iter().zip(&self.output_max).all(|(v, &m)| within(v, m))
    }

    /// Upper limits as one coordinate vector (inputs then outputs).
    pub fn limits(&self) -> Vec<i64> {
        self.input_max
            .iter()
            .chain(&self.output_max)
            .map(|&v| v as i64)
            .collect()
    }

    pub fn point_count(&self) -> u128 {
        self.limits().iter().map(|&v| v as u128 + 1).product()
    }

    /// Every integer point of the box, in lexicographic order.
    pub fn grid(&self) -> impl Iterator<Item = Point> + '_ {
        let inputs = self.input_max.len();
        lattice_range(&vec![0; self.limits().len()], &self.limits())
            .map(move |coords| Point::from_lattice(&coords, inputs))
    }
}

/// Lexicographic enumeration of the integer vectors `lo <= v <= hi`.
pub(crate) fn lattice_range(lo: &[i64], hi: &[i64]) -> impl Iterator<Item = Vec<i64>> {
    let ranges: Vec<_> = lo.iter().zip(hi).map(|(&l, &h)| l..=h).collect();
    let empty = lo.iter().zip(hi).any(|(l, h)| l > h);
    ranges
        .into_iter()
        .multi_cartesian_product()
        .filter(move |_| !empty)
}
