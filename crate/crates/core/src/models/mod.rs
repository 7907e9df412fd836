//! Input-oriented DEA models compiled to exact LP/MILP problems.
//!
//! | model     | technology                 | targets                          |
//! |-----------|----------------------------|----------------------------------|
//! | CCR       | real, CRS                  | `Σλx`, `Σλy`                     |
//! | VRS       | real, `Σλ = 1`             | `Σλx`, `Σλy`                     |
//! | LVM       | integer targets `= Σλx`    | `x̃ = Σλx`, `ỹ = Σλy` integral   |
//! | KKM       | integer targets `>= Σλx`   | `Σλx <= x̃`, `Σλy >= ỹ` integral |
//! | Additive  | real, `Σλ = 1`             | `x0 - s⁻`, `y0 + s⁺`             |
//!
//! Radial models contract all inputs by one scalar `θ`. No second-stage
//! slack maximization is run; the additive model reports its alternate
//! optimal vertices instead.

mod additive;
mod integer;
mod radial;

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::data::{dominates, BoundingBox, Dataset, Point};
use crate::error::{Error, Result};
use crate::ppslab::membership_real_vrs;
use crate::rational::{to_i64, Rational};

pub use additive::solve_additive;
pub use integer::{solve_kkm, solve_lvm};
pub use radial::{solve_ccr, solve_vrs_radial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Ccr,
    VrsRadial,
    Lvm,
    Kkm,
    Additive,
}

/// Returns to scale: `Σλ` unrestricted (CRS) or `Σλ = 1` (VRS).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rts {
    Crs,
    Vrs,
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ccr" => Ok(Self::Ccr),
            "vrs" | "bcc" => Ok(Self::VrsRadial),
            "lvm" => Ok(Self::Lvm),
            "kkm" => Ok(Self::Kkm),
            "additive" | "add" => Ok(Self::Additive),
            other => Err(Error::Domain(format!("unknown model `{other}`"))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ccr => "ccr",
            Self::VrsRadial => "vrs",
            Self::Lvm => "lvm",
            Self::Kkm => "kkm",
            Self::Additive => "additive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub rts: Rts,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, rts: Rts) -> Result<Self> {
        let spec = Self { kind, rts };
        spec.validate()?;
        Ok(spec)
    }

    /// The default technology for each model: CRS for CCR, VRS otherwise.
    pub fn of(kind: ModelKind) -> Self {
        let rts = if kind == ModelKind::Ccr { Rts::Crs } else { Rts::Vrs };
        Self { kind, rts }
    }

    pub fn validate(&self) -> Result<()> {
        let fixed = match self.kind {
            ModelKind::Ccr => Some(Rts::Crs),
            ModelKind::VrsRadial | ModelKind::Additive => Some(Rts::Vrs),
            ModelKind::Lvm | ModelKind::Kkm => None,
        };
        match fixed {
            Some(rts) if rts != self.rts => Err(Error::Domain(format!(
                "{} requires {:?} returns to scale",
                self.kind, rts
            ))),
            _ => Ok(()),
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.kind, ModelKind::Lvm | ModelKind::Kkm)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Score {
    /// Radial input contraction factor `θ`.
    Radial(Rational),
    /// Total slack `Σs⁻ + Σs⁺` of the additive model.
    Additive(Rational),
}

impl Score {
    pub fn value(&self) -> &Rational {
        match self {
            Score::Radial(v) | Score::Additive(v) => v,
        }
    }
}

/// One optimal vertex of the additive model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackOptimum {
    pub lambda: Vec<Rational>,
    pub input_slacks: Vec<Rational>,
    pub output_slacks: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfficiencyResult {
    pub dmu: String,
    pub model: ModelSpec,
    pub score: Score,
    /// Intensity weights, one per observation in dataset order.
    pub lambda: Vec<Rational>,
    pub targets: Point,
    pub input_slacks: Vec<Rational>,
    pub output_slacks: Vec<Rational>,
    /// Integer technology points dominating the evaluated DMU; filled by
    /// [`EfficiencyResult::with_dominators`].
    pub dominated_by: Vec<Point>,
    /// Alternate optimal vertices (additive model only).
    pub alternates: Vec<SlackOptimum>,
}

impl EfficiencyResult {
    pub fn theta(&self) -> Option<&Rational> {
        match &self.score {
            Score::Radial(t) => Some(t),
            Score::Additive(_) => None,
        }
    }

    pub fn total_slack(&self) -> Option<&Rational> {
        match &self.score {
            Score::Additive(s) => Some(s),
            Score::Radial(_) => None,
        }
    }

    /// Attaches the over-estimation diagnostic for this DMU.
    pub fn with_dominators(mut self, data: &Dataset, bbox: &BoundingBox) -> Result<Self> {
        self.dominated_by = overestimation_report(data, &self.dmu, bbox)?;
        Ok(self)
    }
}

/// Evaluates an observed DMU with the given model.
pub fn solve(data: &Dataset, spec: ModelSpec, dmu: &str) -> Result<EfficiencyResult> {
    let point = data.get(dmu)?.point();
    evaluate_point(data, spec, dmu, &point)
}

/// Evaluates an arbitrary activity against the observations. The activity
/// need not be observed, so the self-reference guarantee `θ <= 1` is lost
/// and integer models may come back infeasible (reported as a status error).
pub fn evaluate_point(data: &Dataset, spec: ModelSpec, label: &str, point: &Point) -> Result<EfficiencyResult> {
    spec.validate()?;
    data.check_point(point)?;
    match spec.kind {
        ModelKind::Ccr | ModelKind::VrsRadial => radial::evaluate(data, spec, label, point),
        ModelKind::Lvm | ModelKind::Kkm => integer::evaluate(data, spec, label, point),
        ModelKind::Additive => additive::evaluate(data, label, point),
    }
}

/// Integer points of the real VRS technology inside the box that dominate
/// the DMU. A non-empty list for a DMU with radial integer score 1 means the
/// radial score over-estimates its efficiency.
pub fn overestimation_report(data: &Dataset, dmu: &str, bbox: &BoundingBox) -> Result<Vec<Point>> {
    data.require_integer()?;
    bbox.check(data)?;
    let subject = data.get(dmu)?.point();
    let coords = subject.to_lattice().expect("integer data");
    let m = data.input_count();

    let lo: Vec<i64> = coords
        .iter()
        .enumerate()
        .map(|(k, &v)| if k < m { 0 } else { v })
        .collect();
    let limits = bbox.limits();
    let hi: Vec<i64> = coords
        .iter()
        .enumerate()
        .map(|(k, &v)| if k < m { v.min(limits[k]) } else { limits[k] })
        .collect();

    let mut found = Vec::new();
    for candidate in crate::data::lattice_range(&lo, &hi) {
        let point = Point::from_lattice(&candidate, m);
        if dominates(&point, &subject)? && membership_real_vrs(data, &point)?.is_some() {
            found.push(point);
        }
    }
    Ok(found)
}

/// Upper limits for integer output targets.
///
/// Under VRS the targets never exceed the largest observed output. Under CRS
/// `λ_i <= x0_k / x_ik` for every input with `x_ik > 0`, which bounds
/// `Σλy`; an observation with all-zero inputs and a positive output leaves
/// the targets unbounded.
pub(crate) fn output_target_bounds(data: &Dataset, rts: Rts, subject: &Point) -> Result<Vec<Rational>> {
    let p = data.output_count();
    match rts {
        Rts::Vrs => Ok((0..p)
            .map(|r| {
                data.dmus()
                    .iter()
                    .map(|d| d.outputs[r].clone())
                    .max()
                    .expect("non-empty dataset")
            })
            .collect()),
        Rts::Crs => {
            let mut bounds = vec![Rational::from_integer(0.into()); p];
            for (i, dmu) in data.dmus().iter().enumerate() {
                let scale = dmu
                    .inputs
                    .iter()
                    .zip(&subject.inputs)
                    .filter(|(x, _)| x.is_positive())
                    .map(|(x, x0)| x0 / x)
                    .min();
                for r in 0..p {
                    if !dmu.outputs[r].is_positive() {
                        continue;
                    }
                    match &scale {
                        Some(s) => bounds[r] += s * &dmu.outputs[r],
                        None => return Err(Error::UnboundedIntegerVar(i)),
                    }
                }
            }
            Ok(bounds.iter().map(|b| b.floor()).collect())
        }
    }
}

pub(crate) fn require_integer_point(point: &Point) -> Result<()> {
    if point.components().all(|v| to_i64(v).is_some()) {
        Ok(())
    } else {
        Err(Error::NonInteger(format!("evaluated point {point}")))
    }
}
