//! Declarative scenarios: a dataset, a list of actions and assertions over
//! the facts those actions produce.
//!
//! Facts are addressed as `<action id>.<field>`, e.g. `ccr.theta` or
//! `gap.points`. Point sets are compared as sets; vectors such as `lambda`
//! and closure logs keep their order.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use dealab::io::{load_dataset, CellKind};
use dealab::models::{evaluate_point, overestimation_report, EfficiencyResult, ModelKind, ModelSpec, Rts, Score};
use dealab::ppslab::{
    axiom_closure, corollary_witness, integer_disposal_points, integer_segment_points, lemma_gap, lemma_gap_with,
    membership_corollary, membership_corollary_identity, membership_real_vrs, n_point_integer_combination,
    real_integer_points, AxiomOrder,
};
use dealab::solver::Status;
use dealab::{BoundingBox, Dataset, Dmu, Point};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::format;
use crate::plot::Overlay;
use crate::report::{AssertionOutcome, Report};

const BUILTINS: &[(&str, &str)] = &[
    ("fig4", include_str!("../scenarios/fig4.json")),
    ("fig7", include_str!("../scenarios/fig7.json")),
    ("fig8-9", include_str!("../scenarios/fig8-9.json")),
    ("sec3-abf", include_str!("../scenarios/sec3-abf.json")),
    ("sec4-overestimate", include_str!("../scenarios/sec4-overestimate.json")),
    ("sec5-additive", include_str!("../scenarios/sec5-additive.json")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(name, _)| *name).collect()
}

pub fn builtin(name: &str) -> CliResult<Scenario> {
    let (_, text) = BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CliError::Input(format!("unknown scenario `{name}` (known: {})", builtin_names().join(", "))))?;
    Scenario::from_json(text, None)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub dataset: DatasetSource,
    /// Box limits, inputs then outputs; defaults to the observed maxima.
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub bbox: Option<Vec<u64>>,
    pub actions: Vec<Action>,
    #[serde(default)]
    pub expected: Vec<Assertion>,
    /// Overlay drawn when the scenario is written to an output directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot: Option<Overlay>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetSource {
    Inline(Vec<InlineDmu>),
    /// CSV path, relative to the scenario file.
    Csv(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InlineDmu {
    pub dmu: String,
    /// `(x1,...;y1,...)`
    pub point: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Action {
    pub id: String,
    /// Restricts the action to these observations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on: Option<Vec<String>>,
    #[serde(flatten)]
    pub op: Op,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Op {
    Solve {
        model: String,
        #[serde(default)]
        rts: Option<String>,
        dmu: String,
        #[serde(default)]
        dominators: bool,
    },
    Evaluate {
        model: String,
        #[serde(default)]
        rts: Option<String>,
        label: String,
        point: String,
    },
    Segment { a: String, b: String },
    Disposal { point: String },
    Closure { order: ClosureOrder },
    LemmaGap,
    /// Gap recomputed from the grid: real membership LP minus the
    /// single-pass pairwise closure.
    GapBruteForce,
    RealPoints,
    Membership { candidate: String },
    NPoint { candidate: String },
    Corollary { candidate: String },
    CorollaryGrid,
    Overestimation { dmu: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureOrder {
    SinglePass,
    SinglePassCombination,
    Fixpoint,
}

impl ClosureOrder {
    pub fn axioms(self) -> AxiomOrder {
        match self {
            ClosureOrder::SinglePass => AxiomOrder::single_pass(),
            ClosureOrder::SinglePassCombination => AxiomOrder::single_pass_combination(),
            ClosureOrder::Fixpoint => AxiomOrder::fixpoint(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub fact: String,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Equals(Value),
    Contains(Vec<String>),
    Excludes(Vec<String>),
    Len(usize),
    /// Both entries occur and the first comes earlier.
    Before([String; 2]),
    EqualsFact(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    Text(String),
    /// Ordered values.
    Seq(Vec<String>),
    /// Compared ignoring order.
    Set(Vec<String>),
}

impl Fact {
    fn to_value(&self) -> Value {
        match self {
            Fact::Text(t) => Value::String(t.clone()),
            Fact::Seq(v) | Fact::Set(v) => json!(v),
        }
    }

    fn items(&self) -> Option<&[String]> {
        match self {
            Fact::Text(_) => None,
            Fact::Seq(v) | Fact::Set(v) => Some(v),
        }
    }

    fn matches(&self, expected: &Value) -> bool {
        match (self, expected) {
            (Fact::Text(t), Value::String(e)) => t == e,
            (Fact::Seq(v), Value::Array(e)) => e.len() == v.len() && v.iter().zip(e).all(|(a, b)| b.as_str() == Some(a)),
            (Fact::Set(v), Value::Array(e)) => {
                let want: Option<BTreeSet<&str>> = e.iter().map(Value::as_str).collect();
                want.is_some_and(|w| w.len() == e.len() && w == v.iter().map(String::as_str).collect())
            }
            _ => false,
        }
    }

    fn same_as(&self, other: &Fact) -> bool {
        match (self, other) {
            (Fact::Text(a), Fact::Text(b)) => a == b,
            (Fact::Seq(a), Fact::Seq(b)) => a == b,
            _ => match (self.items(), other.items()) {
                (Some(a), Some(b)) => {
                    let a: BTreeSet<_> = a.iter().collect();
                    let b: BTreeSet<_> = b.iter().collect();
                    a == b
                }
                _ => false,
            },
        }
    }
}

/// Everything a scenario run needs: the parsed dataset and working box.
pub struct Workspace {
    pub data: Dataset,
    pub bbox: BoundingBox,
}

impl Scenario {
    /// Parses a scenario; relative CSV paths resolve against `base`.
    pub fn from_json(text: &str, base: Option<&Path>) -> CliResult<Self> {
        let mut scenario: Scenario = serde_json::from_str(text)?;
        if let (DatasetSource::Csv(path), Some(base)) = (&mut scenario.dataset, base) {
            if path.is_relative() {
                *path = base.join(&*path);
            }
        }
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read scenario {}: {e}", path.display())))?;
        Self::from_json(&text, path.parent())
    }

    /// Action ids are unique and every assertion names an action's fact.
    pub fn validate(&self) -> CliResult<()> {
        let mut ids = BTreeSet::new();
        for action in &self.actions {
            if action.id.contains('.') || !ids.insert(action.id.as_str()) {
                return Err(CliError::Input(format!(
                    "scenario {}: action id `{}` is duplicated or contains `.`",
                    self.name, action.id
                )));
            }
        }
        for assertion in &self.expected {
            let mut referenced = vec![assertion.fact.as_str()];
            if let Check::EqualsFact(other) = &assertion.check {
                referenced.push(other);
            }
            for fact in referenced {
                let id = fact.split('.').next().unwrap_or_default();
                if !ids.contains(id) {
                    return Err(CliError::Input(format!(
                        "scenario {}: assertion `{}` refers to unknown action `{id}`",
                        self.name, assertion.name
                    )));
                }
            }
        }
        Ok(())
    }

    fn needs_integer_cells(&self) -> bool {
        self.actions.iter().any(|a| match &a.op {
            Op::Solve { model, .. } | Op::Evaluate { model, .. } => {
                model.parse::<ModelKind>().is_ok_and(|k| ModelSpec::of(k).is_integer())
            }
            _ => true,
        })
    }

    pub fn workspace(&self) -> CliResult<Workspace> {
        let data = match &self.dataset {
            DatasetSource::Inline(rows) => {
                let dmus = rows
                    .iter()
                    .map(|row| {
                        let p: Point = row.point.parse()?;
                        Ok(Dmu::new(row.dmu.clone(), p.inputs, p.outputs))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                Dataset::new(dmus)?
            }
            DatasetSource::Csv(path) => {
                let kind = if self.needs_integer_cells() { CellKind::Integer } else { CellKind::Real };
                load_dataset(path, kind)?
            }
        };
        let bbox = match &self.bbox {
            Some(limits) => box_from_limits(&data, limits)?,
            None => BoundingBox::covering(&data)?,
        };
        Ok(Workspace { data, bbox })
    }

    /// Runs every action and evaluates the assertions. Assertion failures
    /// are recorded in the report, not returned as errors.
    pub fn run(&self) -> CliResult<Report> {
        let ws = self.workspace()?;
        let mut report = Report::new(&self.name);
        let zero = ws.data.zero_input_dmus();
        if !zero.is_empty() {
            report
                .warnings
                .push(format!("zero inputs (radial contraction is vacuous there): {}", zero.join(", ")));
        }
        let mut facts = BTreeMap::new();
        for action in &self.actions {
            let result = run_action(&ws, action, &mut facts)?;
            report.results.push(result);
        }
        report.assertions = self.expected.iter().map(|a| evaluate(a, &facts)).collect();
        Ok(report)
    }
}

pub fn box_from_limits(data: &Dataset, limits: &[u64]) -> CliResult<BoundingBox> {
    let m = data.input_count();
    if limits.len() != m + data.output_count() {
        return Err(CliError::Input(format!(
            "box needs {} limits (inputs then outputs), got {}",
            m + data.output_count(),
            limits.len()
        )));
    }
    let bbox = BoundingBox::new(limits[..m].to_vec(), limits[m..].to_vec());
    bbox.check(data)?;
    Ok(bbox)
}

pub fn parse_model(model: &str, rts: Option<&str>) -> CliResult<ModelSpec> {
    let kind: ModelKind = model.parse()?;
    match rts.map(str::to_ascii_lowercase).as_deref() {
        None => Ok(ModelSpec::of(kind)),
        Some("crs") => Ok(ModelSpec::new(kind, Rts::Crs)?),
        Some("vrs") => Ok(ModelSpec::new(kind, Rts::Vrs)?),
        Some(other) => Err(CliError::Input(format!("unknown returns to scale `{other}`"))),
    }
}

fn status_name(status: Status) -> &'static str {
    match status {
        Status::Optimal => "optimal",
        Status::Infeasible => "infeasible",
        Status::Unbounded => "unbounded",
    }
}

fn efficiency_facts(id: &str, result: &EfficiencyResult, facts: &mut BTreeMap<String, Fact>) {
    let mut put = |field: &str, fact: Fact| {
        facts.insert(format!("{id}.{field}"), fact);
    };
    put("status", Fact::Text("optimal".into()));
    match &result.score {
        Score::Radial(t) => put("theta", Fact::Text(format::fraction(t))),
        Score::Additive(s) => put("total_slack", Fact::Text(format::fraction(s))),
    }
    put("lambda", Fact::Seq(format::fractions(&result.lambda)));
    put("targets", Fact::Text(result.targets.to_string()));
    put("input_slacks", Fact::Seq(format::fractions(&result.input_slacks)));
    put("output_slacks", Fact::Seq(format::fractions(&result.output_slacks)));
    put("dominated_by", Fact::Set(format::point_labels(&result.dominated_by)));
    put(
        "alternates",
        Fact::Set(
            result
                .alternates
                .iter()
                .map(|a| format::slack_vector(&a.input_slacks, &a.output_slacks))
                .collect(),
        ),
    );
}

fn run_action(ws: &Workspace, action: &Action, facts: &mut BTreeMap<String, Fact>) -> CliResult<Value> {
    let subset;
    let data = match &action.on {
        Some(names) => {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            subset = ws.data.subset(&names)?;
            &subset
        }
        None => &ws.data,
    };
    let bbox = &ws.bbox;
    let id = action.id.as_str();
    let mut put = |field: &str, fact: Fact| {
        facts.insert(format!("{id}.{field}"), fact);
    };
    let points_fact = |set: &BTreeSet<Point>| Fact::Set(format::point_labels(set));
    let points_json = |set: &BTreeSet<Point>| json!(format::point_labels(set));

    let mut value = match &action.op {
        Op::Solve { model, rts, dmu, dominators } => {
            let spec = parse_model(model, rts.as_deref())?;
            let point = data.get(dmu)?.point();
            let outcome = evaluate_point(data, spec, dmu, &point);
            let outcome = match (outcome, dominators) {
                (Ok(r), true) => r.with_dominators(data, bbox),
                (other, _) => other,
            };
            efficiency_value(id, dmu, spec, outcome, facts)?
        }
        Op::Evaluate { model, rts, label, point } => {
            let spec = parse_model(model, rts.as_deref())?;
            let point: Point = point.parse()?;
            efficiency_value(id, label, spec, evaluate_point(data, spec, label, &point), facts)?
        }
        Op::Segment { a, b } => {
            let points = integer_segment_points(&a.parse()?, &b.parse()?)?;
            put("points", points_fact(&points));
            json!({"points": points_json(&points)})
        }
        Op::Disposal { point } => {
            let points = integer_disposal_points(&point.parse()?, bbox)?;
            put("points", points_fact(&points));
            json!({"points": points_json(&points)})
        }
        Op::Closure { order } => {
            let state = axiom_closure(data, bbox, &order.axioms())?;
            put("points", points_fact(&state.points));
            put("log", Fact::Seq(state.log().iter().map(|(p, _)| p.to_string()).collect()));
            put("generations", Fact::Text(state.generation.to_string()));
            json!({
                "order": order,
                "points": points_json(&state.points),
                "generations": state.generation,
                "log": format::closure_log(&state),
            })
        }
        Op::LemmaGap => {
            let gap = lemma_gap(data, bbox)?;
            put("points", points_fact(&gap));
            json!({"points": points_json(&gap)})
        }
        Op::GapBruteForce => {
            let closure = axiom_closure(data, bbox, &AxiomOrder::single_pass())?;
            let mut gap = BTreeSet::new();
            for p in bbox.grid() {
                if !closure.contains(&p) && membership_real_vrs(data, &p)?.is_some() {
                    gap.insert(p);
                }
            }
            debug_assert_eq!(gap, lemma_gap_with(data, bbox, &AxiomOrder::single_pass())?);
            put("points", points_fact(&gap));
            json!({"points": points_json(&gap)})
        }
        Op::RealPoints => {
            let points = real_integer_points(data, bbox)?;
            put("points", points_fact(&points));
            json!({"points": points_json(&points)})
        }
        Op::Membership { candidate } => {
            let lambda = membership_real_vrs(data, &candidate.parse()?)?;
            weights_value(lambda, &mut put)
        }
        Op::NPoint { candidate } => {
            let lambda = n_point_integer_combination(data, &candidate.parse()?)?;
            weights_value(lambda, &mut put)
        }
        Op::Corollary { candidate } => {
            let candidate: Point = candidate.parse()?;
            let witness = corollary_witness(data, &candidate, bbox)?;
            let identity = membership_corollary_identity(data, &candidate)?;
            put("member", Fact::Text(witness.is_some().to_string()));
            put("identity", Fact::Text(identity.to_string()));
            match witness {
                Some(w) => {
                    let generators: Vec<String> = w.generators.iter().map(|(n, p)| format!("{n}:{p}")).collect();
                    put("generators", Fact::Seq(generators.clone()));
                    put("lambda", Fact::Seq(format::fractions(&w.weights)));
                    json!({
                        "member": true,
                        "identity": identity,
                        "generators": generators,
                        "lambda": format::fractions(&w.weights),
                    })
                }
                None => json!({"member": false, "identity": identity}),
            }
        }
        Op::CorollaryGrid => {
            let mut agree = 0usize;
            let mut disagreements = Vec::new();
            let total = bbox.point_count();
            for p in bbox.grid() {
                if membership_corollary(data, &p, bbox)? == membership_corollary_identity(data, &p)? {
                    agree += 1;
                } else {
                    disagreements.push(p.to_string());
                }
            }
            put("agreement", Fact::Text(format!("{agree}/{total}")));
            put("disagreements", Fact::Set(disagreements.clone()));
            json!({"agreement": format!("{agree}/{total}"), "disagreements": disagreements})
        }
        Op::Overestimation { dmu } => {
            let points: BTreeSet<Point> = overestimation_report(data, dmu, bbox)?.into_iter().collect();
            put("points", points_fact(&points));
            json!({"dmu": dmu, "points": points_json(&points)})
        }
    };

    let map = value.as_object_mut().expect("action results are objects");
    let op = serde_json::to_value(&action.op).expect("op serializes");
    map.insert("id".into(), json!(action.id));
    map.insert("op".into(), op["op"].clone());
    if let Some(on) = &action.on {
        map.insert("on".into(), json!(on));
    }
    Ok(value)
}

fn weights_value(lambda: Option<Vec<dealab::Rational>>, put: &mut impl FnMut(&str, Fact)) -> Value {
    put("member", Fact::Text(lambda.is_some().to_string()));
    match lambda {
        Some(l) => {
            put("lambda", Fact::Seq(format::fractions(&l)));
            json!({"member": true, "lambda": format::fractions(&l)})
        }
        None => {
            put("lambda", Fact::Text("none".into()));
            json!({"member": false, "lambda": null})
        }
    }
}

/// Solver infeasibility is a result, not an error: it is what LVM reports
/// for targets no integer combination reaches.
fn efficiency_value(
    id: &str,
    label: &str,
    spec: ModelSpec,
    outcome: dealab::Result<EfficiencyResult>,
    facts: &mut BTreeMap<String, Fact>,
) -> CliResult<Value> {
    match outcome {
        Ok(result) => {
            efficiency_facts(id, &result, facts);
            Ok(format::efficiency(&result))
        }
        Err(dealab::Error::Status(status)) => {
            facts.insert(format!("{id}.status"), Fact::Text(status_name(status).into()));
            Ok(json!({
                "dmu": label,
                "model": spec.kind.to_string(),
                "status": status_name(status),
            }))
        }
        Err(e) => Err(e.into()),
    }
}

fn evaluate(assertion: &Assertion, facts: &BTreeMap<String, Fact>) -> AssertionOutcome {
    let fact = facts.get(&assertion.fact);
    let actual = fact.map_or(Value::Null, Fact::to_value);
    let (expected, pass) = match &assertion.check {
        Check::Equals(v) => (v.clone(), fact.is_some_and(|f| f.matches(v))),
        Check::Contains(items) => (
            json!({"contains": items}),
            fact.and_then(Fact::items).is_some_and(|have| items.iter().all(|i| have.contains(i))),
        ),
        Check::Excludes(items) => (
            json!({"excludes": items}),
            fact.and_then(Fact::items).is_some_and(|have| items.iter().all(|i| !have.contains(i))),
        ),
        Check::Len(n) => {
            let len = fact.and_then(Fact::items).map(<[String]>::len);
            return AssertionOutcome {
                name: assertion.name.clone(),
                expected: json!(n),
                actual: json!(len),
                pass: len == Some(*n),
            };
        }
        Check::Before([first, second]) => {
            let seq = fact.and_then(Fact::items).unwrap_or_default();
            let at = |label: &String| seq.iter().position(|s| s == label);
            (
                json!({"before": [first, second]}),
                matches!((at(first), at(second)), (Some(a), Some(b)) if a < b),
            )
        }
        Check::EqualsFact(other) => {
            let other_fact = facts.get(other);
            (
                other_fact.map_or(Value::Null, Fact::to_value),
                matches!((fact, other_fact), (Some(a), Some(b)) if a.same_as(b)),
            )
        }
    };
    AssertionOutcome {
        name: assertion.name.clone(),
        expected,
        actual,
        pass,
    }
}
