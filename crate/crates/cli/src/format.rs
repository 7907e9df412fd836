//! JSON encodings. Exact values are always `"num/den"` strings; decimals are
//! added next to scores for reading only.

use dealab::models::{EfficiencyResult, Score, SlackOptimum};
use dealab::ppslab::{ClosureState, Rule};
use dealab::rational::{compact_string, decimal_string, fraction_string};
use dealab::{Point, Rational};
use serde_json::{json, Value};

pub const DISPLAY_DIGITS: usize = 10;

pub fn fraction(value: &Rational) -> String {
    fraction_string(value)
}

pub fn fractions(values: &[Rational]) -> Vec<String> {
    values.iter().map(fraction).collect()
}

/// `{"exact": "34/39", "display_decimal": "0.8717948718"}`
pub fn score(value: &Rational) -> Value {
    json!({
        "exact": fraction(value),
        "display_decimal": decimal_string(value, DISPLAY_DIGITS),
    })
}

pub fn point(p: &Point) -> Value {
    json!({
        "label": p.to_string(),
        "inputs": fractions(&p.inputs),
        "outputs": fractions(&p.outputs),
    })
}

/// Slack vector `(s⁻..., s⁺...)`, e.g. `(1,0)`.
pub fn slack_vector(input_slacks: &[Rational], output_slacks: &[Rational]) -> String {
    let parts: Vec<String> = input_slacks.iter().chain(output_slacks).map(compact_string).collect();
    format!("({})", parts.join(","))
}

fn alternate(alt: &SlackOptimum) -> Value {
    json!({
        "slack_vector": slack_vector(&alt.input_slacks, &alt.output_slacks),
        "lambda": fractions(&alt.lambda),
        "input_slacks": fractions(&alt.input_slacks),
        "output_slacks": fractions(&alt.output_slacks),
    })
}

pub fn efficiency(result: &EfficiencyResult) -> Value {
    let mut value = json!({
        "dmu": result.dmu,
        "model": result.model.kind.to_string(),
        "rts": format!("{:?}", result.model.rts).to_lowercase(),
        "status": "optimal",
        "lambda": fractions(&result.lambda),
        "targets": point(&result.targets),
        "input_slacks": fractions(&result.input_slacks),
        "output_slacks": fractions(&result.output_slacks),
        "dominated_by": result.dominated_by.iter().map(point).collect::<Vec<_>>(),
    });
    let map = value.as_object_mut().expect("object literal");
    match &result.score {
        Score::Radial(theta) => map.insert("theta".into(), score(theta)),
        Score::Additive(total) => map.insert("total_slack".into(), score(total)),
    };
    if !result.alternates.is_empty() {
        map.insert(
            "alternates".into(),
            Value::Array(result.alternates.iter().map(alternate).collect()),
        );
    }
    value
}

pub fn rule(rule: &Rule) -> Value {
    match rule {
        Rule::Observed(name) => json!({"rule": "observed", "dmu": name}),
        Rule::Convexity { p, q, u, v } => json!({
            "rule": "convexity",
            "p": p.to_string(),
            "q": q.to_string(),
            "weight": format!("{u}/{v}"),
        }),
        Rule::Combination { generators, weights } => json!({
            "rule": "combination",
            "generators": generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "weights": fractions(weights),
        }),
        Rule::Disposal { parent } => json!({"rule": "disposal", "parent": parent.to_string()}),
    }
}

pub fn closure_log(state: &ClosureState) -> Value {
    Value::Array(
        state
            .log()
            .into_iter()
            .map(|(p, prov)| {
                let mut entry = rule(&prov.rule);
                let map = entry.as_object_mut().expect("object literal");
                map.insert("point".into(), Value::String(p.to_string()));
                map.insert("generation".into(), json!(prov.generation));
                entry
            })
            .collect(),
    )
}

pub fn point_labels<'a>(points: impl IntoIterator<Item = &'a Point>) -> Vec<String> {
    points.into_iter().map(ToString::to_string).collect()
}
