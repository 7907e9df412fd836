use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssertionOutcome {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

/// Output of one scenario or command. Field order, key order and point
/// order are all fixed, so equal inputs give byte-identical JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub results: Vec<Value>,
    pub assertions: Vec<AssertionOutcome>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(scenario: impl Into<String>) -> Self {
        Self {
            scenario: scenario.into(),
            results: Vec::new(),
            assertions: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn failed(&self) -> usize {
        self.assertions.iter().filter(|a| !a.pass).count()
    }

    pub fn passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
