use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub details: String,
    /// The statement the case exercises.
    pub anchor: String,
}

impl Case {
    /// Builds a case from a check that either decides (`Ok((passed, details))`)
    /// or could not run (`Err(message)`).
    pub fn from_check(name: impl Into<String>, anchor: &str, outcome: Result<(bool, String), String>) -> Self {
        let (status, details) = match outcome {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Error, e),
        };
        Self { name: name.into(), status, details, anchor: anchor.to_string() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, mut cases: Vec<Case>) -> Self {
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Error => summary.error += 1,
            }
        }
        Self { suite: suite.to_string(), seed, cases, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_matches_cases_and_order_is_by_name() {
        let cases = vec![
            Case::from_check("b", "", Ok((false, String::new()))),
            Case::from_check("a", "", Ok((true, String::new()))),
            Case::from_check("c", "", Err("boom".into())),
        ];
        let r = SuiteReport::new("t", 3, cases);
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, error: 1 });
        assert_eq!(r.cases.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["a", "b", "c"]);
        assert_eq!(r.exit_code(), 1);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["cases"][2]["status"], "error");
        assert_eq!(v["summary"]["fail"], 1);
    }
}
