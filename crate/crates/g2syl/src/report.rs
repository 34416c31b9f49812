//! Verification reports: named pass/fail checks with an optional witness.

use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    /// Records a check; `witness` is kept only on failure.
    pub fn check(&mut self, name: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) {
        let witness = (!pass).then(witness);
        self.checks.push(Check { name: name.into(), pass, witness });
    }

    /// Records a check from a result whose error is the witness.
    pub fn check_result(&mut self, name: impl Into<String>, r: Result<(), String>) {
        let pass = r.is_ok();
        self.checks.push(Check { name: name.into(), pass, witness: r.err() });
    }

    pub fn extend(&mut self, other: Report) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.suite, c.name);
            self.checks.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One `PASS name` / `FAIL name: witness` line per check.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            match (&c.witness, c.pass) {
                (_, true) => s.push_str(&format!("PASS {}\n", c.name)),
                (Some(w), false) => s.push_str(&format!("FAIL {}: {}\n", c.name, w)),
                (None, false) => s.push_str(&format!("FAIL {}\n", c.name)),
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_only_on_failure() {
        let mut r = Report::new("demo");
        r.check("ok", true, || "unused".into());
        r.check("bad", false, || "x = 3".into());
        assert!(!r.all_pass());
        assert_eq!(r.checks[0].witness, None);
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_text().contains("FAIL bad: x = 3"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["suite"], "demo");
        assert_eq!(json["checks"][1]["pass"], false);
    }
}
