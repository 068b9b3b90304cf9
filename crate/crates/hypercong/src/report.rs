//! Verification outcomes.
//!
//! Every verifier produces a [`CheckReport`]: the check's name, its inputs as
//! a sorted textual map, the computed and expected values, and the outcome.
//! A violated hypothesis is a distinct not-applicable outcome (`pass` is
//! neither true nor false); a scan must be able to tell "the theorem says
//! nothing here" apart from "the theorem failed here".

use std::collections::BTreeMap;

use serde::Serialize;

/// One verification outcome.
///
/// Serializes to a single JSON object: `{"check":...,"inputs":{...},
/// "computed":...,"expected":...,"pass":true|false|null}` where `null` marks
/// a not-applicable check. In CSV rows the `pass` column reads
/// `true`/`false`/`na`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs: BTreeMap<String, String>,
    pub computed: String,
    pub expected: String,
    pub pass: Option<bool>,
}

impl CheckReport {
    /// Report with `pass` decided by canonical-string equality of the two
    /// sides. All values in this crate print canonically, so string equality
    /// coincides with value equality.
    pub fn compare(
        check: &str,
        inputs: BTreeMap<String, String>,
        computed: String,
        expected: String,
    ) -> Self {
        let pass = Some(computed == expected);
        CheckReport {
            check: check.to_string(),
            inputs,
            computed,
            expected,
            pass,
        }
    }

    /// Report for a check whose hypothesis the inputs violate.
    pub fn not_applicable(
        check: &str,
        inputs: BTreeMap<String, String>,
        reason: &str,
        expected: String,
    ) -> Self {
        CheckReport {
            check: check.to_string(),
            inputs,
            computed: format!("n/a: {reason}"),
            expected,
            pass: None,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.pass == Some(true)
    }

    pub fn is_fail(&self) -> bool {
        self.pass == Some(false)
    }

    pub fn is_not_applicable(&self) -> bool {
        self.pass.is_none()
    }

    /// Inputs joined as `k=v;k=v`, in key order. Used as the final sort key
    /// for deterministic report emission.
    pub fn inputs_key(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.inputs {
            if !out.is_empty() {
                out.push(';');
            }
            out.push_str(k);
            out.push('=');
            out.push_str(v);
        }
        out
    }

    /// The prime this check ran at, when one of its inputs names it.
    /// Reports without a prime sort before all primed reports.
    pub fn prime(&self) -> u64 {
        self.inputs
            .get("p")
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn csv_header() -> &'static str {
        "check,inputs,computed,expected,pass"
    }

    pub fn csv_row(&self) -> String {
        let pass = match self.pass {
            Some(true) => "true",
            Some(false) => "false",
            None => "na",
        };
        format!(
            "{},{},{},{},{}",
            csv_field(&self.check),
            csv_field(&self.inputs_key()),
            csv_field(&self.computed),
            csv_field(&self.expected),
            pass
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Build an inputs map from name/value pairs.
pub fn inputs_from(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcomes_are_distinct() {
        let inputs = inputs_from(&[("p", "7".to_string())]);
        let pass = CheckReport::compare("x", inputs.clone(), "0".into(), "0".into());
        let fail = CheckReport::compare("x", inputs.clone(), "1".into(), "0".into());
        let na = CheckReport::not_applicable("x", inputs, "hypothesis violated", "0".into());
        assert!(pass.is_pass() && !pass.is_fail() && !pass.is_not_applicable());
        assert!(fail.is_fail());
        assert!(na.is_not_applicable() && !na.is_fail());
    }

    #[test]
    fn json_line_shape() {
        let r = CheckReport::compare(
            "demo",
            inputs_from(&[("alpha", "1/2".to_string()), ("p", "7".to_string())]),
            "0 (mod 49)".into(),
            "0 (mod 49)".into(),
        );
        assert_eq!(
            r.json_line(),
            r#"{"check":"demo","inputs":{"alpha":"1/2","p":"7"},"computed":"0 (mod 49)","expected":"0 (mod 49)","pass":true}"#
        );
        let na = CheckReport::not_applicable("demo", BTreeMap::new(), "why", "0".into());
        assert!(na.json_line().ends_with(r#""pass":null}"#));
    }

    #[test]
    fn csv_escaping() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("q\"q"), "\"q\"\"q\"");
    }

    #[test]
    fn inputs_key_is_sorted() {
        let r = CheckReport::compare(
            "demo",
            inputs_from(&[("b", "2".to_string()), ("a", "1".to_string())]),
            "x".into(),
            "x".into(),
        );
        assert_eq!(r.inputs_key(), "a=1;b=2");
    }
}
