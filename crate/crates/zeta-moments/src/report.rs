//! Check reports shared by the verifier operations.

use serde::{Deserialize, Serialize};

/// Outcome of one numeric check: a computed value, the predicted value it is
/// held against, and the tolerance that decides the verdict.
///
/// The invariant `pass == (abs_error <= tolerance)` is maintained by
/// [`VerifierReport::new`]; `notes` carries hypothesis diagnostics, recorded
/// constants, and truncation points. A note flagging a hypothesis violation
/// means `pass` is not a verdict on the underlying statement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifierReport {
    pub name: String,
    pub computed: f64,
    pub predicted: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: String,
}

impl VerifierReport {
    pub fn new(
        name: impl Into<String>,
        computed: f64,
        predicted: f64,
        tolerance: f64,
        notes: impl Into<String>,
    ) -> Self {
        let abs_error = (computed - predicted).abs();
        Self {
            name: name.into(),
            computed,
            predicted,
            abs_error,
            tolerance,
            pass: abs_error <= tolerance,
            notes: notes.into(),
        }
    }

    pub fn push_note(&mut self, note: &str) {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(note);
    }
}

/// [`VerifierReport`] plus the zero-sum truncation bookkeeping emitted by the
/// explicit-formula checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExplicitReport {
    #[serde(flatten)]
    pub report: VerifierReport,
    pub z_used: f64,
    pub z_recommended: f64,
}

/// Formats a float with 9 significant digits, the precision used in all CSV
/// output.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000".to_string();
    }
    format!("{:.8e}", x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_within_tolerance() {
        let r = VerifierReport::new("t", 1.0, 1.5, 0.6, "");
        assert!(r.pass);
        let r = VerifierReport::new("t", 1.0, 1.5, 0.4, "");
        assert!(!r.pass);
        assert_eq!(r.abs_error, 0.5);
    }

    #[test]
    fn json_shape() {
        let r = VerifierReport::new("check", 1.0, 1.0, 1e-9, "ok");
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in [
            "name",
            "computed",
            "predicted",
            "abs_error",
            "tolerance",
            "pass",
            "notes",
        ] {
            assert!(v.get(key).is_some(), "missing key {key}");
        }
    }

    #[test]
    fn sig9_has_nine_significant_digits() {
        assert_eq!(fmt_sig9(7.832014140556), "7.83201414e0");
        assert_eq!(fmt_sig9(-0.0048825), "-4.88250000e-3");
        assert_eq!(fmt_sig9(0.0), "0.00000000");
    }
}
