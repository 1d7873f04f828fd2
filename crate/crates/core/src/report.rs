//! Verification reports and their JSON / CSV forms.

use serde::{Deserialize, Serialize};

use crate::constants::IndexConvention;
use crate::determinants::LogDet;
use crate::ensemble::OplusNormalization;
use crate::operators::{Realization, Sign};

/// Column order of the CSV summary.
pub const CSV_HEADER: &str =
    "command,symbol_hash,realization,k,sign,N,lhs_logabs,lhs_phase,rhs_logabs,rhs_phase,rel_err,passed";

/// Run parameters recorded alongside a comparison.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<Realization>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    #[serde(with = "nonfinite_as_null")]
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<IndexConvention>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<OplusNormalization>,
}

/// One determinant comparison: `lhs` is what was measured, `rhs` the prediction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub lhs: LogDet,
    pub rhs: LogDet,
    #[serde(with = "nonfinite_as_null")]
    pub rel_err: f64,
    pub params: ReportParams,
    /// `None` when the case is outside the scope of the prediction.
    pub passed: Option<bool>,
    pub notes: String,
}

impl VerificationReport {
    /// Compares `lhs` against `rhs`; passes iff `rel_err <= params.tolerance`.
    pub fn compare(check: &str, lhs: LogDet, rhs: LogDet, params: ReportParams) -> Self {
        let rel_err = lhs.rel_err(&rhs);
        Self {
            check: check.to_string(),
            lhs,
            rhs,
            rel_err,
            passed: Some(rel_err <= params.tolerance),
            params,
            notes: String::new(),
        }
    }

    /// A report for a case with no prediction.
    pub fn out_of_scope(check: &str, lhs: LogDet, params: ReportParams) -> Self {
        Self {
            check: check.to_string(),
            lhs,
            rhs: LogDet::ONE,
            rel_err: f64::NAN,
            params,
            passed: None,
            notes: "outside theorem scope".to_string(),
        }
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.passed == Some(true)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn csv_row(&self, symbol_hash: &str) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{:e},{:e},{:e},{:e},{:e},{}",
            self.check,
            symbol_hash,
            opt(self.params.realization.map(|r| r.to_string())),
            opt(self.params.k.map(|k| k.to_string())),
            opt(self.params.sign.map(|s| s.to_string())),
            self.params.n,
            self.lhs.log_abs,
            self.lhs.phase,
            self.rhs.log_abs,
            self.rhs.phase,
            self.rel_err,
            match self.passed {
                Some(true) => "true",
                Some(false) => "false",
                None => "",
            }
        )
    }
}

/// Serializes non-finite floats as the strings `"inf"`, `"-inf"`, `"nan"`
/// (JSON has no literal for them) and reads them back.
pub mod nonfinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("bad float {other:?}"))),
            },
        }
    }
}
