use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "symsq.envelope/1";

/// What every verb prints under `--json`. Exact values are strings such as
/// `"-1/2"` or `"3/2-1/2*i"`; no field holds a float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    pub verb: String,
    pub inputs: Value,
    pub result: Value,
    /// `closed-form`, `cache` or `computed`.
    pub provenance: String,
    pub fingerprint: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}
