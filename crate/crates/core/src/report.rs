//! The JSON envelope shared by every machine-readable report.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub kind: String,
    pub ok: bool,
    pub report: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(kind: impl Into<String>, ok: bool, report: T) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            kind: kind.into(),
            ok,
            report,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_proof, corpus::GOLDEN, Theory};

    #[test]
    fn envelope_round_trips() {
        let script = GOLDEN.script();
        let report = check_proof(&script, &Theory::builtin("blackswan").unwrap()).unwrap();
        let env = Envelope::new("check", report.accepted(), report);
        let back: Envelope<crate::kernel::CheckReport> =
            serde_json::from_str(&env.to_json()).unwrap();
        assert_eq!(back, env);
        let v: serde_json::Value = serde_json::from_str(&env.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["report"]["verdict"], "accepted");
    }
}
