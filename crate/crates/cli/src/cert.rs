use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Schema tag carried by every document.
pub const SCHEMA_VERSION: &str = "lrc-cert/1";

/// JSON document emitted by every subcommand except `render`.
///
/// `inputs` echoes the parsed arguments and `result` holds the engine
/// payload. Rationals appear as `{"num": .., "den": ..}` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub version: String,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
}

impl CertificateDocument {
    pub fn new(command: &str, inputs: Value, result: Value) -> Self {
        CertificateDocument {
            version: SCHEMA_VERSION.into(),
            command: command.into(),
            inputs,
            result,
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let s = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        };
        s.expect("documents hold only JSON-representable values")
    }

    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// True if `v` contains a JSON number that is not an integer.
pub fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_float),
        Value::Object(o) => o.values().any(has_float),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let doc = CertificateDocument::new(
            "gap",
            json!({"speeds": [1, 2]}),
            json!({"delta": {"num": 1, "den": 3}}),
        );
        for pretty in [false, true] {
            assert_eq!(
                CertificateDocument::parse(&doc.to_json(pretty)).unwrap(),
                doc
            );
        }
        assert!(!has_float(&doc.result));
        assert!(has_float(&json!({"x": [1, 0.5]})));
    }
}
