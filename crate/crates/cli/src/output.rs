use serde::Serialize;
use serde_json::{Map, Value};
use torelli_core::report::Report;
use torelli_core::Error;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Value,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Value => "value",
        }
    }
}

/// What a command prints. Timing goes to stderr, never into the payload.
#[derive(Serialize, Debug)]
pub struct Outcome {
    pub command: String,
    pub status: Status,
    pub payload: Map<String, Value>,
}

impl Outcome {
    pub fn value(command: &str) -> Self {
        Outcome {
            command: command.into(),
            status: Status::Value,
            payload: Map::new(),
        }
    }

    pub fn from_report(command: &str, r: &Report) -> Self {
        let mut payload = Map::new();
        payload.insert("name".into(), Value::String(r.name.clone()));
        for (k, v) in &r.data {
            payload.insert(k.clone(), v.clone());
        }
        payload.insert(
            "checks".into(),
            serde_json::to_value(&r.checks).expect("checks serialize"),
        );
        if let Some(f) = r.first_failure() {
            payload.insert("diagnostic".into(), Value::String(format!("{}: {}", f.name, f.detail)));
        }
        Outcome {
            command: command.into(),
            status: if r.passed { Status::Pass } else { Status::Fail },
            payload,
        }
    }

    /// Mathematical failures become a `fail` outcome; input problems return
    /// `None` and exit 2.
    pub fn from_error(command: &str, err: &Error) -> Option<Self> {
        match err {
            Error::NotTorelli(_)
            | Error::NotTorelliModN { .. }
            | Error::NotInImage
            | Error::IdentityFailed(_)
            | Error::ExactnessFailed { .. }
            | Error::TorsionFound { .. }
            | Error::NonStandardQuotient { .. } => {
                let mut payload = Map::new();
                payload.insert("diagnostic".into(), Value::String(err.to_string()));
                Some(Outcome {
                    command: command.into(),
                    status: Status::Fail,
                    payload,
                })
            }
            _ => None,
        }
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.payload
            .insert(key.into(), serde_json::to_value(v).expect("payload serializes"));
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Fail => 1,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("outcome serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.command, self.status.as_str());
        for (k, v) in &self.payload {
            if k == "checks" {
                for c in v.as_array().into_iter().flatten() {
                    let mark = if c["passed"] == Value::Bool(true) { "ok" } else { "FAIL" };
                    let name = c["name"].as_str().unwrap_or("");
                    match c["detail"].as_str() {
                        Some(d) if !d.is_empty() => s.push_str(&format!("check: [{mark}] {name}: {d}\n")),
                        _ => s.push_str(&format!("check: [{mark}] {name}\n")),
                    }
                }
                continue;
            }
            s.push_str(&format!("{k}: {}\n", render(v)));
        }
        s
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            items.iter().map(render).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}
