use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// What a subcommand hands back before rendering.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub payload: Value,
    pub counterexample: Option<String>,
    pub dot: Option<String>,
}

impl Outcome {
    pub fn pass(payload: Value) -> Self {
        Outcome { status: Status::Pass, payload, counterexample: None, dot: None }
    }

    /// Pass when `counterexample` is `None`, fail otherwise.
    pub fn verdict(payload: Value, counterexample: Option<String>) -> Self {
        let status = if counterexample.is_some() { Status::Fail } else { Status::Pass };
        Outcome { status, payload, counterexample, dot: None }
    }

    pub fn fail(payload: Value, counterexample: impl Into<String>) -> Self {
        Outcome { status: Status::Fail, payload, counterexample: Some(counterexample.into()), dot: None }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

pub fn to_json(command: &str, o: &Outcome) -> Value {
    json!({
        "status": o.status.name(),
        "command": command,
        "payload": o.payload,
        "counterexample": o.counterexample,
    })
}

pub fn error_json(command: &str, message: &str) -> Value {
    json!({
        "status": "error",
        "command": command,
        "payload": null,
        "counterexample": null,
        "error": message,
    })
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) => {
            let items = a.iter().map(inline).collect::<Option<Vec<_>>>()?;
            Some(format!("[{}]", items.join(", ")))
        }
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        Value::Object(_) => None,
    }
}

fn write_value(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(indent);
    let head = if key == "-" { format!("{pad}-") } else { format!("{pad}{key}:") };
    if let Some(s) = inline(v).filter(|s| s.len() <= 100 || !v.is_array()) {
        out.push_str(&format!("{head} {s}\n"));
        return;
    }
    out.push_str(&format!("{head}\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                write_value(out, indent + 1, k, x);
            }
        }
        Value::Array(a) => {
            for x in a {
                write_value(out, indent + 1, "-", x);
            }
        }
        _ => {}
    }
}

/// Line-oriented rendering: status first, then the payload keys in sorted order.
pub fn to_text(command: &str, o: &Outcome) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {command}\nstatus: {}\n", o.status.name()));
    if let Value::Object(m) = &o.payload {
        for (k, v) in m {
            write_value(&mut out, 0, k, v);
        }
    } else {
        write_value(&mut out, 0, "payload", &o.payload);
    }
    if let Some(c) = &o.counterexample {
        out.push_str(&format!("counterexample: {c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let o = Outcome::fail(json!({"pairs": [["a", "b"]], "n": 2, "nested": {"x": [1, 2]}}), "(a, b)");
        let t = to_text("demo", &o);
        assert_eq!(
            t,
            "command: demo\nstatus: fail\nn: 2\nnested:\n  x: [1, 2]\npairs: [[a, b]]\ncounterexample: (a, b)\n"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Pass.exit_code(), 0);
        assert_eq!(Status::Fail.exit_code(), 1);
        assert_eq!(Status::Error.exit_code(), 2);
    }
}
