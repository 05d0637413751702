use serde_json::{json, Value};

/// Rendered result of a subcommand.
pub struct Outcome {
    /// File stem used with `--out`.
    pub name: String,
    pub text: String,
    pub json: Value,
    /// First failing check, if any.
    pub failure: Option<String>,
}

impl Outcome {
    pub fn new(name: &str, command: &str) -> Self {
        Outcome {
            name: name.to_string(),
            text: String::new(),
            json: json!({ "schema_version": liexp::expansion::REPORT_SCHEMA_VERSION, "command": command }),
            failure: None,
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.json[key] = value.into();
    }

    /// Records a failure; only the first one is kept.
    pub fn fail(&mut self, what: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some(what.into());
        }
    }

    /// A `name: pass|FAIL` line, failing the outcome when `ok` is false.
    pub fn check(&mut self, name: &str, ok: bool) {
        self.line(format!("{name}: {}", if ok { "pass" } else { "FAIL" }));
        if !ok {
            self.fail(name);
        }
    }
}
