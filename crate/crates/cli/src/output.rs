//! Command results and their text / JSON rendering.

use std::io::{self, Write};

use oqlkit_core::{LawReport, LawSet};
use serde_json::{Map, Value};

/// What a command produced: required laws and notes, command-specific data
/// for the JSON report, and lines for the text report.
#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub laws: LawSet,
    pub data: Map<String, Value>,
    pub lines: Vec<String>,
    /// Print the law table in text mode.
    pub show_laws: bool,
}

impl Outcome {
    pub fn new(command: &'static str) -> Self {
        Outcome {
            command,
            laws: LawSet::new(),
            data: Map::new(),
            lines: Vec::new(),
            show_laws: true,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.to_owned(), value.into());
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn passed(&self) -> bool {
        self.laws.holds()
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), self.command.into());
        obj.insert("verdict".into(), self.verdict().into());
        obj.insert(
            "laws".into(),
            serde_json::to_value(&self.laws.laws).expect("laws serialize"),
        );
        obj.insert(
            "info".into(),
            serde_json::to_value(&self.laws.info).expect("laws serialize"),
        );
        for (k, v) in &self.data {
            obj.insert(k.clone(), v.clone());
        }
        Value::Object(obj)
    }

    pub fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        for line in &self.lines {
            writeln!(out, "{line}")?;
        }
        if self.show_laws {
            for law in &self.laws.laws {
                writeln!(out, "{}", law_line(if law.holds { "PASS" } else { "FAIL" }, law))?;
            }
            for law in &self.laws.info {
                writeln!(out, "{}", law_line(if law.holds { "info" } else { "info FAIL" }, law))?;
            }
        }
        writeln!(out, "{}", self.verdict())
    }
}

fn law_line(tag: &str, law: &LawReport) -> String {
    match &law.witness {
        Some(w) => format!("{tag} {}: {w}", law.law),
        None => format!("{tag} {}", law.law),
    }
}

/// JSON body for an input error.
pub fn error_json(command: &str, err: &crate::CliError) -> Value {
    let mut obj = Map::new();
    obj.insert("command".into(), command.into());
    obj.insert("verdict".into(), "error".into());
    obj.insert("error".into(), err.to_string().into());
    Value::Object(obj)
}
