use std::collections::BTreeMap;
use std::fmt::Write;

use stratcalc_core::Diagnostic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// Output of one command: human-readable lines, `key=value` pairs for the
/// machine format, and diagnostics shared by both.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
    entries: BTreeMap<String, String>,
    diagnostics: Vec<Diagnostic>,
}

impl Report {
    pub fn line(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn entry(&mut self, key: impl Into<String>, value: impl ToString) {
        let key = key.into();
        let previous = self.entries.insert(key.clone(), value.to_string());
        debug_assert!(previous.is_none(), "duplicate key {key}");
    }

    pub fn diagnostics(&mut self, d: impl IntoIterator<Item = Diagnostic>) {
        self.diagnostics.extend(d);
    }

    pub fn has_diagnostics(&self) -> bool {
        !self.diagnostics.is_empty()
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        let mut diagnostics = self.diagnostics.clone();
        diagnostics.sort();
        diagnostics.dedup();
        match format {
            Format::Text => {
                for l in &self.lines {
                    writeln!(out, "{l}").unwrap();
                }
                for d in &diagnostics {
                    writeln!(out, "diagnostic {d}").unwrap();
                }
            }
            Format::Machine => {
                let mut entries = self.entries.clone();
                entries.insert("diagnostics".into(), diagnostics.len().to_string());
                for (i, d) in diagnostics.iter().enumerate() {
                    entries.insert(format!("diagnostic.{i:04}.code"), d.code.to_string());
                    entries.insert(format!("diagnostic.{i:04}.message"), d.message.clone());
                    entries.insert(format!("diagnostic.{i:04}.strata"), join(&d.strata));
                }
                for (k, v) in entries {
                    writeln!(out, "{k}={v}").unwrap();
                }
            }
        }
        out
    }
}

pub fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
