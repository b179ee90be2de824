use std::fmt::Display;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Summary,
    FullTrace,
}

/// Line-oriented output. `CHECK` records decide the exit status.
pub struct Report {
    format: Format,
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    pub fn new(format: Format) -> Self {
        Report { format, lines: Vec::new(), failed: false }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// Only shown with `--format full-trace`.
    pub fn trace(&mut self, text: impl Into<String>) {
        if self.format == Format::FullTrace {
            self.lines.push(text.into());
        }
    }

    pub fn check(&mut self, name: &str, ok: bool, witness: Option<impl Display>) {
        match (ok, witness) {
            (true, _) => self.line(format!("CHECK {name} PASS")),
            (false, Some(w)) => self.line(format!("CHECK {name} FAIL {w}")),
            (false, None) => self.line(format!("CHECK {name} FAIL")),
        }
        self.failed |= !ok;
    }

    pub fn pass(&mut self, name: &str) {
        self.check(name, true, None::<&str>);
    }

    pub fn fail(&mut self, name: &str, witness: impl Display) {
        self.check(name, false, Some(witness));
    }

    pub fn mark_failed(&mut self) {
        self.failed = true;
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}
