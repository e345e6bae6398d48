use std::fmt::Write as _;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn word(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug)]
pub struct Item {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// The outcome of one command: informational lines, then one verdict per
/// check. `command` is the invocation, echoed as the first line.
#[derive(Debug)]
pub struct RunReport {
    pub command: String,
    pub notes: Vec<String>,
    pub items: Vec<Item>,
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), notes: Vec::new(), items: Vec::new(), elapsed: Duration::ZERO }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn item(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) {
        self.items.push(Item { name: name.into(), passed, witness });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.item(name, true, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.item(name, false, Some(witness.into()));
    }

    pub fn status(&self) -> Status {
        if self.items.iter().all(|i| i.passed) {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        writeln!(out, "modal {}", self.command).unwrap();
        for n in &self.notes {
            writeln!(out, "  {n}").unwrap();
        }
        for i in &self.items {
            let word = if i.passed { "PASS" } else { "FAIL" };
            match &i.witness {
                Some(w) => writeln!(out, "{word} {}: {w}", i.name).unwrap(),
                None => writeln!(out, "{word} {}", i.name).unwrap(),
            }
        }
        let passed = self.items.iter().filter(|i| i.passed).count();
        writeln!(out, "{} ({passed}/{} checks passed)", self.status().word(), self.items.len()).unwrap();
        if verbose {
            writeln!(out, "elapsed: {} ms", self.elapsed.as_millis()).unwrap();
        }
        out
    }
}
