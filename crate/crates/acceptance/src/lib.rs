//! Reporting for the acceptance suite: each criterion collects its checks
//! and prints a single `PASS` or `FAIL` line, then fails the test on any
//! miss.

use std::fmt::Display;
use std::io::Write;
use std::time::Instant;

pub struct Criterion {
    id: u32,
    title: &'static str,
    started: Instant,
    misses: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    pub fn new(id: u32, title: &'static str) -> Criterion {
        Criterion { id, title, started: Instant::now(), misses: Vec::new(), notes: Vec::new() }
    }

    /// Records `what` as a miss unless `ok`.
    pub fn check(&mut self, ok: bool, what: impl Display) -> bool {
        if !ok {
            self.misses.push(what.to_string());
        }
        ok
    }

    /// A measured value shown on the report line.
    pub fn note(&mut self, what: impl Display) {
        self.notes.push(what.to_string());
    }

    /// Fails the criterion if the elapsed time exceeds `secs`.
    pub fn within(&mut self, secs: f64) {
        let took = self.started.elapsed().as_secs_f64();
        self.check(took < secs, format!("took {took:.2}s, limit {secs}s"));
    }

    /// The report line.
    pub fn line(&self) -> String {
        let verdict = if self.misses.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {:>2} {verdict} {}", self.id, self.title);
        if !self.notes.is_empty() {
            line += &format!(" [{}]", self.notes.join("; "));
        }
        if !self.misses.is_empty() {
            line += &format!(" misses: {}", self.misses.join("; "));
        }
        line
    }

    /// Prints the report line straight to stdout, past the test harness
    /// capture, and panics if anything missed.
    pub fn finish(self) {
        let line = self.line();
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{line}");
        let _ = out.flush();
        assert!(self.misses.is_empty(), "criterion {} missed {} checks", self.id, self.misses.len());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines() {
        let mut c = Criterion::new(3, "demo");
        c.note("x = 1");
        assert_eq!(c.line(), "criterion  3 PASS demo [x = 1]");
        assert!(!c.check(false, "y too big"));
        assert_eq!(c.line(), "criterion  3 FAIL demo [x = 1] misses: y too big");
    }
}
