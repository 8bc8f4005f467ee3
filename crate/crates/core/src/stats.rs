//! Step counts and sizes of a proof, in the column layout of the usual
//! benchmark tables.

use std::fmt;

use serde::Serialize;

use crate::format::{ProofDocument, Step};
use crate::scalar::Scalar;

/// Counts include the steps inside pattern bodies.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StatsReport {
    pub axiom_count: usize,
    pub lincomb_count: usize,
    pub ext_count: usize,
    pub deletion_count: usize,
    pub pattern_new_count: usize,
    pub pattern_apply_count: usize,
    pub max_pattern_body_steps: usize,
    pub file_bytes: u64,
    pub wall_time_millis: f64,
    /// Peak resident set size, when the platform reports it.
    pub peak_rss_kib: Option<u64>,
}

impl StatsReport {
    pub fn scan<C: Scalar>(doc: &ProofDocument<C>) -> Self {
        let mut stats = StatsReport::default();
        stats.add_steps(&doc.steps);
        stats
    }

    fn add_steps<C: Scalar>(&mut self, steps: &[Step<C>]) {
        for step in steps {
            match step {
                Step::Axiom { .. } => self.axiom_count += 1,
                Step::Deletion { .. } => self.deletion_count += 1,
                Step::LinComb { .. } => self.lincomb_count += 1,
                Step::Ext { .. } => self.ext_count += 1,
                Step::PatternNew(decl) => {
                    self.pattern_new_count += 1;
                    self.max_pattern_body_steps = self.max_pattern_body_steps.max(decl.body.len());
                    self.add_steps(&decl.body);
                }
                Step::PatternApply(_) => self.pattern_apply_count += 1,
            }
        }
    }

    /// Sums the counts of two scans; sizes and times are added, maxima kept.
    pub fn merge(&mut self, other: &StatsReport) {
        self.axiom_count += other.axiom_count;
        self.lincomb_count += other.lincomb_count;
        self.ext_count += other.ext_count;
        self.deletion_count += other.deletion_count;
        self.pattern_new_count += other.pattern_new_count;
        self.pattern_apply_count += other.pattern_apply_count;
        self.max_pattern_body_steps = self.max_pattern_body_steps.max(other.max_pattern_body_steps);
        self.file_bytes += other.file_bytes;
        self.wall_time_millis += other.wall_time_millis;
    }

    pub fn header() -> String {
        format!(
            "{:>8} {:>8} {:>6} {:>6} {:>6} {:>6} {:>10} {:>12} {:>10} {:>10}",
            "Axioms", "Steps", "Ext", "Del", "#", "Apply", "max|S|", "File(B)", "Mem(KiB)", "Time(ms)"
        )
    }

    pub fn row(&self) -> String {
        let mem = self.peak_rss_kib.map_or_else(|| "-".to_string(), |m| m.to_string());
        format!(
            "{:>8} {:>8} {:>6} {:>6} {:>6} {:>6} {:>10} {:>12} {:>10} {:>10.3}",
            self.axiom_count,
            self.lincomb_count,
            self.ext_count,
            self.deletion_count,
            self.pattern_new_count,
            self.pattern_apply_count,
            self.max_pattern_body_steps,
            self.file_bytes,
            mem,
            self.wall_time_millis
        )
    }
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", Self::header())?;
        write!(f, "{}", self.row())
    }
}

/// Peak resident set size of this process (Linux `VmHWM`).
pub fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}
