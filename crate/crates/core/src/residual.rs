//! Residual bookkeeping shared by every identity check.
//!
//! Checks return the difference of the two sides of an identity; the
//! identity holds at order `N` exactly when that difference is zero.

use std::fmt;

use rayon::prelude::*;

use crate::ncpoly::{NCPoly, RewriteSystem};

/// Anything that can stand as the difference of two sides of an identity.
pub trait Residual {
    fn is_zero(&self) -> bool;
    /// Lowest power of `h` at which the residual is nonzero.
    fn valuation(&self) -> Option<usize>;
    fn term_count(&self) -> usize;
}

impl Residual for NCPoly {
    fn is_zero(&self) -> bool {
        NCPoly::is_zero(self)
    }
    fn valuation(&self) -> Option<usize> {
        NCPoly::valuation(self)
    }
    fn term_count(&self) -> usize {
        self.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// An expected inequality was exhibited by a concrete element.
    Witness,
    /// An inequality was looked for and not found.
    NoWitness,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Witness => "witness",
            Status::NoWitness => "no-witness",
        }
    }

    /// Whether the status counts as success for exit codes.
    pub fn ok(&self) -> bool {
        !matches!(self, Status::Fail)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one identity check over a family of samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    /// Equation label the check verifies, e.g. `coc` or `diag2`.
    pub tag: String,
    pub status: Status,
    /// Number of sample instances evaluated.
    pub samples: usize,
    /// Number of nonzero residual terms, summed over samples.
    pub residual_terms: usize,
    /// Lowest `h` order at which any sample failed.
    pub failing_order: Option<usize>,
    /// First failing (or witnessing) sample, rendered for humans.
    pub witness: Option<String>,
}

impl CheckEntry {
    pub fn passed(&self) -> bool {
        self.status.ok()
    }
}

/// Accumulates residuals for one named identity.
#[derive(Clone, Debug)]
pub struct Tally {
    entry: CheckEntry,
}

impl Tally {
    pub fn new(name: impl Into<String>, tag: impl Into<String>) -> Self {
        Tally {
            entry: CheckEntry {
                name: name.into(),
                tag: tag.into(),
                status: Status::Pass,
                samples: 0,
                residual_terms: 0,
                failing_order: None,
                witness: None,
            },
        }
    }

    /// Records one sample; `describe` is only evaluated on failure.
    pub fn record<R: Residual + ?Sized>(&mut self, r: &R, describe: impl FnOnce() -> String) {
        self.entry.samples += 1;
        if r.is_zero() {
            return;
        }
        self.entry.status = Status::Fail;
        self.entry.residual_terms += r.term_count();
        let v = r.valuation();
        self.entry.failing_order = match (self.entry.failing_order, v) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.entry.witness.is_none() {
            self.entry.witness = Some(describe());
        }
    }

    pub fn merge(&mut self, other: Tally) {
        let o = other.entry;
        self.entry.samples += o.samples;
        self.entry.residual_terms += o.residual_terms;
        if o.status == Status::Fail {
            self.entry.status = Status::Fail;
        }
        self.entry.failing_order = match (self.entry.failing_order, o.failing_order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.entry.witness.is_none() {
            self.entry.witness = o.witness;
        }
    }

    /// Evaluates `residual` over `items` in parallel and records the results
    /// in input order, so reports do not depend on scheduling.
    pub fn sweep<T, R, F, D>(&mut self, items: &[T], residual: F, describe: D)
    where
        T: Sync,
        R: Residual + Send,
        F: Fn(&T) -> R + Sync,
        D: Fn(&T) -> String,
    {
        let results: Vec<R> = items.par_iter().map(&residual).collect();
        for (item, r) in items.iter().zip(&results) {
            self.record(r, || describe(item));
        }
    }

    pub fn finish(self) -> CheckEntry {
        self.entry
    }
}

/// A single residual as a finished entry.
pub fn entry_for<R: Residual + ?Sized>(name: &str, tag: &str, r: &R, describe: impl FnOnce() -> String) -> CheckEntry {
    let mut t = Tally::new(name, tag);
    t.record(r, describe);
    t.finish()
}

/// Renders an NCPoly residual for a witness field.
pub fn show_poly(p: &NCPoly, rs: &RewriteSystem) -> String {
    p.display(rs)
}
