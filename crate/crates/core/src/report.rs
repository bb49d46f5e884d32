//! Structured verdicts for law checks.
//!
//! A [`LawReport`] separates what a law *assumes* (named hypothesis bits)
//! from what it *claims* (the conclusion) and from auxiliary findings that
//! are neither. A report is sound unless every hypothesis holds and the
//! conclusion is false; `conclusion = None` means the claim was not
//! applicable and asserts nothing.

use std::fmt;

use crate::sigma::SigmaField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub hypotheses: Vec<Check>,
    pub details: Vec<Check>,
    pub conclusion: Option<bool>,
    pub witness: Option<String>,
}

impl LawReport {
    pub fn new(law: impl Into<String>) -> LawReport {
        LawReport {
            law: law.into(),
            hypotheses: Vec::new(),
            details: Vec::new(),
            conclusion: None,
            witness: None,
        }
    }

    pub fn hyp(mut self, name: impl Into<String>, holds: bool) -> Self {
        self.hypotheses.push(Check {
            name: name.into(),
            holds,
        });
        self
    }

    pub fn detail(mut self, name: impl Into<String>, holds: bool) -> Self {
        self.details.push(Check {
            name: name.into(),
            holds,
        });
        self
    }

    pub fn conclude(mut self, holds: bool) -> Self {
        self.conclusion = Some(holds);
        self
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|c| c.holds)
    }

    /// Hypotheses imply conclusion; vacuously sound when they fail or when
    /// the conclusion was not evaluated.
    pub fn sound(&self) -> bool {
        !self.hypotheses_hold() || self.conclusion != Some(false)
    }

    pub fn detail_named(&self, name: &str) -> Option<bool> {
        self.details
            .iter()
            .chain(&self.hypotheses)
            .find(|c| c.name == name)
            .map(|c| c.holds)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "law {}", self.law)?;
        for c in &self.hypotheses {
            writeln!(f, "  hypothesis {}: {}", c.name, c.holds)?;
        }
        for c in &self.details {
            writeln!(f, "  detail {}: {}", c.name, c.holds)?;
        }
        match self.conclusion {
            Some(b) => writeln!(f, "  conclusion: {b}")?,
            None => writeln!(f, "  conclusion: not applicable")?,
        }
        if let Some(w) = &self.witness {
            writeln!(f, "  witness: {w}")?;
        }
        Ok(())
    }
}

/// Compares two fields, recording a rendered witness on mismatch. The
/// witness names the side that each canonical partition came from.
pub fn fields_equal_witnessed(
    what: &str,
    lhs: &SigmaField,
    rhs: &SigmaField,
    witness: &mut Option<String>,
) -> bool {
    if lhs == rhs {
        true
    } else {
        if witness.is_none() {
            *witness = Some(format!("{what}: lhs = {lhs}, rhs = {rhs}"));
        }
        false
    }
}
