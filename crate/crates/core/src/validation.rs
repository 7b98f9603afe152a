use std::fmt;

use serde::Serialize;

/// Which structural requirement a generator violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Generator degree below the model's minimum (2 for Sullivan, 1 for Quillen).
    DegreeBound,
    DuplicateName,
    /// The differential of the generator is not homogeneous of the right degree.
    Homogeneity,
    /// The differential does not square to zero on the generator.
    SquareZero,
    /// The differential has a linear term.
    Minimality,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::DegreeBound => "degree-bound",
            Check::DuplicateName => "duplicate-name",
            Check::Homogeneity => "homogeneity",
            Check::SquareZero => "square-zero",
            Check::Minimality => "minimality",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub generator: String,
    pub check: Check,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn fail(&mut self, generator: &str, check: Check, detail: impl Into<String>) {
        self.failures.push(ValidationFailure {
            generator: generator.to_string(),
            check,
            detail: detail.into(),
        });
    }

    pub fn has(&self, check: Check) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "all checks passed");
        }
        for (k, fail) in self.failures.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "  {}: {} ({})", fail.generator, fail.check, fail.detail)?;
        }
        Ok(())
    }
}
