use std::fmt;

/// One named identity with the value it should take and the value obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub passed: bool,
}

/// Ordered list of checks; the order is the order they were run in.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `got == expected`, comparing by value and storing display strings.
    pub fn expect_eq<T: PartialEq + fmt::Display>(&mut self, name: impl Into<String>, expected: &T, got: &T) -> bool {
        let passed = expected == got;
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            got: got.to_string(),
            passed,
        });
        passed
    }

    pub fn record(&mut self, name: impl Into<String>, expected: impl Into<String>, got: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            expected: expected.into(),
            got: got.into(),
            passed,
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} {}: expected {}, got {}", c.name, c.expected, c.got)?;
        }
        Ok(())
    }
}
