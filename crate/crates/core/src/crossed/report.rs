use std::fmt;

use serde::Serialize;

/// Outcome of one axiom over all argument tuples.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: String,
    pub checked: usize,
    /// Every violating argument tuple, as element indices.
    pub violations: Vec<Vec<usize>>,
}

/// Exhaustive validation result: one entry per axiom.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.violations.is_empty()).map(|c| c.axiom.as_str()).collect()
    }

    pub fn num_violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    /// Runs `ok` over every tuple in `dims[0] x dims[1] x ...`.
    pub(crate) fn run(&mut self, axiom: &str, dims: &[usize], ok: impl Fn(&[usize]) -> bool) {
        let total: usize = dims.iter().product();
        let mut violations = Vec::new();
        let mut t = vec![0; dims.len()];
        for _ in 0..total {
            if !ok(&t) {
                violations.push(t.clone());
            }
            for (slot, &d) in t.iter_mut().zip(dims).rev() {
                *slot += 1;
                if *slot < d {
                    break;
                }
                *slot = 0;
            }
        }
        self.checks.push(AxiomCheck { axiom: axiom.into(), checked: total, violations });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.violations.is_empty() { "ok" } else { "FAIL" };
            write!(f, "{status:4} {:40} {:>8} tuples", c.axiom, c.checked)?;
            if let Some(v) = c.violations.first() {
                write!(f, ", {} violations, first at {v:?}", c.violations.len())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
