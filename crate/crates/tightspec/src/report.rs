use serde::Serialize;

/// One named check with an optional counterexample witness.
///
/// A failed check always carries a witness that reproduces the failure when
/// replayed against the defining quantifier. Advisory checks are informative
/// lines that do not gate [`ValidationReport::passed`].
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    #[serde(default)]
    pub advisory: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a check; the witness is kept only on failure.
    pub fn push(&mut self, name: &str, pass: bool, witness: Option<serde_json::Value>) {
        debug_assert!(pass || witness.is_some(), "failed check {name} needs a witness");
        let witness = if pass { None } else { witness };
        self.checks.push(Check { name: name.to_string(), pass, advisory: false, witness });
    }

    pub fn pass(&mut self, name: &str) {
        self.push(name, true, None);
    }

    pub fn fail(&mut self, name: &str, witness: serde_json::Value) {
        self.push(name, false, Some(witness));
    }

    pub fn advisory(&mut self, name: &str, pass: bool, witness: Option<serde_json::Value>) {
        self.checks.push(Check { name: name.to_string(), pass, advisory: true, witness });
    }

    /// True when every non-advisory check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || c.advisory)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass && !c.advisory)
    }

    /// Absorb `other`, prefixing its check names with `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    /// Plain-text table, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match (c.pass, c.advisory) {
                (true, false) => "PASS",
                (false, false) => "FAIL",
                (true, true) => "info",
                (false, true) => "warn",
            };
            out.push_str(&format!("{status:4}  {}", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness={w}"));
            }
            out.push('\n');
        }
        out
    }
}
