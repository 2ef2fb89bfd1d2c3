//! Plain-text reports with one machine-readable verdict line per check.
//!
//! Layout:
//!
//! ```text
//! # nearsemi <command echo>
//! ## <section title>
//! <free-form lines>
//! PASS <check-id>
//! FAIL <check-id> :: <witness>
//! RESULT <PASS|FAIL|DISAGREE> checks=<n> failed=<k>
//! ```

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Agree,
    Disagree,
    Fail,
}

impl Verdict {
    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::Agree)
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Agree => "AGREE",
            Verdict::Disagree => "DISAGREE",
            Verdict::Fail => "FAIL",
        })
    }
}

/// One verified statement. A failing check always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(id: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
        }
    }

    /// `Pass` when `witness` is `None`, otherwise `Fail` with that witness.
    pub fn from_witness(id: impl Into<String>, witness: Option<String>) -> Check {
        match witness {
            None => Check::pass(id),
            Some(w) => Check::fail(id, w),
        }
    }

    pub fn comparison(id: impl Into<String>, witness: Option<String>) -> Check {
        let verdict = if witness.is_none() {
            Verdict::Agree
        } else {
            Verdict::Disagree
        };
        Check {
            id: id.into(),
            verdict,
            witness,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.verdict.is_ok()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.verdict, self.id)?;
        if let Some(w) = &self.witness {
            write!(f, " :: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Section {
        Section {
            title: title.into(),
            ..Section::default()
        }
    }

    pub fn line(&mut self, line: impl Into<String>) -> &mut Self {
        self.lines.push(line.into());
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn checks(&mut self, checks: impl IntoIterator<Item = Check>) -> &mut Self {
        self.checks.extend(checks);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn all_checks(&self) -> impl Iterator<Item = &Check> {
        self.sections.iter().flat_map(|s| s.checks.iter())
    }

    /// Worst verdict across all sections; `Pass` for an empty report.
    pub fn worst(&self) -> Verdict {
        self.all_checks()
            .map(|c| c.verdict)
            .max()
            .unwrap_or(Verdict::Pass)
    }

    /// 0 when every check passed or agreed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.worst().is_ok() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# nearsemi {}", self.command)?;
        for s in &self.sections {
            writeln!(f, "## {}", s.title)?;
            for l in &s.lines {
                writeln!(f, "{l}")?;
            }
            for c in &s.checks {
                writeln!(f, "{c}")?;
            }
        }
        let total = self.all_checks().count();
        let failed = self.all_checks().filter(|c| !c.is_ok()).count();
        let overall = match self.worst() {
            Verdict::Pass | Verdict::Agree => "PASS",
            Verdict::Disagree => "DISAGREE",
            Verdict::Fail => "FAIL",
        };
        writeln!(f, "RESULT {overall} checks={total} failed={failed}")
    }
}
