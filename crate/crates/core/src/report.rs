//! Structured verification reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// One checked statement about one subject (a module, a block, a pair).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub subject: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub group: String,
    pub subgroup: String,
    pub items: Vec<Item>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: &str, group: &str, subgroup: &str) -> Self {
        Report {
            check: check.to_string(),
            group: group.to_string(),
            subgroup: subgroup.to_string(),
            items: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, subject: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.items.push(Item {
            subject: subject.into(),
            ok,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }

    pub fn findings(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| !i.ok)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "[{}] {} {}", if self.passed() { "PASS" } else { "FAIL" }, self.check, self.group);
        if !self.subgroup.is_empty() {
            let _ = write!(s, " / {}", self.subgroup);
        }
        s.push('\n');
        for i in &self.items {
            let _ = writeln!(
                s,
                "  {} {}: {}",
                if i.ok { "ok  " } else { "FAIL" },
                i.subject,
                i.detail
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}
