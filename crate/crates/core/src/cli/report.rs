use std::fmt::{self, Write as _};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Value,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Value => 0,
            Status::Fail => 1,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Value => "value",
        })
    }
}

/// One row of a report. Checks carry `expected` and `passed`; plain values
/// leave both empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportItem {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub got: String,
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

impl ReportItem {
    pub fn value(name: &str, got: impl fmt::Display, anchor: &str) -> Self {
        ReportItem {
            name: name.to_string(),
            expected: None,
            got: got.to_string(),
            anchor: anchor.to_string(),
            passed: None,
        }
    }

    pub fn check(name: &str, expected: impl fmt::Display, got: impl fmt::Display, anchor: &str) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        let passed = expected == got;
        ReportItem {
            name: name.to_string(),
            expected: Some(expected),
            got,
            anchor: anchor.to_string(),
            passed: Some(passed),
        }
    }

    /// A check whose outcome was decided by the caller.
    pub fn verdict(name: &str, expected: impl fmt::Display, got: impl fmt::Display, passed: bool, anchor: &str) -> Self {
        ReportItem {
            name: name.to_string(),
            expected: Some(expected.to_string()),
            got: got.to_string(),
            anchor: anchor.to_string(),
            passed: Some(passed),
        }
    }

    pub fn failed(&self) -> bool {
        self.passed == Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub status: Status,
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn values(title: &str, items: Vec<ReportItem>) -> Self {
        Report {
            title: title.to_string(),
            status: Status::Value,
            items,
        }
    }

    /// Pass iff no item failed.
    pub fn checks(title: &str, items: Vec<ReportItem>) -> Self {
        let status = if items.iter().any(ReportItem::failed) {
            Status::Fail
        } else {
            Status::Pass
        };
        Report {
            title: title.to_string(),
            status,
            items,
        }
    }

    pub fn merge(title: &str, reports: Vec<Report>) -> Self {
        let items = reports
            .into_iter()
            .flat_map(|r| {
                let prefix = r.title;
                r.items.into_iter().map(move |mut it| {
                    it.name = format!("{prefix}: {}", it.name);
                    it
                })
            })
            .collect();
        Self::checks(title, items)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.title, self.status);
        let width = self.items.iter().map(|i| i.name.chars().count()).max().unwrap_or(0);
        for it in &self.items {
            let mark = match it.passed {
                Some(true) => "[pass] ",
                Some(false) => "[FAIL] ",
                None => "",
            };
            let pad = width - it.name.chars().count();
            let _ = write!(out, "  {mark}{}{} ", it.name, " ".repeat(pad));
            match &it.expected {
                Some(e) if it.passed == Some(false) => {
                    let _ = write!(out, " expected {e}, got {}", it.got);
                }
                _ => {
                    let _ = write!(out, " {}", it.got);
                }
            }
            if !it.anchor.is_empty() {
                let _ = write!(out, "  [{}]", it.anchor);
            }
            out.push('\n');
        }
        out
    }
}
