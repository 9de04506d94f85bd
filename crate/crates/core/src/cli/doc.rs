//! The result record every subcommand produces.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::quotient::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub status: Verdict,
    pub bound: u32,
}

/// JSON keys are fixed: `command`, `verdicts`, `dimensions`, `generators`,
/// `witnesses`, `bound`, `field`. Maps are ordered, so serialization is
/// deterministic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub verdicts: BTreeMap<String, VerdictRecord>,
    pub dimensions: BTreeMap<String, Value>,
    pub generators: BTreeMap<String, Vec<String>>,
    pub witnesses: BTreeMap<String, Value>,
    pub bound: u32,
    pub field: String,
}

impl ResultDocument {
    pub fn new(command: String, bound: u32, field: String) -> ResultDocument {
        ResultDocument {
            command,
            verdicts: BTreeMap::new(),
            dimensions: BTreeMap::new(),
            generators: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            bound,
            field,
        }
    }

    pub fn verdict(&mut self, key: &str, status: Verdict, bound: u32) {
        self.verdicts.insert(key.into(), VerdictRecord { status, bound });
    }

    pub fn dim(&mut self, key: &str, v: impl Serialize) {
        self.dimensions.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn gens(&mut self, key: &str, v: Vec<String>) {
        self.generators.insert(key.into(), v);
    }

    pub fn witness(&mut self, key: &str, v: impl Serialize) {
        self.witnesses.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    /// The verdict stored under `result`, which decides the exit status.
    pub fn result(&self) -> Verdict {
        self.verdicts.get("result").map(|r| r.status).unwrap_or(Verdict::Unknown)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}  [field {}, bound {}]", self.command, self.field, self.bound);
        for (k, v) in &self.verdicts {
            let _ = writeln!(s, "  {k}: {:?} (bound {})", v.status, v.bound);
        }
        for (k, v) in &self.dimensions {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for (k, v) in &self.generators {
            if v.iter().any(|l| l.contains('\n')) {
                let _ = writeln!(s, "  {k}:");
                for l in v {
                    s.push_str(l);
                }
            } else {
                let _ = writeln!(s, "  {k}: {}", v.join(", "));
            }
        }
        for (k, v) in &self.witnesses {
            let _ = writeln!(s, "  {k}: {v}");
        }
        s
    }
}

/// Disproven beats Unknown beats Proven.
pub fn combine(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
    let vs: Vec<Verdict> = vs.into_iter().collect();
    if vs.contains(&Verdict::Disproven) {
        Verdict::Disproven
    } else if vs.contains(&Verdict::Unknown) {
        Verdict::Unknown
    } else {
        Verdict::Proven
    }
}
