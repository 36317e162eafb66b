use std::fmt::Write as _;

use gaudin_duality::window::Comparison;
use serde::Serialize;

#[derive(Serialize)]
pub struct Slot {
    pub index: Vec<i64>,
    pub status: &'static str,
}

/// One verified identity. Field order is the JSON order.
#[derive(Serialize)]
pub struct Report {
    pub identity: String,
    pub window: String,
    pub slots: Vec<Slot>,
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Report {
    pub fn new(identity: impl Into<String>, cmp: &Comparison) -> Self {
        Self {
            identity: identity.into(),
            window: cmp.window.clone(),
            slots: cmp
                .slots
                .iter()
                .map(|s| Slot { index: s.index.clone(), status: if s.pass { "pass" } else { "fail" } })
                .collect(),
            elapsed_ms: None,
            details: None,
        }
    }

    pub fn passed(&self) -> bool {
        !self.slots.is_empty() && self.slots.iter().all(|s| s.status == "pass")
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{verdict} {}", self.identity);
        let _ = writeln!(out, "  window: {}", self.window);
        let failed = self.slots.iter().filter(|s| s.status != "pass").count();
        let _ = writeln!(out, "  slots: {} compared, {failed} failed", self.slots.len());
        for s in &self.slots {
            let _ = writeln!(out, "    {:?} {}", s.index, s.status);
        }
        if let Some(details) = &self.details {
            for side in ["b", "g"] {
                let Some(entries) = details[side]["entries"].as_array() else { continue };
                let _ = writeln!(out, "  {side} table ({}):", details[side]["window"].as_str().unwrap_or(""));
                for e in entries {
                    let _ = writeln!(out, "    {side}[{},{}] = {}", e["r"], e["s"], e["text"].as_str().unwrap_or(""));
                }
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "  elapsed: {ms} ms");
        }
        out
    }
}
