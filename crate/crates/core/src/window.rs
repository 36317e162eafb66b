//! Slot-by-slot comparison reports for truncated values.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotResult {
    /// Position of the coefficient, outermost index first
    /// (e.g. `[w power, derivation order, variable degree]`).
    pub index: Vec<i64>,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub slots: Vec<SlotResult>,
    /// Human-readable description of the common certified window.
    pub window: String,
}

impl Comparison {
    pub fn new(window: impl Into<String>) -> Self {
        Self { slots: Vec::new(), window: window.into() }
    }

    pub fn push(&mut self, index: Vec<i64>, pass: bool) {
        self.slots.push(SlotResult { index, pass });
    }

    pub fn all_pass(&self) -> bool {
        self.slots.iter().all(|s| s.pass)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &SlotResult> {
        self.slots.iter().filter(|s| !s.pass)
    }

    pub fn compared(&self) -> usize {
        self.slots.len()
    }

    /// Prefixes every slot index with `outer` and appends the slots to `self`.
    pub fn absorb(&mut self, outer: &[i64], other: Comparison) {
        for s in other.slots {
            let mut index = outer.to_vec();
            index.extend(s.index);
            self.slots.push(SlotResult { index, pass: s.pass });
        }
    }
}
