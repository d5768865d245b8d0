//! Independent oracles and end-to-end checks.

mod checks;
mod hilbert;
mod vanishing;

use serde::Serialize;

pub use checks::{
    check_grid_end_to_end, check_join_symbolic, check_lemma_gpnew, check_point_power_product, check_symbolic_alpha,
    check_symbolic_power, pattern_ideal,
};
pub use hilbert::{hilbert_function_fat_points, hilbert_function_oracle, hilbert_series_oracle, oracle_initial_degree};
pub use vanishing::{vanishing_order, VanishingOrder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub input: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// Append-only record of one check. Passes iff every instance passes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    subject: String,
    instances: Vec<Instance>,
    notes: Vec<String>,
    /// Oracle computations performed (eliminations and rank evaluations).
    budget_used: u64,
    pass: bool,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            instances: Vec::new(),
            notes: Vec::new(),
            budget_used: 0,
            pass: true,
        }
    }

    pub fn push(&mut self, input: &str, expected: impl Into<String>, computed: impl Into<String>, pass: bool) {
        self.pass &= pass;
        self.instances.push(Instance {
            input: input.to_string(),
            expected: expected.into(),
            computed: computed.into(),
            pass,
        });
    }

    pub fn note(&mut self, text: &str) {
        self.notes.push(text.to_string());
    }

    pub fn add_work(&mut self, units: u64) {
        self.budget_used += units;
    }

    /// Appends every instance, note and work unit of `other`.
    pub fn absorb(&mut self, other: VerificationReport) {
        for i in other.instances {
            self.pass &= i.pass;
            self.instances.push(i);
        }
        self.notes.extend(other.notes);
        self.budget_used += other.budget_used;
    }

    pub fn subject(&self) -> &str {
        &self.subject
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn budget_used(&self) -> u64 {
        self.budget_used
    }

    pub fn pass(&self) -> bool {
        self.pass
    }
}
