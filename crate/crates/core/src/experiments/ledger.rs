use std::collections::BTreeMap;

use serde::Serialize;

use crate::entropy::StateVector;
use crate::error::Result;
use crate::measurement;

/// Entropies (bits) and auxiliary observations after one stage of a scenario.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerStage {
    pub name: String,
    /// Entropy of the global state; zero for every unitary stage.
    pub total_entropy: f64,
    pub entropies: BTreeMap<String, f64>,
    pub observations: BTreeMap<String, f64>,
}

impl LedgerStage {
    pub(crate) fn new(name: &str, psi: &StateVector<f64>) -> Result<Self> {
        Ok(Self {
            name: name.to_string(),
            total_entropy: measurement::global_entropy(psi)?,
            entropies: BTreeMap::new(),
            observations: BTreeMap::new(),
        })
    }

    pub(crate) fn entropy(mut self, label: &str, value: f64) -> Self {
        self.entropies.insert(label.to_string(), value);
        self
    }

    pub(crate) fn observe(mut self, label: &str, value: f64) -> Self {
        self.observations.insert(label.to_string(), value);
        self
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.entropies.get(label).copied()
    }
}

/// Stage-by-stage entropy bookkeeping of a scenario.
#[derive(Clone, Debug, Serialize)]
pub struct EntropyLedger {
    pub scenario: String,
    pub factors: Vec<String>,
    pub stages: Vec<LedgerStage>,
}

impl EntropyLedger {
    pub fn stage(&self, name: &str) -> Option<&LedgerStage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn last(&self) -> &LedgerStage {
        self.stages.last().expect("ledger has stages")
    }

    /// Largest total entropy over all stages.
    pub fn max_total_entropy(&self) -> f64 {
        self.stages
            .iter()
            .map(|s| s.total_entropy.abs())
            .fold(0.0, f64::max)
    }
}
