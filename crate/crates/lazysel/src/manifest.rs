//! Run manifest written next to every selected subset.
//!
//! Wall-clock time is kept out of the manifest so that two runs with the same
//! inputs produce identical bytes; it is logged instead.

use serde::{Deserialize, Serialize};

use lazysel_core::{CandidateSet, SelectionResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool: Tool,
    pub input: InputDescriptor,
    pub indicator: String,
    pub engine: String,
    pub k: usize,
    pub seed: Option<u64>,
    pub ref_point: Vec<f64>,
    pub ref_point_source: String,
    pub reference_set: Option<String>,
    pub sanitize: SanitizeSummary,
    pub result: ResultSummary,
    pub environment: Environment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDescriptor {
    File {
        path: String,
        rows: usize,
        maximization: bool,
    },
    Front {
        family: String,
        m: usize,
        n_pool: usize,
        n_sample: usize,
        seed: u64,
        label: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SanitizeSummary {
    pub input_len: usize,
    pub kept: usize,
    /// `[removed, kept]` input-row pairs.
    pub duplicates: Vec<[usize; 2]>,
    pub dominated: Vec<usize>,
    pub outside_reference: Vec<usize>,
}

impl SanitizeSummary {
    pub fn of(set: &CandidateSet) -> Self {
        let r = &set.report;
        SanitizeSummary {
            input_len: r.input_len,
            kept: set.len(),
            duplicates: r.duplicates.iter().map(|&(a, b)| [a, b]).collect(),
            dominated: r.dominated.clone(),
            outside_reference: r.outside_reference.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultSummary {
    /// Input-row indices in selection order.
    pub selected: Vec<usize>,
    /// `null` where the gain is not finite (the first IGD pick).
    pub step_gains: Vec<Option<f64>>,
    pub indicator_trace: Vec<f64>,
    pub evals_per_step: Vec<usize>,
    pub total_evals: usize,
    pub kernel_calls: u64,
    pub zero_gain_from: Option<usize>,
    pub short_circuit: bool,
    pub final_value: Option<f64>,
}

impl ResultSummary {
    pub fn of(r: &SelectionResult) -> Self {
        ResultSummary {
            selected: r.original.clone(),
            step_gains: r
                .step_gains
                .iter()
                .map(|g| g.is_finite().then_some(*g))
                .collect(),
            indicator_trace: r.indicator_trace.clone(),
            evals_per_step: r.evals_per_step.clone(),
            total_evals: r.total_evals(),
            kernel_calls: r.kernel_calls,
            zero_gain_from: r.zero_gain_from,
            short_circuit: r.short_circuit,
            final_value: r.indicator_trace.last().copied(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub os: String,
    pub arch: String,
    pub debug_build: bool,
}

impl Environment {
    pub fn current() -> Self {
        Environment {
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            debug_build: cfg!(debug_assertions),
        }
    }
}

impl Tool {
    pub fn current() -> Self {
        Tool {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
