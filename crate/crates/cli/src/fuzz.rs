//! Seeded fuzz campaigns over the two families.

use std::fmt::Write as _;

use curvlab_core::families::hyperbolic_example_params;
use curvlab_core::verify::{check_instance, draw_sample, Campaign, CheckOutcome, Family};
use curvlab_core::{HVerdict, Instance, SampleReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::instance::InstanceFile;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FuzzConfig {
    pub campaign: Campaign,
    pub count: u64,
    pub tol: f64,
    /// Append the non-unimodular example with constant `H^r = -2` as an extra sample.
    pub inject_example: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub samples: u64,
    pub passed: u64,
    pub failed: u64,
    pub unimodular: u64,
    pub kahler: u64,
    pub chern_flat: u64,
    pub kahler_flat: u64,
    pub chern_constant: u64,
    pub chern_not_constant: u64,
    pub lc_constant: u64,
    pub lc_not_constant: u64,
    pub negative_constant_witnesses: u64,
}

/// A sample whose Levi-Civita holomorphic sectional curvature is a negative constant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NegativeWitness {
    pub index: u64,
    pub injected: bool,
    pub c: f64,
    pub unimodular: bool,
    pub kahler: bool,
    pub instance: InstanceFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub index: u64,
    /// Violated checks, empty when the sample could not be built.
    pub checks: Vec<CheckOutcome>,
    pub error: Option<String>,
    pub instance: Option<InstanceFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub family: Family,
    pub scheme: Option<String>,
    pub unimodular_only: bool,
    pub dim: Option<usize>,
    pub seed: u64,
    pub count: u64,
    pub tol: f64,
    pub counts: Counts,
    pub witnesses: Vec<NegativeWitness>,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summaries always serialize")
    }

    pub fn to_text(&self) -> String {
        let c = &self.counts;
        let mut s = String::new();
        let family = match self.family {
            Family::AlmostAbelian => "aa",
            Family::Codim2 => "codim2",
        };
        let _ = writeln!(
            s,
            "fuzz family={family} scheme={} unimodular_only={} seed={} count={} tol={:e}",
            self.scheme.as_deref().unwrap_or("A/B"),
            self.unimodular_only,
            self.seed,
            self.count,
            self.tol
        );
        let _ = writeln!(s, "samples {}  passed {}  failed {}", c.samples, c.passed, c.failed);
        let _ = writeln!(
            s,
            "unimodular {}  kahler {}  chern_flat {}  kahler_flat {}",
            c.unimodular, c.kahler, c.chern_flat, c.kahler_flat
        );
        let _ = writeln!(s, "chern H: constant {}  not constant {}", c.chern_constant, c.chern_not_constant);
        let _ = writeln!(s, "lc H:    constant {}  not constant {}", c.lc_constant, c.lc_not_constant);
        for w in &self.witnesses {
            let _ = writeln!(
                s,
                "sample {}{}: lc H constant({}), {}, {}: negative constant witness",
                w.index,
                if w.injected { " (injected)" } else { "" },
                crate::report::round(w.c),
                if w.unimodular { "unimodular" } else { "non-unimodular" },
                if w.kahler { "Kähler" } else { "non-Kähler" },
            );
        }
        for f in &self.failures {
            let _ = writeln!(s, "FAIL sample {}", f.index);
            if let Some(e) = &f.error {
                let _ = writeln!(s, "  error: {e}");
            }
            for c in &f.checks {
                let _ = writeln!(s, "  {}: value {:.3e}, bound {:.3e}", c.name, c.value, c.bound);
            }
            if let Some(inst) = &f.instance {
                let _ = writeln!(s, "  instance: {}", inst.to_json());
            }
        }
        s
    }
}

struct Outcome {
    index: u64,
    injected: bool,
    instance: Option<Instance>,
    result: Result<SampleReport, String>,
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary, CliError> {
    if cfg.campaign.dim.is_some_and(|d| d < 2) {
        return Err(CliError::Usage("--dim must be at least 2".into()));
    }
    let mut outcomes: Vec<Outcome> = (0..cfg.count)
        .into_par_iter()
        .map(|index| match draw_sample(&cfg.campaign, index) {
            Ok(inst) => {
                let result = check_instance(&inst, cfg.tol).map_err(|e| e.to_string());
                Outcome { index, injected: false, instance: Some(inst), result }
            }
            Err(e) => Outcome { index, injected: false, instance: None, result: Err(e.to_string()) },
        })
        .collect();
    if cfg.inject_example {
        let n = cfg.campaign.dim.unwrap_or(2);
        let inst = Instance::AlmostAbelian(hyperbolic_example_params(n)?);
        let result = check_instance(&inst, cfg.tol).map_err(|e| e.to_string());
        outcomes.push(Outcome { index: cfg.count, injected: true, instance: Some(inst), result });
    }
    outcomes.sort_by_key(|o| o.index);

    let mut counts = Counts::default();
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for o in outcomes {
        counts.samples += 1;
        let file = o.instance.as_ref().map(InstanceFile::from_instance);
        let rep = match o.result {
            Ok(rep) => rep,
            Err(error) => {
                counts.failed += 1;
                failures.push(FuzzFailure { index: o.index, checks: Vec::new(), error: Some(error), instance: file });
                continue;
            }
        };
        counts.unimodular += u64::from(rep.unimodular);
        counts.kahler += u64::from(rep.predicates.is_kahler);
        counts.chern_flat += u64::from(rep.predicates.is_chern_flat);
        counts.kahler_flat += u64::from(rep.kahler_flat);
        match rep.chern {
            HVerdict::Constant { .. } => counts.chern_constant += 1,
            HVerdict::NotConstant { .. } => counts.chern_not_constant += 1,
        }
        match rep.lc {
            HVerdict::Constant { .. } => counts.lc_constant += 1,
            HVerdict::NotConstant { .. } => counts.lc_not_constant += 1,
        }
        if rep.negative_constant_witness {
            counts.negative_constant_witnesses += 1;
            witnesses.push(NegativeWitness {
                index: o.index,
                injected: o.injected,
                c: rep.lc.constant_value().unwrap_or(f64::NAN),
                unimodular: rep.unimodular,
                kahler: rep.predicates.is_kahler,
                instance: file.clone().expect("reports come from built instances"),
            });
        }
        if rep.passed() {
            counts.passed += 1;
        } else {
            counts.failed += 1;
            failures.push(FuzzFailure {
                index: o.index,
                checks: rep.failures().cloned().collect(),
                error: None,
                instance: file,
            });
        }
    }

    Ok(FuzzSummary {
        family: cfg.campaign.family,
        scheme: cfg.campaign.scheme.map(|s| s.to_string()),
        unimodular_only: cfg.campaign.unimodular,
        dim: cfg.campaign.dim,
        seed: cfg.campaign.seed,
        count: cfg.count,
        tol: cfg.tol,
        counts,
        witnesses,
        failures,
    })
}
