//! Corpus runs: every selected check over every catalog entry, aggregated
//! into one deterministic summary.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{BuiltGroup, Catalog};
use crate::error::{Error, Result};
use crate::perm::DEFAULT_CAP;
use crate::structure::PrimeSet;
use crate::verify::{self, Report, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Kgv,
    Kb,
    Quotient,
    Subgroup,
    Classes,
    Consistency,
    Olsson,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "all",
        "kgv",
        "kb",
        "quotient",
        "subgroup",
        "classes",
        "consistency",
        "olsson",
    ];

    fn includes(self, other: Suite) -> bool {
        self == other || (self == Suite::All && other != Suite::Olsson)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "all" => Suite::All,
            "kgv" => Suite::Kgv,
            "kb" => Suite::Kb,
            "quotient" => Suite::Quotient,
            "subgroup" => Suite::Subgroup,
            "classes" => Suite::Classes,
            "consistency" => Suite::Consistency,
            "olsson" => Suite::Olsson,
            _ => return Err(Error::Input(format!("unknown suite {s:?}; expected one of {:?}", Suite::NAMES))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::All,
            Suite::Kgv,
            Suite::Kb,
            Suite::Quotient,
            Suite::Subgroup,
            Suite::Classes,
            Suite::Consistency,
            Suite::Olsson,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Enumeration cap for entries without their own `cap` line.
    pub cap: usize,
    pub seed: u64,
    /// Restricts the π sweeps to this set (intersected with each group's
    /// primes); all non-empty subsets are swept when absent.
    pub pi: Option<PrimeSet>,
    pub suite: Suite,
    /// Groups above this order skip the π sweeps.
    pub max_order: usize,
    /// Generating pairs tried per (group, π) in the subgroup check.
    pub subgroup_budget: usize,
    /// Normal subgroups tried per group in the class-product check.
    pub normal_budget: usize,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            cap: DEFAULT_CAP,
            seed: 0,
            pi: None,
            suite: Suite::All,
            max_order: 2000,
            subgroup_budget: 20_000,
            normal_budget: 64,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub groups: usize,
    pub reports: usize,
    pub holds: usize,
    pub equality: usize,
    pub violated: usize,
    pub out_of_hypothesis: usize,
    pub partial: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunOutput {
    pub config: RunConfig,
    pub summary: Summary,
    pub reports: Vec<Report>,
}

impl RunOutput {
    pub fn violations(&self) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(|r| r.violated())
    }
}

/// Runs the selected suites over every entry of `catalog`, in parallel.
/// The output is sorted and does not depend on scheduling.
pub fn run(catalog: &Catalog, config: &RunConfig) -> Result<RunOutput> {
    let names = catalog.names();
    let per_group: Vec<Vec<Report>> = names
        .par_iter()
        .map(|name| {
            let built = catalog.build(name)?;
            group_reports(&built, config)
        })
        .collect::<Result<_>>()?;
    let mut reports: Vec<Report> = per_group.into_iter().flatten().collect();
    if config.suite == Suite::Olsson {
        reports.push(olsson_report(config)?);
    }
    reports.sort_by(|a, b| {
        (&a.group, &a.statement, &a.params).cmp(&(&b.group, &b.statement, &b.params))
    });
    let mut summary = Summary {
        groups: names.len(),
        reports: reports.len(),
        ..Summary::default()
    };
    for r in &reports {
        match r.verdict {
            Verdict::Holds => summary.holds += 1,
            Verdict::Equality => summary.equality += 1,
            Verdict::Violated => summary.violated += 1,
            Verdict::OutOfHypothesis => summary.out_of_hypothesis += 1,
        }
        summary.partial += r.partial as usize;
    }
    Ok(RunOutput {
        config: config.clone(),
        summary,
        reports,
    })
}

/// The π sets swept for a group: all non-empty subsets of its primes, or of
/// the configured set restricted to them.
pub fn sweep_sets(order: usize, pi: Option<&PrimeSet>) -> Vec<PrimeSet> {
    let primes = PrimeSet::of(order as u64);
    let base = match pi {
        Some(pi) => pi.restrict(order as u64),
        None => primes,
    };
    base.subsets().into_iter().filter(|s| !s.is_empty()).collect()
}

fn group_reports(built: &BuiltGroup, config: &RunConfig) -> Result<Vec<Report>> {
    let g = &built.group;
    let name = &built.name;
    let suite = config.suite;
    let mut out = Vec::new();
    if suite.includes(Suite::Kgv) && built.semidirect.is_some() {
        out.push(verify::check_kgv(built)?);
    }
    if suite.includes(Suite::Classes) {
        out.push(verify::check_flags(name, g, built.flags.simple, built.flags.solvable)?);
        out.extend(verify::check_class_inequalities(
            name,
            g,
            built.flags.simple,
            config.normal_budget,
        )?);
    }
    if g.order() > config.max_order {
        return Ok(out);
    }
    for pi in sweep_sets(g.order(), config.pi.as_ref()) {
        if suite.includes(Suite::Quotient) {
            out.push(verify::check_quotient_bound(name, g, &pi)?);
        }
        if suite.includes(Suite::Kb) {
            out.extend(verify::check_kb(name, g, &pi, config.seed)?);
        }
        if suite.includes(Suite::Subgroup) {
            out.push(verify::check_subgroup_bound(name, g, &pi, config.subgroup_budget)?);
        }
        if suite.includes(Suite::Consistency) && pi.primes().len() == 1 {
            let p = pi.primes()[0];
            out.extend(verify::check_defect_consistency(name, g, p, config.seed)?);
            out.push(verify::check_singleton_blocks(name, g, p, config.seed)?);
        }
    }
    Ok(out)
}

/// The counterexample as a single report: `k(B) ≤ |D|`, violated if any of
/// its stated figures is off.
pub fn olsson_report(config: &RunConfig) -> Result<Report> {
    let o = verify::olsson_counterexample(config.seed, config.cap.max(DEFAULT_CAP))?;
    let mut params = BTreeMap::new();
    params.insert("pi".to_string(), o.pi.clone());
    let failed: Vec<&str> = o
        .checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(s, _)| s.as_str())
        .collect();
    let verdict = if !failed.is_empty() || o.block_size > o.defect_order {
        Verdict::Violated
    } else {
        Verdict::Holds
    };
    let mut witnesses = BTreeMap::new();
    witnesses.insert("outcome".to_string(), serde_json::to_value(&o).expect("serializable"));
    Ok(Report {
        statement: "olsson".to_string(),
        group: "PSL(2,32):C5".to_string(),
        params,
        lhs: o.block_size as u64,
        rhs: o.defect_order as u64,
        verdict,
        partial: false,
        witnesses,
    })
}
