//! Random `G(H)` trials comparing the Hadwiger number of the construction
//! with that of its best bipartite subgraph.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::constructions::{build_gh, random_graph, Seed};
use crate::error::{Error, Result};
use crate::oracles::{hadwiger_oracle, max_bipartite_hadwiger_gh, HADWIGER_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    /// Seed the trial's `H` was sampled from.
    pub seed: u64,
    pub edges: usize,
    pub h: usize,
    pub bipartite_h: usize,
    pub gap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub records: Vec<TrialRecord>,
    /// `gap_counts[g]` trials had gap `g`.
    pub gap_counts: Vec<u64>,
}

pub fn run_trial(n: usize, trial: u64, seed: Seed) -> Result<TrialRecord> {
    let trial_seed = seed.derive(trial);
    let h = random_graph(n, 0.5, trial_seed);
    let gh = build_gh(&h);
    let hadwiger = hadwiger_oracle(&gh.graph)?;
    if hadwiger != n {
        return Err(Error::Internal(format!("h(G(H)) = {hadwiger}, expected {n}")));
    }
    let (bipartite_h, _) = max_bipartite_hadwiger_gh(&h)?;
    Ok(TrialRecord {
        trial,
        seed: trial_seed.0,
        edges: h.edge_count(),
        h: hadwiger,
        bipartite_h,
        gap: n - bipartite_h.min(n),
    })
}

/// Runs `trials` independent trials. Each trial's seed is derived from
/// `seed` and the trial index alone. Returns the report and the wall time
/// of each trial in milliseconds.
pub fn theorem_lb_experiment(n: usize, trials: u64, seed: Seed) -> Result<(ExperimentReport, Vec<u64>)> {
    if n > HADWIGER_LIMIT {
        return Err(Error::InstanceTooLarge { size: n, limit: HADWIGER_LIMIT });
    }
    let mut records = Vec::with_capacity(trials as usize);
    let mut runtimes = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let start = Instant::now();
        records.push(run_trial(n, trial, seed)?);
        runtimes.push(start.elapsed().as_millis() as u64);
    }
    let mut gap_counts = vec![0u64; n + 1];
    for r in &records {
        gap_counts[r.gap] += 1;
    }
    Ok((
        ExperimentReport {
            n,
            trials,
            seed: seed.0,
            records,
            gap_counts,
        },
        runtimes,
    ))
}
