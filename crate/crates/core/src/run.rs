//! One-call pipeline: simulate, probe, export.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::export::{write_medusa, write_stats, ExportOptions};
use crate::kinetic::{Config, RunOutput, Simulation};
use crate::trajectory::TrajectorySet;
use crate::Rational;

/// Denominator of probe times; prime, so probes avoid bend times.
const PROBE_DENOMINATOR: i64 = 1_000_003;

/// `count` distinct rational times in `(0, 1)`, sorted.
pub fn probe_times(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut ks = std::collections::BTreeSet::new();
    while ks.len() < count.min(PROBE_DENOMINATOR as usize - 1) {
        ks.insert(rng.gen_range(1..PROBE_DENOMINATOR));
    }
    ks.into_iter().map(|k| Rational::new(k.into(), PROBE_DENOMINATOR.into())).collect()
}

pub fn simulate(set: &TrajectorySet, cfg: Config, probes: &[Rational]) -> Result<RunOutput> {
    Simulation::new(set, cfg)?.run(probes)
}

/// Medusa text and statistics text of a complete run.
pub fn run_to_text(
    set: &TrajectorySet,
    cfg: Config,
    probes: &[Rational],
    export: &ExportOptions,
) -> Result<(RunOutput, String, String)> {
    let out = simulate(set, cfg, probes)?;
    let medusa = write_medusa(&out.medusa, export);
    let stats = write_stats(&out);
    Ok((out, medusa, stats))
}
