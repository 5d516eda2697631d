//! Text output of a finished run: the medusa, one cell per line, and a
//! `key = value` statistics file. Both are deterministic.
//!
//! A cell line reads `dim v0 .. vdim origin birth death finished_by`. Times
//! are `p/q` when rational; otherwise
//! `alg:c0,c1,..,cn:lo:hi:approx`, a root of `c0 + c1 t + .. + cn t^n`
//! inside the dyadic interval `(lo, hi)`, followed by a decimal value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::io::format_rational;
use crate::kernel::{format_decimal, AlgebraicReal, GridCell};
use crate::kinetic::RunOutput;
use crate::medusa::Medusa;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExportOptions {
    /// Significant digits of decimal approximations.
    pub digits: usize,
    /// Width `2^-bits` of the printed isolating intervals.
    pub bits: u32,
}

impl Default for ExportOptions {
    fn default() -> Self {
        ExportOptions { digits: 12, bits: 64 }
    }
}

pub fn format_time(t: &AlgebraicReal, opts: &ExportOptions) -> String {
    if let Some(r) = t.exact() {
        return format_rational(r);
    }
    match t.grid_cell(opts.bits) {
        GridCell::Exact(r) => format_rational(&r),
        GridCell::Between(lo, hi) => {
            let coeffs: Vec<String> = t.defining_int().coeffs().iter().map(|c| c.to_string()).collect();
            let mid = (&lo + &hi) / Rational::from_integer(2.into());
            format!(
                "alg:{}:{}:{}:{}",
                coeffs.join(","),
                format_rational(&lo),
                format_rational(&hi),
                format_decimal(&mid, opts.digits)
            )
        }
    }
}

pub fn write_medusa(m: &Medusa, opts: &ExportOptions) -> String {
    let mut out = String::new();
    writeln!(out, "medusa {}", m.cells.len()).unwrap();
    for c in &m.cells {
        let vs: Vec<String> = c.simplex.as_slice().iter().map(|v| v.to_string()).collect();
        writeln!(
            out,
            "{} {} {} {} {} {}",
            c.dim(),
            vs.join(" "),
            c.origin,
            format_time(&c.birth, opts),
            format_time(&c.death, opts),
            c.finished_by
        )
        .unwrap();
    }
    out
}

/// Share of certificates without a root before the next bend that the
/// sign-variation test dismissed without subdivision.
pub fn filter_ratio(run: &RunOutput) -> Option<f64> {
    let c = &run.counters;
    (c.certificates_without_root > 0).then(|| c.certificates_filtered as f64 / c.certificates_without_root as f64)
}

pub fn write_stats(run: &RunOutput) -> String {
    let c = &run.counters;
    let mut out = String::new();
    let mut kv = |k: &str, v: String| writeln!(out, "{k} = {v}").unwrap();
    kv("flips", c.flips.to_string());
    kv("flips_2_3", c.flips_23.to_string());
    kv("flips_3_2", c.flips_32.to_string());
    kv("radius_events", c.radius_events.to_string());
    kv("bending_events", c.bending_events.to_string());
    kv("insertions", c.insertions.to_string());
    kv("deletions", c.deletions.to_string());
    kv("certificates_built", c.certificates_built.to_string());
    kv("flip_certificates_built", c.flip_certificates_built.to_string());
    kv("radius_certificates_built", c.radius_certificates_built.to_string());
    kv("certificates_without_root", c.certificates_without_root.to_string());
    kv("certificates_filtered", c.certificates_filtered.to_string());
    kv("filter_ratio", filter_ratio(run).map_or("n/a".into(), |r| format!("{r:.4}")));
    kv("root_isolations", c.isolations.to_string());
    kv("cache_hits", c.cache_hits.to_string());
    let mut by_origin: BTreeMap<&str, usize> = BTreeMap::new();
    for cell in &run.medusa.cells {
        *by_origin.entry(cell.origin.tag()).or_default() += 1;
    }
    kv("medusa_cells", run.medusa.cells.len().to_string());
    for (tag, n) in by_origin {
        kv(&format!("medusa_cells_{}", tag.to_lowercase()), n.to_string());
    }
    let skipped = run.probes.iter().filter(|p| p.skipped).count();
    let failed = run.probes.iter().filter(|p| !p.ok()).count();
    kv("probes", run.probes.len().to_string());
    kv("probes_skipped", skipped.to_string());
    kv("probe_mismatches", failed.to_string());
    kv("invariant_checks", run.checks.to_string());
    kv("invariant_violations", run.violations.len().to_string());
    out
}
