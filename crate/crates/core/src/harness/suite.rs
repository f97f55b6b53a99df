//! Seeded sweeps over corpus × segments × parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{HolderParams, Instance, Status, TheoremId, BOUND_SLACK};
use crate::convexity::DEFAULT_SLACK;
use crate::exec::map_indexed;
use crate::expr::ScalarFn;
use crate::segment::PhiSegment;

use super::config::{ConfigError, SuiteConfig};
use super::corpus::CorpusEntry;
use super::report::{sort_records, DrawParams, InstanceError, InstanceRecord, Metadata, Summary, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// A certified hypothesis with a violated bound.
    ViolateWithHypothesis,
    /// A bound that holds although its hypothesis was falsified.
    HypothesisGap,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::ViolateWithHypothesis => "violate-with-hypothesis",
            Target::HypothesisGap => "hypothesis-gap",
        }
    }

    pub fn matches(self, record: &InstanceRecord) -> bool {
        match (self, &record.result) {
            (Target::ViolateWithHypothesis, Some(r)) => r.status == Status::ViolatedWithHypothesis,
            (Target::HypothesisGap, Some(r)) => r.status == Status::HypothesisFalsified && r.inequality_holds,
            (_, None) => false,
        }
    }
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "violate-with-hypothesis" => Ok(Target::ViolateWithHypothesis),
            "hypothesis-gap" => Ok(Target::HypothesisGap),
            other => Err(format!("unknown target `{other}` (expected violate-with-hypothesis or hypothesis-gap)")),
        }
    }
}

// FNV-1a; the stream seed must not depend on the std hasher's version.
fn fnv(bytes: &[u8], mut h: u64) -> u64 {
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Independent stream for one `(seed, label, index)` triple.
pub fn stream(seed: u64, label: &str, index: usize) -> ChaCha8Rng {
    let mut h = fnv(&seed.to_le_bytes(), 0xcbf2_9ce4_8422_2325);
    h = fnv(label.as_bytes(), h);
    h = fnv(&(index as u64).to_le_bytes(), h);
    ChaCha8Rng::seed_from_u64(h)
}

fn intersect(user: [f64; 2], entry: (f64, f64)) -> (f64, f64) {
    let lo = user[0].max(entry.0);
    let hi = user[1].min(entry.1);
    if lo <= hi {
        (lo, hi)
    } else {
        entry
    }
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    lo + rng.random::<f64>() * (hi - lo)
}

/// One random instance: segment plus `(p, q)`.
pub fn draw_instance(cfg: &SuiteConfig, entry: &CorpusEntry, rng: &mut ChaCha8Rng) -> (PhiSegment, DrawParams) {
    let s = &cfg.sampler;
    let a = uniform(rng, intersect(s.a_range, entry.a_range));
    let len = uniform(rng, intersect(s.len_range, entry.len_range));
    let phi = match &entry.phis {
        Some(choices) => choices[rng.random_range(0..choices.len())],
        None if !s.phi_grid.is_empty() && rng.random::<f64>() < s.phi_grid_weight => {
            s.phi_grid[rng.random_range(0..s.phi_grid.len())]
        }
        None => uniform(rng, (s.phi_range[0], s.phi_range[1])),
    };
    let [plo, phi_hi] = cfg.params.p_range;
    // (lo, hi]: never exactly lo, which may be 1
    let p = phi_hi - rng.random::<f64>() * (phi_hi - plo);
    let q = uniform(rng, (cfg.params.q_range[0], cfg.params.q_range[1]));
    let segment = PhiSegment::new(a, a + len, phi).expect("sampler ranges are validated");
    (segment, DrawParams { p, q })
}

struct Job {
    entry: usize,
    draw: usize,
    segment: PhiSegment,
    params: DrawParams,
}

fn evaluate_job(cfg: &SuiteConfig, fns: &[Result<ScalarFn, String>], ids: &[String], theorems: &[TheoremId], job: &Job) -> Vec<InstanceRecord> {
    let record = |theorem, result, error| InstanceRecord {
        corpus_id: ids[job.entry].clone(),
        draw: job.draw,
        theorem,
        segment: job.segment,
        params: job.params.clone(),
        result,
        error,
    };
    let f = match &fns[job.entry] {
        Ok(f) => f,
        Err(msg) => {
            let e = InstanceError { kind: "parse".into(), message: msg.clone() };
            return theorems.iter().map(|&t| record(t, None, Some(e.clone()))).collect();
        }
    };
    let params = HolderParams::new(job.params.p, job.params.q);
    match Instance::new(f, job.segment, cfg.tol, cfg.grid) {
        Err(e) => {
            let err = InstanceError { kind: e.kind().into(), message: e.to_string() };
            theorems.iter().map(|&t| record(t, None, Some(err.clone()))).collect()
        }
        Ok(inst) => theorems
            .iter()
            .map(|&t| match inst.evaluate(t, &params) {
                Ok(r) => record(t, Some(r), None),
                Err(e) => record(t, None, Some(InstanceError { kind: e.kind().into(), message: e.to_string() })),
            })
            .collect(),
    }
}

fn run_jobs(cfg: &SuiteConfig, entries: &[CorpusEntry], jobs: &[Job]) -> Vec<InstanceRecord> {
    let fns: Vec<Result<ScalarFn, String>> =
        entries.iter().map(|e| ScalarFn::parse(&e.expr).map_err(|err| err.to_string())).collect();
    let ids: Vec<String> = entries.iter().map(|e| e.id.clone()).collect();
    let theorems = cfg.theorem_list();
    let mut records: Vec<InstanceRecord> =
        map_indexed(cfg.execution, jobs.len(), |i| evaluate_job(cfg, &fns, &ids, &theorems, &jobs[i]))
            .into_iter()
            .flatten()
            .collect();
    sort_records(&mut records);
    records
}

/// Every evaluation of a suite run: `segments` draws per entry.
pub fn sweep(cfg: &SuiteConfig) -> Result<Vec<InstanceRecord>, ConfigError> {
    cfg.validate()?;
    let entries = cfg.entries()?;
    let mut jobs = Vec::new();
    for (i, entry) in entries.iter().enumerate() {
        for draw in 0..cfg.segments {
            let mut rng = stream(cfg.seed, &entry.id, draw);
            let (segment, params) = draw_instance(cfg, entry, &mut rng);
            jobs.push(Job { entry: i, draw, segment, params });
        }
    }
    Ok(run_jobs(cfg, &entries, &jobs))
}

/// Every evaluation of a falsification run: `draws` draws, each on a random entry.
pub fn falsify_sweep(cfg: &SuiteConfig) -> Result<Vec<InstanceRecord>, ConfigError> {
    cfg.validate()?;
    let entries = cfg.entries()?;
    let jobs: Vec<Job> = if entries.is_empty() {
        Vec::new()
    } else {
        (0..cfg.draws)
            .map(|draw| {
                let mut rng = stream(cfg.seed, "falsify", draw);
                let entry = rng.random_range(0..entries.len());
                let (segment, params) = draw_instance(cfg, &entries[entry], &mut rng);
                Job { entry, draw, segment, params }
            })
            .collect()
    };
    Ok(run_jobs(cfg, &entries, &jobs))
}

fn metadata(cfg: &SuiteConfig, mode: &str, target: Option<Target>, draws: usize, all: &[InstanceRecord]) -> Metadata {
    let corpus = cfg.entries().map(|es| es.into_iter().map(|e| e.id).collect()).unwrap_or_default();
    Metadata {
        version: env!("CARGO_PKG_VERSION").to_string(),
        mode: mode.to_string(),
        target: target.map(|t| t.name().to_string()),
        seed: cfg.seed,
        tol: cfg.tol,
        grid: cfg.grid,
        bound_slack: BOUND_SLACK,
        hypothesis_slack: DEFAULT_SLACK,
        corpus,
        theorems: cfg.theorem_list(),
        draws,
        evaluated: all.len(),
        violations: all.iter().filter(|r| r.status() == Some(Status::ViolatedWithHypothesis)).count(),
    }
}

pub fn report_from(cfg: &SuiteConfig, mode: &str, target: Option<Target>, draws: usize, all: Vec<InstanceRecord>) -> SuiteReport {
    let metadata = metadata(cfg, mode, target, draws, &all);
    let results: Vec<InstanceRecord> = match target {
        Some(t) => all.into_iter().filter(|r| t.matches(r)).collect(),
        None => all,
    };
    let summary = Summary::of(&results);
    SuiteReport { metadata, results, summary }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, ConfigError> {
    let all = sweep(cfg)?;
    let entries = cfg.entries()?.len();
    Ok(report_from(cfg, "suite", None, entries * cfg.segments, all))
}

/// Keeps only the evaluations matching `target`; `metadata.violations`
/// still counts every violation seen.
pub fn falsify(cfg: &SuiteConfig, target: Target) -> Result<SuiteReport, ConfigError> {
    let all = falsify_sweep(cfg)?;
    Ok(report_from(cfg, "falsify", Some(target), cfg.draws, all))
}
