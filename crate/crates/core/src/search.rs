//! Seeded random search for hypergraph polynomials with AT(p) > 2⌈ed(H)⌉ + 1.

use std::fmt;
use std::path::PathBuf;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::FieldDescriptor;
use crate::error::{internal, Error, Result};
use crate::hypergraph::{edge_density_exact, edge_density_flow};
use crate::pipeline::density;
use crate::poly::{LinearSystem, DEFAULT_TERM_GUARD};
use crate::random::{random_instance_with, CoefficientMode, RandomParams};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub seed: u64,
    pub instances: usize,
    /// n is drawn from 2..=max_vertices.
    pub max_vertices: usize,
    /// m is drawn from 1..=max_edges.
    pub max_edges: usize,
    pub max_edge_size: usize,
    pub field: FieldDescriptor,
    pub mode: CoefficientMode,
    pub term_guard: usize,
    /// Where reproduction files of violations are written.
    pub repro_dir: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            instances: 1000,
            max_vertices: 7,
            max_edges: 10,
            max_edge_size: 4,
            field: FieldDescriptor::Cyclotomic(3),
            mode: CoefficientMode::Pool,
            term_guard: DEFAULT_TERM_GUARD,
            repro_dir: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Violation => "VIOLATION",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchRecord {
    pub index: usize,
    pub instance: LinearSystem,
    pub ed: BigRational,
    pub at: u32,
    pub bound: u32,
    pub verdict: Verdict,
    /// For all-ones systems in characteristic 0: whether AT = ⌈ed⌉ + 1.
    pub balanced_exact: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub records: Vec<SearchRecord>,
    /// Instances abandoned over budget, with the reason.
    pub skipped: Vec<(usize, String)>,
    pub repro_files: Vec<PathBuf>,
}

impl SearchReport {
    pub fn violations(&self) -> usize {
        self.records.iter().filter(|r| r.verdict == Verdict::Violation).count()
    }

    /// Records where AT = bound.
    pub fn tight(&self) -> usize {
        self.records.iter().filter(|r| r.at == r.bound).count()
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            write!(f, "instance {} n={} m={} ed={} AT={} bound={} {}", r.index, r.instance.hypergraph().n(), r.m(), r.ed, r.at, r.bound, r.verdict)?;
            if let Some(b) = r.balanced_exact {
                write!(f, " balanced-exact={b}")?;
            }
            writeln!(f)?;
        }
        for (i, why) in &self.skipped {
            writeln!(f, "instance {i} skipped: {why}")?;
        }
        let max_at = self.records.iter().map(|r| r.at).max().unwrap_or(0);
        writeln!(
            f,
            "summary: {} records, {} violations, {} tight, {} skipped, max AT {}",
            self.records.len(),
            self.violations(),
            self.tight(),
            self.skipped.len(),
            max_at
        )
    }
}

impl SearchRecord {
    fn m(&self) -> usize {
        self.instance.m()
    }
}

/// The i-th instance of a search: (n, m) come from a generator seeded by
/// (seed, i), and the instance itself from [`random_instance_with`].
pub fn search_instance(config: &SearchConfig, index: usize) -> Result<LinearSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(2..=config.max_vertices.max(2));
    let m = rng.gen_range(1..=config.max_edges.max(1));
    let params = RandomParams { pool: None, ..RandomParams::new(n, m, config.max_edge_size, config.field).mode(config.mode) };
    random_instance_with(rng.gen(), &params)
}

fn evaluate(config: &SearchConfig, index: usize, sys: LinearSystem) -> Result<SearchRecord> {
    let ed = density(sys.hypergraph())?;
    let cert = sys.alon_tarsi_number(config.term_guard)?;
    let bound = 2 * ed.ceil() as u32 + 1;
    let balanced = config.mode == CoefficientMode::Balanced && config.field.characteristic() == 0;
    Ok(SearchRecord {
        index,
        verdict: if cert.at_value > bound { Verdict::Violation } else { Verdict::Consistent },
        balanced_exact: balanced.then(|| cert.at_value as usize == ed.ceil() + 1),
        at: cert.at_value,
        bound,
        ed: ed.density,
        instance: sys,
    })
}

/// Recomputes a claimed violation from the serialized instance, with the other
/// density algorithm and the full expansion.
fn reverify(record: &SearchRecord, guard: usize) -> Result<bool> {
    let sys = LinearSystem::parse(&record.instance.to_string())?;
    let h = sys.hypergraph();
    let ed = if h.n() <= 16 { edge_density_flow(h)? } else { edge_density_exact(h)? };
    let full = sys.expand_truncated(None, guard)?;
    let at = full.terms().keys().map(|a| a.max_exponent()).min().ok_or_else(|| internal!("zero polynomial"))? + 1;
    Ok(ed.density == record.ed && at == record.at && at > 2 * ed.ceil() as u32 + 1)
}

fn write_repro(dir: &PathBuf, record: &SearchRecord) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("violation-{}.txt", record.index));
    let text = format!(
        "# AT = {}, ed = {}, bound = {}\n{}",
        record.at, record.ed, record.bound, record.instance
    );
    std::fs::write(&path, text)?;
    Ok(path)
}

/// Runs `config.instances` instances in parallel; records are ordered by index.
pub fn conjecture_search(config: &SearchConfig) -> Result<SearchReport> {
    let outcomes: Vec<(usize, Result<SearchRecord>)> = (0..config.instances)
        .into_par_iter()
        .map(|i| (i, search_instance(config, i).and_then(|sys| evaluate(config, i, sys))))
        .collect();
    let mut report = SearchReport { records: Vec::new(), skipped: Vec::new(), repro_files: Vec::new() };
    for (i, outcome) in outcomes {
        match outcome {
            Ok(record) => {
                if record.verdict == Verdict::Violation {
                    if !reverify(&record, config.term_guard)? {
                        return Err(internal!("violation at instance {i} did not survive recomputation"));
                    }
                    if let Some(dir) = &config.repro_dir {
                        report.repro_files.push(write_repro(dir, &record)?);
                    }
                }
                report.records.push(record);
            }
            Err(Error::Budget(why)) => report.skipped.push((i, why)),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
