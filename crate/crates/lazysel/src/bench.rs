//! Timing matrix over sampled fronts, engines and indicators.

use std::fmt::Write as _;

use lazysel_core::{gen_front, select, Engine, Family, FrontSpec, Indicator, IndicatorKind};

use crate::error::Result;

pub const COLUMNS: &str = "problem,m,n,k,indicator,engine,repeat,seconds,total_evals";
pub const SERIES_COLUMNS: &str = "problem,m,n,k,indicator,engine,repeat,step,evals";

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub problems: Vec<(Family, usize)>,
    pub n: usize,
    pub k: usize,
    pub pool: usize,
    pub engines: Vec<Engine>,
    pub indicators: Vec<IndicatorKind>,
    pub repeats: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct BenchRun {
    pub problem: Family,
    pub m: usize,
    pub indicator: IndicatorKind,
    pub engine: Engine,
    pub repeat: usize,
    pub seconds: f64,
    pub evals_per_step: Vec<usize>,
}

impl BenchRun {
    pub fn total_evals(&self) -> usize {
        self.evals_per_step.iter().sum()
    }
}

/// Runs every feasible cell `repeats` times. Repeat `r` samples its instance
/// with seed `seed + r`, shared by all engines and indicators.
pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRun>> {
    let mut runs = Vec::new();
    for &(family, m) in &cfg.problems {
        for repeat in 0..cfg.repeats {
            let spec = FrontSpec {
                family,
                m,
                n_pool: cfg.pool.max(cfg.n),
                n_sample: cfg.n,
                seed: cfg.seed.wrapping_add(repeat as u64),
            };
            let set = gen_front(&spec)?;
            for &kind in &cfg.indicators {
                for &engine in &cfg.engines {
                    if engine == Engine::Update && kind != IndicatorKind::Hypervolume {
                        log::warn!(
                            "skipping {} with {}: not supported",
                            engine.name(),
                            kind.name()
                        );
                        continue;
                    }
                    let r = select(engine, &set, cfg.k, &Indicator::of(kind))?;
                    log::info!(
                        "{family} m={m} {} {} repeat={repeat}: {:.3}s, {} evals",
                        kind.name(),
                        engine.name(),
                        r.elapsed.as_secs_f64(),
                        r.total_evals()
                    );
                    runs.push(BenchRun {
                        problem: family,
                        m,
                        indicator: kind,
                        engine,
                        repeat,
                        seconds: r.elapsed.as_secs_f64(),
                        evals_per_step: r.evals_per_step,
                    });
                }
            }
        }
    }
    Ok(runs)
}

/// Raw rows followed by one `mean` row per cell.
pub fn render_csv(cfg: &BenchConfig, runs: &[BenchRun]) -> String {
    let mut s = String::from(COLUMNS);
    s.push('\n');
    for r in runs {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{:.6},{}",
            r.problem,
            r.m,
            cfg.n,
            cfg.k,
            r.indicator.name(),
            r.engine.name(),
            r.repeat,
            r.seconds,
            r.total_evals()
        );
    }
    let mut cells: Vec<(Family, usize, IndicatorKind, Engine)> = Vec::new();
    for r in runs {
        let key = (r.problem, r.m, r.indicator, r.engine);
        if !cells.contains(&key) {
            cells.push(key);
        }
    }
    for (problem, m, indicator, engine) in cells {
        let group: Vec<&BenchRun> = runs
            .iter()
            .filter(|r| {
                r.problem == problem && r.m == m && r.indicator == indicator && r.engine == engine
            })
            .collect();
        let count = group.len() as f64;
        let seconds = group.iter().map(|r| r.seconds).sum::<f64>() / count;
        let evals = group.iter().map(|r| r.total_evals() as f64).sum::<f64>() / count;
        let _ = writeln!(
            s,
            "{problem},{m},{},{},{},{},mean,{seconds:.6},{evals}",
            cfg.n,
            cfg.k,
            indicator.name(),
            engine.name()
        );
    }
    s
}

/// Per-step evaluation counts. Contains no timings, so it is reproducible.
pub fn render_series(cfg: &BenchConfig, runs: &[BenchRun]) -> String {
    let mut s = String::from(SERIES_COLUMNS);
    s.push('\n');
    for r in runs {
        for (step, e) in r.evals_per_step.iter().enumerate() {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                r.problem,
                r.m,
                cfg.n,
                cfg.k,
                r.indicator.name(),
                r.engine.name(),
                r.repeat,
                step,
                e
            );
        }
    }
    s
}
