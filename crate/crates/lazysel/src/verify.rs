//! Randomized oracle suites. Each suite draws its instances from a ChaCha8
//! stream seeded by the caller and reports the worst deviation it saw.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use lazysel_core::{
    gen_front, hv, hvc, igd, improvement, joint_hvc_update, sanitize, select, CandidateSet,
    DistanceCache, Engine, Family, FrontSpec, HvContext, Indicator, IndicatorKind, Metric,
    PointSet,
};

use crate::oracle;

pub const HV_REL_TOL: f64 = 1e-9;
pub const IGD_ABS_TOL: f64 = 1e-12;
pub const HV_SUBMODULAR_TOL: f64 = 1e-9;
pub const IGD_SUBMODULAR_TOL: f64 = 1e-12;
/// `1 - 1/e`, rounded down to the digits usually quoted.
pub const GREEDY_RATIO: f64 = 0.632;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Free-form summary such as observed ratios.
    pub note: String,
}

impl SuiteReport {
    fn new(name: impl Into<String>, tolerance: f64) -> Self {
        SuiteReport {
            name: name.into(),
            instances: 0,
            failures: 0,
            max_deviation: 0.0,
            tolerance,
            note: String::new(),
        }
    }

    fn observe(&mut self, deviation: f64) {
        self.instances += 1;
        if deviation > self.max_deviation || deviation.is_nan() {
            self.max_deviation = deviation;
        }
        if deviation.is_nan() || deviation > self.tolerance {
            self.failures += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }

    pub fn line(&self) -> String {
        format!(
            "{} {:<32} instances={:<6} max_dev={:.3e} tol={:.1e}{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.instances,
            self.max_deviation,
            self.tolerance,
            if self.note.is_empty() {
                String::new()
            } else {
                format!("  {}", self.note)
            }
        )
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 {
        0.0
    } else {
        d / a.abs().max(b.abs())
    }
}

fn rows(set: &PointSet) -> Vec<&[f64]> {
    set.iter().collect()
}

fn cube(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..m).map(|_| rng.random::<f64>()).collect())
        .collect()
}

/// Sphere-like front whose radius wobbles by up to 10%.
fn noisy_front(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<Vec<f64>> {
    cube(rng, m, n)
        .into_iter()
        .map(|p| {
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
            let radius = 1.0 + 0.1 * rng.random::<f64>();
            p.iter().map(|x| x / norm * radius).collect()
        })
        .collect()
}

/// A sanitized instance: half of the time a sampled benchmark front, else a
/// noisy sphere.
pub fn random_instance(rng: &mut ChaCha8Rng, m: usize, n: usize) -> CandidateSet {
    if rng.random_bool(0.5) {
        let family = Family::ALL[rng.random_range(0..Family::ALL.len())];
        gen_front(&FrontSpec::new(family, m, n, rng.random())).expect("valid spec")
    } else {
        let pts = noisy_front(rng, m, n);
        sanitize(&pts, &vec![1.2; m]).expect("finite points")
    }
}

/// Lazy and standard engines return the same index sequence.
pub fn lazy_equivalence(kind: IndicatorKind, count: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new(format!("lazy-equals-standard/{}", kind.name()), 0.0);
    let ind = Indicator::of(kind);
    let mut lazy_evals = 0usize;
    let mut std_evals = 0usize;
    for _ in 0..count {
        let m = rng.random_range(2..=6);
        let n = rng.random_range(10..=300);
        let set = random_instance(&mut rng, m, n);
        let k = rng.random_range(1..=set.len().min(50));
        let s = select(Engine::Standard, &set, k, &ind).expect("valid instance");
        let l = select(Engine::Lazy, &set, k, &ind).expect("valid instance");
        lazy_evals += l.total_evals();
        std_evals += s.total_evals();
        report.observe(if s.selected == l.selected { 0.0 } else { 1.0 });
    }
    report.note = format!(
        "evals lazy/standard = {:.3}",
        lazy_evals as f64 / std_evals.max(1) as f64
    );
    report
}

/// The update engine returns the standard hypervolume sequence.
pub fn update_equivalence(count: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("update-equals-standard/hv", 0.0);
    let ind = Indicator::hypervolume();
    for _ in 0..count {
        let m = rng.random_range(2..=5);
        let n = rng.random_range(10..=150);
        let set = random_instance(&mut rng, m, n);
        let k = rng.random_range(1..=set.len().min(30));
        let s = select(Engine::Standard, &set, k, &ind).expect("valid instance");
        let u = select(Engine::Update, &set, k, &ind).expect("valid instance");
        report.observe(if s.selected == u.selected { 0.0 } else { 1.0 });
    }
    report
}

/// `hv` against inclusion-exclusion on up to 8 points of the unit cube.
pub fn hv_inclusion_exclusion(count: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("hv-vs-inclusion-exclusion", HV_REL_TOL);
    for _ in 0..count {
        let m = rng.random_range(2..=4);
        let n = rng.random_range(1..=8);
        let pts = cube(&mut rng, m, n);
        let r = vec![1.0; m];
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        let mut ctx = HvContext::new(&r).expect("valid reference");
        let got = hv(refs.iter().copied(), &mut ctx).expect("same dimension");
        report.observe(rel_err(got, oracle::hv_inclusion_exclusion(&refs, &r)));
    }
    report
}

/// Two-objective `hv` against a sorted sweep.
pub fn hv_sweep_2d(count: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("hv-2d-vs-sweep", HV_REL_TOL);
    for _ in 0..count {
        let n = rng.random_range(1..=500);
        let pts = if rng.random_bool(0.5) {
            cube(&mut rng, 2, n)
        } else {
            noisy_front(&mut rng, 2, n)
        };
        let r = [1.2, 1.2];
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        let mut ctx = HvContext::new(&r).expect("valid reference");
        let got = hv(refs.iter().copied(), &mut ctx).expect("same dimension");
        report.observe(rel_err(got, oracle::hv_2d_sweep(&refs, &r)));
    }
    report
}

/// Limit-based `hvc` against `HV(S ∪ {p}) - HV(S)` by inclusion-exclusion,
/// on mutually non-dominated points so that every contribution is positive.
/// With `inject_fault` the first contribution is scaled by 0.999.
pub fn hvc_two_volumes(count: usize, seed: u64, inject_fault: bool) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("hvc-limit-vs-two-volumes", HV_REL_TOL);
    while report.instances < count {
        let m = rng.random_range(2..=5);
        let n = rng.random_range(2..=10);
        let set = sanitize(&noisy_front(&mut rng, m, n), &vec![1.2; m]).expect("finite points");
        let r: Vec<f64> = set.ref_point().to_vec();
        let refs = rows(set.points());
        let (p, rest) = refs.split_first().expect("non-empty");
        let mut ctx = HvContext::new(&r).expect("valid reference");
        let mut got = hvc(p, rest.iter().copied(), &mut ctx).expect("same dimension");
        if inject_fault && report.instances == 0 {
            got *= 0.999;
        }
        let want =
            oracle::hv_inclusion_exclusion(&refs, &r) - oracle::hv_inclusion_exclusion(rest, &r);
        report.observe(rel_err(got, want));
    }
    report
}

/// Contributions maintained by `joint_hvc_update` against fresh `hvc`.
pub fn hvc_update(count: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("hvc-update-vs-fresh", HV_REL_TOL);
    for _ in 0..count {
        let m = rng.random_range(2..=5);
        let n = rng.random_range(4..=40);
        let set = random_instance(&mut rng, m, n);
        if set.len() < 3 {
            continue;
        }
        let pts = set.points();
        let mut ctx = HvContext::new(set.ref_point()).expect("valid reference");
        let steps = rng.random_range(1..set.len().min(8));
        let mut order: Vec<usize> = (0..set.len()).collect();
        for i in 0..steps {
            let j = rng.random_range(i..order.len());
            order.swap(i, j);
        }
        let mut selected = PointSet::empty(m);
        let mut values: BTreeMap<usize, f64> = order[steps..]
            .iter()
            .map(|&c| {
                (
                    c,
                    hvc(pts.point(c), std::iter::empty(), &mut ctx).expect("same dimension"),
                )
            })
            .collect();
        let mut worst = 0.0f64;
        for &added in &order[..steps] {
            joint_hvc_update(&mut values, pts, &selected, pts.point(added), &mut ctx)
                .expect("tracked indices");
            selected.push(pts.point(added)).expect("same dimension");
            for (&c, &v) in &values {
                let fresh = hvc(pts.point(c), selected.iter(), &mut ctx).expect("same dimension");
                worst = worst.max(rel_err(v.max(0.0), fresh));
            }
        }
        report.observe(worst);
    }
    report
}

/// Cached IGD/IGD+ improvement against two full evaluations.
pub fn igd_improvement(count: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("igd-improvement-vs-naive", IGD_ABS_TOL);
    for _ in 0..count {
        let m = rng.random_range(2..=10);
        let n_ref = rng.random_range(1..=500);
        let n_set = rng.random_range(1..=20);
        let plus = rng.random_bool(0.5);
        let metric = if plus {
            Metric::IgdPlus
        } else {
            Metric::Euclidean
        };
        let reference = PointSet::from_rows(&noisy_front(&mut rng, m, n_ref)).expect("finite");
        let set = PointSet::from_rows(&cube(&mut rng, m, n_set)).expect("finite");
        let a: Vec<f64> = (0..m).map(|_| rng.random()).collect();
        let cache = DistanceCache::from_set(&set, &reference, metric).expect("nonempty");
        let (delta, _) = improvement(&a, &cache, &reference).expect("same dimension");
        let before: Vec<&[f64]> = rows(&set);
        let mut after = before.clone();
        after.push(&a);
        let refs = rows(&reference);
        let want = oracle::igd_naive(&before, &refs, plus) - oracle::igd_naive(&after, &refs, plus);
        report.observe((delta - want).abs());
    }
    report
}

fn indicator_value(kind: IndicatorKind, set: &[&[f64]], r: &[f64], reference: &PointSet) -> f64 {
    match kind {
        IndicatorKind::Hypervolume => {
            let mut ctx = HvContext::new(r).expect("valid reference");
            hv(set.iter().copied(), &mut ctx).expect("same dimension")
        }
        _ => {
            let s = PointSet::from_rows(set).expect("nonempty");
            -igd(&s, reference, kind.metric().expect("igd kind")).expect("nonempty")
        }
    }
}

/// Diminishing returns: for `A ⊂ B` and `p ∉ B`, the gain of `p` on `A` is
/// at least its gain on `B`. For IGD kinds `A` is never empty.
pub fn submodularity(kind: IndicatorKind, count: usize, seed: u64) -> SuiteReport {
    let tol = if kind == IndicatorKind::Hypervolume {
        HV_SUBMODULAR_TOL
    } else {
        IGD_SUBMODULAR_TOL
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new(format!("submodularity/{}", kind.name()), tol);
    for _ in 0..count {
        let m = rng.random_range(2..=5);
        let n = rng.random_range(3..=16);
        let pts = noisy_front(&mut rng, m, n);
        let r = vec![1.2; m];
        let reference = PointSet::from_rows(&pts).expect("finite");
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        // Element 0 is p; B is drawn from the rest and A from B.
        let min_a = usize::from(kind != IndicatorKind::Hypervolume);
        let b_len = rng.random_range(min_a.max(1)..n);
        let a_len = rng.random_range(min_a..=b_len);
        let b: Vec<&[f64]> = refs[1..=b_len].to_vec();
        let a: Vec<&[f64]> = b[..a_len].to_vec();
        let gain = |base: &[&[f64]]| {
            let mut with = base.to_vec();
            with.push(refs[0]);
            let before = if base.is_empty() {
                0.0
            } else {
                indicator_value(kind, base, &r, &reference)
            };
            indicator_value(kind, &with, &r, &reference) - before
        };
        report.observe((gain(&b) - gain(&a)).max(0.0));
    }
    report
}

/// Greedy against the best `k`-subset on `count` instances small enough to
/// enumerate. Returns per instance the ratios for hypervolume, IGD and IGD+.
/// Hypervolume uses `greedy / opt`; the IGD kinds use improvements over the
/// first greedy pick, `(g(S) - g(s1)) / (g(OPT) - g(s1))` with `g = -IGD`.
pub fn exhaustive_ratios(count: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = [
        IndicatorKind::Hypervolume,
        IndicatorKind::Igd,
        IndicatorKind::IgdPlus,
    ];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.random_range(2..=4);
        let n = rng.random_range(6..=15);
        let set = random_instance(&mut rng, m, n);
        if set.len() < 2 {
            continue;
        }
        let k = rng.random_range(1..=set.len().min(5));
        let r: Vec<f64> = set.ref_point().to_vec();
        let all = rows(set.points());
        let mut ratios = [0.0; 3];
        for (slot, &kind) in kinds.iter().enumerate() {
            let run = select(Engine::Lazy, &set, k, &Indicator::of(kind)).expect("valid instance");
            let pick: Vec<&[f64]> = run.selected.iter().map(|&i| all[i]).collect();
            let greedy = indicator_value(kind, &pick, &r, set.points());
            let mut best = f64::NEG_INFINITY;
            oracle::for_each_subset(all.len(), k, |idx| {
                let sub: Vec<&[f64]> = idx.iter().map(|&i| all[i]).collect();
                best = best.max(indicator_value(kind, &sub, &r, set.points()));
            });
            ratios[slot] = if kind == IndicatorKind::Hypervolume {
                greedy / best
            } else {
                let base = indicator_value(kind, &pick[..1], &r, set.points());
                if best - base > 0.0 {
                    (greedy - base) / (best - base)
                } else {
                    1.0
                }
            };
        }
        out.push(ratios);
    }
    out
}

/// Hypervolume must reach `1 - 1/e` of the optimum; IGD ratios are reported.
pub fn exhaustive(count: usize, seed: u64) -> SuiteReport {
    // Deviation is the shortfall below the bound, so the tolerance is zero.
    let mut report = SuiteReport::new("greedy-vs-exhaustive-opt", 0.0);
    let mut min_ratio = [f64::INFINITY; 3];
    for ratios in exhaustive_ratios(count, seed) {
        report.observe((GREEDY_RATIO - ratios[0]).max(0.0));
        for (lo, r) in min_ratio.iter_mut().zip(ratios) {
            *lo = lo.min(r);
        }
    }
    report.note = format!(
        "min ratio hv={:.4} igd={:.4} igdplus={:.4} (igd kinds reported only)",
        min_ratio[0], min_ratio[1], min_ratio[2]
    );
    report
}

/// Instance counts for every suite.
#[derive(Debug, Clone, Copy)]
pub struct Plan {
    pub equivalence: usize,
    pub update_equivalence: usize,
    pub hv_exact: usize,
    pub hv_sweep: usize,
    pub hvc_paths: usize,
    pub igd: usize,
    pub submodular: usize,
    pub exhaustive: usize,
}

impl Plan {
    pub const FULL: Plan = Plan {
        equivalence: 1000,
        update_equivalence: 200,
        hv_exact: 200,
        hv_sweep: 200,
        hvc_paths: 500,
        igd: 1000,
        submodular: 10_000,
        exhaustive: 100,
    };

    pub const QUICK: Plan = Plan {
        equivalence: 100,
        update_equivalence: 20,
        hv_exact: 50,
        hv_sweep: 20,
        hvc_paths: 50,
        igd: 100,
        submodular: 1000,
        exhaustive: 10,
    };
}

pub fn run_all(plan: &Plan, seed: u64, inject_fault: bool) -> Vec<SuiteReport> {
    let kinds = [
        IndicatorKind::Hypervolume,
        IndicatorKind::Igd,
        IndicatorKind::IgdPlus,
    ];
    let mut out = Vec::new();
    let mut sub = seed;
    let mut next = || {
        sub = sub.wrapping_add(0x9e37_79b9_7f4a_7c15);
        sub
    };
    out.push(hv_inclusion_exclusion(plan.hv_exact, next()));
    out.push(hv_sweep_2d(plan.hv_sweep, next()));
    out.push(hvc_two_volumes(plan.hvc_paths, next(), inject_fault));
    out.push(hvc_update(plan.hvc_paths, next()));
    out.push(igd_improvement(plan.igd, next()));
    for kind in kinds {
        out.push(submodularity(kind, plan.submodular, next()));
    }
    for kind in kinds {
        out.push(lazy_equivalence(kind, plan.equivalence, next()));
    }
    out.push(update_equivalence(plan.update_equivalence, next()));
    out.push(exhaustive(plan.exhaustive, next()));
    out
}
