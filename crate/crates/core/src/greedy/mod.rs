//! Greedy inclusion engines.
//!
//! * [`select_standard`] evaluates every remaining candidate at every step.
//! * [`select_update`] (hypervolume only) keeps every candidate's exact
//!   contribution and subtracts the joint term after each inclusion.
//! * [`select_lazy`] keeps stale gains in a max-heap as upper bounds and only
//!   re-evaluates the top entry, which is valid because all three indicators
//!   are submodular.
//!
//! Ties between equal gains go to the smallest candidate index in every
//! engine, so the three engines return identical sequences. Gains within
//! [`TIE_REL`] of the best count as equal: two mathematically equal gains
//! summed in different orders can differ in the last bits.

mod lazy;
mod standard;
mod update;

use alloc::vec::Vec;
use core::time::Duration;

pub use lazy::{select_lazy, TentativeEntry};
pub use standard::select_standard;
pub use update::select_update;

use crate::error::{check_dim, Error};
use crate::geometry::{CandidateSet, PointSet};
use crate::hypervolume::HvContext;
use crate::indicators::{DistanceCache, Metric};

/// Relative window inside which gains are treated as tied.
pub const TIE_REL: f64 = 1e-12;

pub(crate) fn tie_floor(best: f64) -> f64 {
    best - TIE_REL * best.abs()
}

/// Lowest index among the candidates whose gain is tied with the best one.
pub(crate) fn pick_tied(cands: &[(usize, f64)]) -> Option<(usize, f64)> {
    let best = cands.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let floor = tie_floor(best);
    cands
        .iter()
        .copied()
        .filter(|c| c.1 >= floor)
        .min_by_key(|c| c.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndicatorKind {
    Hypervolume,
    Igd,
    IgdPlus,
}

impl IndicatorKind {
    pub fn name(self) -> &'static str {
        match self {
            IndicatorKind::Hypervolume => "hv",
            IndicatorKind::Igd => "igd",
            IndicatorKind::IgdPlus => "igdplus",
        }
    }

    pub fn metric(self) -> Option<Metric> {
        match self {
            IndicatorKind::Hypervolume => None,
            IndicatorKind::Igd => Some(Metric::Euclidean),
            IndicatorKind::IgdPlus => Some(Metric::IgdPlus),
        }
    }
}

/// Indicator to optimize. IGD kinds measure against `reference_set`, or the
/// candidate set itself when none is given. Hypervolume uses the candidate
/// set's reference point.
#[derive(Debug, Clone, Copy)]
pub struct Indicator<'a> {
    pub kind: IndicatorKind,
    pub reference_set: Option<&'a PointSet>,
}

impl<'a> Indicator<'a> {
    pub fn hypervolume() -> Self {
        Indicator {
            kind: IndicatorKind::Hypervolume,
            reference_set: None,
        }
    }

    pub fn igd() -> Self {
        Indicator {
            kind: IndicatorKind::Igd,
            reference_set: None,
        }
    }

    pub fn igd_plus() -> Self {
        Indicator {
            kind: IndicatorKind::IgdPlus,
            reference_set: None,
        }
    }

    pub fn of(kind: IndicatorKind) -> Self {
        Indicator {
            kind,
            reference_set: None,
        }
    }

    pub fn with_reference(mut self, reference: &'a PointSet) -> Self {
        self.reference_set = Some(reference);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Standard,
    Update,
    Lazy,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Standard => "standard",
            Engine::Update => "update",
            Engine::Lazy => "lazy",
        }
    }
}

/// Output of one selection run.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub engine: Engine,
    pub indicator: IndicatorKind,
    /// Candidate positions in selection order.
    pub selected: Vec<usize>,
    /// Input-row indices of `selected`.
    pub original: Vec<usize>,
    /// Marginal gain of each pick. For IGD kinds the first pick has no
    /// finite gain (the empty set has no IGD) and is recorded as infinity.
    pub step_gains: Vec<f64>,
    /// Indicator value after each pick.
    pub indicator_trace: Vec<f64>,
    /// Full contribution evaluations spent on each pick.
    pub evals_per_step: Vec<usize>,
    /// WFG frames for hypervolume, point-to-reference distances for IGD.
    pub kernel_calls: u64,
    /// First step whose best gain was exactly zero. From there on the picks
    /// follow index order.
    pub zero_gain_from: Option<usize>,
    /// Set when `k > n` and the whole set was returned without evaluation.
    pub short_circuit: bool,
    /// Largest amount by which a recomputed gain exceeded its cached bound
    /// (lazy engine only; zero for an exactly submodular evaluation).
    pub max_bound_excess: f64,
    pub elapsed: Duration,
}

impl SelectionResult {
    pub fn total_evals(&self) -> usize {
        self.evals_per_step.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.selected.len()
    }
}

/// Runs `engine` on `set`. `Engine::Update` only supports hypervolume.
pub fn select(
    engine: Engine,
    set: &CandidateSet,
    k: usize,
    indicator: &Indicator<'_>,
) -> Result<SelectionResult, Error> {
    match engine {
        Engine::Standard => select_standard(set, k, indicator),
        Engine::Lazy => select_lazy(set, k, indicator),
        Engine::Update => match indicator.kind {
            IndicatorKind::Hypervolume => select_update(set, k),
            other => Err(Error::Infeasible {
                engine: "update",
                indicator: other.name(),
            }),
        },
    }
}

/// Incremental view of one indicator over a growing selection.
pub(crate) trait Objective {
    /// Exact marginal gain of candidate `idx` w.r.t. the current selection.
    fn gain(&mut self, idx: usize) -> f64;
    fn accept(&mut self, idx: usize, gain: f64);
    fn value(&self) -> f64;
    fn kernel_calls(&self) -> u64;
}

pub(crate) struct HvObjective<'a> {
    points: &'a PointSet,
    pub(crate) ctx: HvContext,
    pub(crate) selected: Vec<f64>,
    value: f64,
}

impl<'a> HvObjective<'a> {
    pub(crate) fn new(set: &'a CandidateSet) -> Result<Self, Error> {
        Ok(HvObjective {
            points: set.points(),
            ctx: HvContext::new(set.ref_point())?,
            selected: Vec::new(),
            value: 0.0,
        })
    }
}

impl Objective for HvObjective<'_> {
    fn gain(&mut self, idx: usize) -> f64 {
        self.ctx.hvc_flat(self.points.point(idx), &self.selected)
    }

    fn accept(&mut self, idx: usize, gain: f64) {
        self.selected.extend_from_slice(self.points.point(idx));
        self.value += gain;
    }

    fn value(&self) -> f64 {
        self.value
    }

    fn kernel_calls(&self) -> u64 {
        self.ctx.kernel_calls()
    }
}

pub(crate) struct IgdObjective<'a> {
    points: &'a PointSet,
    reference: &'a PointSet,
    cache: DistanceCache,
    distance_evals: u64,
}

impl<'a> IgdObjective<'a> {
    /// Picks the candidate with the smallest singleton IGD by a full scan
    /// (ties to the lower index) and seeds the cache with it. Returns the
    /// objective, the seed index and the seed's IGD.
    pub(crate) fn seed(
        set: &'a CandidateSet,
        indicator: &Indicator<'a>,
        metric: Metric,
    ) -> Result<(Self, usize, f64), Error> {
        let points = set.points();
        let reference = indicator.reference_set.unwrap_or(points);
        if reference.is_empty() {
            return Err(Error::EmptyReferenceSet);
        }
        check_dim(points.dim(), reference.dim())?;
        // Smallest singleton IGD is the largest negated one.
        let singles: Vec<(usize, f64)> = points
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let total: f64 = reference
                    .iter()
                    .map(|r| crate::math::sqrt(metric.squared(s, r)))
                    .sum();
                (i, -(total / reference.len() as f64))
            })
            .collect();
        let (first, neg) = pick_tied(&singles).expect("non-empty candidate set");
        let best = (first, -neg);
        let cache = DistanceCache::seeded(points.point(best.0), reference, metric)?;
        let distance_evals = ((points.len() + 1) * reference.len()) as u64;
        Ok((
            IgdObjective {
                points,
                reference,
                cache,
                distance_evals,
            },
            best.0,
            best.1,
        ))
    }
}

impl Objective for IgdObjective<'_> {
    fn gain(&mut self, idx: usize) -> f64 {
        self.distance_evals += self.reference.len() as u64;
        self.cache.gain(self.points.point(idx), self.reference)
    }

    fn accept(&mut self, idx: usize, _gain: f64) {
        self.distance_evals += self.reference.len() as u64;
        self.cache.include(self.points.point(idx), self.reference);
    }

    fn value(&self) -> f64 {
        self.cache.mean()
    }

    fn kernel_calls(&self) -> u64 {
        self.distance_evals
    }
}

/// Bookkeeping shared by the engines.
pub(crate) struct Run {
    n: usize,
    pub(crate) taken: Vec<bool>,
    pub(crate) selected: Vec<usize>,
    step_gains: Vec<f64>,
    trace: Vec<f64>,
    evals: Vec<usize>,
    zero_gain_from: Option<usize>,
    max_bound_excess: f64,
    #[cfg(feature = "std")]
    started: std::time::Instant,
}

impl Run {
    pub(crate) fn new(n: usize) -> Self {
        Run {
            n,
            taken: alloc::vec![false; n],
            selected: Vec::new(),
            step_gains: Vec::new(),
            trace: Vec::new(),
            evals: Vec::new(),
            zero_gain_from: None,
            max_bound_excess: 0.0,
            #[cfg(feature = "std")]
            started: std::time::Instant::now(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.selected.len()
    }

    pub(crate) fn record(&mut self, idx: usize, gain: f64, value: f64, evals: usize) {
        debug_assert!(!self.taken[idx]);
        if gain == 0.0 && self.zero_gain_from.is_none() {
            self.zero_gain_from = Some(self.selected.len());
        }
        self.taken[idx] = true;
        self.selected.push(idx);
        self.step_gains.push(gain);
        self.trace.push(value);
        self.evals.push(evals);
    }

    pub(crate) fn bound_excess(&mut self, excess: f64) {
        if excess > self.max_bound_excess {
            self.max_bound_excess = excess;
        }
    }

    pub(crate) fn finish(
        self,
        set: &CandidateSet,
        engine: Engine,
        indicator: IndicatorKind,
        kernel_calls: u64,
    ) -> SelectionResult {
        debug_assert_eq!(self.n, set.len());
        #[cfg(feature = "std")]
        let elapsed = self.started.elapsed();
        #[cfg(not(feature = "std"))]
        let elapsed = Duration::ZERO;
        SelectionResult {
            engine,
            indicator,
            original: self
                .selected
                .iter()
                .map(|&i| set.original_index(i))
                .collect(),
            selected: self.selected,
            step_gains: self.step_gains,
            indicator_trace: self.trace,
            evals_per_step: self.evals,
            kernel_calls,
            zero_gain_from: self.zero_gain_from,
            short_circuit: false,
            max_bound_excess: self.max_bound_excess,
            elapsed,
        }
    }
}

/// Checks arguments; returns the whole set when `k > n`.
pub(crate) fn precheck(
    set: &CandidateSet,
    k: usize,
    engine: Engine,
    indicator: IndicatorKind,
) -> Result<Option<SelectionResult>, Error> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    if set.is_empty() {
        return Err(Error::EmptyInput);
    }
    if set.len() >= k {
        return Ok(None);
    }
    let selected: Vec<usize> = (0..set.len()).collect();
    Ok(Some(SelectionResult {
        engine,
        indicator,
        original: set.original_indices().to_vec(),
        selected,
        step_gains: Vec::new(),
        indicator_trace: Vec::new(),
        evals_per_step: Vec::new(),
        kernel_calls: 0,
        zero_gain_from: None,
        short_circuit: true,
        max_bound_excess: 0.0,
        elapsed: Duration::ZERO,
    }))
}
