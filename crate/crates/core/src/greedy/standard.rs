use alloc::vec::Vec;

use crate::error::Error;
use crate::geometry::CandidateSet;

use super::{
    pick_tied, precheck, Engine, HvObjective, IgdObjective, Indicator, Objective, Run,
    SelectionResult,
};

/// Standard greedy inclusion: every step evaluates all remaining candidates
/// and takes the largest gain (lowest index on ties).
///
/// IGD kinds start from the candidate with the smallest singleton IGD, found
/// by a full scan.
pub fn select_standard(
    set: &CandidateSet,
    k: usize,
    indicator: &Indicator<'_>,
) -> Result<SelectionResult, Error> {
    let kind = indicator.kind;
    if let Some(all) = precheck(set, k, Engine::Standard, kind)? {
        return Ok(all);
    }
    let mut run = Run::new(set.len());
    match kind.metric() {
        None => {
            let mut obj = HvObjective::new(set)?;
            greedy_loop(&mut obj, &mut run, k);
            let calls = obj.kernel_calls();
            Ok(run.finish(set, Engine::Standard, kind, calls))
        }
        Some(metric) => {
            let (mut obj, first, value) = IgdObjective::seed(set, indicator, metric)?;
            run.record(first, f64::INFINITY, value, set.len());
            greedy_loop(&mut obj, &mut run, k);
            let calls = obj.kernel_calls();
            Ok(run.finish(set, Engine::Standard, kind, calls))
        }
    }
}

fn greedy_loop<O: Objective>(obj: &mut O, run: &mut Run, k: usize) {
    let n = run.taken.len();
    let mut gains = Vec::with_capacity(n);
    while run.len() < k {
        gains.clear();
        gains.extend((0..n).filter(|&i| !run.taken[i]).map(|i| (i, obj.gain(i))));
        let evals = gains.len();
        let (idx, gain) = pick_tied(&gains).expect("k < n leaves a candidate");
        obj.accept(idx, gain);
        run.record(idx, gain, obj.value(), evals);
    }
}
